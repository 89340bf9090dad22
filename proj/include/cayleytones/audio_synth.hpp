#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cayleytones/music_system.hpp"

namespace cayleytones {

inline constexpr int default_sample_rate = 44100;

struct ToneSpec {
    double frequency = 440.0;
    double duration = 1.0;
};

/// Linear attack, linear decay to sustain_level, flat sustain, linear release.
struct Envelope {
    double attack = 0.02;
    double decay = 0.05;
    double sustain_level = 0.8;
    double release = 0.05;

    /// g == 1 everywhere.
    static Envelope flat() { return {0.0, 0.0, 1.0, 0.0}; }
};

/// Gain at time t (seconds) of a note lasting `duration`. Throws
/// invalid_envelope when the envelope does not fit the note.
double envelope_gain(const Envelope& env, double t, double duration);

struct SampleBuffer {
    int sample_rate = default_sample_rate;
    std::vector<double> samples;

    std::size_t size() const noexcept { return samples.size(); }
    double duration() const noexcept { return static_cast<double>(samples.size()) / sample_rate; }
};

/// f0 * s^(k/n) * s^octave_shift; k is not reduced mod n.
double note_frequency(const MusicalSystem& system, int k, int octave_shift = 0);

/// round(rate * duration) samples of sin(2 pi f i / rate).
SampleBuffer pure_tone(const ToneSpec& spec, int sample_rate = default_sample_rate);

/// g(t) * sin(2 pi f (t + m sin(2 pi f t))); m = 0 with a flat envelope
/// reproduces pure_tone exactly.
SampleBuffer shape_note(const ToneSpec& spec, const Envelope& env, double modulation_depth = 0.0,
                        int sample_rate = default_sample_rate);

/// Sample-wise weighted average. Weights are normalized to sum to 1; an empty
/// weight list means equal weights.
SampleBuffer mix_chord(std::span<const SampleBuffer> buffers, std::vector<double> weights = {});

struct PlannedNote {
    int k = 0;
    int octave = 0;

    friend bool operator==(const PlannedNote&, const PlannedNote&) = default;
};

enum class EventKind { note, chord, rest };

std::string to_string(EventKind kind);
EventKind parse_event_kind(const std::string& text);

struct RenderEvent {
    EventKind kind = EventKind::note;
    std::vector<PlannedNote> notes;
    double duration = 0.5;
};

struct RenderPlan {
    MusicalSystem system = make_system(4, 3);
    std::vector<RenderEvent> events;
    Envelope envelope;
    double modulation_depth = 0.0;
    int sample_rate = default_sample_rate;
};

/// Concatenates the events in plan order; rests are silence.
SampleBuffer render(const RenderPlan& plan);

/// Plans that play each note of a sequence (ascending offsets) in turn.
RenderPlan plan_for_scale(const Scale& scale, const MusicalSystem& system, double note_duration = 0.5);
RenderPlan plan_for_chord(const Chord& chord, const MusicalSystem& system, double duration = 1.5,
                          bool arpeggio = false);
RenderPlan plan_for_circle(const CircleOfFifths& circle, const MusicalSystem& system, double note_duration = 0.4);

/// First-species exercise: voice B plays melody[i] + intervals[i]; each step is
/// rendered as a two-note chord.
RenderPlan plan_for_counterpoint(const MusicalSystem& system, const std::vector<int>& melody,
                                 const std::vector<int>& intervals, double note_duration = 0.75);

/// Half-away-from-zero rounding of sample * 32767, clamped to int16.
std::int16_t quantize(double sample) noexcept;

/// Canonical 44-byte header RIFF/WAVE, PCM 16-bit mono.
std::vector<std::uint8_t> encode_wav(const SampleBuffer& buffer);
SampleBuffer decode_wav(std::span<const std::uint8_t> bytes);

void write_wav(const SampleBuffer& buffer, const std::filesystem::path& path);
SampleBuffer read_wav(const std::filesystem::path& path);

} // namespace cayleytones
