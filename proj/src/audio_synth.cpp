#include "cayleytones/audio_synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <numeric>

namespace cayleytones {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::size_t sample_count(double duration, int sample_rate)
{
    if (!(duration > 0.0) || !std::isfinite(duration))
        throw Error(ErrorCode::invalid_argument, "duration must be a positive number of seconds");
    if (sample_rate <= 0) throw Error(ErrorCode::invalid_argument, "sample rate must be positive");
    return static_cast<std::size_t>(std::llround(duration * sample_rate));
}

void check_frequency(double f)
{
    if (!(f > 0.0) || !std::isfinite(f)) throw Error(ErrorCode::invalid_argument, "frequency must be positive");
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v)
{
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag)
{
    out.insert(out.end(), tag, tag + 4);
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at)
{
    return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
           static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at)
{
    return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag)
{
    return std::equal(tag, tag + 4, b.begin() + static_cast<std::ptrdiff_t>(at));
}

PlannedNote split_note(int absolute, int n)
{
    const int octave = absolute >= 0 ? absolute / n : -((-absolute + n - 1) / n);
    return {absolute - octave * n, octave};
}

} // namespace

double envelope_gain(const Envelope& env, double t, double duration)
{
    if (env.attack < 0 || env.decay < 0 || env.release < 0 || env.sustain_level < 0 || env.sustain_level > 1)
        throw Error(ErrorCode::invalid_envelope, "envelope times must be >= 0 and sustain in [0, 1]");
    if (env.attack + env.decay + env.release > duration + 1e-12)
        throw Error(ErrorCode::invalid_envelope, "envelope is longer than the note");

    const double release_start = duration - env.release;
    if (env.release > 0 && t >= release_start)
        return std::clamp(env.sustain_level * (duration - t) / env.release, 0.0, 1.0);
    if (t < env.attack) return t / env.attack;
    if (t < env.attack + env.decay) return 1.0 - (1.0 - env.sustain_level) * (t - env.attack) / env.decay;
    return env.sustain_level;
}

double note_frequency(const MusicalSystem& system, int k, int octave_shift)
{
    return system.base_frequency() *
           std::pow(system.octave_ratio(), static_cast<double>(k) / system.n() + octave_shift);
}

SampleBuffer pure_tone(const ToneSpec& spec, int sample_rate)
{
    check_frequency(spec.frequency);
    SampleBuffer out;
    out.sample_rate = sample_rate;
    out.samples.resize(sample_count(spec.duration, sample_rate));
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        const double t = static_cast<double>(i) / sample_rate;
        out.samples[i] = std::sin(two_pi * spec.frequency * t);
    }
    return out;
}

SampleBuffer shape_note(const ToneSpec& spec, const Envelope& env, double modulation_depth, int sample_rate)
{
    check_frequency(spec.frequency);
    envelope_gain(env, 0.0, spec.duration);
    SampleBuffer out;
    out.sample_rate = sample_rate;
    out.samples.resize(sample_count(spec.duration, sample_rate));
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        const double t = static_cast<double>(i) / sample_rate;
        const double warped = t + modulation_depth * std::sin(two_pi * spec.frequency * t);
        out.samples[i] = envelope_gain(env, t, spec.duration) * std::sin(two_pi * spec.frequency * warped);
    }
    return out;
}

SampleBuffer mix_chord(std::span<const SampleBuffer> buffers, std::vector<double> weights)
{
    if (buffers.empty()) throw Error(ErrorCode::buffer_mismatch, "nothing to mix");
    if (weights.empty()) weights.assign(buffers.size(), 1.0);
    if (weights.size() != buffers.size())
        throw Error(ErrorCode::buffer_mismatch, "one weight per buffer is required");
    if (std::any_of(weights.begin(), weights.end(), [](double w) { return !(w >= 0.0); }))
        throw Error(ErrorCode::invalid_argument, "weights must be non-negative");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) throw Error(ErrorCode::invalid_argument, "weights sum to zero");

    const auto& first = buffers.front();
    for (const auto& b : buffers) {
        if (b.sample_rate != first.sample_rate || b.size() != first.size())
            throw Error(ErrorCode::buffer_mismatch, "chord notes differ in length or sample rate");
    }
    SampleBuffer out;
    out.sample_rate = first.sample_rate;
    out.samples.assign(first.size(), 0.0);
    for (std::size_t j = 0; j < buffers.size(); ++j) {
        const double w = weights[j] / total;
        for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += w * buffers[j].samples[i];
    }
    for (auto& s : out.samples) s = std::clamp(s, -1.0, 1.0);
    return out;
}

std::string to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::note: return "note";
    case EventKind::chord: return "chord";
    case EventKind::rest: return "rest";
    }
    return "note";
}

EventKind parse_event_kind(const std::string& text)
{
    if (text == "note") return EventKind::note;
    if (text == "chord") return EventKind::chord;
    if (text == "rest") return EventKind::rest;
    throw Error(ErrorCode::invalid_argument, "unknown event kind '" + text + "'");
}

SampleBuffer render(const RenderPlan& plan)
{
    if (plan.events.empty()) throw Error(ErrorCode::empty_plan, "render plan has no events");
    const int n = plan.system.n();
    SampleBuffer out;
    out.sample_rate = plan.sample_rate;
    for (const auto& event : plan.events) {
        const auto count = sample_count(event.duration, plan.sample_rate);
        if (event.kind == EventKind::rest) {
            out.samples.insert(out.samples.end(), count, 0.0);
            continue;
        }
        if (event.notes.empty()) throw Error(ErrorCode::invalid_argument, "note event without notes");
        if (event.kind == EventKind::note && event.notes.size() != 1)
            throw Error(ErrorCode::invalid_argument, "a note event carries exactly one note");
        std::vector<SampleBuffer> voices;
        for (const auto& note : event.notes) {
            if (note.k < 0 || note.k >= n) {
                throw Error(ErrorCode::invalid_argument,
                            "note " + std::to_string(note.k) + " is not a residue mod " + std::to_string(n));
            }
            const ToneSpec spec{note_frequency(plan.system, note.k, note.octave), event.duration};
            voices.push_back(shape_note(spec, plan.envelope, plan.modulation_depth, plan.sample_rate));
        }
        const auto mixed = voices.size() == 1 ? std::move(voices.front()) : mix_chord(voices);
        out.samples.insert(out.samples.end(), mixed.samples.begin(), mixed.samples.end());
    }
    return out;
}

RenderPlan plan_for_scale(const Scale& scale, const MusicalSystem& system, double note_duration)
{
    RenderPlan plan;
    plan.system = system;
    for (int off : scale.offsets)
        plan.events.push_back({EventKind::note, {split_note(scale.root + off, system.n())}, note_duration});
    return plan;
}

RenderPlan plan_for_chord(const Chord& chord, const MusicalSystem& system, double duration, bool arpeggio)
{
    RenderPlan plan;
    plan.system = system;
    std::vector<PlannedNote> notes;
    for (int off : chord.offsets()) notes.push_back(split_note(chord.root + off, system.n()));
    if (arpeggio) {
        for (const auto& note : notes) plan.events.push_back({EventKind::note, {note}, duration / 2});
    }
    plan.events.push_back({EventKind::chord, notes, duration});
    return plan;
}

RenderPlan plan_for_circle(const CircleOfFifths& circle, const MusicalSystem& system, double note_duration)
{
    RenderPlan plan;
    plan.system = system;
    for (int residue : circle.sequence)
        plan.events.push_back({EventKind::note, {{residue, 0}}, note_duration});
    return plan;
}

RenderPlan plan_for_counterpoint(const MusicalSystem& system, const std::vector<int>& melody,
                                 const std::vector<int>& intervals, double note_duration)
{
    if (melody.size() != intervals.size() || melody.empty())
        throw Error(ErrorCode::invalid_argument, "melody and intervals must be non-empty and equally long");
    RenderPlan plan;
    plan.system = system;
    const auto ring = system.ring();
    for (std::size_t i = 0; i < melody.size(); ++i) {
        const int low = ring.reduce(melody[i]);
        const int interval = ring.reduce(intervals[i]);
        plan.events.push_back({EventKind::chord, {{low, 0}, split_note(low + interval, system.n())}, note_duration});
    }
    return plan;
}

std::int16_t quantize(double sample) noexcept
{
    const double scaled = std::round(sample * 32767.0);
    return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

std::vector<std::uint8_t> encode_wav(const SampleBuffer& buffer)
{
    const auto data_bytes = static_cast<std::uint32_t>(buffer.size() * 2);
    std::vector<std::uint8_t> out;
    out.reserve(44 + data_bytes);
    put_tag(out, "RIFF");
    put_u32(out, 36 + data_bytes);
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put_u32(out, 16);
    put_u16(out, 1); // PCM
    put_u16(out, 1); // mono
    put_u32(out, static_cast<std::uint32_t>(buffer.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(buffer.sample_rate) * 2);
    put_u16(out, 2);
    put_u16(out, 16);
    put_tag(out, "data");
    put_u32(out, data_bytes);
    for (double s : buffer.samples) put_u16(out, static_cast<std::uint16_t>(quantize(s)));
    return out;
}

SampleBuffer decode_wav(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE"))
        throw Error(ErrorCode::io, "not a RIFF/WAVE stream");
    SampleBuffer out;
    bool have_format = false;
    std::size_t at = 12;
    while (at + 8 <= bytes.size()) {
        const auto size = get_u32(bytes, at + 4);
        const std::size_t body = at + 8;
        if (body + size > bytes.size()) throw Error(ErrorCode::io, "truncated WAV chunk");
        if (tag_is(bytes, at, "fmt ")) {
            if (size < 16 || get_u16(bytes, body) != 1 || get_u16(bytes, body + 2) != 1 ||
                get_u16(bytes, body + 14) != 16)
                throw Error(ErrorCode::io, "only 16-bit mono PCM is supported");
            out.sample_rate = static_cast<int>(get_u32(bytes, body + 4));
            have_format = true;
        } else if (tag_is(bytes, at, "data")) {
            if (!have_format) throw Error(ErrorCode::io, "data chunk before fmt chunk");
            out.samples.reserve(size / 2);
            for (std::size_t i = 0; i + 1 < size; i += 2) {
                const auto raw = static_cast<std::int16_t>(get_u16(bytes, body + i));
                out.samples.push_back(raw / 32767.0);
            }
            return out;
        }
        at = body + size + (size & 1);
    }
    throw Error(ErrorCode::io, "WAV stream has no data chunk");
}

void write_wav(const SampleBuffer& buffer, const std::filesystem::path& path)
{
    const auto bytes = encode_wav(buffer);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
    file.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!file) throw Error(ErrorCode::io, "failed writing " + path.string());
}

SampleBuffer read_wav(const std::filesystem::path& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::io, "cannot open " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    return decode_wav(bytes);
}

} // namespace cayleytones
