#include "cayleytones/music_system.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace cayleytones {

MusicalSystem validate_system(int n, int p, int q, double s, double f0)
{
    bool swapped = false;
    if (q > p) {
        std::swap(p, q);
        swapped = true;
    }
    if (q <= 1 || p == q) {
        throw Error(ErrorCode::factor_out_of_range,
                    "factors must satisfy p > q > 1, got " + std::to_string(p) + " and " + std::to_string(q));
    }
    if (std::gcd(p, q) != 1) {
        throw Error(ErrorCode::factors_not_coprime,
                    "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") = " +
                        std::to_string(std::gcd(p, q)) + ", factors must be coprime");
    }
    if (static_cast<std::int64_t>(p) * q != n) {
        throw Error(ErrorCode::modulus_not_product,
                    "n = " + std::to_string(n) + " is not " + std::to_string(p) + "*" + std::to_string(q));
    }
    if (!(s > 1.0) || !std::isfinite(s))
        throw Error(ErrorCode::octave_ratio, "octave ratio must be a finite number > 1");
    if (!(f0 > 0.0) || !std::isfinite(f0))
        throw Error(ErrorCode::base_frequency, "base frequency must be a finite number > 0");

    MusicalSystem system(p, q, s, f0, swapped);
    if (!is_generating(system.generators()))
        throw Error(ErrorCode::not_generating, "{p, q} does not generate Z_n");
    return system;
}

MusicalSystem make_system(int p, int q, double s, double f0)
{
    return validate_system(p * q, p, q, s, f0);
}

GeneratorSet MusicalSystem::generators() const
{
    return {ring(), {p_, q_}};
}

GeneratorSet MusicalSystem::symmetric_generators() const
{
    return symmetrize(generators());
}

std::string to_string(Quality q)
{
    return q == Quality::major ? "major" : "minor";
}

std::string to_string(ChordKind k)
{
    switch (k) {
    case ChordKind::major: return "major";
    case ChordKind::minor: return "minor";
    case ChordKind::other: return "other";
    case ChordKind::dyad: return "dyad";
    }
    return "other";
}

Quality parse_quality(const std::string& text)
{
    std::string lower;
    for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "major" || lower == "maj") return Quality::major;
    if (lower == "minor" || lower == "min") return Quality::minor;
    throw Error(ErrorCode::invalid_argument, "unknown chord quality '" + text + "'");
}

std::vector<int> Chord::offsets() const
{
    std::vector<int> out{0};
    for (int s : steps) out.push_back(out.back() + s);
    return out;
}

int Chord::span() const
{
    return std::accumulate(steps.begin(), steps.end(), 0);
}

namespace {

ChordKind classify(const MusicalSystem& system, const std::vector<int>& steps)
{
    if (steps.size() < 2) return ChordKind::dyad;
    if (steps[0] == system.p() && steps[1] == system.q()) return ChordKind::major;
    if (steps[0] == system.q() && steps[1] == system.p()) return ChordKind::minor;
    return ChordKind::other;
}

std::vector<int> alternating_steps(const MusicalSystem& system, Quality quality, std::size_t count)
{
    const int first = quality == Quality::major ? system.p() : system.q();
    const int second = quality == Quality::major ? system.q() : system.p();
    std::vector<int> steps;
    for (std::size_t i = 0; i < count; ++i) steps.push_back(i % 2 == 0 ? first : second);
    return steps;
}

// True if appending `next` to the walk keeps it free of repeats, allowing a
// single return to the root as the final note.
bool extends_cleanly(const std::vector<int>& notes, int next)
{
    if (notes.size() > 1 && notes.back() == notes.front()) return false;
    if (next == notes.front()) return notes.size() > 1;
    return std::find(notes.begin(), notes.end(), next) == notes.end();
}

} // namespace

Chord chord_from_steps(const MusicalSystem& system, int root, const std::vector<int>& steps,
                       std::optional<Quality> expected)
{
    const auto ring = system.ring();
    if (steps.empty()) throw Error(ErrorCode::invalid_chord, "a chord needs at least one step");

    Chord chord;
    chord.modulus = system.n();
    chord.root = ring.reduce(root);
    chord.notes.push_back(chord.root);
    for (int step : steps) {
        if (step != system.p() && step != system.q()) {
            throw Error(ErrorCode::invalid_chord, "step " + std::to_string(step) + " is neither p=" +
                                                      std::to_string(system.p()) + " nor q=" +
                                                      std::to_string(system.q()));
        }
        const int next = ring.reduce(std::int64_t{chord.notes.back()} + step);
        if (!extends_cleanly(chord.notes, next)) {
            throw Error(ErrorCode::invalid_chord, "path intersects itself at note " + std::to_string(next));
        }
        chord.notes.push_back(next);
        chord.steps.push_back(step);
    }
    chord.kind = classify(system, chord.steps);
    if (expected) {
        const auto want = *expected == Quality::major ? ChordKind::major : ChordKind::minor;
        if (chord.kind != want) {
            throw Error(ErrorCode::invalid_chord,
                        "steps do not open a " + to_string(*expected) + " chord");
        }
    }
    return chord;
}

Chord triad(const MusicalSystem& system, int root, Quality quality)
{
    return chord_from_steps(system, root, alternating_steps(system, quality, 2), quality);
}

Chord largest_chord_within_octave(const MusicalSystem& system, int root, Quality quality)
{
    Chord chord = triad(system, root, quality);
    const auto ring = system.ring();
    for (;;) {
        const int step = chord.steps.size() % 2 == 0 ? chord.steps[0] : chord.steps[1];
        if (chord.span() + step > system.n()) break;
        const int next = ring.reduce(std::int64_t{chord.notes.back()} + step);
        if (!extends_cleanly(chord.notes, next)) break;
        chord.notes.push_back(next);
        chord.steps.push_back(step);
    }
    return chord;
}

CircleOfFifths circle_of_fifths(ModRing ring, int a, int b)
{
    const int n = ring.modulus();
    CircleOfFifths circle;
    circle.modulus = n;
    circle.step = ring.reduce(std::int64_t{a} + b);
    if (std::gcd(circle.step, n) != 1) {
        throw Error(ErrorCode::precondition, "step " + std::to_string(circle.step) +
                                                 " does not generate Z_" + std::to_string(n));
    }
    for (int i = 0; i <= n; ++i) circle.sequence.push_back(ring.reduce(std::int64_t{i} * circle.step));
    circle.trivial = circle.step == 1;
    return circle;
}

CircleOfFifths circle_of_fifths(const MusicalSystem& system)
{
    return circle_of_fifths(system.ring(), system.p(), system.q());
}

namespace {

enum class LegFill { twos, one_last, one_first };

void fill_leg(std::vector<int>& offsets, int length, LegFill fill)
{
    int pos = offsets.back();
    const int end = pos + length;
    if (length % 2 == 1 && fill == LegFill::one_first) offsets.push_back(++pos);
    while (end - pos >= 2) {
        pos += 2;
        offsets.push_back(pos);
    }
    if (pos < end) offsets.push_back(end);
}

} // namespace

Scale scale(const MusicalSystem& system, int root, Quality quality)
{
    const auto ring = system.ring();
    const int n = system.n();
    const int p = system.p();
    const int q = system.q();

    // The backbone keeps as many notes as both the largest major and the
    // largest minor chord have, so that both scales of a system share a shape.
    const auto major_len = largest_chord_within_octave(system, root, Quality::major).notes.size();
    const auto minor_len = largest_chord_within_octave(system, root, Quality::minor).notes.size();
    const auto backbone_len = std::min(major_len, minor_len);
    auto backbone = largest_chord_within_octave(system, root, quality);
    backbone.notes.resize(backbone_len);
    backbone.steps.resize(backbone_len - 1);

    // In Z_12 the major third-leg is filled as '12' (C D E F G A B).
    const bool western = p == 4 && q == 3;

    Scale out;
    out.modulus = n;
    out.root = ring.reduce(root);
    out.quality = quality;
    out.offsets.push_back(0);
    int odd_q_legs = 0;
    for (int leg : backbone.steps) {
        LegFill fill = LegFill::one_last;
        if (leg % 2 == 0) {
            fill = LegFill::twos;
        } else if (p % 2 == 0 && leg == q) {
            if (quality == Quality::major)
                fill = western ? LegFill::one_first : LegFill::one_last;
            else
                fill = odd_q_legs % 2 == 0 ? LegFill::one_last : LegFill::one_first;
            ++odd_q_legs;
        }
        fill_leg(out.offsets, leg, fill);
    }
    out.offsets.push_back(n);
    for (int off : out.offsets) out.notes.push_back(ring.reduce(std::int64_t{out.root} + off));
    out.backbone = std::move(backbone);
    return out;
}

std::vector<NamedPattern> chord_catalog(const MusicalSystem& system)
{
    const int p = system.p();
    const int q = system.q();
    std::vector<NamedPattern> catalog = {
        {"Major Triad", {p, q}},
        {"Minor Triad", {q, p}},
        {"Diminished Triad", {q, q}},
        {"Augmented Triad", {p, p}},
        {"Major 7th", {p, q, p}},
        {"Dominant 7th", {p, q, q}},
        {"Minor 7th", {q, p, q}},
        {"Fully Diminished 7th", {q, q, q}},
        {"Half Diminished 7th", {q, q, p}},
        {"Augmented Major 7th", {p, p, q}},
        {"Major 9th", {p, q, p, q}},
        {"Minor 9th", {q, p, q, p}},
        {"Dominant 9th", {p, q, q, p}},
        {"Dominant Flat 9th", {p, q, q, q}},
        {"Half Diminished Flat 9th", {q, q, p, q}},
    };
    if (system.n() != 12) {
        for (auto& entry : catalog) {
            for (auto& c : entry.name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    return catalog;
}

const std::vector<IntervalRow>& interval_table()
{
    static const std::vector<IntervalRow> table = [] {
        struct Raw {
            const char* note;
            const char* name;
            std::int64_t num, den;
        };
        const Raw raw[12] = {
            {"C", "unison", 1, 1},          {"C#", "minor second", 256, 243},
            {"D", "major second", 9, 8},    {"D#", "minor third", 32, 27},
            {"E", "major third", 81, 64},   {"F", "fourth", 4, 3},
            {"F#", "tritone", 729, 512},    {"G", "fifth", 3, 2},
            {"G#", "minor sixth", 128, 81}, {"A", "major sixth", 27, 16},
            {"A#", "minor seventh", 16, 9}, {"B", "major seventh", 243, 128},
        };
        std::vector<IntervalRow> rows;
        for (int i = 0; i < 12; ++i) {
            const auto& r = raw[i];
            const double pyth = static_cast<double>(r.num) / static_cast<double>(r.den);
            rows.push_back({i, r.note, r.name, r.num, r.den, std::exp2(i / 12.0),
                            std::abs(std::log2(pyth) - i / 12.0)});
        }
        return rows;
    }();
    return table;
}

} // namespace cayleytones
