#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayleytones/cayley_graph.hpp"
#include "cayleytones/modular_group.hpp"

namespace cayleytones {

/// (Z_n, s) with n = p*q, gcd(p, q) = 1 and p > q > 1, tuned at f0 Hz for note 0.
class MusicalSystem {
public:
    int n() const noexcept { return p_ * q_; }
    int p() const noexcept { return p_; }
    int q() const noexcept { return q_; }
    double octave_ratio() const noexcept { return s_; }
    double base_frequency() const noexcept { return f0_; }
    ModRing ring() const { return ModRing(n()); }

    /// True when the caller passed the factors with q > p and they were swapped.
    bool factors_swapped() const noexcept { return swapped_; }

    /// {p, q} and its symmetrization {p, q, n-p, n-q}.
    GeneratorSet generators() const;
    GeneratorSet symmetric_generators() const;

    friend MusicalSystem validate_system(int n, int p, int q, double s, double f0);

private:
    MusicalSystem(int p, int q, double s, double f0, bool swapped)
        : p_(p), q_(q), s_(s), f0_(f0), swapped_(swapped) {}

    int p_;
    int q_;
    double s_;
    double f0_;
    bool swapped_;
};

/// Checks every system invariant (including that {p, q} generates Z_n) and
/// normalizes the factor order so that p > q.
MusicalSystem validate_system(int n, int p, int q, double s = 2.0, double f0 = 440.0);

/// Same, with n derived as p*q.
MusicalSystem make_system(int p, int q, double s = 2.0, double f0 = 440.0);

enum class Quality { major, minor };

/// Classification of a step sequence: major starts p,q; minor starts q,p;
/// other covers the remaining two-step openings; dyad means a single step.
enum class ChordKind { major, minor, other, dyad };

std::string to_string(Quality q);
std::string to_string(ChordKind k);
Quality parse_quality(const std::string& text);

struct Chord {
    int modulus = 0;
    int root = 0;
    ChordKind kind = ChordKind::dyad;
    std::vector<int> steps;
    /// Residues x_1..x_k along the path.
    std::vector<int> notes;

    /// Cumulative step sums from the root (not reduced), used for voicing.
    std::vector<int> offsets() const;
    int span() const;
};

Chord triad(const MusicalSystem& system, int root, Quality quality);

/// Builds the path from root along steps. Every step must be p or q and the
/// path may only revisit a note by closing on the root at the final step.
/// When expected is given it must match the kind derived from the first two steps.
Chord chord_from_steps(const MusicalSystem& system, int root, const std::vector<int>& steps,
                       std::optional<Quality> expected = std::nullopt);

/// Longest alternating chord (major p,q,p,...; minor q,p,q,...) whose step sum stays <= n.
Chord largest_chord_within_octave(const MusicalSystem& system, int root, Quality quality);

struct CircleOfFifths {
    int modulus = 0;
    int step = 0;
    /// n+1 entries; the last repeats the first.
    std::vector<int> sequence;
    bool trivial = false;
};

CircleOfFifths circle_of_fifths(const MusicalSystem& system);

/// Orbit of 0 under repeated addition of a+b in Z_n. Requires gcd(a+b, n) = 1.
CircleOfFifths circle_of_fifths(ModRing ring, int a, int b);

struct Scale {
    int modulus = 0;
    int root = 0;
    Quality quality = Quality::major;
    /// Residues, starting and ending at the root.
    std::vector<int> notes;
    /// Unreduced distance of each note above the root; the last entry is n.
    std::vector<int> offsets;
    /// The chord the scale is built on.
    Chord backbone;
};

/// Scale built on the backbone chord with legs filled by 2-steps and at most
/// one 1-step, closing at the root an octave up.
Scale scale(const MusicalSystem& system, int root, Quality quality);

struct NamedPattern {
    std::string name;
    std::vector<int> steps;
};

/// The classical triad/7th/9th catalog for Z_12 and its p/q template elsewhere.
std::vector<NamedPattern> chord_catalog(const MusicalSystem& system);

struct IntervalRow {
    int index;
    std::string note;
    std::string name;
    std::int64_t pythagorean_num;
    std::int64_t pythagorean_den;
    double tempered;
    /// |log2(pythagorean) - index/12|
    double deviation;
};

/// Pythagorean versus equal-tempered ratios for the twelve chromatic intervals.
const std::vector<IntervalRow>& interval_table();

} // namespace cayleytones
