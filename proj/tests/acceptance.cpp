// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fftw3.h>
#include <filesystem>
#include <functional>
#include <numeric>
#include <string>

#include "cayleytones/audio_synth.hpp"
#include "cayleytones/counterpoint.hpp"
#include "cayleytones/music_system.hpp"
#include "oracles.hpp"

using namespace cayleytones;
using Ints = std::vector<int>;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

GeneratorSet sym(int n, std::vector<std::int64_t> s) { return symmetrize(GeneratorSet(ModRing(n), std::move(s))); }

std::vector<std::pair<int, int>> maps_of(const SearchReport& r)
{
    std::vector<std::pair<int, int>> out;
    for (const auto& w : r.witnesses) out.emplace_back(w.map.multiplier(), w.map.offset());
    return out;
}

std::vector<Ints> consonants(const SearchReport& r)
{
    std::vector<Ints> out;
    for (const auto& p : r.partitions) out.push_back(p.dichotomy.consonant);
    std::sort(out.begin(), out.end());
    return out;
}

Ints sorted(Ints v)
{
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::pair<int, int>> standard_pairs(int n)
{
    std::vector<std::pair<int, int>> out;
    for (int q = 2; q * q < n; ++q)
        if (n % q == 0 && std::gcd(q, n / q) == 1) out.emplace_back(n / q, q);
    return out;
}

Check unique_fux_witness()
{
    Check c;
    CayleyGraph g(sym(12, {3, 4}), Orientation::unoriented);
    auto rep = enumerate_strong_witnesses(fux_dichotomy(), g);
    c.expect(rep.examined == 48, "expected 48 candidates");
    c.expect(maps_of(rep) == std::vector<std::pair<int, int>>{{5, 2}}, "witness list differs from {5x+2}");
    return c;
}

Check four_partitions_z12()
{
    Check c;
    auto s = sym(12, {3, 4});
    CayleyGraph g(s, Orientation::unoriented);
    auto rep = extend_to_partitions(KPrime(s), g);
    const std::vector<Ints> expected{sorted({0, 3, 4, 8, 9, 1}), sorted({0, 3, 4, 8, 9, 5}), sorted({0, 3, 4, 8, 9, 7}),
                                     sorted({0, 3, 4, 8, 9, 11})};
    c.expect(consonants(rep) == expected, "partition sets differ");
    for (const auto& p : rep.partitions) {
        c.expect(p.strong_witness_count == 1, "partition without a unique strong witness");
        const bool via_2 = std::find(p.dichotomy.consonant.begin(), p.dichotomy.consonant.end(), 7) !=
                               p.dichotomy.consonant.end() ||
                           std::find(p.dichotomy.consonant.begin(), p.dichotomy.consonant.end(), 1) !=
                               p.dichotomy.consonant.end();
        c.expect(p.map == AffineMap(ModRing(12), 5, via_2 ? 2 : 10), "unexpected witness for " + p.map.to_string());
        auto found = find_affine_for_partition(p.dichotomy, g);
        c.expect(found.size() == 1 && found[0] == p.map, "recount disagrees");
    }
    return c;
}

Check z10_reproduction()
{
    Check c;
    auto s = sym(10, {2, 5});
    CayleyGraph g(s, Orientation::unoriented);
    auto weak = maps_of(enumerate_weak_witnesses(s));
    for (auto m : {std::pair{9, 1}, std::pair{9, 9}})
        c.expect(std::find(weak.begin(), weak.end(), m) != weak.end(), "missing weak witness 9x+" + std::to_string(m.second));
    KPrime kp(s);
    const std::vector<Ints> expected{sorted({0, 2, 5, 8, 3}), sorted({0, 2, 5, 8, 4}), sorted({0, 2, 5, 8, 6}),
                                     sorted({0, 2, 5, 8, 7})};
    c.expect(consonants(extend_to_partitions(kp, g)) == expected, "extension sets differ");
    c.expect(consonants(extend_to_partitions(kp, g, AffineMap(ModRing(10), 9, 1))) ==
                 std::vector<Ints>{sorted({0, 2, 5, 8, 4}), sorted({0, 2, 5, 8, 7})},
             "9x+1 extension differs");
    c.expect(consonants(extend_to_partitions(kp, g, AffineMap(ModRing(10), 9, 9))) ==
                 std::vector<Ints>{sorted({0, 2, 5, 8, 3}), sorted({0, 2, 5, 8, 6})},
             "9x+9 extension differs");
    return c;
}

Check z15_reproduction()
{
    Check c;
    auto s = sym(15, {3, 5});
    CayleyGraph g(s, Orientation::unoriented);
    Ints offsets;
    for (auto [h, w] : maps_of(enumerate_weak_witnesses(s)))
        if (h == 14) offsets.push_back(w);
    c.expect(offsets == Ints{1, 4, 11, 14}, "multiplier-14 offsets differ");

    KPrime kp(s);
    AffineMap t(ModRing(15), 14, 1);
    auto rep = maximal_consonant_extension(kp, t, g);
    bool found = false;
    for (const auto& p : rep.partitions) {
        if (p.dichotomy.consonant == sorted({0, 3, 5, 10, 12, 2, 7}) &&
            p.dichotomy.dissonant == sorted({1, 13, 11, 6, 4, 14, 9}))
            found = true;
        c.expect(!std::binary_search(p.dichotomy.consonant.begin(), p.dichotomy.consonant.end(), 8), "8 selected");
    }
    c.expect(found, "K={0,3,5,10,12,2,7} not among the maximal sets");
    try {
        extend_to_partitions(kp, g);
        c.expect(false, "odd modulus produced a strong dichotomy");
    } catch (const Error& e) {
        c.expect(e.code() == ErrorCode::no_strong_dichotomy, "wrong error for odd modulus");
    }
    return c;
}

Check generator_criterion_equivalence()
{
    Check c;
    int checked = 0;
    for (int n : {6, 10, 12, 15, 20, 30})
        for (auto [p, q] : standard_pairs(n)) {
            auto s = sym(n, {p, q});
            CayleyGraph g(s, Orientation::unoriented);
            auto d = oracle::floyd(n, Ints(s.elements().begin(), s.elements().end()));
            for (const auto& f : automorphisms(ModRing(n))) {
                const bool by_gens = is_isometry_by_generators(f, s);
                c.expect(by_gens == is_isometry_bruteforce(g, f), "disagreement with brute force at n=" + std::to_string(n));
                c.expect(by_gens == oracle::pointwise_isometry(d, oracle::table(n, {f.multiplier(), 0})),
                         "disagreement with Floyd oracle at n=" + std::to_string(n));
                ++checked;
            }
        }
    c.detail = c.ok ? std::to_string(checked) + " automorphisms agree" : c.detail;
    return c;
}

Check metric_properties()
{
    Check c;
    long violations = 0;
    for (int n : {6, 10, 12, 15, 20, 30})
        for (auto [p, q] : standard_pairs(n)) {
            CayleyGraph g(GeneratorSet(ModRing(n), {p, q}), Orientation::unoriented);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const int dab = g.distance(a, b);
                    if (dab != g.distance(b, a)) ++violations;
                    if ((dab == 0) != (a == b)) ++violations;
                    for (int x = 0; x < n; ++x) {
                        if (g.distance(a, x) > dab + g.distance(b, x)) ++violations;
                        if (dab != g.distance((a + x) % n, (b + x) % n)) ++violations;
                    }
                }
        }
    c.expect(violations == 0, std::to_string(violations) + " violations");
    if (c.ok) c.detail = "zero violations";
    return c;
}

Check golden_sequences()
{
    Check c;
    auto head = [](const CircleOfFifths& cf) { return Ints(cf.sequence.begin(), cf.sequence.end() - 1); };
    c.expect(head(circle_of_fifths(make_system(4, 3))) == Ints{0, 7, 2, 9, 4, 11, 6, 1, 8, 3, 10, 5}, "Z_12 circle");
    c.expect(head(circle_of_fifths(make_system(5, 2))) == Ints{0, 7, 4, 1, 8, 5, 2, 9, 6, 3}, "Z_10 circle");
    c.expect(head(circle_of_fifths(make_system(3, 2))) == Ints{0, 5, 4, 3, 2, 1}, "Z_6 circle");

    const std::vector<std::tuple<int, int, Quality, Ints>> scales{
        {4, 3, Quality::major, {0, 2, 4, 5, 7, 9, 11, 0}},
        {4, 3, Quality::minor, {0, 2, 3, 5, 7, 8, 10, 0}},
        {5, 2, Quality::major, {0, 2, 4, 5, 7, 0}},
        {5, 2, Quality::minor, {0, 2, 4, 6, 7, 0}},
        {5, 3, Quality::major, {0, 2, 4, 5, 7, 8, 10, 12, 13, 0}},
        {5, 3, Quality::minor, {0, 2, 3, 5, 7, 8, 10, 11, 0}},
        {6, 5, Quality::major, {0, 2, 4, 6, 8, 10, 11, 13, 15, 17, 19, 21, 22, 24, 26, 28, 0}},
        {6, 5, Quality::minor, {0, 2, 4, 5, 7, 9, 11, 12, 14, 16, 18, 20, 22, 24, 26, 27, 0}},
    };
    for (const auto& [p, q, qual, notes] : scales)
        c.expect(scale(make_system(p, q), 0, qual).notes == notes,
                 "Z_" + std::to_string(p * q) + " " + to_string(qual) + " scale");

    c.expect(largest_chord_within_octave(make_system(4, 3), 0, Quality::major).notes == Ints{0, 4, 7, 11}, "Z_12 chord");
    c.expect(largest_chord_within_octave(make_system(5, 3), 1, Quality::minor).notes == Ints{1, 4, 9, 12}, "Z_15 chord");
    c.expect(largest_chord_within_octave(make_system(6, 5), 0, Quality::major).notes == Ints{0, 6, 11, 17, 22, 28},
             "Z_30 chord");
    return c;
}

Check involution_law()
{
    Check c;
    long disagreements = 0, maps = 0;
    for (int n = 2; n <= 30; ++n)
        for (const auto& t : affine_maps(ModRing(n))) {
            bool pointwise = true;
            for (int x = 0; x < n; ++x) pointwise = pointwise && t(t(x)) == x;
            if (pointwise != is_involution(t)) ++disagreements;
            ++maps;
        }
    c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements");
    if (c.ok) c.detail = std::to_string(maps) + " maps, zero disagreements";
    return c;
}

Check audio_properties()
{
    Check c;
    auto tone = pure_tone({440.0, 1.0});
    c.expect(tone.size() == 44100, "sample count");
    for (double v : tone.samples) c.expect(v >= -1.0 && v <= 1.0, "sample outside [-1,1]");

    const int n = static_cast<int>(tone.size());
    std::vector<double> in(tone.samples);
    std::vector<fftw_complex> out(n / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.data(), out.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    int peak = 1;
    for (int k = 1; k <= n / 2; ++k)
        if (std::hypot(out[k][0], out[k][1]) > std::hypot(out[peak][0], out[peak][1])) peak = k;
    const double peak_hz = static_cast<double>(peak) * tone.sample_rate / n;
    c.expect(std::abs(peak_hz - 440.0) <= 1.0, "spectral peak at " + std::to_string(peak_hz));

    auto path = std::filesystem::temp_directory_path() / "cayleytones_acceptance.wav";
    write_wav(tone, path);
    auto back = read_wav(path);
    std::filesystem::remove(path);
    c.expect(back.size() == tone.size(), "round-trip length");
    for (std::size_t i = 0; i < std::min(back.size(), tone.size()); ++i)
        c.expect(std::abs(back.samples[i] - tone.samples[i]) <= 1.0 / 32768.0, "round-trip error too large");

    for (auto [p, q] : {std::pair{4, 3}, {5, 2}, {5, 3}, {6, 5}}) {
        auto m = make_system(p, q);
        const double step = std::pow(2.0, 1.0 / m.n());
        for (int k = 0; k < 2 * m.n(); ++k)
            c.expect(std::abs(note_frequency(m, k + 1) / note_frequency(m, k) / step - 1.0) <= 1e-12,
                     "frequency ratio in Z_" + std::to_string(m.n()));
    }
    return c;
}

Check oriented_refinement()
{
    Check c;
    auto s = sym(12, {3, 4});
    KPrime kp(s);
    auto rep = extend_to_partitions(kp, CayleyGraph(s, Orientation::unoriented));
    CayleyGraph oriented(GeneratorSet(ModRing(12), {3, 4}), Orientation::oriented);
    c.expect(oriented.oriented_path_length(0, 7) == 2, "oriented length of 7");
    c.expect(oriented.oriented_path_length(0, 9) == 3, "oriented length of 9");
    auto d = oracle::floyd(12, {3, 4});
    c.expect(d[0][7] == 2 && d[0][9] == 3, "Floyd oracle disagrees");
    c.expect(minimal_oriented_refinement(rep.partitions, kp, oriented) == fux_dichotomy(), "did not select Fux");
    return c;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"unique strong witness for the Fux dichotomy in Z_12", unique_fux_witness},
        {"four partitions extending K' in Z_12", four_partitions_z12},
        {"Z_10 weak witnesses and extensions", z10_reproduction},
        {"Z_15 weak witnesses and maximal extension", z15_reproduction},
        {"generator criterion matches brute-force isometry", generator_criterion_equivalence},
        {"graph metric properties", metric_properties},
        {"golden circles, scales and chords", golden_sequences},
        {"affine involution law for n <= 30", involution_law},
        {"audio properties", audio_properties},
        {"oriented refinement selects Fux", oriented_refinement},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= 5.0) {
            result.ok = false;
            result.detail = "took " + std::to_string(secs) + " s";
        }
        if (!result.ok) ++failures;
        std::printf("%s criterion %zu: %s (%.3f s)%s%s\n", result.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), secs, result.detail.empty() ? "" : " - ", result.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
