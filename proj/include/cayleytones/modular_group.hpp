#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cayleytones/error.hpp"

namespace cayleytones {

/// The ring (Z_n, +, *) with n >= 2.
class ModRing {
public:
    explicit ModRing(int n);

    int modulus() const noexcept { return n_; }

    /// Canonical representative of v in [0, n-1]; accepts negative input.
    int reduce(std::int64_t v) const noexcept;

    friend bool operator==(ModRing, ModRing) = default;

private:
    int n_;
};

/// A residue class mod n stored canonically in [0, n-1].
class ModElement {
public:
    ModElement(ModRing ring, std::int64_t value)
        : ring_(ring), value_(ring.reduce(value)) {}

    ModRing ring() const noexcept { return ring_; }
    int value() const noexcept { return value_; }

    friend bool operator==(const ModElement&, const ModElement&) = default;

private:
    ModRing ring_;
    int value_;
};

ModElement add(const ModElement& a, const ModElement& b);
ModElement sub(const ModElement& a, const ModElement& b);
ModElement mul(const ModElement& a, const ModElement& b);
ModElement neg(const ModElement& a);

inline ModElement operator+(const ModElement& a, const ModElement& b) { return add(a, b); }
inline ModElement operator-(const ModElement& a, const ModElement& b) { return sub(a, b); }
inline ModElement operator*(const ModElement& a, const ModElement& b) { return mul(a, b); }
inline ModElement operator-(const ModElement& a) { return neg(a); }

/// U(n): residues coprime to n, ascending.
std::vector<int> units(ModRing ring);

bool is_unit(ModRing ring, std::int64_t h);

/// x -> h*x with h in U(n).
class Automorphism {
public:
    Automorphism(ModRing ring, std::int64_t multiplier);

    ModRing ring() const noexcept { return ring_; }
    int multiplier() const noexcept { return h_; }

    int operator()(int x) const noexcept;
    ModElement apply(const ModElement& x) const;

    friend bool operator==(const Automorphism&, const Automorphism&) = default;

private:
    ModRing ring_;
    int h_;
};

/// One automorphism per unit, ordered by multiplier.
std::vector<Automorphism> automorphisms(ModRing ring);

/// x -> h*x + w, kept in normal form with h a unit and w in [0, n-1].
class AffineMap {
public:
    AffineMap(ModRing ring, std::int64_t multiplier, std::int64_t offset);
    AffineMap(const Automorphism& f, std::int64_t offset)
        : AffineMap(f.ring(), f.multiplier(), offset) {}

    static AffineMap identity(ModRing ring) { return {ring, 1, 0}; }

    ModRing ring() const noexcept { return ring_; }
    int multiplier() const noexcept { return h_; }
    int offset() const noexcept { return w_; }
    Automorphism linear_part() const { return {ring_, h_}; }

    int operator()(int x) const noexcept;
    ModElement apply(const ModElement& x) const;

    /// Images of 0..n-1, i.e. the map as a permutation table.
    std::vector<int> table() const;

    /// "5x+2" style rendering.
    std::string to_string() const;

    friend bool operator==(const AffineMap&, const AffineMap&) = default;
    friend auto operator<=>(const AffineMap& a, const AffineMap& b) {
        if (auto c = a.h_ <=> b.h_; c != 0) return c;
        return a.w_ <=> b.w_;
    }

private:
    ModRing ring_;
    int h_;
    int w_;
};

/// outer o inner, i.e. x -> outer(inner(x)).
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

/// h^2 = 1 and (h+1)w = 0 mod n.
bool is_involution(const AffineMap& t);

std::vector<int> fixed_points(const AffineMap& t);

/// All |U(n)|*n affine maps ordered by (multiplier, offset).
std::vector<AffineMap> affine_maps(ModRing ring);

} // namespace cayleytones
