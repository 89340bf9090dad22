#include "cayleytones/modular_group.hpp"

#include <numeric>

namespace cayleytones {

namespace {

void require_same_ring(ModRing a, ModRing b)
{
    if (a != b) {
        throw Error(ErrorCode::modulus_mismatch,
                    "operands live in Z_" + std::to_string(a.modulus()) + " and Z_" +
                        std::to_string(b.modulus()));
    }
}

} // namespace

ModRing::ModRing(int n) : n_(n)
{
    if (n < 2) throw Error(ErrorCode::invalid_argument, "modulus must be at least 2, got " + std::to_string(n));
}

int ModRing::reduce(std::int64_t v) const noexcept
{
    auto r = v % n_;
    if (r < 0) r += n_;
    return static_cast<int>(r);
}

ModElement add(const ModElement& a, const ModElement& b)
{
    require_same_ring(a.ring(), b.ring());
    return {a.ring(), std::int64_t{a.value()} + b.value()};
}

ModElement sub(const ModElement& a, const ModElement& b)
{
    return add(a, neg(b));
}

ModElement mul(const ModElement& a, const ModElement& b)
{
    require_same_ring(a.ring(), b.ring());
    return {a.ring(), std::int64_t{a.value()} * b.value()};
}

ModElement neg(const ModElement& a)
{
    return {a.ring(), a.ring().modulus() - a.value()};
}

bool is_unit(ModRing ring, std::int64_t h)
{
    return std::gcd<std::int64_t, std::int64_t>(ring.reduce(h), ring.modulus()) == 1;
}

std::vector<int> units(ModRing ring)
{
    std::vector<int> out;
    for (int k = 1; k < ring.modulus(); ++k)
        if (std::gcd(k, ring.modulus()) == 1) out.push_back(k);
    return out;
}

Automorphism::Automorphism(ModRing ring, std::int64_t multiplier)
    : ring_(ring), h_(ring.reduce(multiplier))
{
    if (!is_unit(ring, h_)) {
        throw Error(ErrorCode::not_a_unit, std::to_string(h_) + " is not a unit mod " +
                                               std::to_string(ring.modulus()));
    }
}

int Automorphism::operator()(int x) const noexcept
{
    return ring_.reduce(std::int64_t{h_} * x);
}

ModElement Automorphism::apply(const ModElement& x) const
{
    require_same_ring(ring_, x.ring());
    return {ring_, (*this)(x.value())};
}

std::vector<Automorphism> automorphisms(ModRing ring)
{
    std::vector<Automorphism> out;
    for (int h : units(ring)) out.emplace_back(ring, h);
    return out;
}

AffineMap::AffineMap(ModRing ring, std::int64_t multiplier, std::int64_t offset)
    : ring_(ring), h_(ring.reduce(multiplier)), w_(ring.reduce(offset))
{
    if (!is_unit(ring, h_)) {
        throw Error(ErrorCode::not_a_unit, "affine multiplier " + std::to_string(h_) +
                                               " is not a unit mod " + std::to_string(ring.modulus()));
    }
}

int AffineMap::operator()(int x) const noexcept
{
    return ring_.reduce(std::int64_t{h_} * x + w_);
}

ModElement AffineMap::apply(const ModElement& x) const
{
    require_same_ring(ring_, x.ring());
    return {ring_, (*this)(x.value())};
}

std::vector<int> AffineMap::table() const
{
    std::vector<int> out(static_cast<std::size_t>(ring_.modulus()));
    for (int x = 0; x < ring_.modulus(); ++x) out[static_cast<std::size_t>(x)] = (*this)(x);
    return out;
}

std::string AffineMap::to_string() const
{
    std::string s = h_ == 1 ? "x" : std::to_string(h_) + "x";
    if (w_ != 0) s += "+" + std::to_string(w_);
    return s;
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner)
{
    require_same_ring(outer.ring(), inner.ring());
    const std::int64_t h1 = outer.multiplier(), w1 = outer.offset();
    const std::int64_t h2 = inner.multiplier(), w2 = inner.offset();
    return {outer.ring(), h1 * h2, h1 * w2 + w1};
}

bool is_involution(const AffineMap& t)
{
    const auto ring = t.ring();
    const std::int64_t h = t.multiplier(), w = t.offset();
    return ring.reduce(h * h) == 1 % ring.modulus() && ring.reduce((h + 1) * w) == 0;
}

std::vector<int> fixed_points(const AffineMap& t)
{
    std::vector<int> out;
    for (int x = 0; x < t.ring().modulus(); ++x)
        if (t(x) == x) out.push_back(x);
    return out;
}

std::vector<AffineMap> affine_maps(ModRing ring)
{
    std::vector<AffineMap> out;
    const auto us = units(ring);
    out.reserve(us.size() * static_cast<std::size_t>(ring.modulus()));
    for (int h : us)
        for (int w = 0; w < ring.modulus(); ++w) out.emplace_back(ring, h, w);
    return out;
}

} // namespace cayleytones
