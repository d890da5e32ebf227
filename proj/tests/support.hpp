// Shared fixtures and generators for the unit tests.
#pragma once

#include <random>
#include <vector>

#include "bdtwist.hpp"

namespace bdtwist::testing {

inline std::vector<size_t> all_letters(size_t r) {
    std::vector<size_t> v(r);
    for (size_t i = 0; i < r; ++i) v[i] = i;
    return v;
}

/// τ(α1) = α2 on A2.
inline BDTriple cg_triple() { return {{0}, {1}}; }

/// The unique form compatible with cg_triple(), u(α1, α2) = 1.
inline CompatibleForm cg_form() {
    RationalMatrix u(2, 2);
    u(0, 1) = 1;
    u(1, 0) = -1;
    return CompatibleForm(RootDatum::build('A', 2), u);
}

/// τ(α1) = α3 on A3; orthogonal, so u = 0 is compatible.
inline BDTriple disjoint_a3_triple() { return {{0}, {2}}; }

inline Rational random_rational(std::mt19937& rng, int span = 3, int max_den = 3) {
    std::uniform_int_distribution<int> num(-span, span), den(1, max_den);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

/// Random antisymmetric u with small rational entries.
inline RationalMatrix random_antisymmetric(size_t r, std::mt19937& rng) {
    RationalMatrix u(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j) {
            Rational x = random_rational(rng);
            u(i, j) = x;
            u(j, i) = -x;
        }
    return u;
}

inline Laurent random_laurent(std::mt19937& rng, int terms = 3) {
    std::uniform_int_distribution<int> count(0, terms), exp(-6, 6), eden(1, 3);
    Laurent x;
    int k = count(rng);
    for (int i = 0; i < k; ++i) {
        Rational e(exp(rng), eden(rng));
        e.canonicalize();
        Rational c = random_rational(rng, 4, 2);
        x += Laurent::monomial(c, e);
    }
    return x;
}

}  // namespace bdtwist::testing
