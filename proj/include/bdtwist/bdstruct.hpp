/**
 * @file bdstruct.hpp
 * @brief Disjoint Belavin-Drinfeld triples, compatible alternating forms and
 * the maps derived from a form: u±, φ±, the tilde isomorphism, the
 * projections onto ℚΦ_i and the lattices L_i.
 *
 * Simple roots are indexed from 0 here.  The JSON layer shifts to 1-based.
 */
#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bdtwist/rootdata.hpp"

namespace bdtwist {

/// τ : Π₁ → Π₂ stored as matched lists, τ(pi1[k]) = pi2[k].
struct BDTriple {
    std::vector<size_t> pi1;
    std::vector<size_t> pi2;

    bool empty() const { return pi1.empty(); }

    std::optional<size_t> tau(size_t a) const {
        for (size_t k = 0; k < pi1.size(); ++k)
            if (pi1[k] == a) return pi2[k];
        return std::nullopt;
    }
    std::optional<size_t> tau_inverse(size_t b) const {
        for (size_t k = 0; k < pi2.size(); ++k)
            if (pi2[k] == b) return pi1[k];
        return std::nullopt;
    }
    const std::vector<size_t>& side(int i) const { return i == 1 ? pi1 : pi2; }

    friend bool operator==(const BDTriple& a, const BDTriple& b) { return a.pi1 == b.pi1 && a.pi2 == b.pi2; }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_triple(const RootDatum& rd, const BDTriple& t) {
    ValidationReport rep;
    auto& v = rep.violations;
    if (t.pi1.size() != t.pi2.size()) {
        v.push_back("size mismatch: tau must be a bijection");
        return rep;
    }
    for (auto a : t.pi1)
        if (a >= rd.rank()) v.push_back("root index out of range: " + std::to_string(a + 1));
    for (auto b : t.pi2)
        if (b >= rd.rank()) v.push_back("root index out of range: " + std::to_string(b + 1));
    if (!v.empty()) return rep;
    auto dup = [](std::vector<size_t> s) {
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) != s.end();
    };
    if (dup(t.pi1)) v.push_back("pi1 has repeated roots");
    if (dup(t.pi2)) v.push_back("pi2 has repeated roots (tau not injective)");
    for (auto a : t.pi1)
        if (std::find(t.pi2.begin(), t.pi2.end(), a) != t.pi2.end())
            v.push_back("overlap: alpha" + std::to_string(a + 1) + " lies in pi1 and pi2");
    for (size_t i = 0; i < t.pi1.size(); ++i)
        for (size_t j = i; j < t.pi1.size(); ++j) {
            auto lhs = rd.gram()(t.pi2[i], t.pi2[j]);
            auto rhs = rd.gram()(t.pi1[i], t.pi1[j]);
            if (lhs != rhs)
                v.push_back("not an isometry at (alpha" + std::to_string(t.pi1[i] + 1) + ", alpha" +
                            std::to_string(t.pi1[j] + 1) + ")");
        }
    // Nilpotency: some iterate of tau leaves pi1.
    for (auto a : t.pi1) {
        size_t cur = a;
        bool left = false;
        for (size_t k = 0; k <= t.pi1.size(); ++k) {
            auto nxt = t.tau(cur);
            if (!nxt) {
                left = true;
                break;
            }
            cur = *nxt;
        }
        if (!left) v.push_back("tau is not nilpotent at alpha" + std::to_string(a + 1));
    }
    return rep;
}

/// All triples with Π₁, Π₂ disjoint, nonempty and τ an isometry.
/// Ordered by the bitmask of Π₁, then of Π₂, then lexicographically in τ.
inline std::vector<BDTriple> enumerate_disjoint(const RootDatum& rd) {
    std::vector<BDTriple> out;
    size_t r = rd.rank();
    if (r >= 8 * sizeof(unsigned long) - 1) throw DomainError("rank too large to enumerate");
    auto members = [r](unsigned long m) {
        std::vector<size_t> s;
        for (size_t i = 0; i < r; ++i)
            if (m >> i & 1UL) s.push_back(i);
        return s;
    };
    for (unsigned long m1 = 1; m1 < (1UL << r); ++m1)
        for (unsigned long m2 = 1; m2 < (1UL << r); ++m2) {
            if (m1 & m2) continue;
            auto s1 = members(m1), s2 = members(m2);
            if (s1.size() != s2.size()) continue;
            do {
                BDTriple t{s1, s2};
                if (validate_triple(rd, t).ok()) out.push_back(t);
            } while (std::next_permutation(s2.begin(), s2.end()));
        }
    return out;
}

/// Exact antisymmetric form on ℚΦ together with every derived map.
class CompatibleForm {
public:
    CompatibleForm() = default;
    CompatibleForm(const RootDatum& rd, RationalMatrix u) : rd_(rd), u_(std::move(u)) {
        size_t n = rd.rank();
        if (u_.rows() != n || u_.cols() != n) throw IncompatibleForm("u has the wrong shape");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (u_(i, j) != -u_(j, i)) throw IncompatibleForm("u is not antisymmetric");
        // u(λ,μ) = (φλ, μ) in simple-root coordinates gives φ = S⁻¹ uᵀ = -S⁻¹ u.
        auto sinv = inverse(rd.gram());
        phi_ = Rational(-1) * (*sinv * u_);
        auto id = RationalMatrix::identity(n);
        phi_plus_ = phi_ + id;
        phi_minus_ = phi_ - id;
        auto pinv = inverse(phi_plus_);
        if (!pinv) throw IncompatibleForm("phi_+ is singular");
        tilde_ = Rational(-1) * (*pinv * phi_minus_);
        auto tinv = inverse(tilde_);
        if (!tinv) throw IncompatibleForm("tilde map is singular");
        tilde_inv_ = *tinv;
        u_plus_ = u_ + rd.gram();
        u_minus_ = u_ - rd.gram();
    }

    static CompatibleForm zero(const RootDatum& rd) { return CompatibleForm(rd, RationalMatrix(rd.rank(), rd.rank())); }

    const RootDatum& root_datum() const { return rd_; }
    const RationalMatrix& u() const { return u_; }
    const RationalMatrix& phi() const { return phi_; }
    const RationalMatrix& phi_plus() const { return phi_plus_; }
    const RationalMatrix& phi_minus() const { return phi_minus_; }
    const RationalMatrix& tilde_matrix() const { return tilde_; }

    Rational uf(const Weight& a, const Weight& b) const { return bilinear(u_, a, b); }
    Rational up(const Weight& a, const Weight& b) const { return bilinear(u_plus_, a, b); }
    Rational um(const Weight& a, const Weight& b) const { return bilinear(u_minus_, a, b); }

    struct Forms {
        Rational u, u_plus, u_minus;
    };
    Forms u_forms(const Weight& a, const Weight& b) const { return {uf(a, b), up(a, b), um(a, b)}; }

    Weight tilde(const Weight& l) const { return apply(tilde_, l); }
    Weight tilde_inverse(const Weight& l) const { return apply(tilde_inv_, l); }

    enum class PKind { P, PPlus, PMinus };
    /// q-exponent of p, p₊ or p₋.
    Rational p_exponent(PKind kind, const Weight& a, const Weight& b) const {
        switch (kind) {
            case PKind::P:
                return uf(a, b) / 2;
            case PKind::PPlus:
                return up(a, b);
            case PKind::PMinus:
                return um(a, b);
        }
        return 0;
    }

    /// π_i^+ (sign > 0) solves u₋(x, μ) = u₋(λ, μ); π_i^- solves
    /// u₋(μ, x) = u₋(μ, λ); μ ranges over `letters`, x ∈ ℚ-span of letters.
    Weight project(const std::vector<size_t>& letters, int sign, const Weight& l) const {
        size_t k = letters.size();
        Weight out(rd_.rank());
        if (k == 0) return out;
        RationalMatrix a(k, k);
        std::vector<Rational> b(k);
        for (size_t row = 0; row < k; ++row) {
            Weight mu = rd_.simple_root(letters[row]);
            for (size_t col = 0; col < k; ++col) {
                Weight x = rd_.simple_root(letters[col]);
                a(row, col) = sign > 0 ? um(x, mu) : um(mu, x);
            }
            b[row] = sign > 0 ? um(l, mu) : um(mu, l);
        }
        if (determinant(a) == 0) throw DegenerateRestriction("u_- is degenerate on the span of the given roots");
        auto x = solve(a, b);
        for (size_t col = 0; col < k; ++col) out[letters[col]] = (*x)[col];
        return out;
    }

    Weight project(const BDTriple& t, int i, int sign, const Weight& l) const { return project(t.side(i), sign, l); }

private:
    RootDatum rd_;
    RationalMatrix u_, u_plus_, u_minus_, phi_, phi_plus_, phi_minus_, tilde_, tilde_inv_;
};

struct LatticePair {
    Lattice minus;  ///< L_i = π_i^-(Ω)
    Lattice plus;   ///< π_i^+(Ω)
};

inline LatticePair sublattice_L(const CompatibleForm& cf, const std::vector<size_t>& letters, const Lattice& omega) {
    std::vector<Weight> gm, gp;
    for (const auto& b : omega.basis()) {
        gm.push_back(cf.project(letters, -1, b));
        gp.push_back(cf.project(letters, +1, b));
    }
    size_t r = cf.root_datum().rank();
    return {Lattice::from_generators(gm, r), Lattice::from_generators(gp, r)};
}

/// Affine space {particular + span(basis)} of compatible forms.
struct SolutionSpace {
    bool consistent = false;
    RationalMatrix particular;
    std::vector<RationalMatrix> basis;
    size_t dim() const { return basis.size(); }
};

namespace detail {
inline std::vector<std::pair<size_t, size_t>> upper_pairs(size_t r) {
    std::vector<std::pair<size_t, size_t>> p;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j) p.emplace_back(i, j);
    return p;
}

inline RationalMatrix antisym_from(const std::vector<Rational>& x, size_t r) {
    RationalMatrix u(r, r);
    auto pairs = upper_pairs(r);
    for (size_t k = 0; k < pairs.size(); ++k) {
        auto [i, j] = pairs[k];
        u(i, j) = x[k];
        u(j, i) = -x[k];
    }
    return u;
}
}  // namespace detail

/// Linear constraints for compatibility: rows act on the unknowns u_ij, i<j.
/// Compatibility 1 reads u(τα,τβ) - u(α,β) = 0, compatibility 2 reads
/// u(α,τβ) = -(α,τβ).
inline std::pair<RationalMatrix, std::vector<Rational>> compatibility_system(const RootDatum& rd, const BDTriple& t) {
    size_t r = rd.rank();
    auto pairs = detail::upper_pairs(r);
    auto coeff = [&](std::vector<Rational>& row, size_t a, size_t b, const Rational& s) {
        if (a == b) return;
        if (a < b)
            row[std::find(pairs.begin(), pairs.end(), std::make_pair(a, b)) - pairs.begin()] += s;
        else
            row[std::find(pairs.begin(), pairs.end(), std::make_pair(b, a)) - pairs.begin()] -= s;
    };
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    size_t k = t.pi1.size();
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            std::vector<Rational> row(pairs.size());
            coeff(row, t.pi2[i], t.pi2[j], 1);
            coeff(row, t.pi1[i], t.pi1[j], -1);
            rows.push_back(row);
            rhs.push_back(0);
        }
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            std::vector<Rational> row(pairs.size());
            coeff(row, t.pi1[i], t.pi2[j], 1);
            rows.push_back(row);
            rhs.push_back(-rd.gram()(t.pi1[i], t.pi2[j]));
        }
    RationalMatrix a(rows.size(), pairs.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < pairs.size(); ++j) a(i, j) = rows[i][j];
    return {a, rhs};
}

inline SolutionSpace solve_compatible(const RootDatum& rd, const BDTriple& t) {
    SolutionSpace s;
    size_t r = rd.rank();
    auto [a, rhs] = compatibility_system(rd, t);
    size_t m = r * (r - 1) / 2;
    if (a.rows() == 0) {
        s.consistent = true;
        s.particular = RationalMatrix(r, r);
        for (size_t k = 0; k < m; ++k) {
            std::vector<Rational> e(m);
            e[k] = 1;
            s.basis.push_back(detail::antisym_from(e, r));
        }
        return s;
    }
    auto x = solve(a, rhs);
    if (!x) return s;
    s.consistent = true;
    s.particular = detail::antisym_from(*x, r);
    for (const auto& v : nullspace(a)) s.basis.push_back(detail::antisym_from(v, r));
    return s;
}

/// Checks both compatibility conditions for a concrete u.
inline ValidationReport check_compatible(const RootDatum& rd, const BDTriple& t, const RationalMatrix& u) {
    ValidationReport rep;
    size_t k = t.pi1.size();
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (u(t.pi2[i], t.pi2[j]) != u(t.pi1[i], t.pi1[j]))
                rep.violations.push_back("compatibility 1 fails at (alpha" + std::to_string(t.pi1[i] + 1) +
                                         ", alpha" + std::to_string(t.pi1[j] + 1) + ")");
            if (u(t.pi1[i], t.pi2[j]) + rd.gram()(t.pi1[i], t.pi2[j]) != 0)
                rep.violations.push_back("compatibility 2 fails at (alpha" + std::to_string(t.pi1[i] + 1) +
                                         ", tau alpha" + std::to_string(t.pi1[j] + 1) + ")");
        }
    return rep;
}

/// Whether (α, β) = 0 for all α ∈ Π₁, β ∈ Π₂.
inline bool completely_disjoint(const RootDatum& rd, const BDTriple& t) {
    for (auto a : t.pi1)
        for (auto b : t.pi2)
            if (rd.gram()(a, b) != 0) return false;
    return true;
}

}  // namespace bdtwist
