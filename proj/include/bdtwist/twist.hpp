/**
 * @file twist.hpp
 * @brief The cocycle γ on C_p[SL(n)] built from a disjoint triple, its
 * convolution inverse, the cocycle and associativity checks, the twisted
 * product and the twisted R-matrix.
 *
 * γ is evaluated on matrix coefficients as
 *
 *     γ(x, y) = σ₀(ρ₁⁻(x), ρ₂⁺(y)),
 *
 * the counit collapse of γ₀(a⊗b, c⊗d) = σ₀(a, d) ε(b) ε(c) composed with
 * φ* = (ρ₁⁻⊗ρ₂⁺)Δ.  The inverse is γ⁻¹(x, y) = γ(S⁻¹x, y).  Both are
 * extended to products of generators through
 *
 *     γ(xx', y) = Σ γ(x, y₂) γ(x', y₁),     γ(x, yy') = Σ γ(x₁, y) γ(x₂, y'),
 *     γ⁻¹(xx', y) = Σ γ⁻¹(x', y₂) γ⁻¹(x, y₁),  γ⁻¹(x, yy') = Σ γ⁻¹(x₂, y) γ⁻¹(x₁, y').
 */
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bdtwist/qfa.hpp"

namespace bdtwist {

/// Product t_{r1 c1} t_{r2 c2} … of matrix coefficients.
struct Monomial {
    std::vector<size_t> rows, cols;

    static Monomial gen(size_t i, size_t j) { return {{i}, {j}}; }
    size_t degree() const { return rows.size(); }
    friend Monomial operator*(Monomial a, const Monomial& b) {
        a.rows.insert(a.rows.end(), b.rows.begin(), b.rows.end());
        a.cols.insert(a.cols.end(), b.cols.begin(), b.cols.end());
        return a;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        return std::tie(a.rows, a.cols) < std::tie(b.rows, b.cols);
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.rows == b.rows && a.cols == b.cols; }
    std::string str() const {
        std::string s;
        for (size_t k = 0; k < rows.size(); ++k) s += "t" + std::to_string(rows[k] + 1) + std::to_string(cols[k] + 1);
        return s.empty() ? "1" : s;
    }
};

namespace detail {
/// All multi-indices in [n]^d, lexicographic.
inline std::vector<std::vector<size_t>> multi_indices(size_t n, size_t d) {
    std::vector<std::vector<size_t>> out{{}};
    for (size_t k = 0; k < d; ++k) {
        std::vector<std::vector<size_t>> next;
        for (const auto& p : out)
            for (size_t a = 0; a < n; ++a) {
                auto q = p;
                q.push_back(a);
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    return out;
}

inline Fraction counit(const Monomial& x) { return x.rows == x.cols ? Fraction(1) : Fraction(0); }
}  // namespace detail

class Cocycle {
public:
    Cocycle(Pairing pr, BDTriple t, const Lattice& omega, size_t degree_cap = 3)
        : pr_(std::move(pr)), t_(std::move(t)), degree_cap_(degree_cap) {
        const auto& cf = pr_.form();
        auto rep = validate_triple(cf.root_datum(), t_);
        if (!rep.ok()) throw InvalidTriple(rep.violations.front());
        auto comp = check_compatible(cf.root_datum(), t_, cf.u());
        if (!comp.ok()) throw IncompatibleForm(comp.violations.front());
        v_ = vector_rep(cf);
        n_ = v_.dim;
        plus_lattice_ = sublattice_L(cf, t_.pi1, omega).plus;
        minus_lattice_ = sublattice_L(cf, t_.pi2, omega).minus;
        x_.resize(n_ * n_);
        xs_.resize(n_ * n_);
        y_.resize(n_ * n_);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) {
                x_[i * n_ + j] = invert_minus(v_, i, j, false);
                xs_[i * n_ + j] = invert_minus(v_, i, j, true);
                y_[i * n_ + j] = invert_plus(v_, i, j);
            }
        g_.assign(n_ * n_ * n_ * n_, Fraction());
        gi_.assign(n_ * n_ * n_ * n_, Fraction());
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j)
                for (size_t k = 0; k < n_; ++k)
                    for (size_t l = 0; l < n_; ++l) {
                        const auto& y = y_[k * n_ + l];
                        g_[idx(i, j, k, l)] = sigma0(pr_, t_, x_[i * n_ + j], y);
                        gi_[idx(i, j, k, l)] = sigma0(pr_, t_, xs_[i * n_ + j], y);
                    }
    }

    size_t n() const { return n_; }
    const BDTriple& triple() const { return t_; }
    const Pairing& pairing() const { return pr_; }
    const Module& module() const { return v_; }
    size_t degree_cap() const { return degree_cap_; }
    const Lattice& plus_lattice() const { return plus_lattice_; }
    const Lattice& minus_lattice() const { return minus_lattice_; }

    /// θ₁-preimage of ρ₁⁻(t_ij), an element of U(b⁺₁, L₁).
    const BorelElement& recovered_minus(size_t i, size_t j) const { return x_[i * n_ + j]; }
    /// ψ-pullback target: θ₂-preimage of ρ₂⁺(t_kl), an element of U(b⁻₂, L₂).
    const BorelElement& recovered_plus(size_t k, size_t l) const { return y_[k * n_ + l]; }

    const Fraction& gamma(size_t i, size_t j, size_t k, size_t l) const { return g_[idx(i, j, k, l)]; }
    const Fraction& gamma_inverse(size_t i, size_t j, size_t k, size_t l) const { return gi_[idx(i, j, k, l)]; }

    Fraction gamma(const Monomial& x, const Monomial& y) const { return extend(x, y, false); }
    Fraction gamma_inverse(const Monomial& x, const Monomial& y) const { return extend(x, y, true); }

    /// γ₀∘(φ*⊗φ*) on generators with the counits evaluated from the
    /// restricted functionals, no collapse assumed.
    Fraction gamma_direct(size_t i, size_t j, size_t k, size_t l) const {
        const auto& cf = pr_.form();
        Fraction s;
        for (size_t a = 0; a < n_; ++a) {
            Fraction eb = matrix_coefficient(cf, v_, a, j, Side::Plus, t_.pi2).counit();
            if (eb.is_zero()) continue;
            for (size_t b = 0; b < n_; ++b) {
                Fraction ec = matrix_coefficient(cf, v_, k, b, Side::Minus, t_.pi1).counit();
                if (ec.is_zero()) continue;
                auto fa = matrix_coefficient(cf, v_, i, a, Side::Minus, t_.pi1);
                auto fd = matrix_coefficient(cf, v_, b, l, Side::Plus, t_.pi2);
                s += sigma0_functionals(fa, fd) * eb * ec;
            }
        }
        return s;
    }

    /// γ on products of degree ≤ 2 by inverting matrix coefficients of V⊗V
    /// directly.  Independent of the multiplicative extension.
    Fraction gamma_tensor_oracle(const Monomial& x, const Monomial& y) const {
        if (x.degree() > 2 || y.degree() > 2 || x.degree() == 0 || y.degree() == 0)
            throw DegreeCapExceeded("the tensor oracle handles degrees 1 and 2");
        const auto& cf = pr_.form();
        auto pick = [&](const Monomial& m) -> std::pair<const Module*, std::pair<size_t, size_t>> {
            if (m.degree() == 1) return {&v_, {m.rows[0], m.cols[0]}};
            if (!v2_) v2_ = tensor(cf, v_, v_);
            return {&*v2_, {m.rows[0] * n_ + m.rows[1], m.cols[0] * n_ + m.cols[1]}};
        };
        auto [mx, ix] = pick(x);
        auto [my, iy] = pick(y);
        auto fx = matrix_coefficient(cf, *mx, ix.first, ix.second, Side::Minus, t_.pi1);
        auto fy = matrix_coefficient(cf, *my, iy.first, iy.second, Side::Plus, t_.pi2);
        return sigma0_functionals(fx, fy);
    }

    Fraction sigma0_functionals(const Functional& c, const Functional& b) const {
        auto x = theta_invert(pr_, c, t_.pi1, plus_lattice_);
        auto y = theta_invert(pr_, b, t_.pi2, minus_lattice_);
        return sigma0(pr_, t_, x, y);
    }

    /// G[(i,k),(a,b)] = γ(t_ia, t_kb).
    FractionMatrix matrix() const { return table(false, false); }
    /// G21[(i,k),(a,b)] = γ(t_kb, t_ia).
    FractionMatrix matrix21() const { return table(false, true); }
    /// Gi[(c,d),(j,l)] = γ⁻¹(t_cj, t_dl).
    FractionMatrix inverse_matrix() const { return table(true, false); }

private:
    Pairing pr_;
    BDTriple t_;
    size_t degree_cap_;
    Module v_;
    mutable std::optional<Module> v2_;
    size_t n_ = 0;
    Lattice plus_lattice_, minus_lattice_;
    std::vector<BorelElement> x_, xs_, y_;
    std::vector<Fraction> g_, gi_;
    mutable std::map<std::pair<Monomial, Monomial>, Fraction> memo_, memo_inv_;

    size_t idx(size_t i, size_t j, size_t k, size_t l) const { return ((i * n_ + j) * n_ + k) * n_ + l; }

    BorelElement invert_minus(const Module& m, size_t i, size_t j, bool antipode) const {
        auto f = matrix_coefficient(pr_.form(), m, i, j, Side::Minus, t_.pi1, antipode);
        return theta_invert(pr_, f, t_.pi1, plus_lattice_);
    }
    BorelElement invert_plus(const Module& m, size_t i, size_t j) const {
        auto f = matrix_coefficient(pr_.form(), m, i, j, Side::Plus, t_.pi2);
        return theta_invert(pr_, f, t_.pi2, minus_lattice_);
    }

    FractionMatrix table(bool inv, bool swapped) const {
        FractionMatrix m(n_ * n_, n_ * n_);
        for (size_t i = 0; i < n_; ++i)
            for (size_t k = 0; k < n_; ++k)
                for (size_t a = 0; a < n_; ++a)
                    for (size_t b = 0; b < n_; ++b) {
                        const auto& tab = inv ? gi_ : g_;
                        m(i * n_ + k, a * n_ + b) = swapped ? tab[idx(k, b, i, a)] : tab[idx(i, a, k, b)];
                    }
        return m;
    }

    Fraction extend(const Monomial& x, const Monomial& y, bool inv) const {
        if (x.degree() > degree_cap_ || y.degree() > degree_cap_)
            throw DegreeCapExceeded("degree " + std::to_string(std::max(x.degree(), y.degree())) +
                                    " exceeds the cap " + std::to_string(degree_cap_));
        if (x.degree() == 0) return detail::counit(y);
        if (y.degree() == 0) return detail::counit(x);
        if (x.degree() == 1 && y.degree() == 1) {
            size_t i = x.rows[0], j = x.cols[0], k = y.rows[0], l = y.cols[0];
            return inv ? gi_[idx(i, j, k, l)] : g_[idx(i, j, k, l)];
        }
        auto& memo = inv ? memo_inv_ : memo_;
        auto key = std::make_pair(x, y);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Fraction s;
        if (x.degree() > 1) {
            Monomial head = Monomial::gen(x.rows[0], x.cols[0]);
            Monomial tail{{x.rows.begin() + 1, x.rows.end()}, {x.cols.begin() + 1, x.cols.end()}};
            for (const auto& p : detail::multi_indices(n_, y.degree())) {
                Monomial y1{y.rows, p}, y2{p, y.cols};
                // γ(x x', y) = Σ γ(x, y₂) γ(x', y₁); γ⁻¹(x x', y) = Σ γ⁻¹(x', y₂) γ⁻¹(x, y₁)
                Fraction a = inv ? extend(tail, y2, true) : extend(head, y2, false);
                if (a.is_zero()) continue;
                Fraction b = inv ? extend(head, y1, true) : extend(tail, y1, false);
                if (!b.is_zero()) s += a * b;
            }
        } else {
            Monomial head = Monomial::gen(y.rows[0], y.cols[0]);
            Monomial tail{{y.rows.begin() + 1, y.rows.end()}, {y.cols.begin() + 1, y.cols.end()}};
            for (size_t p = 0; p < n_; ++p) {
                Monomial x1 = Monomial::gen(x.rows[0], p), x2 = Monomial::gen(p, x.cols[0]);
                // γ(x, y y') = Σ γ(x₁, y) γ(x₂, y'); γ⁻¹(x, y y') = Σ γ⁻¹(x₂, y) γ⁻¹(x₁, y')
                Fraction a = inv ? extend(x2, head, true) : extend(x1, head, false);
                if (a.is_zero()) continue;
                Fraction b = inv ? extend(x1, tail, true) : extend(x2, tail, false);
                if (!b.is_zero()) s += a * b;
            }
        }
        return memo.emplace(key, s).first->second;
    }
};

struct Check {
    std::string name;
    bool pass = false;
    std::string witness;
};

namespace detail {
inline std::vector<Monomial> monomials_of_degree(size_t n, size_t d) {
    std::vector<Monomial> out;
    for (const auto& r : multi_indices(n, d))
        for (const auto& c : multi_indices(n, d)) out.push_back({r, c});
    return out;
}

/// Δ(t_{R,C}) = Σ_P t_{R,P} ⊗ t_{P,C}.
inline std::vector<std::pair<Monomial, Monomial>> coproduct(const Monomial& x, size_t n) {
    std::vector<std::pair<Monomial, Monomial>> out;
    for (const auto& p : multi_indices(n, x.degree())) out.push_back({Monomial{x.rows, p}, Monomial{p, x.cols}});
    return out;
}
}  // namespace detail

/// Σσ(x₁,y₁)σ(x₂y₂,z) = Σσ(y₁,z₁)σ(x,y₂z₂) for x of the given degree and
/// y, z generators.
inline Check cocycle_check(const Cocycle& g, size_t degree = 1) {
    Check c{"cocycle_identity_degree" + std::to_string(degree), true, ""};
    size_t n = g.n();
    auto xs = detail::monomials_of_degree(n, degree);
    auto gens = detail::monomials_of_degree(n, 1);
    size_t checked = 0;
    for (const auto& x : xs) {
        auto dx = detail::coproduct(x, n);
        for (const auto& y : gens) {
            auto dy = detail::coproduct(y, n);
            for (const auto& z : gens) {
                Fraction lhs, rhs;
                for (const auto& [x1, x2] : dx)
                    for (const auto& [y1, y2] : dy) {
                        Fraction a = g.gamma(x1, y1);
                        if (!a.is_zero()) lhs += a * g.gamma(x2 * y2, z);
                    }
                auto dz = detail::coproduct(z, n);
                for (const auto& [y1, y2] : dy)
                    for (const auto& [z1, z2] : dz) {
                        Fraction a = g.gamma(y1, z1);
                        if (!a.is_zero()) rhs += a * g.gamma(x, y2 * z2);
                    }
                ++checked;
                if (lhs != rhs && c.pass) {
                    c.pass = false;
                    c.witness = "x=" + x.str() + " y=" + y.str() + " z=" + z.str() + ": " + lhs.str() + " vs " + rhs.str();
                }
            }
        }
    }
    if (c.pass) c.witness = std::to_string(checked) + " triples";
    return c;
}

/// Σ γ(x₁,y₁) γ⁻¹(x₂,y₂) = ε(x)ε(y) and the reversed convolution, on all
/// pairs of generators.
inline Check convolution_inverse_check(const Cocycle& g) {
    Check c{"convolution_inverse", true, ""};
    size_t n = g.n();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t l = 0; l < n; ++l) {
                    Fraction s1, s2;
                    for (size_t a = 0; a < n; ++a)
                        for (size_t b = 0; b < n; ++b) {
                            s1 += g.gamma(i, a, k, b) * g.gamma_inverse(a, j, b, l);
                            s2 += g.gamma_inverse(i, a, k, b) * g.gamma(a, j, b, l);
                        }
                    Fraction e = (i == j && k == l) ? Fraction(1) : Fraction(0);
                    if ((s1 != e || s2 != e) && c.pass) {
                        c.pass = false;
                        c.witness = "(t" + std::to_string(i + 1) + std::to_string(j + 1) + ", t" + std::to_string(k + 1) +
                                    std::to_string(l + 1) + "): " + s1.str() + " / " + s2.str();
                    }
                }
    if (c.pass) c.witness = std::to_string(n * n * n * n) + " pairs, both orders";
    return c;
}

/// Direct γ₀∘(φ*⊗φ*) against the collapsed table on all generator pairs.
inline Check two_path_check(const Cocycle& g) {
    Check c{"two_path_agreement", true, ""};
    size_t n = g.n();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t l = 0; l < n; ++l) {
                    Fraction d = g.gamma_direct(i, j, k, l);
                    if (d != g.gamma(i, j, k, l) && c.pass) {
                        c.pass = false;
                        c.witness = "(t" + std::to_string(i + 1) + std::to_string(j + 1) + ", t" + std::to_string(k + 1) +
                                    std::to_string(l + 1) + ")";
                    }
                }
    if (c.pass) c.witness = std::to_string(n * n * n * n) + " pairs";
    return c;
}

/// Multiplicative extension against direct inversion on V⊗V, for every
/// (degree 2, degree 1) and (degree 1, degree 2) pair.
inline Check multiplicativity_check(const Cocycle& g) {
    Check c{"multiplicativity_vs_tensor_oracle", true, ""};
    size_t n = g.n();
    auto d1 = detail::monomials_of_degree(n, 1);
    auto d2 = detail::monomials_of_degree(n, 2);
    size_t count = 0;
    for (const auto& x : d2)
        for (const auto& y : d1) {
            for (int flip_args = 0; flip_args < 2; ++flip_args) {
                const auto& a = flip_args ? y : x;
                const auto& b = flip_args ? x : y;
                ++count;
                if (g.gamma(a, b) != g.gamma_tensor_oracle(a, b) && c.pass) {
                    c.pass = false;
                    c.witness = "(" + a.str() + ", " + b.str() + ")";
                }
            }
        }
    if (c.pass) c.witness = std::to_string(count) + " pairs";
    return c;
}

/// Free degree-2 coordinate of t_{r1 c1} t_{r2 c2}.
inline size_t free_index(size_t n, size_t r1, size_t c1, size_t r2, size_t c2) {
    return ((r1 * n + r2) * n + c1) * n + c2;
}

using SparseVector = std::map<size_t, Fraction>;

inline void axpy(SparseVector& v, const Fraction& a, const SparseVector& w) {
    if (a.is_zero()) return;
    for (const auto& [k, c] : w) {
        auto& slot = v[k];
        slot += a * c;
        if (slot.is_zero()) v.erase(k);
    }
}

/// Twisted product t_ij · t_kl = Σ γ(t_ia,t_kb) t_ac t_bd γ⁻¹(t_cj,t_dl) in
/// free degree-2 coordinates.
inline SparseVector twisted_product(const Cocycle& g, size_t i, size_t j, size_t k, size_t l) {
    SparseVector v;
    size_t n = g.n();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            const Fraction& left = g.gamma(i, a, k, b);
            if (left.is_zero()) continue;
            for (size_t c = 0; c < n; ++c)
                for (size_t d = 0; d < n; ++d) {
                    const Fraction& right = g.gamma_inverse(c, j, d, l);
                    if (!right.is_zero()) v[free_index(n, a, c, b, d)] += left * right;
                }
        }
    for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
    return v;
}

/// Row space of sparse vectors kept in echelon form keyed by leading index.
class SparseSpan {
public:
    SparseVector reduce(SparseVector v) const {
        while (!v.empty()) {
            auto it = v.begin();
            auto p = rows_.find(it->first);
            if (p == rows_.end()) return v;
            axpy(v, -it->second, p->second);
        }
        return v;
    }
    bool contains(const SparseVector& v) const { return reduce(v).empty(); }
    void insert(const SparseVector& v) {
        auto r = reduce(v);
        if (r.empty()) return;
        Fraction lead = r.begin()->second.inverse();
        for (auto& [k, c] : r) c = c * lead;
        rows_.emplace(r.begin()->first, std::move(r));
    }
    size_t rank() const { return rows_.size(); }

private:
    std::map<size_t, SparseVector> rows_;
};

/// RTT relation R T₁T₂ = T₂T₁ R at the entry ((i,k),(j,l)), written with
/// a product `mul(r1,c1,r2,c2)` of generators.
template <class Mul>
SparseVector rtt_relation(const ScalarMatrix& r, size_t n, size_t i, size_t k, size_t j, size_t l, Mul mul) {
    SparseVector v;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            const Laurent& x = r(i * n + k, a * n + b);
            if (!x.is_zero()) axpy(v, Fraction(x), mul(a, j, b, l));
            const Laurent& y = r(a * n + b, j * n + l);
            if (!y.is_zero()) axpy(v, Fraction(-y), mul(k, b, i, a));
        }
    return v;
}

inline SparseSpan untwisted_relations(const RMatrix& rm) {
    size_t n = rm.n;
    SparseSpan span;
    auto mul = [n](size_t r1, size_t c1, size_t r2, size_t c2) {
        return SparseVector{{free_index(n, r1, c1, r2, c2), Fraction(1)}};
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j)
                for (size_t l = 0; l < n; ++l) span.insert(rtt_relation(rm.R, n, i, k, j, l, mul));
    return span;
}

struct TwistedRelationsReport {
    Check rtt;           ///< R′ relations hold for the twisted product
    bool differ = false; ///< some R relation fails for the twisted product
    std::string differ_witness;
};

inline TwistedRelationsReport twisted_relations(const Cocycle& g, const RMatrix& r, const RMatrix& rprime) {
    size_t n = g.n();
    SparseSpan span = untwisted_relations(r);
    std::map<std::array<size_t, 4>, SparseVector> cache;
    auto mul = [&](size_t r1, size_t c1, size_t r2, size_t c2) -> const SparseVector& {
        std::array<size_t, 4> key{r1, c1, r2, c2};
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, twisted_product(g, r1, c1, r2, c2)).first;
        return it->second;
    };
    TwistedRelationsReport rep;
    rep.rtt = {"twisted_rtt", true, ""};
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j)
                for (size_t l = 0; l < n; ++l) {
                    std::string at = "((" + std::to_string(i + 1) + std::to_string(k + 1) + "),(" +
                                     std::to_string(j + 1) + std::to_string(l + 1) + "))";
                    if (rep.rtt.pass && !span.contains(rtt_relation(rprime.R, n, i, k, j, l, mul))) {
                        rep.rtt.pass = false;
                        rep.rtt.witness = "R' relation fails at " + at;
                    }
                    if (!rep.differ && !span.contains(rtt_relation(r.R, n, i, k, j, l, mul))) {
                        rep.differ = true;
                        rep.differ_witness = "untwisted relation " + at + " fails for the twisted product";
                    }
                }
    if (rep.rtt.pass) rep.rtt.witness = std::to_string(n * n * n * n) + " relations";
    return rep;
}

/// R′ = G21 · R · Gi, the convolution γ₂₁ * r * γ⁻¹ on the matrix coalgebra.
inline RMatrix twisted_R(const Cocycle& g, const RMatrix& r, bool verify = true) {
    FractionMatrix rp = g.matrix21() * to_fraction(r.R) * g.inverse_matrix();
    RMatrix out;
    out.n = r.n;
    out.R = to_laurent(rp);
    if (verify && !satisfies_qybe(out)) throw QYBEFailed("twisted R-matrix violates the Yang-Baxter equation");
    return out;
}

/// Associativity of the twisted product on all generator triples.  Both
/// bracketings have coefficients of the form L[(ikm),(ABE)]·Rt[(CDF),(jln)]
/// on the free monomial t_AC t_BD t_EF, so the factors are compared.
inline Check associativity_check(const Cocycle& g) {
    Check c{"twisted_associativity", true, ""};
    size_t n = g.n(), n3 = n * n * n;
    auto id3 = [n](size_t a, size_t b, size_t e) { return (a * n + b) * n + e; };
    FractionMatrix l1(n3, n3), l2(n3, n3), r1(n3, n3), r2(n3, n3);
    auto T = [](size_t r, size_t c) { return Monomial::gen(r, c); };
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t m = 0; m < n; ++m)
                for (size_t A = 0; A < n; ++A)
                    for (size_t B = 0; B < n; ++B)
                        for (size_t E = 0; E < n; ++E) {
                            Fraction s1, s2;
                            for (size_t a = 0; a < n; ++a)
                                for (size_t b = 0; b < n; ++b) {
                                    const Fraction& x = g.gamma(i, a, k, b);
                                    if (!x.is_zero()) s1 += x * g.gamma(T(a, A) * T(b, B), T(m, E));
                                    const Fraction& y = g.gamma(k, a, m, b);
                                    if (!y.is_zero()) s2 += y * g.gamma(T(i, A), T(a, B) * T(b, E));
                                }
                            l1(id3(i, k, m), id3(A, B, E)) = s1;
                            l2(id3(i, k, m), id3(A, B, E)) = s2;
                        }
    for (size_t C = 0; C < n; ++C)
        for (size_t D = 0; D < n; ++D)
            for (size_t F = 0; F < n; ++F)
                for (size_t j = 0; j < n; ++j)
                    for (size_t l = 0; l < n; ++l)
                        for (size_t q = 0; q < n; ++q) {
                            Fraction s1, s2;
                            for (size_t c2 = 0; c2 < n; ++c2)
                                for (size_t d = 0; d < n; ++d) {
                                    const Fraction& x = g.gamma_inverse(c2, j, d, l);
                                    if (!x.is_zero()) s1 += g.gamma_inverse(T(C, c2) * T(D, d), T(F, q)) * x;
                                    const Fraction& y = g.gamma_inverse(c2, l, d, q);
                                    if (!y.is_zero()) s2 += g.gamma_inverse(T(C, j), T(D, c2) * T(F, d)) * y;
                                }
                            r1(id3(C, D, F), id3(j, l, q)) = s1;
                            r2(id3(C, D, F), id3(j, l, q)) = s2;
                        }
    if (l1 == l2 && r1 == r2) {
        c.witness = std::to_string(n3 * n3) + " generator triples";
        return c;
    }
    // Equal outer products are still possible with reciprocal rescaling.
    for (size_t row = 0; row < n3 && c.pass; ++row)
        for (size_t col = 0; col < n3 && c.pass; ++col)
            for (size_t x = 0; x < n3 && c.pass; ++x)
                for (size_t y = 0; y < n3; ++y)
                    if (l1(row, x) * r1(y, col) != l2(row, x) * r2(y, col)) {
                        c.pass = false;
                        c.witness = "generator triple " + std::to_string(row) + " -> " + std::to_string(col);
                        break;
                    }
    if (c.pass) c.witness = std::to_string(n3 * n3) + " generator triples";
    return c;
}

struct NondegeneracyReport {
    bool pass = false;
    size_t directions_hit = 0, directions_required = 0;
    size_t toral_rank = 0, toral_rank_required = 0;
};

/// Shadow of the surjection φ*: C_q[G] → U(b⁺₁)⊗U(b⁻₁) for a completely
/// disjoint triple with u = 0.  The images of the generators must reach
/// 1⊗1, every E_α⊗1 and 1⊗F_α (α ∈ Π₁) up to toral factors, and their
/// pure toral parts must span a lattice of rank 2|Π₁|.
inline NondegeneracyReport nondegeneracy_witness(const Cocycle& g) {
    const auto& cf = g.pairing().form();
    const auto& rd = cf.root_datum();
    const auto& t = g.triple();
    if (!completely_disjoint(rd, t)) throw PreconditionFailed("triple is not completely disjoint");
    if (!cf.u().is_zero()) throw PreconditionFailed("the surjectivity witness needs u = 0");
    size_t n = g.n(), r = rd.rank();
    std::set<std::pair<Word, Word>> required, hit;
    required.insert({{}, {}});
    for (auto a : t.pi1) {
        required.insert({{a}, {}});
        required.insert({{}, {a}});
    }
    std::vector<Weight> toral;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t a = 0; a < n; ++a) {
                const auto& x = g.recovered_minus(i, a);
                auto y = psi(t, g.recovered_plus(a, j), true);
                for (const auto& [kx, cx] : x.terms())
                    for (const auto& [ky, cy] : y.terms()) {
                        std::pair<Word, Word> dir{kx.word, ky.word};
                        if (required.count(dir)) hit.insert(dir);
                        if (kx.word.empty() && ky.word.empty()) {
                            Weight w(2 * r);
                            for (size_t s = 0; s < r; ++s) {
                                w[s] = kx.label[s];
                                w[r + s] = ky.label[s];
                            }
                            toral.push_back(w);
                        }
                    }
            }
    NondegeneracyReport rep;
    rep.directions_required = required.size();
    rep.directions_hit = hit.size();
    rep.toral_rank_required = 2 * t.pi1.size();
    rep.toral_rank = Lattice::from_generators(toral, 2 * r).rank();
    rep.pass = rep.directions_hit == rep.directions_required && rep.toral_rank == rep.toral_rank_required;
    return rep;
}

/// Entrywise q -> 1 specialization.
inline RationalMatrix classical_limit(const RMatrix& rm) {
    return map_entries<Laurent, Rational>(rm.R, [](const Laurent& x) { return specialize_classical(x); });
}

struct TwistOptions {
    bool cocycle_degree2 = false;
    bool associativity = true;
    bool multiplicativity_oracle = true;
    bool twisted_relations = true;
};

struct TwistReport {
    std::vector<Check> checks;
    FractionMatrix gamma;
    RMatrix r, r_prime;
    RationalMatrix kappa;
    size_t min_poly_degree = 0;
    std::vector<std::pair<size_t, size_t>> nonstandard;
    bool relations_differ = false;
    std::string relations_witness;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

/// Full pipeline: braiding, cocycle, every verification and R′.
inline TwistReport run_twist(const Pairing& pr, const BDTriple& t, const Lattice& omega, const TwistOptions& opt = {}) {
    TwistReport rep;
    const auto& cf = pr.form();
    auto add = [&](std::string name, bool pass, std::string witness = "") {
        rep.checks.push_back({std::move(name), pass, std::move(witness)});
    };
    Module v = vector_rep(cf);
    auto rel = check_relations(cf, v);
    add("vector_rep_relations", rel.ok(), rel.ok() ? "" : rel.failures.front());
    Braiding br = braiding_R(pr, v);
    rep.r = br.r;
    rep.kappa = br.kappa;
    auto eq = rtt_check(cf, br.r, v);
    add("braiding_equivariance", eq.pass, eq.witness);
    add("braiding_qybe", satisfies_qybe(br.r));

    Cocycle g(pr, t, omega);
    rep.gamma = g.matrix();
    rep.checks.push_back(convolution_inverse_check(g));
    rep.checks.push_back(two_path_check(g));
    rep.checks.push_back(cocycle_check(g, 1));
    if (opt.cocycle_degree2) rep.checks.push_back(cocycle_check(g, 2));
    if (opt.multiplicativity_oracle) rep.checks.push_back(multiplicativity_check(g));
    if (opt.associativity) rep.checks.push_back(associativity_check(g));

    rep.r_prime = twisted_R(g, br.r, false);
    add("twisted_R_qybe", satisfies_qybe(rep.r_prime));
    add("twisted_R_braid_relation", satisfies_braid_relation(rep.r_prime));
    rep.min_poly_degree = minimal_polynomial_degree(rep.r_prime);
    add("twisted_R_hecke", rep.min_poly_degree == 2, "minimal polynomial degree " + std::to_string(rep.min_poly_degree));
    rep.nonstandard = nonstandard_support(rep.r_prime);
    add("twisted_R_classical_limit", classical_limit(rep.r_prime) == classical_limit(rep.r), "R' and R agree at q = 1");
    if (opt.twisted_relations) {
        auto tr = twisted_relations(g, br.r, rep.r_prime);
        rep.checks.push_back(tr.rtt);
        rep.relations_differ = tr.differ;
        rep.relations_witness = tr.differ_witness;
    }
    if (t.empty()) add("empty_triple_control", rep.r_prime.R == rep.r.R, "R' = R");
    return rep;
}

}  // namespace bdtwist
