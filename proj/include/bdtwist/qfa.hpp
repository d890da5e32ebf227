/**
 * @file qfa.hpp
 * @brief The quantized function algebra of SL(n) at desk scale: the vector
 * representation, tensor products, matrix-coefficient functionals and the
 * braiding on V⊗V built from the truncated universal R-matrix.
 */
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bdtwist/borel.hpp"

namespace bdtwist {

/// Finite-dimensional weight module given by E_α, F_α action matrices.
/// Toral elements act diagonally: K_μ by q^{u₊(μ,wt)}, K̃_λ by q^{-u₋(λ,wt)}.
struct Module {
    size_t dim = 0;
    std::vector<Weight> weights;
    std::vector<ScalarMatrix> E, F;
};

inline ScalarMatrix toral_action(const CompatibleForm& cf, const Module& m, Side side, const Weight& label) {
    ScalarMatrix k(m.dim, m.dim);
    for (size_t i = 0; i < m.dim; ++i)
        k(i, i) = qpow(side == Side::Plus ? -cf.um(label, m.weights[i]) : cf.up(label, m.weights[i]));
    return k;
}

/// Vector representation of U_p(sl(n)).  E_{α_k} v_{k+1} = v_k and
/// F_{α_k} v_k = q^{-u(α_k, wt_k)} v_{k+1} (0-based vectors).
inline Module vector_rep(const CompatibleForm& cf) {
    const auto& rd = cf.root_datum();
    if (rd.type() != 'A') throw DomainError("the vector representation is implemented for type A only");
    size_t r = rd.rank(), n = r + 1;
    Module m;
    m.dim = n;
    m.weights.push_back(rd.fundamental_weights()[0]);
    for (size_t k = 0; k < r; ++k) m.weights.push_back(m.weights.back() - rd.simple_root(k));
    for (size_t k = 0; k < r; ++k) {
        ScalarMatrix e(n, n), f(n, n);
        e(k, k + 1) = 1;
        f(k + 1, k) = qpow(-cf.uf(rd.simple_root(k), m.weights[k]));
        m.E.push_back(e);
        m.F.push_back(f);
    }
    return m;
}

/// M⊗N through Δ(E) = E⊗1 + K̃_α⊗E and Δ(F) = F⊗K_{-α} + 1⊗F.
inline Module tensor(const CompatibleForm& cf, const Module& a, const Module& b) {
    Module t;
    t.dim = a.dim * b.dim;
    for (const auto& wa : a.weights)
        for (const auto& wb : b.weights) t.weights.push_back(wa + wb);
    const auto& rd = cf.root_datum();
    auto ia = ScalarMatrix::identity(a.dim), ib = ScalarMatrix::identity(b.dim);
    for (size_t k = 0; k < a.E.size(); ++k) {
        Weight al = rd.simple_root(k);
        t.E.push_back(kron(a.E[k], ib) + kron(toral_action(cf, a, Side::Plus, al), b.E[k]));
        t.F.push_back(kron(a.F[k], toral_action(cf, b, Side::Minus, -al)) + kron(ia, b.F[k]));
    }
    return t;
}

/// Action of E_{w1}…E_{wm} (or F-words).
inline ScalarMatrix word_action(const Module& m, Side side, const Word& w) {
    ScalarMatrix x = ScalarMatrix::identity(m.dim);
    for (auto a : w) x = x * (side == Side::Plus ? m.E[a] : m.F[a]);
    return x;
}

/// Action of S⁻¹ applied to a word: S⁻¹(E_α) = -E_α K̃_{-α},
/// S⁻¹(F_α) = -K_α F_α, and S⁻¹ reverses products.
inline ScalarMatrix antipode_inverse_word_action(const CompatibleForm& cf, const Module& m, Side side, const Word& w) {
    const auto& rd = cf.root_datum();
    ScalarMatrix x = ScalarMatrix::identity(m.dim);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        Weight al = rd.simple_root(*it);
        ScalarMatrix g = side == Side::Plus ? m.E[*it] * toral_action(cf, m, Side::Plus, -al)
                                            : toral_action(cf, m, Side::Minus, al) * m.F[*it];
        x = x * (Laurent(-1) * g);
    }
    return x;
}

struct RelationReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Checks every defining relation of U_p(g) on a module: toral conjugation
/// for both tori, the E-F commutator and both quantum Serre families.
inline RelationReport check_relations(const CompatibleForm& cf, const Module& m) {
    RelationReport rep;
    const auto& rd = cf.root_datum();
    size_t r = rd.rank();
    std::vector<Weight> probes;
    for (size_t i = 0; i < r; ++i) probes.push_back(rd.simple_root(i));
    for (const auto& w : rd.fundamental_weights()) probes.push_back(w);
    for (const auto& mu : probes)
        for (size_t b = 0; b < r; ++b) {
            Weight beta = rd.simple_root(b);
            auto k = toral_action(cf, m, Side::Minus, mu), kinv = toral_action(cf, m, Side::Minus, -mu);
            auto kt = toral_action(cf, m, Side::Plus, mu), ktinv = toral_action(cf, m, Side::Plus, -mu);
            if (k * m.E[b] * kinv != Laurent(qpow(cf.up(mu, beta))) * m.E[b])
                rep.failures.push_back("K E K^-1 at mu=" + mu.str() + ", beta=" + std::to_string(b + 1));
            if (k * m.F[b] * kinv != Laurent(qpow(-cf.up(mu, beta))) * m.F[b])
                rep.failures.push_back("K F K^-1 at mu=" + mu.str() + ", beta=" + std::to_string(b + 1));
            if (kt * m.E[b] * ktinv != Laurent(qpow(-cf.um(mu, beta))) * m.E[b])
                rep.failures.push_back("Kt E Kt^-1 at lambda=" + mu.str() + ", beta=" + std::to_string(b + 1));
            if (kt * m.F[b] * ktinv != Laurent(qpow(cf.um(mu, beta))) * m.F[b])
                rep.failures.push_back("Kt F Kt^-1 at lambda=" + mu.str() + ", beta=" + std::to_string(b + 1));
        }
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b) {
            ScalarMatrix lhs = m.E[a] * m.F[b] - m.F[b] * m.E[a];
            if (a != b) {
                if (!lhs.is_zero()) rep.failures.push_back("[E,F] at (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
                continue;
            }
            // (q_α - q_α⁻¹)[E_α, F_α] = K̃_α - K_{-α}
            Rational d = rd.symmetrizers()[a];
            Weight al = rd.simple_root(a);
            ScalarMatrix rhs = toral_action(cf, m, Side::Plus, al) - toral_action(cf, m, Side::Minus, -al);
            if (Laurent(qpow(d) - qpow(-d)) * lhs != rhs)
                rep.failures.push_back("[E,F] at (" + std::to_string(a + 1) + "," + std::to_string(a + 1) + ")");
        }
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b) {
            if (a == b) continue;
            for (Side s : {Side::Plus, Side::Minus}) {
                BorelElement se = serre_element(cf, a, b, s);
                ScalarMatrix acc(m.dim, m.dim);
                for (const auto& [k, c] : se.terms()) acc = acc + c.laurent() * word_action(m, s, k.word);
                if (!acc.is_zero())
                    rep.failures.push_back(std::string(s == Side::Plus ? "E" : "F") + "-Serre at (" +
                                           std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
            }
        }
    return rep;
}

/// The restriction of the matrix coefficient t_AB to the Borel half
/// `domain`, on words in `letters`.  With `antipode_inverse` the functional
/// is y ↦ t_AB(S⁻¹ y) instead.
inline Functional matrix_coefficient(const CompatibleForm& cf, const Module& m, size_t A, size_t B, Side domain,
                                     const std::vector<size_t>& letters, bool antipode_inverse = false) {
    Functional f;
    f.domain = domain;
    FunctionalPiece p;
    p.label = antipode_inverse ? m.weights[A] : -m.weights[B];
    p.nu = domain == Side::Minus ? m.weights[B] - m.weights[A] : m.weights[A] - m.weights[B];
    for (const auto& w : words_of_weight(p.nu, letters)) {
        ScalarMatrix x = antipode_inverse ? antipode_inverse_word_action(cf, m, domain, w) : word_action(m, domain, w);
        if (!x(A, B).is_zero()) p.values[w] = Fraction(x(A, B));
    }
    if (!p.values.empty()) f.pieces.push_back(std::move(p));
    return f;
}

/// Swap of tensor factors on V⊗V, index a·n + b.
inline ScalarMatrix flip(size_t n) {
    ScalarMatrix p(n * n, n * n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) p(b * n + a, a * n + b) = 1;
    return p;
}

/// R = flip·R̂ on V⊗V, rows and columns indexed by (i,k) ↦ i·n + k.
struct RMatrix {
    size_t n = 0;
    ScalarMatrix R;

    ScalarMatrix braid() const { return flip(n) * R; }
};

struct Braiding {
    RMatrix r;
    RationalMatrix kappa;  ///< Cartan factor: D = diag q^{wt_aᵀ κ wt_b}
    FractionMatrix theta;
};

namespace detail {
inline std::optional<Rational> monomial_exponent_if_unit(const Fraction& x) {
    auto l = x.to_laurent();
    if (!l || !l->is_monomial()) return std::nullopt;
    auto e = l->min_exponent();
    if (l->coefficient(e) != 1) return std::nullopt;
    return e;
}

inline std::optional<std::pair<size_t, size_t>> first_commutator_failure(const FractionMatrix& a,
                                                                         const FractionMatrix& b) {
    FractionMatrix c = a * b - b * a;
    for (size_t i = 0; i < c.rows(); ++i)
        for (size_t j = 0; j < c.cols(); ++j)
            if (!c(i, j).is_zero()) return std::make_pair(i, j);
    return std::nullopt;
}
}  // namespace detail

/// Braiding R̂ = flip ∘ Θ ∘ D on V⊗V.  Θ = Σ_ν Σ (G_ν⁻¹)_{v,w} E_w⊗F_v over
/// the positive weights occurring in V; D is the Cartan factor, solved as a
/// rational bilinear form from the single-term entries of the equivariance
/// equations and then verified on every entry.
inline Braiding braiding_R(const Pairing& pr, const Module& v) {
    const auto& cf = pr.form();
    const auto& rd = cf.root_datum();
    size_t n = v.dim, n2 = n * n, r = rd.rank();
    Module v2 = tensor(cf, v, v);
    std::vector<size_t> all(r);
    for (size_t i = 0; i < r; ++i) all[i] = i;

    std::set<Weight> nus;
    for (const auto& wa : v.weights)
        for (const auto& wb : v.weights) {
            Weight d = wa - wb;
            if (!d.is_zero() && cone_coordinates(d, all)) nus.insert(d);
        }
    FractionMatrix theta = FractionMatrix::identity(n2);
    for (const auto& nu : nus) {
        GramData g = pr.gram(nu, all);
        auto ginv = inverse(g.reduced());
        if (!ginv) throw CalibrationFailed("reduced Gram matrix is singular at " + nu.str());
        for (size_t i = 0; i < g.rank(); ++i)
            for (size_t j = 0; j < g.rank(); ++j) {
                const Fraction& c = (*ginv)(j, i);
                if (c.is_zero()) continue;
                auto ew = word_action(v, Side::Plus, g.words[g.normal_plus[i]]);
                auto fv = word_action(v, Side::Minus, g.words[g.normal_minus[j]]);
                theta = theta + c * to_fraction(kron(ew, fv));
            }
    }
    FractionMatrix pt = to_fraction(flip(n)) * theta;

    std::vector<FractionMatrix> gens;
    for (size_t k = 0; k < r; ++k) {
        gens.push_back(to_fraction(v2.E[k]));
        gens.push_back(to_fraction(v2.F[k]));
    }
    // Unknowns κ_ij in row-major order; the exponent at basis pair z=(a,b)
    // is wt_aᵀ κ wt_b.
    auto exponent_row = [&](size_t z) {
        std::vector<Rational> row(r * r);
        const Weight& wa = v.weights[z / n];
        const Weight& wb = v.weights[z % n];
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) row[i * r + j] = wa[i] * wb[j];
        return row;
    };
    std::vector<std::vector<Rational>> eqs;
    std::vector<Rational> rhs;
    for (const auto& g : gens)
        for (size_t x = 0; x < n2; ++x)
            for (size_t y = 0; y < n2; ++y) {
                std::vector<size_t> left, right;
                for (size_t z = 0; z < n2; ++z) {
                    if (!pt(x, z).is_zero() && !g(z, y).is_zero()) left.push_back(z);
                    if (!g(x, z).is_zero() && !pt(z, y).is_zero()) right.push_back(z);
                }
                if (left.size() + right.size() == 1)
                    throw CalibrationFailed("equivariance has an unmatched single term; no Cartan factor exists");
                if (left.size() != 1 || right.size() != 1) continue;
                size_t z = left[0], zr = right[0];
                Fraction ratio = (g(x, zr) * pt(zr, y)) / (pt(x, z) * g(z, y));
                auto e = detail::monomial_exponent_if_unit(ratio);
                if (!e) throw CalibrationFailed("equivariance ratio is not a power of q: " + ratio.str());
                // κ(z) - κ(y) = e
                auto rz = exponent_row(z), ry = exponent_row(y);
                for (size_t i = 0; i < rz.size(); ++i) rz[i] -= ry[i];
                eqs.push_back(rz);
                rhs.push_back(*e);
            }
    RationalMatrix a(eqs.size(), r * r);
    for (size_t i = 0; i < eqs.size(); ++i)
        for (size_t j = 0; j < r * r; ++j) a(i, j) = eqs[i][j];
    auto sol = eqs.empty() ? std::optional<std::vector<Rational>>(std::vector<Rational>(r * r)) : solve(a, rhs);
    if (!sol) throw CalibrationFailed("no Cartan factor satisfies the equivariance equations");
    RationalMatrix kappa(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) kappa(i, j) = (*sol)[i * r + j];

    FractionMatrix d(n2, n2);
    for (size_t z = 0; z < n2; ++z) d(z, z) = Fraction(qpow(bilinear(kappa, v.weights[z / n], v.weights[z % n])));
    FractionMatrix rhat = pt * d;
    for (size_t k = 0; k < gens.size(); ++k)
        if (auto bad = detail::first_commutator_failure(rhat, gens[k]))
            throw CalibrationFailed("braiding does not commute with a generator at entry (" +
                                    std::to_string(bad->first) + "," + std::to_string(bad->second) + ")");
    Braiding b;
    b.kappa = kappa;
    b.theta = theta;
    b.r.n = n;
    try {
        b.r.R = to_laurent(to_fraction(flip(n)) * rhat);
    } catch (const NotLaurent& e) {
        throw CalibrationFailed(std::string("braiding has non-Laurent entries: ") + e.what());
    }
    return b;
}

/// Flip on the (p,q) factors of V⊗V⊗V.
inline ScalarMatrix flip3(size_t n, int p, int q) {
    size_t n3 = n * n * n;
    ScalarMatrix m(n3, n3);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                size_t idx[3] = {i, j, k};
                std::swap(idx[p], idx[q]);
                m((idx[0] * n + idx[1]) * n + idx[2], (i * n + j) * n + k) = 1;
            }
    return m;
}

inline bool satisfies_qybe(const RMatrix& rm) {
    size_t n = rm.n;
    auto id = ScalarMatrix::identity(n);
    ScalarMatrix r12 = kron(rm.R, id), r23 = kron(id, rm.R);
    ScalarMatrix p23 = flip3(n, 1, 2);
    ScalarMatrix r13 = p23 * r12 * p23;
    return r12 * r13 * r23 == r23 * r13 * r12;
}

inline bool satisfies_braid_relation(const RMatrix& rm) {
    size_t n = rm.n;
    auto id = ScalarMatrix::identity(n);
    ScalarMatrix b = rm.braid();
    ScalarMatrix b12 = kron(b, id), b23 = kron(id, b);
    return b12 * b23 * b12 == b23 * b12 * b23;
}

/// Degree of the minimal polynomial of R̂ over the field of fractions.
inline size_t minimal_polynomial_degree(const RMatrix& rm) {
    FractionMatrix b = to_fraction(rm.braid());
    size_t n2 = b.rows();
    std::vector<FractionMatrix> powers{FractionMatrix::identity(n2)};
    for (size_t d = 1; d <= n2 * n2; ++d) {
        powers.push_back(powers.back() * b);
        FractionMatrix m(n2 * n2, powers.size());
        for (size_t k = 0; k < powers.size(); ++k)
            for (size_t i = 0; i < n2; ++i)
                for (size_t j = 0; j < n2; ++j) m(i * n2 + j, k) = powers[k](i, j);
        if (rank(m) < powers.size()) return d;
    }
    return n2 * n2;
}

/// Entries outside the standard set {(ii,ii), (ik,ik), (ik,ki)}.
inline std::vector<std::pair<size_t, size_t>> nonstandard_support(const RMatrix& rm) {
    std::vector<std::pair<size_t, size_t>> out;
    size_t n = rm.n;
    for (size_t row = 0; row < n * n; ++row)
        for (size_t col = 0; col < n * n; ++col) {
            if (rm.R(row, col).is_zero()) continue;
            size_t i = row / n, k = row % n, j = col / n, l = col % n;
            bool standard = (j == i && l == k) || (j == k && l == i);
            if (!standard) out.emplace_back(row, col);
        }
    return out;
}

struct RttReport {
    bool pass = true;
    std::string witness;
};

/// R̂ commutes with the diagonal action of every generator on V⊗V.
inline RttReport rtt_check(const CompatibleForm& cf, const RMatrix& rm, const Module& v) {
    RttReport rep;
    Module v2 = tensor(cf, v, v);
    ScalarMatrix b = rm.braid();
    const auto& rd = cf.root_datum();
    auto test = [&](const ScalarMatrix& g, const std::string& name) {
        if (!rep.pass) return;
        ScalarMatrix c = b * g - g * b;
        for (size_t i = 0; i < c.rows(); ++i)
            for (size_t j = 0; j < c.cols(); ++j)
                if (!c(i, j).is_zero()) {
                    rep.pass = false;
                    rep.witness = name + " at entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                    return;
                }
    };
    for (size_t k = 0; k < rd.rank(); ++k) {
        test(v2.E[k], "E" + std::to_string(k + 1));
        test(v2.F[k], "F" + std::to_string(k + 1));
        test(toral_action(cf, v2, Side::Minus, rd.simple_root(k)), "K" + std::to_string(k + 1));
    }
    return rep;
}

}  // namespace bdtwist
