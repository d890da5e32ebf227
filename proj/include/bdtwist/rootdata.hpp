/**
 * @file rootdata.hpp
 * @brief Finite root systems, the W-invariant form and exact lattices.
 *
 * Weights are stored in simple-root coordinates throughout: every quantity
 * the construction needs is a bilinear form evaluated on Q-combinations of
 * simple roots.  Normalization: short roots have squared length 2.
 * Numbering follows Bourbaki.
 */
#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "bdtwist/linalg.hpp"

namespace bdtwist {

/// Rational vector over the simple-root basis.
class Weight {
public:
    Weight() = default;
    explicit Weight(size_t rank) : c_(rank, Rational(0)) {}
    explicit Weight(std::vector<Rational> coords) : c_(std::move(coords)) {}

    static Weight unit(size_t rank, size_t i) {
        Weight w(rank);
        w.c_[i] = 1;
        return w;
    }

    size_t rank() const { return c_.size(); }
    const Rational& operator[](size_t i) const { return c_[i]; }
    Rational& operator[](size_t i) { return c_[i]; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
    }
    bool is_integral() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x.get_den() == 1; });
    }

    Weight& operator+=(const Weight& o) {
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    Weight operator-() const {
        Weight r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Weight operator*(const Rational& s, Weight a) {
        for (auto& x : a.c_) x *= s;
        return a;
    }
    friend bool operator==(const Weight& a, const Weight& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    friend bool operator<(const Weight& a, const Weight& b) { return a.c_ < b.c_; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += c_[i].get_str();
        }
        return s + ")";
    }

private:
    std::vector<Rational> c_;
};

/// Bilinear form x^T M y on coordinate vectors.
inline Rational bilinear(const RationalMatrix& m, const Weight& x, const Weight& y) {
    Rational s = 0;
    for (size_t i = 0; i < x.rank(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < y.rank(); ++j)
            if (y[j] != 0 && m(i, j) != 0) s += x[i] * m(i, j) * y[j];
    }
    return s;
}

inline Weight apply(const RationalMatrix& m, const Weight& x) {
    Weight r(m.rows());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * x[j];
    return r;
}

/// Subgroup of Q^rank given by a Hermite-normal-form basis.
class Lattice {
public:
    Lattice() = default;

    static Lattice from_generators(const std::vector<Weight>& gens, size_t ambient_rank) {
        Lattice l;
        l.ambient_ = ambient_rank;
        Integer den = 1;
        for (const auto& g : gens)
            for (size_t i = 0; i < ambient_rank; ++i) den = lcm(den, g[i].get_den());
        std::vector<std::vector<Integer>> a;
        for (const auto& g : gens) {
            std::vector<Integer> row(ambient_rank);
            bool nz = false;
            for (size_t i = 0; i < ambient_rank; ++i) {
                Rational x = g[i] * den;
                row[i] = x.get_num();
                nz = nz || row[i] != 0;
            }
            if (nz) a.push_back(std::move(row));
        }
        hermite(a, ambient_rank);
        for (auto& row : a) {
            Weight w(ambient_rank);
            for (size_t i = 0; i < ambient_rank; ++i) w[i] = ratio(row[i], den);
            l.basis_.push_back(std::move(w));
        }
        return l;
    }

    const std::vector<Weight>& basis() const { return basis_; }
    size_t rank() const { return basis_.size(); }
    size_t ambient_rank() const { return ambient_; }

    bool contains(const Weight& w) const {
        if (basis_.empty()) return w.is_zero();
        RationalMatrix bt(ambient_, basis_.size());
        for (size_t j = 0; j < basis_.size(); ++j)
            for (size_t i = 0; i < ambient_; ++i) bt(i, j) = basis_[j][i];
        auto x = solve(bt, w.coords());
        if (!x) return false;
        return std::all_of(x->begin(), x->end(), [](const Rational& v) { return v.get_den() == 1; });
    }

    bool contains(const Lattice& o) const {
        return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const Weight& w) { return contains(w); });
    }

    /// |det| of the basis; only meaningful for full-rank lattices.
    Rational covolume() const {
        if (rank() != ambient_) throw DomainError("covolume of a lattice that is not full rank");
        RationalMatrix m(ambient_, ambient_);
        for (size_t i = 0; i < ambient_; ++i)
            for (size_t j = 0; j < ambient_; ++j) m(i, j) = basis_[i][j];
        return abs(determinant(m));
    }

    /// [this : sub] for full-rank lattices sub ⊆ this.
    Rational index_of(const Lattice& sub) const { return sub.covolume() / covolume(); }

    friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }
    friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

private:
    size_t ambient_ = 0;
    std::vector<Weight> basis_;

    static void hermite(std::vector<std::vector<Integer>>& a, size_t cols) {
        size_t r = 0;
        for (size_t c = 0; c < cols && r < a.size(); ++c) {
            while (true) {
                size_t best = a.size();
                for (size_t i = r; i < a.size(); ++i)
                    if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c]))) best = i;
                if (best == a.size()) break;
                std::swap(a[r], a[best]);
                bool done = true;
                for (size_t i = r + 1; i < a.size(); ++i) {
                    if (a[i][c] == 0) continue;
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                    for (size_t j = c; j < cols; ++j) a[i][j] -= q * a[r][j];
                    if (a[i][c] != 0) done = false;
                }
                if (done) break;
            }
            if (r >= a.size() || a[r][c] == 0) continue;
            if (a[r][c] < 0)
                for (auto& x : a[r]) x = -x;
            for (size_t i = 0; i < r; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                if (q != 0)
                    for (size_t j = c; j < cols; ++j) a[i][j] -= q * a[r][j];
            }
            ++r;
        }
        a.resize(r);
    }
};

/// Cartan data of a finite-type root system (possibly a direct sum).
class RootDatum {
public:
    /// Simple types A-G in Bourbaki numbering.
    static RootDatum build(char type, int rank) {
        RootDatum rd;
        rd.label_ = std::string(1, type) + std::to_string(rank);
        auto bad = [&] { return InvalidRootDatum("no finite root system of type " + rd.label_); };
        if (rank < 1) throw bad();
        size_t n = static_cast<size_t>(rank);
        std::vector<Rational> len(n, Rational(2));  // (α_i, α_i)
        std::vector<std::pair<size_t, size_t>> edges;
        for (size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        switch (type) {
            case 'A':
                break;
            case 'B':
                if (rank < 2) throw bad();
                for (size_t i = 0; i + 1 < n; ++i) len[i] = 4;
                break;
            case 'C':
                if (rank < 2) throw bad();
                len[n - 1] = 4;
                break;
            case 'D':
                if (rank < 4) throw bad();
                edges.pop_back();
                edges.emplace_back(n - 3, n - 1);
                break;
            case 'E':
                if (rank < 6 || rank > 8) throw bad();
                edges.clear();
                edges = {{0, 2}, {2, 3}, {1, 3}, {3, 4}};
                for (size_t i = 4; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
                break;
            case 'F':
                if (rank != 4) throw bad();
                len = {4, 4, 2, 2};
                break;
            case 'G':
                if (rank != 2) throw bad();
                len = {2, 6};
                break;
            default:
                throw bad();
        }
        RationalMatrix g(n, n);
        for (size_t i = 0; i < n; ++i) g(i, i) = len[i];
        for (auto [i, j] : edges) {
            // (α_i, α_j) = -max(len)/2 for adjacent nodes
            Rational v = -std::max(len[i], len[j]) / 2;
            g(i, j) = g(j, i) = v;
        }
        rd.init(g, type);
        return rd;
    }

    static RootDatum direct_sum(const RootDatum& a, const RootDatum& b) {
        size_t n = a.rank() + b.rank();
        RationalMatrix g(n, n);
        for (size_t i = 0; i < a.rank(); ++i)
            for (size_t j = 0; j < a.rank(); ++j) g(i, j) = a.gram_(i, j);
        for (size_t i = 0; i < b.rank(); ++i)
            for (size_t j = 0; j < b.rank(); ++j) g(a.rank() + i, a.rank() + j) = b.gram_(i, j);
        RootDatum rd;
        rd.label_ = a.label_ + "x" + b.label_;
        rd.init(g, 0);
        return rd;
    }

    size_t rank() const { return gram_.rows(); }
    /// Type letter of a simple datum; 0 for direct sums.
    char type() const { return type_; }
    const std::string& label() const { return label_; }
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    /// d_i = (α_i, α_i) / 2, so q_{α_i} = q^{d_i}.
    const std::vector<Rational>& symmetrizers() const { return sym_; }
    /// (α_i, α_j).
    const RationalMatrix& gram() const { return gram_; }

    Rational inner(const Weight& a, const Weight& b) const { return bilinear(gram_, a, b); }
    Weight simple_root(size_t i) const { return Weight::unit(rank(), i); }
    Weight zero() const { return Weight(rank()); }

    /// ϖ_i with 2(ϖ_i, α_j)/(α_j, α_j) = δ_ij.
    std::vector<Weight> fundamental_weights() const {
        auto inv = inverse(gram_);
        std::vector<Weight> out;
        for (size_t i = 0; i < rank(); ++i) {
            // ϖ_i = sum_k c_k α_k with sum_k c_k (α_k, α_j) = δ_ij d_j
            Weight w(rank());
            for (size_t k = 0; k < rank(); ++k) w[k] = (*inv)(k, i) * sym_[i];
            out.push_back(std::move(w));
        }
        return out;
    }

    Weight reflect(size_t i, const Weight& w) const {
        Rational c = 2 * inner(w, simple_root(i)) / gram_(i, i);
        return w - c * simple_root(i);
    }

    /// Positive roots by closure along root strings, ordered by height.
    std::vector<Weight> positive_roots() const {
        std::vector<Weight> roots;
        std::set<Weight> seen;
        for (size_t i = 0; i < rank(); ++i) {
            roots.push_back(simple_root(i));
            seen.insert(roots.back());
        }
        for (size_t k = 0; k < roots.size(); ++k) {
            Weight beta = roots[k];
            for (size_t i = 0; i < rank(); ++i) {
                if (beta == simple_root(i)) continue;
                int p = 0;
                while (seen.count(beta - Rational(p + 1) * simple_root(i))) ++p;
                Rational pairing = 2 * inner(beta, simple_root(i)) / gram_(i, i);
                Rational q = Rational(p) - pairing;
                Weight next = beta + simple_root(i);
                if (q > 0 && !seen.count(next)) {
                    seen.insert(next);
                    roots.push_back(next);
                }
            }
        }
        return roots;
    }

    Lattice root_lattice() const {
        std::vector<Weight> g;
        for (size_t i = 0; i < rank(); ++i) g.push_back(simple_root(i));
        return Lattice::from_generators(g, rank());
    }
    Lattice weight_lattice() const { return Lattice::from_generators(fundamental_weights(), rank()); }

private:
    char type_ = 0;
    std::string label_;
    RationalMatrix gram_;
    std::vector<std::vector<int>> cartan_;
    std::vector<Rational> sym_;

    void init(const RationalMatrix& g, char type) {
        type_ = type;
        gram_ = g;
        size_t n = g.rows();
        cartan_.assign(n, std::vector<int>(n, 0));
        sym_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            sym_[i] = g(i, i) / 2;
            for (size_t j = 0; j < n; ++j) {
                Rational a = 2 * g(i, j) / g(i, i);
                if (a.get_den() != 1) throw InvalidRootDatum("non-integral Cartan entry");
                cartan_[i][j] = static_cast<int>(a.get_num().get_si());
            }
        }
    }
};

}  // namespace bdtwist
