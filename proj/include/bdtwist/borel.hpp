/**
 * @file borel.hpp
 * @brief Borel halves of the multiparameter quantum group as free words with
 * a toral index, their coproduct, the skew Hopf pairing between the halves,
 * Gram data per weight, quantum Serre elements and the θ / ψ maps.
 *
 * Conventions (validated by calibrate_pairing and the test suite):
 *
 *  - A +side term E_w K̃_λ is stored by its label λ.  A -side term F_v K_μ is
 *    stored by μ.
 *  - Normal ordering: K̃_λ E_β = q^{-u₋(λ,β)} E_β K̃_λ and
 *    K_μ F_β = q^{-u₊(μ,β)} F_β K_μ.
 *  - Δ(E_α) = E_α⊗1 + K̃_α⊗E_α and Δ(F_α) = F_α⊗K_{-α} + 1⊗F_α.
 *  - ⟨x | y y'⟩ = Σ ⟨x₁|y⟩⟨x₂|y'⟩ and ⟨x x' | y⟩ = Σ ⟨x|y₂⟩⟨x'|y₁⟩.
 *  - ⟨x K̃_λ | y K_μ⟩ = q^{u₋(λ,μ)} ⟨x|y⟩.
 *
 * Elements are never rewritten modulo the Serre relations.  Two elements are
 * equal when they pair identically with every word of their weight, which is
 * sound because the pairing is nondegenerate on the quotient.
 */
#pragma once

#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "bdtwist/bdstruct.hpp"

namespace bdtwist {

using Word = std::vector<size_t>;
enum class Side { Plus, Minus };

inline Side opposite(Side s) { return s == Side::Plus ? Side::Minus : Side::Plus; }

inline Weight word_weight(const Word& w, size_t rank) {
    Weight r(rank);
    for (auto a : w) r[a] += 1;
    return r;
}

inline Rational height(const Weight& nu) {
    Rational h = 0;
    for (const auto& c : nu.coords()) h += c;
    return h;
}

/// ν as multiplicities over `letters` when ν ∈ ℕ-span of them.
inline std::optional<std::vector<size_t>> cone_coordinates(const Weight& nu, const std::vector<size_t>& letters) {
    std::vector<size_t> mult(nu.rank(), 0);
    for (size_t i = 0; i < nu.rank(); ++i) {
        if (nu[i] == 0) continue;
        if (nu[i] < 0 || nu[i].get_den() != 1) return std::nullopt;
        if (std::find(letters.begin(), letters.end(), i) == letters.end()) return std::nullopt;
        mult[i] = nu[i].get_num().get_ui();
    }
    return mult;
}

/// All words of weight ν in the given letters, lexicographic; empty when ν
/// lies outside the ℕ-span of the letters.
inline std::vector<Word> words_of_weight(const Weight& nu, const std::vector<size_t>& letters) {
    auto mult = cone_coordinates(nu, letters);
    std::vector<Word> out;
    if (!mult) return out;
    std::vector<size_t> sorted = letters;
    std::sort(sorted.begin(), sorted.end());
    size_t len = 0;
    for (auto m : *mult) len += m;
    Word cur;
    std::function<void()> rec = [&] {
        if (cur.size() == len) {
            out.push_back(cur);
            return;
        }
        for (auto a : sorted) {
            if ((*mult)[a] == 0) continue;
            --(*mult)[a];
            cur.push_back(a);
            rec();
            cur.pop_back();
            ++(*mult)[a];
        }
    };
    rec();
    return out;
}

struct BorelKey {
    Word word;
    Weight label;
    friend bool operator<(const BorelKey& a, const BorelKey& b) {
        return std::tie(a.word, a.label) < std::tie(b.word, b.label);
    }
    friend bool operator==(const BorelKey& a, const BorelKey& b) { return a.word == b.word && a.label == b.label; }
};

/// Finite linear combination of E_w K̃_λ (+side) or F_v K_μ (-side).
class BorelElement {
public:
    BorelElement() = default;
    BorelElement(Side side, size_t rank) : side_(side), rank_(rank) {}

    static BorelElement one(Side side, size_t rank) { return monomial(side, rank, {}, Weight(rank)); }
    static BorelElement generator(Side side, size_t rank, size_t a) { return monomial(side, rank, {a}, Weight(rank)); }
    static BorelElement toral(Side side, const Weight& label) { return monomial(side, label.rank(), {}, label); }
    static BorelElement monomial(Side side, size_t rank, Word w, Weight label, Fraction c = Fraction(1)) {
        BorelElement e(side, rank);
        e.add(BorelKey{std::move(w), std::move(label)}, c);
        return e;
    }

    Side side() const { return side_; }
    size_t rank() const { return rank_; }
    const std::map<BorelKey, Fraction>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const BorelKey& k, const Fraction& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    BorelElement& operator+=(const BorelElement& o) {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    friend BorelElement operator+(BorelElement a, const BorelElement& b) { return a += b; }
    friend BorelElement operator-(BorelElement a, const BorelElement& b) {
        for (const auto& [k, c] : b.terms_) a.add(k, -c);
        return a;
    }
    friend BorelElement operator*(const Fraction& s, BorelElement a) {
        if (s.is_zero()) a.terms_.clear();
        for (auto& [k, c] : a.terms_) c = s * c;
        return a;
    }
    friend bool operator==(const BorelElement& a, const BorelElement& b) {
        return a.side_ == b.side_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            for (auto a : k.word) s += (side_ == Side::Plus ? " E" : " F") + std::to_string(a + 1);
            if (!k.label.is_zero()) s += (side_ == Side::Plus ? " Kt" : " K") + k.label.str();
        }
        return s;
    }

private:
    Side side_ = Side::Plus;
    size_t rank_ = 0;
    std::map<BorelKey, Fraction> terms_;
};

/// Product of two normal-ordered monomials on one side.
inline std::pair<Fraction, BorelKey> multiply_keys(const CompatibleForm& cf, Side side, const BorelKey& a,
                                                   const BorelKey& b) {
    Weight wb = word_weight(b.word, a.label.rank());
    Rational e = side == Side::Plus ? -cf.um(a.label, wb) : -cf.up(a.label, wb);
    BorelKey k{a.word, a.label + b.label};
    k.word.insert(k.word.end(), b.word.begin(), b.word.end());
    return {Fraction(qpow(e)), std::move(k)};
}

inline BorelElement multiply(const CompatibleForm& cf, const BorelElement& x, const BorelElement& y) {
    if (x.side() != y.side()) throw DomainError("cannot multiply elements of different Borel halves");
    BorelElement r(x.side(), x.rank());
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
            auto [f, k] = multiply_keys(cf, x.side(), kx, ky);
            r.add(k, f * cx * cy);
        }
    return r;
}

/// Element of B⊗B for one Borel half.
struct Tensor {
    Side side = Side::Plus;
    std::map<std::pair<BorelKey, BorelKey>, Fraction> terms;

    void add(const BorelKey& a, const BorelKey& b, const Fraction& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(a, b);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
};

inline Tensor multiply(const CompatibleForm& cf, const Tensor& x, const Tensor& y) {
    Tensor r{x.side, {}};
    for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms) {
            auto [f1, k1] = multiply_keys(cf, x.side, kx.first, ky.first);
            auto [f2, k2] = multiply_keys(cf, x.side, kx.second, ky.second);
            r.add(k1, k2, f1 * f2 * cx * cy);
        }
    return r;
}

/// Δ of a generator: E_α⊗1 + K̃_α⊗E_α, or F_α⊗K_{-α} + 1⊗F_α.
inline Tensor coproduct_generator(Side side, size_t rank, size_t a) {
    Tensor t{side, {}};
    Weight zero(rank), alpha = Weight::unit(rank, a);
    if (side == Side::Plus) {
        t.add(BorelKey{{a}, zero}, BorelKey{{}, zero}, 1);
        t.add(BorelKey{{}, alpha}, BorelKey{{a}, zero}, 1);
    } else {
        t.add(BorelKey{{a}, zero}, BorelKey{{}, -alpha}, 1);
        t.add(BorelKey{{}, zero}, BorelKey{{a}, zero}, 1);
    }
    return t;
}

/// Multiplicative extension of Δ to words, with Δ(K) = K⊗K.
inline Tensor coproduct(const CompatibleForm& cf, const BorelElement& x) {
    Tensor out{x.side(), {}};
    size_t rank = x.rank();
    for (const auto& [k, c] : x.terms()) {
        Tensor acc{x.side(), {}};
        acc.add(BorelKey{{}, Weight(rank)}, BorelKey{{}, Weight(rank)}, c);
        for (auto a : k.word) acc = multiply(cf, acc, coproduct_generator(x.side(), rank, a));
        Tensor kk{x.side(), {}};
        kk.add(BorelKey{{}, k.label}, BorelKey{{}, k.label}, 1);
        acc = multiply(cf, acc, kk);
        for (const auto& [kk2, c2] : acc.terms) out.add(kk2.first, kk2.second, c2);
    }
    return out;
}

/// Per-root constant c_α = ⟨E_α | F_α⟩ fixed by the Drinfeld double
/// cross-relation, together with the scalar it was matched against.
struct Calibration {
    std::vector<Fraction> constants;
};

namespace detail {
// Value a + b·c of a degree-(≤1,≤1) pairing with an unknown generator constant c.
struct LinearInC {
    Fraction a, b;
};

// Key in the double: order 0 means (plus)(minus), order 1 means (minus)(plus).
struct DoubleKey {
    int order;
    BorelKey plus, minus;
    friend bool operator<(const DoubleKey& x, const DoubleKey& y) {
        return std::tie(x.order, x.plus, x.minus) < std::tie(y.order, y.plus, y.minus);
    }
};

inline DoubleKey make_double_key(int order, const BorelKey& p, const BorelKey& m) {
    bool trivial = (p.word.empty() && p.label.is_zero()) || (m.word.empty() && m.label.is_zero());
    return DoubleKey{trivial ? 0 : order, p, m};
}

inline LinearInC pair_low_degree(const CompatibleForm& cf, const BorelKey& x, const BorelKey& y) {
    Fraction k(qpow(cf.um(x.label, y.label)));
    if (x.word.empty() && y.word.empty()) return {k, 0};
    if (x.word.size() == 1 && y.word == x.word) return {0, k};
    if (x.word.size() + y.word.size() > 0 && x.word != y.word) return {0, 0};
    throw CalibrationFailed("unexpected degree in the cross-relation");
}
}  // namespace detail

/**
 * For each simple root, impose Σ⟨a₁|b₁⟩b₂a₂ = Σa₁b₁⟨a₂|b₂⟩ for a = E_α,
 * b = F_α with an unknown c_α and match the outcome against
 * E_αF_α - F_αE_α = (K̃_α - K_{-α})/(q_α - q_α⁻¹).
 */
inline Calibration calibrate_pairing(const CompatibleForm& cf) {
    const auto& rd = cf.root_datum();
    size_t rank = rd.rank();
    Calibration cal;
    for (size_t a = 0; a < rank; ++a) {
        Tensor de = coproduct_generator(Side::Plus, rank, a);
        Tensor df = coproduct_generator(Side::Minus, rank, a);
        std::map<detail::DoubleKey, detail::LinearInC> diff;
        auto acc = [&](const detail::DoubleKey& k, const detail::LinearInC& v, int sign) {
            auto& slot = diff[k];
            slot.a += Fraction(sign) * v.a;
            slot.b += Fraction(sign) * v.b;
        };
        for (const auto& [ka, ca] : de.terms)
            for (const auto& [kb, cb] : df.terms) {
                Fraction s = ca * cb;
                auto lhs = detail::pair_low_degree(cf, ka.first, kb.first);
                acc(detail::make_double_key(1, ka.second, kb.second), {s * lhs.a, s * lhs.b}, +1);
                auto rhs = detail::pair_low_degree(cf, ka.second, kb.second);
                acc(detail::make_double_key(0, ka.first, kb.first), {s * rhs.a, s * rhs.b}, -1);
            }
        // Target relation T: EF - FE - (K̃_α - K_{-α})/(q_α - q_α⁻¹) = 0.
        Weight zero(rank), alpha = Weight::unit(rank, a);
        Rational d = rd.symmetrizers()[a];
        Fraction inv_qa = Fraction(qpow(d) - qpow(-d)).inverse();
        std::map<detail::DoubleKey, Fraction> target;
        target[detail::make_double_key(0, {{a}, zero}, {{a}, zero})] += 1;
        target[detail::make_double_key(1, {{a}, zero}, {{a}, zero})] -= 1;
        target[detail::make_double_key(0, {{}, alpha}, {{}, zero})] -= inv_qa;
        target[detail::make_double_key(0, {{}, zero}, {{}, -alpha})] += inv_qa;
        // Solve diff.a + c·diff.b = s·T for (s, c).
        std::set<detail::DoubleKey> keys;
        for (const auto& kv : diff) keys.insert(kv.first);
        for (const auto& kv : target) keys.insert(kv.first);
        FractionMatrix m(keys.size(), 2);
        std::vector<Fraction> rhs(keys.size());
        size_t row = 0;
        for (const auto& k : keys) {
            auto it = diff.find(k);
            auto jt = target.find(k);
            m(row, 0) = jt == target.end() ? Fraction(0) : jt->second;
            m(row, 1) = it == diff.end() ? Fraction(0) : -it->second.b;
            rhs[row] = it == diff.end() ? Fraction(0) : it->second.a;
            ++row;
        }
        auto sol = solve(m, rhs);
        if (!sol || (*sol)[0].is_zero())
            throw CalibrationFailed("no pairing constant reproduces the E-F commutator for alpha" +
                                    std::to_string(a + 1));
        // The solution must be unique.
        if (bdtwist::rank(m) < 2) throw CalibrationFailed("pairing constant is not determined");
        cal.constants.push_back((*sol)[1]);
    }
    return cal;
}

/// Gram matrix of the pairing between E-words and F-words of weight ν.
struct GramData {
    Weight nu;
    std::vector<Word> words;  ///< same list on both sides
    FractionMatrix gram;      ///< gram(i, j) = ⟨E_{words[i]} | F_{words[j]}⟩
    std::vector<size_t> normal_plus;   ///< independent rows
    std::vector<size_t> normal_minus;  ///< independent columns
    size_t rank() const { return normal_plus.size(); }

    FractionMatrix reduced() const {
        FractionMatrix r(rank(), rank());
        for (size_t i = 0; i < rank(); ++i)
            for (size_t j = 0; j < rank(); ++j) r(i, j) = gram(normal_plus[i], normal_minus[j]);
        return r;
    }
};

/// The skew pairing between the two Borel halves.
class Pairing {
public:
    explicit Pairing(CompatibleForm cf, size_t height_cap = 6) : cf_(std::move(cf)), height_cap_(height_cap) {
        c_ = calibrate_pairing(cf_).constants;
    }

    const CompatibleForm& form() const { return cf_; }
    size_t rank() const { return cf_.root_datum().rank(); }
    size_t height_cap() const { return height_cap_; }
    const Fraction& constant(size_t a) const { return c_.at(a); }

    /// ⟨E_w | F_v⟩ by peeling the first letter of v.
    const Fraction& words(const Word& w, const Word& v) const {
        auto key = std::make_pair(w, v);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Fraction total;
        if (w.size() == v.size()) {
            if (w.empty()) {
                total = 1;
            } else {
                size_t b = v.front();
                Word rest(v.begin() + 1, v.end());
                Weight beta = Weight::unit(rank(), b);
                Weight prefix(rank());
                for (size_t j = 0; j < w.size(); ++j) {
                    if (w[j] == b) {
                        Word wj = w;
                        wj.erase(wj.begin() + static_cast<long>(j));
                        const Fraction& sub = words(wj, rest);
                        if (!sub.is_zero()) total += c_[b] * Fraction(qpow(-cf_.um(prefix, beta))) * sub;
                    }
                    prefix[w[j]] += 1;
                }
            }
        }
        return memo_.emplace(key, total).first->second;
    }

    /// ⟨E_w K̃_λ | F_v K_μ⟩.
    Fraction monomials(const BorelKey& x, const BorelKey& y) const {
        const Fraction& p = words(x.word, y.word);
        if (p.is_zero()) return p;
        return Fraction(qpow(cf_.um(x.label, y.label))) * p;
    }

    Fraction pair(const BorelElement& x, const BorelElement& y) const {
        if (x.side() != Side::Plus || y.side() != Side::Minus)
            throw DomainError("pairing expects a +side element and a -side element");
        Fraction s;
        for (const auto& [kx, cx] : x.terms())
            for (const auto& [ky, cy] : y.terms()) {
                if (kx.word.size() != ky.word.size()) continue;
                Fraction v = monomials(kx, ky);
                if (!v.is_zero()) s += cx * cy * v;
            }
        return s;
    }

    /// Independent evaluation of ⟨x | y⟩ through Δ(x): peels generators off
    /// y from the left using ⟨x | F_β y'⟩ = Σ⟨x₁|F_β⟩⟨x₂|y'⟩.
    Fraction pair_via_coproduct(const BorelElement& x, const BorelElement& y) const {
        Fraction s;
        for (const auto& [ky, cy] : y.terms()) s += cy * pair_coproduct_rec(x, ky);
        return s;
    }

    GramData gram(const Weight& nu, const std::vector<size_t>& letters) const {
        if (height(nu) > Rational(static_cast<long>(height_cap_)))
            throw HeightCapExceeded("weight " + nu.str() + " exceeds the height cap " + std::to_string(height_cap_));
        GramData g;
        g.nu = nu;
        g.words = words_of_weight(nu, letters);
        size_t m = g.words.size();
        g.gram = FractionMatrix(m, m);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) g.gram(i, j) = words(g.words[i], g.words[j]);
        g.normal_plus = row_reduce(g.gram.transpose()).pivot_cols;
        g.normal_minus = row_reduce(g.gram).pivot_cols;
        std::sort(g.normal_plus.begin(), g.normal_plus.end());
        std::sort(g.normal_minus.begin(), g.normal_minus.end());
        return g;
    }

private:
    CompatibleForm cf_;
    size_t height_cap_;
    std::vector<Fraction> c_;
    mutable std::map<std::pair<Word, Word>, Fraction> memo_;

    Fraction pair_coproduct_rec(const BorelElement& x, const BorelKey& y) const {
        if (y.word.empty()) {
            Fraction s;
            for (const auto& [kx, cx] : x.terms())
                if (kx.word.empty()) s += cx * Fraction(qpow(cf_.um(kx.label, y.label)));
            return s;
        }
        size_t b = y.word.front();
        BorelKey rest{Word(y.word.begin() + 1, y.word.end()), y.label};
        Tensor dx = coproduct(cf_, x);
        std::map<BorelKey, Fraction> right;
        for (const auto& [k, c] : dx.terms) {
            // ⟨E_u K̃_λ | F_b⟩ = δ_{u,(b)} c_b since F_b carries no toral factor.
            if (k.first.word.size() == 1 && k.first.word[0] == b) right[k.second] += c * c_[b];
        }
        BorelElement x2(Side::Plus, rank());
        for (const auto& [k, c] : right) x2.add(k, c);
        if (x2.is_zero()) return Fraction();
        return pair_coproduct_rec(x2, rest);
    }

};

/// Multiparameter quantum Serre element for the pair (α_a, α_b):
/// E-side Σ_k (-1)^k [m k]_a p(α,β)^{-2k} E_a^{m-k} E_b E_a^k, F-side with
/// p(α,β)^{+2k}, where m = 1 - a_{ab}.
inline BorelElement serre_element(const CompatibleForm& cf, size_t a, size_t b, Side side) {
    const auto& rd = cf.root_datum();
    if (a >= rd.rank() || b >= rd.rank()) throw DomainError("Serre element index out of range");
    if (a == b) throw DomainError("Serre element needs distinct simple roots");
    long m = 1 - rd.cartan()[a][b];
    Rational d = rd.symmetrizers()[a];
    Rational u = cf.uf(rd.simple_root(a), rd.simple_root(b));
    BorelElement s(side, rd.rank());
    for (long k = 0; k <= m; ++k) {
        Word w(static_cast<size_t>(m - k), a);
        w.push_back(b);
        w.insert(w.end(), static_cast<size_t>(k), a);
        Rational e = side == Side::Plus ? Rational(-k * u) : Rational(k * u);
        Laurent c = qbinom(m, k, d) * qpow(e);
        if (k % 2) c = -c;
        s.add(BorelKey{w, Weight(rd.rank())}, Fraction(c));
    }
    return s;
}

/// A linear functional on one Borel half, given weight by weight.  On the
/// -side a piece evaluates as f(F_v K_μ) = q^{u₋(label, μ)} values[v]; on the
/// +side as f(E_w K̃_λ) = q^{u₋(λ, label)} values[w].  Words not listed in a
/// piece, or of a different weight, evaluate to zero.
struct FunctionalPiece {
    Weight label;
    Weight nu;
    std::map<Word, Fraction> values;
};

struct Functional {
    Side domain = Side::Minus;
    std::vector<FunctionalPiece> pieces;

    Fraction evaluate(const CompatibleForm& cf, const BorelElement& y) const {
        if (y.side() != domain) throw DomainError("functional evaluated on the wrong Borel half");
        Fraction s;
        for (const auto& [k, c] : y.terms())
            for (const auto& p : pieces) {
                auto it = p.values.find(k.word);
                if (it == p.values.end() || it->second.is_zero()) continue;
                Rational e = domain == Side::Minus ? cf.um(p.label, k.label) : cf.um(k.label, p.label);
                s += c * it->second * Fraction(qpow(e));
            }
        return s;
    }

    /// Value at 1.
    Fraction counit() const {
        Fraction s;
        for (const auto& p : pieces) {
            auto it = p.values.find(Word{});
            if (it != p.values.end()) s += it->second;
        }
        return s;
    }
};

/// y ↦ ⟨X | y⟩ for X on the +side, or x ↦ ⟨x | X⟩ for X on the -side.
/// Values are listed on all words of the relevant weights in `letters`.
inline Functional theta_apply(const Pairing& pr, const BorelElement& x, const std::vector<size_t>& letters) {
    Functional f;
    f.domain = opposite(x.side());
    std::map<std::pair<Weight, Weight>, FunctionalPiece> acc;  // (label, nu)
    for (const auto& [k, c] : x.terms()) {
        Weight nu = word_weight(k.word, x.rank());
        auto& piece = acc[{k.label, nu}];
        piece.label = k.label;
        piece.nu = nu;
        for (const auto& v : words_of_weight(nu, letters)) {
            Fraction val = x.side() == Side::Plus ? pr.words(k.word, v) : pr.words(v, k.word);
            if (!val.is_zero()) piece.values[v] += c * val;
        }
    }
    for (auto& [key, p] : acc) f.pieces.push_back(std::move(p));
    return f;
}

/// The unique element X over `letters` with θ(X) = f on the subalgebra
/// generated by those letters.  Toral labels are projected onto their span
/// and must land in `lattice`.
inline BorelElement theta_invert(const Pairing& pr, const Functional& f, const std::vector<size_t>& letters,
                                 const Lattice& lattice) {
    const auto& cf = pr.form();
    size_t rank = pr.rank();
    Side target = opposite(f.domain);
    BorelElement out(target, rank);
    for (const auto& p : f.pieces) {
        Weight k = cf.project(letters, f.domain == Side::Minus ? +1 : -1, p.label);
        if (!lattice.contains(k))
            throw AmbiguousToral("toral character " + p.label.str() + " projects to " + k.str() +
                                 ", which is not a lattice point");
        if (!cone_coordinates(p.nu, letters)) continue;
        GramData g = pr.gram(p.nu, letters);
        size_t m = g.words.size();
        std::vector<Fraction> rhs(m);
        for (size_t j = 0; j < m; ++j) {
            auto it = p.values.find(g.words[j]);
            if (it != p.values.end()) rhs[j] = it->second;
        }
        FractionMatrix a = f.domain == Side::Minus ? g.gram.transpose() : g.gram;
        auto sol = solve(a, rhs);
        if (!sol) throw NotInImage("functional at weight " + p.nu.str() + " is not in the image of theta");
        for (size_t i = 0; i < m; ++i) out.add(BorelKey{g.words[i], k}, (*sol)[i]);
    }
    return out;
}

/// ψ: letter-wise relabeling by τ (or τ⁻¹ when `inverse`), extended linearly
/// to toral labels.
inline BorelElement psi(const BDTriple& t, const BorelElement& x, bool inverse = false) {
    const auto& from = inverse ? t.pi2 : t.pi1;
    const auto& to = inverse ? t.pi1 : t.pi2;
    auto map_letter = [&](size_t a) {
        for (size_t k = 0; k < from.size(); ++k)
            if (from[k] == a) return to[k];
        throw UnsupportedLetters("alpha" + std::to_string(a + 1) + " is outside the domain of psi");
    };
    BorelElement out(x.side(), x.rank());
    for (const auto& [k, c] : x.terms()) {
        BorelKey nk{{}, Weight(x.rank())};
        for (auto a : k.word) nk.word.push_back(map_letter(a));
        for (size_t i = 0; i < x.rank(); ++i)
            if (k.label[i] != 0) nk.label[map_letter(i)] += k.label[i];
        out.add(nk, c);
    }
    return out;
}

/// σ₀ on recovered elements: X over Π₁ on the +side, Y over Π₂ on the
/// -side, paired after pulling Y back through ψ⁻.
inline Fraction sigma0(const Pairing& pr, const BDTriple& t, const BorelElement& x, const BorelElement& y) {
    return pr.pair(x, psi(t, y, true));
}

}  // namespace bdtwist
