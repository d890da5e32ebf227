/**
 * @file scalar.hpp
 * @brief Exact coefficients: Laurent polynomials in a formal q^(1/N) over the
 * rationals, their field of fractions, and quantum integers / binomials.
 *
 * Exponents are exact rationals and the denominator N is never fixed up front;
 * every operation works with whatever denominators its operands carry.
 */
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bdtwist/error.hpp"

namespace bdtwist {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Rational ratio(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Element of Q[q^(1/N), q^(-1/N)].  Canonical form: terms sorted by
/// exponent, no zero coefficients.
class Laurent {
public:
    /// (exponent, coefficient)
    using Term = std::pair<Rational, Rational>;

    Laurent() = default;
    Laurent(const Rational& c) {
        if (c != 0) terms_.emplace_back(Rational(0), c);
    }
    Laurent(long c) : Laurent(Rational(c)) {}
    Laurent(int c) : Laurent(Rational(c)) {}

    static Laurent monomial(const Rational& coeff, const Rational& exponent) {
        Laurent r;
        if (coeff != 0) r.terms_.emplace_back(exponent, coeff);
        return r;
    }

    static Laurent from_terms(std::vector<Term> terms) {
        Laurent r;
        r.terms_ = std::move(terms);
        r.normalize();
        return r;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_one() const { return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1; }

    Rational coefficient(const Rational& exponent) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                                   [](const Term& t, const Rational& e) { return t.first < e; });
        if (it != terms_.end() && it->first == exponent) return it->second;
        return 0;
    }

    const Rational& min_exponent() const { return terms_.front().first; }
    const Rational& max_exponent() const { return terms_.back().first; }

    /// lcm of the exponent denominators (1 for the zero element).
    Integer exponent_denominator() const {
        Integer d = 1;
        for (const auto& [e, c] : terms_) d = lcm(d, e.get_den());
        return d;
    }

    Laurent operator-() const {
        Laurent r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    Laurent& operator+=(const Laurent& o) {
        terms_ = merge(terms_, o.terms_, 1);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        terms_ = merge(terms_, o.terms_, -1);
        return *this;
    }
    Laurent& operator*=(const Laurent& o) {
        *this = *this * o;
        return *this;
    }

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_monomial()) return b.scaled(a.terms_[0].second, a.terms_[0].first);
        if (b.is_monomial()) return a.scaled(b.terms_[0].second, b.terms_[0].first);
        std::map<Rational, Rational> acc;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
        Laurent r;
        r.terms_.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (c != 0) r.terms_.emplace_back(e, c);
        return r;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    /// Multiply by coeff * q^shift.
    Laurent scaled(const Rational& coeff, const Rational& shift) const {
        if (coeff == 0) return {};
        Laurent r = *this;
        for (auto& t : r.terms_) {
            t.first += shift;
            t.second *= coeff;
        }
        return r;
    }

    /// Inverse in the ring; only monomials are units.
    Laurent inverse() const {
        if (!is_monomial()) throw NotAUnit(str() + " is not a monomial");
        return monomial(1 / terms_[0].second, -terms_[0].first);
    }

    /// Division by a monomial.
    Laurent divided_by(const Laurent& unit) const { return *this * unit.inverse(); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // highest power first reads more naturally
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->second;
            const Rational& e = it->first;
            if (!first) {
                os << (c < 0 ? " - " : " + ");
                c = abs(c);
            } else if (c < 0) {
                os << "-";
                c = -c;
            }
            first = false;
            if (e == 0) {
                os << c.get_str();
                continue;
            }
            if (c != 1) os << c.get_str() << "*";
            os << "q";
            if (e != 1) {
                if (e.get_den() == 1 && e > 0)
                    os << "^" << e.get_str();
                else
                    os << "^(" << e.get_str() << ")";
            }
        }
        return os.str();
    }

private:
    std::vector<Term> terms_;

    void normalize() {
        std::map<Rational, Rational> acc;
        for (auto& [e, c] : terms_) acc[e] += c;
        terms_.clear();
        for (auto& [e, c] : acc)
            if (c != 0) terms_.emplace_back(e, c);
    }

    static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
        std::vector<Term> out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, sign > 0 ? b[j].second : Rational(-b[j].second));
                ++j;
            } else {
                Rational c = sign > 0 ? Rational(a[i].second + b[j].second) : Rational(a[i].second - b[j].second);
                if (c != 0) out.emplace_back(a[i].first, c);
                ++i;
                ++j;
            }
        }
        return out;
    }
};

/// The coefficient ring used throughout.
using Scalar = Laurent;

/// q^x.
inline Scalar qpow(const Rational& x) { return Laurent::monomial(1, x); }

/// Substitute q -> 1.
inline Rational specialize_classical(const Laurent& a) {
    Rational s = 0;
    for (const auto& [e, c] : a.terms()) s += c;
    return s;
}

namespace detail {

/// Dense polynomial over Q in t = q^(1/N); index = power of t.
using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q;
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    for (size_t k = a.size() - 1;; --k) {
        Rational f = a[k] / lead;
        if (f != 0) {
            size_t shift = k - (b.size() - 1);
            q[shift] = f;
            for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        }
        if (k == b.size() - 1) break;
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

/// Laurent -> t-polynomial, given N (must clear every exponent denominator)
/// and the exponent that maps to t^0.
inline Poly to_poly(const Laurent& a, const Integer& n, const Rational& base) {
    Poly p;
    for (const auto& [e, c] : a.terms()) {
        Rational k = (e - base) * n;
        size_t idx = k.get_num().get_ui();
        if (p.size() <= idx) p.resize(idx + 1, Rational(0));
        p[idx] = c;
    }
    return p;
}

inline Laurent from_poly(const Poly& p, const Integer& n, const Rational& base) {
    std::vector<Laurent::Term> terms;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) terms.emplace_back(base + ratio(Integer(static_cast<unsigned long>(i)), n), p[i]);
    return Laurent::from_terms(std::move(terms));
}

}  // namespace detail

/// Element of the fraction field Q(q^(1/N)).  Canonical form: numerator and
/// denominator coprime, denominator has lowest exponent 0 and leading
/// coefficient 1.
class Fraction {
public:
    Fraction() : den_(1) {}
    Fraction(const Laurent& num) : num_(num), den_(1) {}
    Fraction(const Rational& c) : num_(c), den_(1) {}
    Fraction(long c) : num_(c), den_(1) {}
    Fraction(int c) : num_(c), den_(1) {}
    Fraction(Laurent num, Laurent den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
        normalize();
    }

    const Laurent& numerator() const { return num_; }
    const Laurent& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.is_one(); }

    std::optional<Laurent> to_laurent() const {
        if (den_.is_one()) return num_;
        return std::nullopt;
    }
    Laurent laurent() const {
        if (!den_.is_one()) throw NotLaurent(str());
        return num_;
    }

    Fraction operator-() const {
        Fraction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Fraction inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        return Fraction(den_, num_);
    }

    friend Fraction operator+(const Fraction& a, const Fraction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return Fraction(a.num_ + b.num_, a.den_);
        return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }
    friend Fraction operator*(const Fraction& a, const Fraction& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.den_.is_one() && b.den_.is_one()) {
            Fraction r;
            r.num_ = a.num_ * b.num_;
            return r;
        }
        return Fraction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Fraction operator/(const Fraction& a, const Fraction& b) { return a * b.inverse(); }
    Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
    Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
    Fraction& operator*=(const Fraction& o) { return *this = *this * o; }
    Fraction& operator/=(const Fraction& o) { return *this = *this / o; }

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    Laurent num_;
    Laurent den_;

    void normalize() {
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_.is_monomial()) {
            num_ = num_.divided_by(den_);
            den_ = 1;
            return;
        }
        Integer n = lcm(num_.exponent_denominator(), den_.exponent_denominator());
        Rational nb = num_.min_exponent(), db = den_.min_exponent();
        detail::Poly pn = detail::to_poly(num_, n, nb);
        detail::Poly pd = detail::to_poly(den_, n, db);
        detail::Poly g = detail::gcd(pn, pd);
        if (g.size() > 1) {
            pn = detail::divmod(pn, g).first;
            pd = detail::divmod(pd, g).first;
        }
        // make the denominator monic with lowest power t^0
        size_t low = 0;
        while (pd[low] == 0) ++low;
        Rational lead = pd.back();
        for (auto& c : pn) c /= lead;
        for (auto& c : pd) c /= lead;
        Rational shift = db + ratio(Integer(static_cast<unsigned long>(low)), n);
        num_ = detail::from_poly(pn, n, nb - shift);
        den_ = detail::from_poly(pd, n, db - shift);
    }
};

/// Quantum integer [n]_d = (q^(dn) - q^(-dn)) / (q^d - q^(-d)).
inline Scalar qint(long n, const Rational& d) {
    if (n < 0) return -qint(-n, d);
    Laurent r;
    for (long i = 0; i < n; ++i) r += qpow(d * (n - 1 - 2 * i));
    return r;
}

inline Scalar qfactorial(long n, const Rational& d) {
    Scalar r = 1;
    for (long i = 2; i <= n; ++i) r *= qint(i, d);
    return r;
}

/// Quantum binomial coefficient [n choose k]_d via quantum factorials.
inline Scalar qbinom(long n, long k, const Rational& d) {
    if (k < 0 || k > n) throw DomainError("qbinom requires 0 <= k <= n");
    Fraction f(qfactorial(n, d), qfactorial(k, d) * qfactorial(n - k, d));
    return f.laurent();
}

inline std::ostream& operator<<(std::ostream& os, const Laurent& a) { return os << a.str(); }
inline std::ostream& operator<<(std::ostream& os, const Fraction& a) { return os << a.str(); }

}  // namespace bdtwist
