#include <gtest/gtest.h>

#include "support.hpp"

using namespace bdtwist;
using bdtwist::testing::random_laurent;

namespace {

Laurent q(long e, long d = 1) { return qpow(Rational(e, d)); }

TEST(Laurent, CanonicalFormDropsZerosAndSorts) {
    Laurent a = q(2) + q(-1) + Laurent(3) - q(2);
    ASSERT_EQ(a.terms().size(), 2u);
    EXPECT_EQ(a.min_exponent(), -1);
    EXPECT_EQ(a.max_exponent(), 0);
    EXPECT_EQ(a.coefficient(0), 3);
    EXPECT_TRUE((q(1) - q(1)).is_zero());
}

TEST(Laurent, FractionalExponentsCompose) {
    Laurent c = q(1, 3);
    EXPECT_EQ(c * c * c, q(1));
    EXPECT_EQ(c.exponent_denominator(), 3);
    EXPECT_EQ((q(1, 2) + q(1, 3)).exponent_denominator(), 6);
}

TEST(Laurent, RingAxiomsOnRandomElements) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        Laurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(a * Laurent(1), a);
    }
}

TEST(Laurent, UnitsAndNonUnits) {
    Laurent u = Laurent::monomial(Rational(-2, 3), Rational(5, 2));
    EXPECT_TRUE((u * u.inverse()).is_one());
    EXPECT_THROW((q(1) + q(-1)).inverse(), NotAUnit);
    EXPECT_THROW(Laurent().inverse(), NotAUnit);
}

TEST(Laurent, ClassicalSpecialization) {
    for (long n = 0; n < 8; ++n) EXPECT_EQ(specialize_classical(qint(n, 1)), n);
    EXPECT_EQ(specialize_classical(q(1, 3) - q(-2)), 0);
}

// [n]_d against its closed form (q^{dn} - q^{-dn}) = [n]_d (q^d - q^{-d}).
TEST(QNumbers, QuantumIntegerClosedForm) {
    for (long d = 1; d <= 3; ++d)
        for (long n = 0; n <= 7; ++n) EXPECT_EQ(qint(n, d) * (q(d) - q(-d)), q(d * n) - q(-d * n));
    EXPECT_EQ(qint(-3, 1), -qint(3, 1));
}

// Pascal recursion [n,k] = q^{dk}[n-1,k] + q^{-d(n-k)}[n-1,k-1] as an
// independent construction of the symmetric q-binomials.
TEST(QNumbers, BinomialMatchesPascalRecursion) {
    for (long d = 1; d <= 2; ++d) {
        std::vector<std::vector<Laurent>> pascal(9);
        for (long n = 0; n <= 8; ++n) {
            pascal[n].assign(n + 1, Laurent(1));
            for (long k = 1; k < n; ++k)
                pascal[n][k] = q(d * k) * pascal[n - 1][k] + q(-d * (n - k)) * pascal[n - 1][k - 1];
        }
        for (long n = 0; n <= 8; ++n)
            for (long k = 0; k <= n; ++k) EXPECT_EQ(qbinom(n, k, d), pascal[n][k]) << n << " " << k;
    }
    EXPECT_THROW(qbinom(3, 4, 1), DomainError);
}

TEST(Fraction, NormalizesByPolynomialGcd) {
    Fraction f(q(2) - Laurent(1), q(1) - Laurent(1));
    ASSERT_TRUE(f.is_laurent());
    EXPECT_EQ(f.laurent(), q(1) + Laurent(1));
    Fraction g(q(3), q(1));
    EXPECT_EQ(g.laurent(), q(2));
    Fraction h(Laurent(1), q(1) - q(-1));
    EXPECT_FALSE(h.is_laurent());
    EXPECT_THROW(h.laurent(), NotLaurent);
}

TEST(Fraction, FieldAxiomsOnRandomElements) {
    std::mt19937 rng(5);
    int checked = 0;
    while (checked < 60) {
        Laurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        if (b.is_zero() || c.is_zero()) continue;
        Fraction x(a, b), y(c, b + c), z(b, c);
        if ((b + c).is_zero()) continue;
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ((x * y) * z, x * (y * z));
        if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), Fraction(1));
        EXPECT_EQ((x - y) + y, x);
        ++checked;
    }
}

TEST(Fraction, DivisionByZeroThrows) {
    EXPECT_THROW(Fraction(Laurent(1), Laurent()), DivisionByZero);
    EXPECT_THROW(Fraction().inverse(), DivisionByZero);
}

TEST(Fraction, FractionalExponentCancellation) {
    // (q^{2/3} - 1) / (q^{1/3} - 1) = q^{1/3} + 1
    Fraction f(q(2, 3) - Laurent(1), q(1, 3) - Laurent(1));
    ASSERT_TRUE(f.is_laurent());
    EXPECT_EQ(f.laurent(), q(1, 3) + Laurent(1));
}

}  // namespace
