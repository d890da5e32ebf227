#include <gtest/gtest.h>

#include "support.hpp"

using namespace bdtwist;
using namespace bdtwist::testing;

namespace {

ScalarMatrix scalar_id(size_t n, const Laurent& s) { return s * ScalarMatrix::identity(n); }

// (B - a)(B + a q^{∓2}) = 0 with a the eigenvalue on v1⊗v1.
bool hecke_with_standard_eigenvalues(const RMatrix& rm) {
    ScalarMatrix b = rm.braid();
    size_t d = b.rows();
    Laurent a = b(0, 0);
    for (long s : {-2L, 2L}) {
        ScalarMatrix p = (b - scalar_id(d, a)) * (b + scalar_id(d, a * qpow(s)));
        if (p.is_zero()) return true;
    }
    return false;
}

class VectorRepTest : public ::testing::TestWithParam<int> {};

TEST_P(VectorRepTest, WeightsAndDefiningRelations) {
    int r = GetParam();
    auto rd = RootDatum::build('A', r);
    std::mt19937 rng(50 + r);
    for (int trial = 0; trial < 3; ++trial) {
        CompatibleForm cf(rd, trial == 0 ? RationalMatrix(r, r) : random_antisymmetric(r, rng));
        auto v = vector_rep(cf);
        ASSERT_EQ(v.dim, static_cast<size_t>(r + 1));
        // weights ϖ1, ϖ1 - α1, ϖ1 - α1 - α2, ... and they sum to zero
        Weight sum(r);
        for (size_t k = 0; k < v.dim; ++k) {
            sum = sum + v.weights[k];
            if (k > 0) EXPECT_EQ(v.weights[k - 1] - v.weights[k], rd.simple_root(k - 1));
        }
        EXPECT_TRUE(sum.is_zero());
        auto rep = check_relations(cf, v);
        EXPECT_TRUE(rep.ok()) << (rep.ok() ? "" : rep.failures.front());
        if (r <= 2) {
            auto rep2 = check_relations(cf, tensor(cf, v, v));
            EXPECT_TRUE(rep2.ok()) << (rep2.ok() ? "" : rep2.failures.front());
        }
    }
}

TEST_P(VectorRepTest, AntipodeInverse) {
    int r = GetParam();
    auto rd = RootDatum::build('A', r);
    std::mt19937 rng(60 + r);
    CompatibleForm cf(rd, random_antisymmetric(r, rng));
    auto v = vector_rep(cf);
    for (size_t a = 0; a < static_cast<size_t>(r); ++a) {
        Weight al = rd.simple_root(a);
        auto sf = antipode_inverse_word_action(cf, v, Side::Minus, {a});
        auto se = antipode_inverse_word_action(cf, v, Side::Plus, {a});
        // Σ S⁻¹(x₂) x₁ = ε(x) for Δ(F) = F⊗K_{-α} + 1⊗F and Δ(E) = E⊗1 + K̃_α⊗E
        EXPECT_TRUE((toral_action(cf, v, Side::Minus, al) * v.F[a] + sf).is_zero());
        EXPECT_TRUE((se + v.E[a] * toral_action(cf, v, Side::Plus, -al)).is_zero());
        for (size_t b = 0; b < static_cast<size_t>(r); ++b) {
            auto sfb = antipode_inverse_word_action(cf, v, Side::Minus, {b});
            EXPECT_EQ(antipode_inverse_word_action(cf, v, Side::Minus, {a, b}), sfb * sf);
        }
    }
}

TEST_P(VectorRepTest, BraidingProperties) {
    int r = GetParam();
    auto rd = RootDatum::build('A', r);
    std::mt19937 rng(70 + r);
    for (int trial = 0; trial < 2; ++trial) {
        CompatibleForm cf(rd, trial == 0 ? RationalMatrix(r, r) : random_antisymmetric(r, rng));
        Pairing pr(cf);
        auto v = vector_rep(cf);
        auto br = braiding_R(pr, v);
        EXPECT_TRUE(satisfies_qybe(br.r));
        EXPECT_TRUE(satisfies_braid_relation(br.r));
        EXPECT_EQ(minimal_polynomial_degree(br.r), r == 0 ? 1u : 2u);
        EXPECT_TRUE(hecke_with_standard_eigenvalues(br.r));
        auto rtt = rtt_check(cf, br.r, v);
        EXPECT_TRUE(rtt.pass) << rtt.witness;
        EXPECT_TRUE(nonstandard_support(br.r).empty());
        EXPECT_EQ(br.kappa, Rational(-1) * (cf.u() + cf.root_datum().gram()));
        // R = 1 at q = 1
        for (size_t i = 0; i < br.r.R.rows(); ++i)
            for (size_t j = 0; j < br.r.R.cols(); ++j)
                EXPECT_EQ(specialize_classical(br.r.R(i, j)), i == j ? 1 : 0);
    }
}

INSTANTIATE_TEST_SUITE_P(Ranks, VectorRepTest, ::testing::Values(1, 2, 3));

TEST(MatrixCoefficient, ValuesAreWordActionEntries) {
    auto cf = cg_form();
    auto v = vector_rep(cf);
    auto f = matrix_coefficient(cf, v, 2, 0, Side::Minus, {0, 1});
    ASSERT_EQ(f.pieces.size(), 1u);
    EXPECT_EQ(f.pieces[0].nu, Weight({Rational(1), Rational(1)}));
    EXPECT_EQ(f.pieces[0].label, -v.weights[0]);
    for (const auto& [w, val] : f.pieces[0].values) EXPECT_EQ(val, Fraction(word_action(v, Side::Minus, w)(2, 0)));
    // restricted to α1 only the (2,0) coefficient vanishes
    EXPECT_TRUE(matrix_coefficient(cf, v, 2, 0, Side::Minus, {0}).pieces.empty());
    EXPECT_EQ(matrix_coefficient(cf, v, 1, 1, Side::Plus, {1}).counit(), Fraction(1));
}

TEST(MatrixCoefficient, EvaluationMatchesTheModule) {
    auto cf = cg_form();
    auto v = vector_rep(cf);
    Weight mu({Rational(1, 3), Rational(-1)});
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < 3; ++b) {
            auto f = matrix_coefficient(cf, v, a, b, Side::Minus, {0, 1});
            for (const auto& w : std::vector<Word>{{}, {0}, {1}, {0, 1}, {1, 0}}) {
                auto y = BorelElement::monomial(Side::Minus, 2, w, mu);
                auto act = word_action(v, Side::Minus, w) * toral_action(cf, v, Side::Minus, mu);
                EXPECT_EQ(f.evaluate(cf, y), Fraction(act(a, b)));
            }
        }
}

TEST(RMatrixChecks, DetectBrokenMatrices) {
    RMatrix bad;
    bad.n = 2;
    bad.R = ScalarMatrix::identity(4);
    bad.R(0, 3) = qpow(1);
    auto cf = CompatibleForm::zero(RootDatum::build('A', 1));
    auto v = vector_rep(cf);
    EXPECT_FALSE(nonstandard_support(bad).empty());
    RMatrix trivial{2, ScalarMatrix::identity(4)};
    EXPECT_TRUE(satisfies_qybe(trivial));
    EXPECT_EQ(minimal_polynomial_degree(trivial), 2u);  // the flip
    EXPECT_FALSE(rtt_check(cf, trivial, v).pass);
    RMatrix skew{2, ScalarMatrix::identity(4)};
    skew.R(1, 2) = qpow(1);
    skew.R(0, 1) = Laurent(2);
    EXPECT_FALSE(satisfies_qybe(skew) && satisfies_braid_relation(skew));
}

TEST(VectorRep, OnlyTypeA) { EXPECT_THROW(vector_rep(CompatibleForm::zero(RootDatum::build('B', 2))), DomainError); }

}  // namespace
