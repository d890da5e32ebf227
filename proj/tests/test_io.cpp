#include <gtest/gtest.h>

#include "support.hpp"

using namespace bdtwist;
using namespace bdtwist::testing;
using bdtwist::io::json;

namespace {

json cg_config() {
    return json::parse(R"({
      "schema_version": 1,
      "root_datum": {"type": "A", "rank": 2},
      "triple": {"pi1": [1], "pi2": [2], "tau": {"1": 2}},
      "form": "solve"
    })");
}

TEST(ScalarJson, Quadruples) {
    Laurent x = Laurent::monomial(Rational(-3, 2), Rational(1, 3)) + Laurent::monomial(Rational(5), Rational(-2));
    json j = io::scalar_to_json(x);
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0], json({"5", "1", "-2", "1"}));
    EXPECT_EQ(j[1], json({"-3", "2", "1", "3"}));
    EXPECT_EQ(io::scalar_from_json(j), x);
    EXPECT_EQ(io::scalar_from_json(json::parse("[[1, 2, 3, 4]]")), Laurent::monomial(Rational(1, 2), Rational(3, 4)));
    EXPECT_THROW(io::scalar_from_json(json::parse("[[1, 0, 3, 4]]")), InputError);
    EXPECT_THROW(io::scalar_from_json(json::parse("[[1, 2, 3]]")), InputError);
}

TEST(ScalarJson, RandomRoundTrips) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_laurent(rng, 5);
        EXPECT_EQ(io::scalar_from_json(json::parse(io::scalar_to_json(x).dump())), x);
    }
}

TEST(RMatrixJson, RoundTripAndOrdering) {
    auto cf = cg_form();
    auto br = braiding_R(Pairing(cf), vector_rep(cf));
    json j = io::rmatrix_to_json(br.r);
    EXPECT_EQ(j["n"], 3);
    size_t prev_row = 0, prev_col = 0;
    bool first = true;
    for (const auto& e : j["entries"]) {
        size_t r = e[0], c = e[1];
        if (!first) EXPECT_TRUE(r > prev_row || (r == prev_row && c > prev_col));
        prev_row = r;
        prev_col = c;
        first = false;
    }
    auto back = io::rmatrix_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.n, 3u);
    EXPECT_EQ(back.R, br.r.R);
    EXPECT_THROW(io::rmatrix_from_json(json::parse(R"({"n": 2, "entries": [[9, 0, []]]})")), InputError);
    EXPECT_THROW(io::rmatrix_from_json(json::parse(R"({"entries": []})")), InputError);
}

TEST(TripleJson, OneBasedRoundTrip) {
    BDTriple t{{0, 1}, {3, 2}};
    json j = io::triple_to_json(t);
    EXPECT_EQ(j["pi1"], json({1, 2}));
    EXPECT_EQ(j["tau"]["1"], 4);
    EXPECT_EQ(io::triple_from_json(j, 4), t);
    EXPECT_THROW(io::triple_from_json(json::parse(R"({"pi1": [1], "pi2": [7]})"), 4), InputError);
    EXPECT_THROW(io::triple_from_json(json::parse(R"({"pi1": [1], "pi2": [2], "tau": {"1": 3}})"), 4), InputError);
    EXPECT_THROW(io::triple_from_json(json::parse(R"({"pi1": [1, 2], "pi2": [3]})"), 4), InputError);
}

TEST(Config, ParsesTheCremmerGervaisJob) {
    auto c = io::config_from_json(cg_config());
    EXPECT_EQ(c.rd.label(), "A2");
    EXPECT_EQ(c.triple, cg_triple());
    EXPECT_EQ(c.height_cap, 6u);
    EXPECT_EQ(c.sign, 1);
    auto cf = io::resolve_form(c);
    EXPECT_EQ(cf.u()(0, 1), 1);
}

TEST(Config, SignConventionAppliesToExplicitForms) {
    json j = cg_config();
    j["form"] = {{"u", json::array({json::array({"0", "-1"}), json::array({"1", "0"})})}};
    j["sign"] = "minus";
    EXPECT_EQ(io::resolve_form(io::config_from_json(j)).u()(0, 1), 1);
    j["sign"] = "plus";
    EXPECT_THROW(io::resolve_form(io::config_from_json(j)), InputError);
}

TEST(Config, RejectsInconsistentInput) {
    json j = cg_config();
    j["schema_version"] = 99;
    EXPECT_THROW(io::config_from_json(j), InputError);
    j = cg_config();
    j["omega"] = "coweight";
    EXPECT_THROW(io::config_from_json(j), InputError);
    j = cg_config();
    j["form"] = {{"solve", {{"params", {"1"}}}}};
    EXPECT_THROW(io::resolve_form(io::config_from_json(j)), InputError);  // dim 0 space
    j = cg_config();
    j["root_datum"] = {{"type", "Q"}, {"rank", 2}};
    EXPECT_THROW(io::config_from_json(j), InputError);
    j = cg_config();
    j["triple"] = {{"pi1", {1}}, {"pi2", {1}}};
    EXPECT_THROW(io::resolve_form(io::config_from_json(j)), InputError);
    j = cg_config();
    j["form"] = {{"u", {{"0", "1"}, {"1", "0"}}}};
    EXPECT_THROW(io::resolve_form(io::config_from_json(j)), InputError);  // not antisymmetric
    j = cg_config();
    j["height_cap"] = 0;
    EXPECT_THROW(io::config_from_json(j), InputError);
}

TEST(Config, FreeParametersAlongTheSolutionSpace) {
    json j = json::parse(R"({
      "root_datum": {"type": "A", "rank": 3},
      "triple": {"pi1": [1], "pi2": [3]},
      "form": {"solve": {"params": ["1/2", "0"]}}
    })");
    auto c = io::config_from_json(j);
    auto s = solve_compatible(c.rd, c.triple);
    ASSERT_EQ(s.dim(), 2u);
    auto cf = io::resolve_form(c);
    EXPECT_EQ(cf.u(), s.particular + Rational(1, 2) * s.basis[0]);
}

TEST(Config, DirectSumRootData) {
    json j = json::parse(R"({"root_datum": {"components": [{"type": "A", "rank": 1}, {"type": "A", "rank": 1}]}})");
    auto c = io::config_from_json(j);
    EXPECT_EQ(c.rd.label(), "A1xA1");
    EXPECT_TRUE(c.triple.empty());
}

TEST(Lattices, SerializedAsRationalBasis) {
    auto cf = cg_form();
    auto l = sublattice_L(cf, {0}, cf.root_datum().weight_lattice());
    EXPECT_EQ(io::lattice_to_json(l.minus), json::parse(R"([["1/3", "0"]])"));
}

TEST(GramJson, DumpCoversPositiveRoots) {
    Pairing pr(cg_form());
    auto d = io::gram_dump(pr);
    EXPECT_EQ(d.size(), 3u);
    for (const auto& g : d) EXPECT_EQ(g["words"].size(), g["matrix"].size());
}

}  // namespace
