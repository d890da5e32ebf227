// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.  Jobs are loaded from the fixture configs.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "bdtwist.hpp"

using namespace bdtwist;
using io::json;

namespace {

struct Job {
    io::JobConfig config;
    CompatibleForm form;
};

Job load(const std::string& name) {
    auto c = io::config_from_json(io::read_json_file(std::string(BDTWIST_FIXTURES) + "/" + name));
    auto cf = io::resolve_form(c);
    return {c, cf};
}

Cocycle cocycle_of(const Job& j) {
    return Cocycle(Pairing(j.form, j.config.height_cap), j.config.triple, j.config.omega_lattice());
}

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_seconds) {
        o.pass = false;
        o.detail += " (over the time budget)";
    }
    if (!o.pass) ++failures;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << title << " | " << o.detail << " | " << t.str()
              << "s" << std::endl;
}

std::vector<size_t> letters_of(size_t r) {
    std::vector<size_t> v(r);
    for (size_t i = 0; i < r; ++i) v[i] = i;
    return v;
}

RationalMatrix random_form(size_t r, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    RationalMatrix u(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j) {
            Rational x(num(rng), den(rng));
            x.canonicalize();
            u(i, j) = x;
            u(j, i) = -x;
        }
    return u;
}

// Independent brute force: ordered disjoint nonempty subsets and all
// bijections between them preserving the inner product.
size_t brute_force_count(const RootDatum& rd) {
    size_t r = rd.rank(), count = 0;
    for (unsigned a = 1; a < (1u << r); ++a)
        for (unsigned b = 1; b < (1u << r); ++b) {
            if (a & b) continue;
            std::vector<size_t> p1, p2;
            for (size_t i = 0; i < r; ++i) {
                if (a >> i & 1) p1.push_back(i);
                if (b >> i & 1) p2.push_back(i);
            }
            if (p1.size() != p2.size()) continue;
            do {
                bool iso = true;
                for (size_t x = 0; x < p1.size(); ++x)
                    for (size_t y = 0; y < p1.size(); ++y) iso = iso && rd.gram()(p1[x], p1[y]) == rd.gram()(p2[x], p2[y]);
                count += iso;
            } while (std::next_permutation(p2.begin(), p2.end()));
        }
    return count;
}

// Expands Σ⟨a₁|b₁⟩ b₂a₂ and Σ a₁b₁⟨a₂|b₂⟩ for a = E_α, b = F_α and reads off
// [E_α, F_α] = EF - FE as a combination of toral elements.
Outcome cross_relation(const RootDatum& rd, size_t alpha) {
    auto cf = CompatibleForm::zero(rd);
    Pairing pr(cf);
    size_t r = rd.rank();
    auto da = coproduct_generator(Side::Plus, r, alpha);
    auto db = coproduct_generator(Side::Minus, r, alpha);
    auto el = [r](Side s, const BorelKey& k) { return BorelElement::monomial(s, r, k.word, k.label); };
    // keys: "EF"/"FE" for the degree (1,1) products, "Kt:λ" / "K:μ" for toral ones
    std::map<std::string, Fraction> lhs, rhs;
    auto name = [](const BorelKey& first, char f, const BorelKey& second, char s) -> std::string {
        if (!first.word.empty() && !second.word.empty()) return std::string(1, f) + s;
        if (first.word.empty() && second.word.empty()) {
            if (!first.label.is_zero() && !second.label.is_zero()) return "mixed";
            const auto& lab = first.label.is_zero() ? second.label : first.label;
            char which = first.label.is_zero() ? s : f;
            return std::string(which == 'E' ? "Kt:" : "K:") + lab.str();
        }
        return "other";
    };
    for (const auto& [ka, ca] : da.terms)
        for (const auto& [kb, cb] : db.terms) {
            Fraction left = pr.pair(el(Side::Plus, ka.first), el(Side::Minus, kb.first));
            if (!left.is_zero()) lhs[name(kb.second, 'F', ka.second, 'E')] += ca * cb * left;
            Fraction right = pr.pair(el(Side::Plus, ka.second), el(Side::Minus, kb.second));
            if (!right.is_zero()) rhs[name(ka.first, 'E', kb.first, 'F')] += ca * cb * right;
        }
    // LHS = RHS with FE on the left and EF on the right gives
    // EF - FE = (toral part of LHS) - (toral part of RHS).
    if (lhs["FE"] != Fraction(1) || rhs["EF"] != Fraction(1)) return {false, "unexpected shape"};
    lhs.erase("FE");
    rhs.erase("EF");
    std::map<std::string, Fraction> commutator = lhs;
    for (const auto& [k, v] : rhs) commutator[k] -= v;
    Rational d = rd.symmetrizers()[alpha];
    Fraction inv = Fraction(Laurent(1)) / Fraction(qpow(d) - qpow(-d));
    Weight a = rd.simple_root(alpha);
    std::map<std::string, Fraction> displayed = {{"Kt:" + a.str(), inv}, {"K:" + (-a).str(), -inv}};
    for (auto it = commutator.begin(); it != commutator.end();) it = it->second.is_zero() ? commutator.erase(it) : std::next(it);
    return {commutator == displayed, "c = " + pr.constant(alpha).str()};
}

}  // namespace

int main() {
    const auto cg = load("cg_sl3.json");
    const auto sl4 = load("sl4_disjoint.json");
    const auto empty = load("empty_sl3.json");

    criterion(1, "CG SL(3) compatibility", 1.0, [&] {
        auto s = solve_compatible(cg.config.rd, cg.config.triple);
        auto reported = io::solution_space_to_json(s, Rational(-1));
        bool ok = s.consistent && s.dim() == 0 && abs(s.particular(0, 1)) == 1 && reported["particular"][0][1] == "-1";
        return Outcome{ok, "dim " + std::to_string(s.dim()) + ", u(a1,a2) = " + s.particular(0, 1).get_str() +
                               ", reported under sign minus: " + reported["particular"][0][1].get<std::string>()};
    });

    criterion(2, "Lattice L1 for the CG triple with Omega = weight lattice", 1.0, [&] {
        auto l = sublattice_L(cg.form, cg.config.triple.pi1, cg.config.rd.weight_lattice());
        Weight third({Rational(1, 3), Rational(0)});
        bool ok = l.minus.basis() == std::vector<Weight>{third} && l.plus.basis() == std::vector<Weight>{third};
        return Outcome{ok, "basis " + l.minus.basis().front().str()};
    });

    criterion(3, "2-cocycle identity on all degree-1 generator triples", 300.0, [&] {
        auto a = cocycle_check(cocycle_of(cg), 1);
        auto b = cocycle_check(cocycle_of(sl4), 1);
        return Outcome{a.pass && b.pass, "CG " + a.witness + ", SL(4) disjoint " + b.witness};
    });

    criterion(4, "Serre elements lie in the radical, reduced Gram blocks invertible", 60.0, [&] {
        std::mt19937 rng(2024);
        size_t serre = 0, blocks = 0;
        for (int r : {2, 3}) {
            auto rd = RootDatum::build('A', r);
            for (int trial = 0; trial < 3; ++trial) {
                CompatibleForm cf(rd, random_form(r, rng));
                Pairing pr(cf);
                auto all = letters_of(r);
                for (size_t a = 0; a < rd.rank(); ++a)
                    for (size_t b = 0; b < rd.rank(); ++b) {
                        if (a == b || rd.cartan()[a][b] == 0) continue;
                        auto sp = serre_element(cf, a, b, Side::Plus), sm = serre_element(cf, a, b, Side::Minus);
                        Weight nu = word_weight(sp.terms().begin()->first.word, rd.rank());
                        for (const auto& w : words_of_weight(nu, all)) {
                            auto y = BorelElement::monomial(Side::Minus, rd.rank(), w, Weight(rd.rank()));
                            auto x = BorelElement::monomial(Side::Plus, rd.rank(), w, Weight(rd.rank()));
                            if (!pr.pair(sp, y).is_zero() || !pr.pair(x, sm).is_zero())
                                return Outcome{false, "Serre element (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")"};
                        }
                        ++serre;
                    }
                // every weight in the positive cone of height 1..4
                std::set<Weight> seen;
                std::vector<Word> frontier{{}};
                for (int h = 1; h <= 4; ++h) {
                    std::vector<Word> next;
                    for (const auto& w : frontier)
                        for (size_t a = 0; a < rd.rank(); ++a)
                            if (w.empty() || a >= w.back()) {
                                Word x = w;
                                x.push_back(a);
                                next.push_back(x);
                            }
                    for (const auto& w : next) {
                        auto g = pr.gram(word_weight(w, rd.rank()), all);
                        if (g.rank() > 0 && determinant(g.reduced()).is_zero()) return Outcome{false, "singular block"};
                        ++blocks;
                    }
                    frontier = next;
                }
            }
        }
        return Outcome{true, std::to_string(serre) + " Serre elements, " + std::to_string(blocks) + " Gram blocks"};
    });

    criterion(5, "Pairing calibration reproduces [E,F] = (Kt - K^-1)/(q_a - q_a^-1)", 10.0, [&] {
        size_t roots = 0;
        std::string detail;
        for (int r : {1, 2, 3}) {
            auto rd = RootDatum::build('A', r);
            for (size_t a = 0; a < rd.rank(); ++a) {
                auto o = cross_relation(rd, a);
                if (!o.pass) return Outcome{false, "A" + std::to_string(r) + " root " + std::to_string(a + 1)};
                detail = o.detail;
                ++roots;
            }
        }
        return Outcome{true, std::to_string(roots) + " simple roots, " + detail};
    });

    criterion(6, "Untwisted R: QYBE, braid relation, equivariance, quadratic minimal polynomial", 120.0, [&] {
        std::string detail;
        for (int r : {1, 2}) {
            auto rd = RootDatum::build('A', r);
            std::vector<CompatibleForm> forms{CompatibleForm::zero(rd)};
            if (r == 2) forms.push_back(cg.form);
            for (const auto& cf : forms) {
                Pairing pr(cf);
                auto v = vector_rep(cf);
                auto br = braiding_R(pr, v);
                bool ok = satisfies_qybe(br.r) && satisfies_braid_relation(br.r) && rtt_check(cf, br.r, v).pass &&
                          minimal_polynomial_degree(br.r) == 2;
                if (!ok) return Outcome{false, "SL(" + std::to_string(r + 1) + ")"};
            }
        }
        return Outcome{true, "SL(2), SL(3) with u = 0 and the CG form"};
    });

    criterion(7, "CG twisted R': QYBE, quadratic, nonstandard support; empty triple gives R' = R", 120.0, [&] {
        Pairing pr(cg.form);
        auto br = braiding_R(pr, vector_rep(cg.form));
        auto rp = twisted_R(cocycle_of(cg), br.r);
        auto ns = nonstandard_support(rp);
        bool cg_ok = satisfies_qybe(rp) && minimal_polynomial_degree(rp) == 2 && !ns.empty();
        Pairing pe(empty.form);
        auto be = braiding_R(pe, vector_rep(empty.form));
        auto re = twisted_R(cocycle_of(empty), be.r);
        bool control = re.R == be.r.R;
        return Outcome{cg_ok && control, std::to_string(ns.size()) + " nonstandard entries, control " +
                                             (control ? "R' = R" : "differs")};
    });

    criterion(8, "Two-path gamma agreement on degree-1 pairs", 60.0, [&] {
        auto c = two_path_check(cocycle_of(cg));
        return Outcome{c.pass, c.witness};
    });

    criterion(9, "Convolution inverse on degree-1 pairs", 60.0, [&] {
        auto a = convolution_inverse_check(cocycle_of(cg));
        auto b = convolution_inverse_check(cocycle_of(sl4));
        return Outcome{a.pass && b.pass, "CG " + a.witness + "; SL(4) " + b.witness};
    });

    criterion(10, "Disjoint triple enumeration against brute force and golden counts", 60.0, [&] {
        json golden = io::read_json_file(std::string(BDTWIST_GOLDEN) + "/disjoint_triple_counts.json");
        std::string detail;
        bool ok = golden.at("A2") == 2;
        for (auto [ty, r] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'D', 4}}) {
            auto rd = RootDatum::build(ty, r);
            size_t got = enumerate_disjoint(rd).size();
            ok = ok && got == brute_force_count(rd) && golden.at(rd.label()) == got;
            detail += rd.label() + "=" + std::to_string(got) + " ";
        }
        return Outcome{ok, detail};
    });

    criterion(11, "Surjectivity shadow for the completely disjoint SL(4) fixture", 60.0, [&] {
        auto rep = nondegeneracy_witness(cocycle_of(sl4));
        return Outcome{rep.pass, std::to_string(rep.directions_hit) + "/" + std::to_string(rep.directions_required) +
                                     " directions, toral rank " + std::to_string(rep.toral_rank) + "/" +
                                     std::to_string(rep.toral_rank_required)};
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
