// JSON encoding of library values and the job configuration.
//
// Simple roots are numbered from 1 in every JSON document and from 0 in
// code.  Rationals travel as strings ("2", "-1/3") so that large values
// survive round trips.
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bdtwist/twist.hpp"

namespace bdtwist::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------- scalars

inline json rational_to_json(const Rational& r) { return r.get_str(); }

inline Rational rational_from_json(const json& j) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_string()) {
            Rational r(j.get<std::string>());
            r.canonicalize();
            if (r.get_den() == 0) throw InputError("zero denominator");
            return r;
        }
    } catch (const std::invalid_argument&) {
    }
    throw InputError("expected a rational, got " + j.dump());
}

/// [[num, den, exp_num, exp_den], ...] sorted by exponent.
inline json scalar_to_json(const Laurent& a) {
    json out = json::array();
    for (const auto& [e, c] : a.terms())
        out.push_back({c.get_num().get_str(), c.get_den().get_str(), e.get_num().get_str(), e.get_den().get_str()});
    return out;
}

inline Laurent scalar_from_json(const json& j) {
    if (!j.is_array()) throw InputError("a scalar must be an array of quadruples");
    std::vector<Laurent::Term> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 4) throw InputError("a scalar term must be [num, den, exp_num, exp_den]");
        auto part = [](const json& x) -> Integer {
            if (x.is_number_integer()) return Integer(x.get<long>());
            if (x.is_string()) {
                try {
                    return Integer(x.get<std::string>());
                } catch (const std::invalid_argument&) {
                }
            }
            throw InputError("bad integer " + x.dump());
        };
        Integer d1 = part(t[1]), d2 = part(t[3]);
        if (d1 == 0 || d2 == 0) throw InputError("zero denominator in scalar");
        Rational c(part(t[0]), d1), e(part(t[2]), d2);
        c.canonicalize();
        e.canonicalize();
        terms.emplace_back(e, c);
    }
    return Laurent::from_terms(std::move(terms));
}

/// Laurent values as a scalar array, anything else as {num, den}.
inline json fraction_to_json(const Fraction& f) {
    if (f.is_laurent()) return scalar_to_json(f.numerator());
    return {{"num", scalar_to_json(f.numerator())}, {"den", scalar_to_json(f.denominator())}};
}

inline json rational_matrix_to_json(const RationalMatrix& m) {
    json out = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

inline RationalMatrix rational_matrix_from_json(const json& j, size_t n) {
    if (!j.is_array() || j.size() != n) throw InputError("expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    RationalMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n) throw InputError("matrix row " + std::to_string(i + 1) + " has the wrong length");
        for (size_t k = 0; k < n; ++k) m(i, k) = rational_from_json(j[i][k]);
    }
    return m;
}

// ------------------------------------------------------------- root data

inline json weight_to_json(const Weight& w) {
    json out = json::array();
    for (const auto& c : w.coords()) out.push_back(rational_to_json(c));
    return out;
}

inline json lattice_to_json(const Lattice& l) {
    json out = json::array();
    for (const auto& b : l.basis()) out.push_back(weight_to_json(b));
    return out;
}

inline RootDatum root_datum_from_json(const json& j) {
    auto single = [](const json& c) {
        if (!c.contains("type") || !c.contains("rank")) throw InputError("root_datum needs type and rank");
        std::string type = c.at("type").get<std::string>();
        if (type.size() != 1) throw InputError("root_datum type must be one letter A-G");
        if (!c.at("rank").is_number_integer()) throw InputError("root_datum rank must be an integer");
        try {
            return RootDatum::build(type[0], c.at("rank").get<int>());
        } catch (const InvalidRootDatum& e) {
            throw InputError(e.what());
        }
    };
    if (!j.is_object()) throw InputError("root_datum must be an object");
    if (j.contains("components")) {
        const auto& cs = j.at("components");
        if (!cs.is_array() || cs.empty()) throw InputError("components must be a nonempty array");
        RootDatum rd = single(cs[0]);
        for (size_t k = 1; k < cs.size(); ++k) rd = RootDatum::direct_sum(rd, single(cs[k]));
        return rd;
    }
    return single(j);
}

inline json root_datum_to_json(const RootDatum& rd) {
    json out = {{"label", rd.label()}, {"rank", rd.rank()}};
    if (rd.type() != 0) out["type"] = std::string(1, rd.type());
    return out;
}

// --------------------------------------------------------------- triples

inline json triple_to_json(const BDTriple& t) {
    json pi1 = json::array(), pi2 = json::array(), tau = json::object();
    for (auto a : t.pi1) pi1.push_back(a + 1);
    for (auto b : t.pi2) pi2.push_back(b + 1);
    for (size_t k = 0; k < t.pi1.size(); ++k) tau[std::to_string(t.pi1[k] + 1)] = t.pi2[k] + 1;
    return {{"pi1", pi1}, {"pi2", pi2}, {"tau", tau}};
}

/// Reads {pi1, pi2, tau}; the matching is taken from tau when present and
/// otherwise from list order.  Indices are checked against the rank.
inline BDTriple triple_from_json(const json& j, size_t rank) {
    if (!j.is_object()) throw InputError("triple must be an object");
    auto index = [rank](const json& x) -> size_t {
        long v = 0;
        if (x.is_number_integer()) v = x.get<long>();
        else if (x.is_string()) {
            try {
                v = std::stol(x.get<std::string>());
            } catch (const std::exception&) {
                throw InputError("bad simple root index " + x.dump());
            }
        } else
            throw InputError("bad simple root index " + x.dump());
        if (v < 1 || static_cast<size_t>(v) > rank)
            throw InputError("simple root index " + std::to_string(v) + " out of range 1.." + std::to_string(rank));
        return static_cast<size_t>(v - 1);
    };
    auto list = [&](const char* key) {
        std::vector<size_t> out;
        if (!j.contains(key)) return out;
        if (!j.at(key).is_array()) throw InputError(std::string(key) + " must be an array");
        for (const auto& x : j.at(key)) out.push_back(index(x));
        return out;
    };
    BDTriple t;
    auto pi1 = list("pi1"), pi2 = list("pi2");
    if (j.contains("tau")) {
        const auto& tau = j.at("tau");
        if (!tau.is_object()) throw InputError("tau must be an object {from: to}");
        if (tau.size() != pi1.size()) throw InputError("tau must be defined on exactly pi1");
        for (auto a : pi1) {
            auto key = std::to_string(a + 1);
            if (!tau.contains(key)) throw InputError("tau is missing alpha" + key);
            size_t b = index(tau.at(key));
            if (std::find(pi2.begin(), pi2.end(), b) == pi2.end())
                throw InputError("tau(alpha" + key + ") is not in pi2");
            t.pi1.push_back(a);
            t.pi2.push_back(b);
        }
    } else {
        t.pi1 = pi1;
        t.pi2 = pi2;
    }
    if (t.pi1.size() != pi2.size()) throw InputError("pi1 and pi2 have different sizes");
    return t;
}

// ------------------------------------------------------------ forms, L_i

inline json solution_space_to_json(const SolutionSpace& s, const Rational& sign) {
    json basis = json::array();
    for (const auto& b : s.basis) basis.push_back(rational_matrix_to_json(sign * b));
    json out = {{"consistent", s.consistent}, {"dim", s.dim()}, {"basis", basis}};
    out["particular"] = s.consistent ? rational_matrix_to_json(sign * s.particular) : json(nullptr);
    return out;
}

inline json lattice_pair_to_json(const LatticePair& p) {
    return {{"minus", lattice_to_json(p.minus)}, {"plus", lattice_to_json(p.plus)}};
}

// --------------------------------------------------------------- pairing

inline json word_to_json(const Word& w) {
    json out = json::array();
    for (auto a : w) out.push_back(a + 1);
    return out;
}

inline json gram_to_json(const GramData& g) {
    json words = json::array(), rows = json::array();
    for (const auto& w : g.words) words.push_back(word_to_json(w));
    for (size_t i = 0; i < g.gram.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < g.gram.cols(); ++j) row.push_back(fraction_to_json(g.gram(i, j)));
        rows.push_back(row);
    }
    return {{"nu", weight_to_json(g.nu)}, {"words", words}, {"matrix", rows}, {"rank", g.rank()}};
}

/// Gram matrices of every positive root weight of height within the cap.
inline json gram_dump(const Pairing& pr) {
    json out = json::array();
    std::vector<size_t> all(pr.rank());
    for (size_t a = 0; a < all.size(); ++a) all[a] = a;
    for (const auto& nu : pr.form().root_datum().positive_roots())
        if (height(nu) <= Rational(static_cast<long>(pr.height_cap()))) out.push_back(gram_to_json(pr.gram(nu, all)));
    return out;
}

// -------------------------------------------------------------- R-matrix

/// {n, entries: [[row, col, scalar]]}, zero entries omitted, row-major.
inline json rmatrix_to_json(const RMatrix& r) {
    json entries = json::array();
    for (size_t i = 0; i < r.R.rows(); ++i)
        for (size_t j = 0; j < r.R.cols(); ++j)
            if (!r.R(i, j).is_zero()) entries.push_back({i, j, scalar_to_json(r.R(i, j))});
    return {{"n", r.n}, {"entries", entries}};
}

inline RMatrix rmatrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries")) throw InputError("R-matrix needs n and entries");
    if (!j.at("n").is_number_unsigned() || j.at("n").get<size_t>() == 0) throw InputError("n must be a positive integer");
    RMatrix r;
    r.n = j.at("n").get<size_t>();
    size_t d = r.n * r.n;
    r.R = ScalarMatrix(d, d);
    if (!j.at("entries").is_array()) throw InputError("entries must be an array");
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
            throw InputError("an entry must be [row, col, scalar]");
        size_t a = e[0].get<size_t>(), b = e[1].get<size_t>();
        if (a >= d || b >= d) throw InputError("entry index out of range");
        r.R(a, b) = scalar_from_json(e[2]);
    }
    return r;
}

// --------------------------------------------------------------- reports

inline json check_to_json(const Check& c) {
    json out = {{"name", c.name}, {"pass", c.pass}};
    if (!c.witness.empty()) out["witness"] = c.witness;
    return out;
}

inline json index_pair(size_t idx, size_t n) { return {idx / n + 1, idx % n + 1}; }

/// Nonzero γ(t_ij, t_kl) as [[i, j, k, l], value] from the table
/// G[(i,k),(a,b)] = γ(t_ia, t_kb), indices from 1.
inline json gamma_table_to_json(const FractionMatrix& g, size_t n) {
    json out = json::array();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t l = 0; l < n; ++l) {
                    const auto& v = g(i * n + k, j * n + l);
                    if (!v.is_zero()) out.push_back({{i + 1, j + 1, k + 1, l + 1}, fraction_to_json(v)});
                }
    return out;
}

inline json support_to_json(const std::vector<std::pair<size_t, size_t>>& s, size_t n) {
    json out = json::array();
    for (auto [a, b] : s) out.push_back({index_pair(a, n), index_pair(b, n)});
    return out;
}

// ----------------------------------------------------------- job config

enum class FormMode { Zero, Solve, Explicit };
enum class OmegaChoice { Root, Weight };

struct JobConfig {
    RootDatum rd;
    BDTriple triple;
    FormMode form = FormMode::Solve;
    std::vector<Rational> params;  ///< coordinates along the solution basis
    RationalMatrix u_user;         ///< explicit form, user sign convention
    OmegaChoice omega = OmegaChoice::Weight;
    size_t height_cap = 6;
    int sign = 1;  ///< u_user = sign · u_internal
    TwistOptions options;
    bool dump_gram = false;
    std::string report_name = "twist_report.json";
    std::string r_prime_name = "r_prime.json";

    Lattice omega_lattice() const { return omega == OmegaChoice::Root ? rd.root_lattice() : rd.weight_lattice(); }
};

inline OmegaChoice parse_omega(const std::string& s) {
    if (s == "root") return OmegaChoice::Root;
    if (s == "weight") return OmegaChoice::Weight;
    throw InputError("omega must be root or weight, got " + s);
}

inline int parse_sign(const std::string& s) {
    if (s == "plus") return 1;
    if (s == "minus") return -1;
    throw InputError("sign must be plus or minus, got " + s);
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline JobConfig config_from_json(const json& j) {
    if (!j.is_object()) throw InputError("config must be a JSON object");
    if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion)
        throw InputError("unsupported schema_version " + j.at("schema_version").dump());
    if (!j.contains("root_datum")) throw InputError("config needs root_datum");
    JobConfig c;
    c.rd = root_datum_from_json(j.at("root_datum"));
    c.triple = j.contains("triple") ? triple_from_json(j.at("triple"), c.rd.rank()) : BDTriple{};
    if (j.contains("omega")) c.omega = parse_omega(j.at("omega").get<std::string>());
    if (j.contains("sign")) c.sign = parse_sign(j.at("sign").get<std::string>());
    if (j.contains("height_cap")) {
        if (!j.at("height_cap").is_number_unsigned() || j.at("height_cap").get<size_t>() == 0)
            throw InputError("height_cap must be a positive integer");
        c.height_cap = j.at("height_cap").get<size_t>();
    }
    if (j.contains("form")) {
        const auto& f = j.at("form");
        if (f.is_string()) {
            auto s = f.get<std::string>();
            if (s == "zero") c.form = FormMode::Zero;
            else if (s == "solve") c.form = FormMode::Solve;
            else throw InputError("form must be \"zero\", \"solve\" or an object");
        } else if (f.is_object() && f.contains("u")) {
            c.form = FormMode::Explicit;
            c.u_user = rational_matrix_from_json(f.at("u"), c.rd.rank());
        } else if (f.is_object() && f.contains("solve")) {
            c.form = FormMode::Solve;
            const auto& p = f.at("solve");
            if (!p.is_object() || !p.contains("params") || !p.at("params").is_array())
                throw InputError("form.solve must be {\"params\": [...]}");
            for (const auto& x : p.at("params")) c.params.push_back(rational_from_json(x));
        } else
            throw InputError("form must be \"zero\", \"solve\", {\"u\": matrix} or {\"solve\": {\"params\": [...]}}");
    }
    if (j.contains("checks")) {
        const auto& k = j.at("checks");
        c.options.cocycle_degree2 = k.value("cocycle_degree2", c.options.cocycle_degree2);
        c.options.associativity = k.value("associativity", c.options.associativity);
        c.options.multiplicativity_oracle = k.value("multiplicativity_oracle", c.options.multiplicativity_oracle);
        c.options.twisted_relations = k.value("twisted_relations", c.options.twisted_relations);
    }
    c.dump_gram = j.value("dump_gram", false);
    if (j.contains("outputs")) {
        const auto& o = j.at("outputs");
        c.report_name = o.value("report", c.report_name);
        c.r_prime_name = o.value("r_prime", c.r_prime_name);
    }
    return c;
}

/// Validates the triple and resolves the form to the internal convention.
/// Every inconsistency is an InputError with the reason.
inline CompatibleForm resolve_form(const JobConfig& c) {
    auto rep = validate_triple(c.rd, c.triple);
    if (!rep.ok()) throw InputError("invalid triple: " + rep.violations.front());
    size_t r = c.rd.rank();
    RationalMatrix u(r, r);
    switch (c.form) {
        case FormMode::Zero: break;
        case FormMode::Explicit: u = Rational(c.sign) * c.u_user; break;
        case FormMode::Solve: {
            auto s = solve_compatible(c.rd, c.triple);
            if (!s.consistent) throw InputError("no compatible form exists for this triple");
            if (!c.params.empty() && c.params.size() != s.dim())
                throw InputError("form.solve.params has " + std::to_string(c.params.size()) + " entries, the space has dim " +
                                 std::to_string(s.dim()));
            u = s.particular;
            for (size_t k = 0; k < c.params.size(); ++k) u = u + c.params[k] * s.basis[k];
            break;
        }
    }
    auto comp = check_compatible(c.rd, c.triple, u);
    if (!comp.ok()) throw InputError("form is not compatible with the triple: " + comp.violations.front());
    try {
        return CompatibleForm(c.rd, u);
    } catch (const IncompatibleForm& e) {
        throw InputError(e.what());
    }
}

}  // namespace bdtwist::io
