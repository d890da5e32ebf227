// Batch front end.  Every command prints one JSON document on stdout and,
// with --out, also writes it (plus R' for `twist`) into that directory.
//
// Exit codes: 0 when every check passes, 1 on a verification failure,
// 2 on bad input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bdtwist.hpp"

namespace fs = std::filesystem;
using namespace bdtwist;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

struct Overrides {
    std::string config;
    std::string out;
    std::optional<size_t> height_cap;
    std::optional<std::string> omega, sign;
};

json envelope(const std::string& command) { return {{"schema_version", io::kSchemaVersion}, {"command", command}}; }

void emit(const json& doc, const Overrides& o, const std::string& name) {
    std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (o.out.empty()) return;
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / name);
    if (!f) throw InputError("cannot write " + (fs::path(o.out) / name).string());
    f << text;
}

io::JobConfig load_config(const Overrides& o) {
    if (o.config.empty()) throw InputError("--config is required for this command");
    auto c = io::config_from_json(io::read_json_file(o.config));
    if (o.height_cap) {
        if (*o.height_cap == 0) throw InputError("--height-cap must be positive");
        c.height_cap = *o.height_cap;
    }
    if (o.omega) c.omega = io::parse_omega(*o.omega);
    if (o.sign) c.sign = io::parse_sign(*o.sign);
    return c;
}

json describe_job(const io::JobConfig& c, const CompatibleForm& cf) {
    return {{"root_datum", io::root_datum_to_json(c.rd)},
            {"triple", io::triple_to_json(c.triple)},
            {"sign", c.sign > 0 ? "plus" : "minus"},
            {"omega", c.omega == io::OmegaChoice::Root ? "root" : "weight"},
            {"height_cap", c.height_cap},
            {"u", io::rational_matrix_to_json(Rational(c.sign) * cf.u())}};
}

int cmd_triples(const Overrides& o, const std::vector<std::string>& args) {
    RootDatum rd;
    if (!args.empty()) {
        if (args.size() != 2) throw InputError("usage: triples TYPE RANK");
        json datum = {{"type", args[0]}};
        try {
            datum["rank"] = std::stoi(args[1]);
        } catch (const std::exception&) {
            throw InputError("rank must be an integer");
        }
        rd = io::root_datum_from_json(datum);
    } else {
        rd = load_config(o).rd;
    }
    json list = json::array();
    for (const auto& t : enumerate_disjoint(rd)) {
        json e = io::triple_to_json(t);
        e["completely_disjoint"] = completely_disjoint(rd, t);
        e["u_space_dim"] = solve_compatible(rd, t).dim();
        list.push_back(e);
    }
    json doc = envelope("triples");
    doc["root_datum"] = io::root_datum_to_json(rd);
    doc["count"] = list.size();
    doc["triples"] = list;
    emit(doc, o, "triples.json");
    return kOk;
}

int cmd_compat(const Overrides& o) {
    auto c = load_config(o);
    auto rep = validate_triple(c.rd, c.triple);
    if (!rep.ok()) throw InputError("invalid triple: " + rep.violations.front());
    auto space = solve_compatible(c.rd, c.triple);
    json doc = envelope("compat");
    doc["solution_space"] = io::solution_space_to_json(space, Rational(c.sign));
    if (!space.consistent && c.form == io::FormMode::Solve) {
        doc["root_datum"] = io::root_datum_to_json(c.rd);
        doc["triple"] = io::triple_to_json(c.triple);
        emit(doc, o, "compat.json");
        return kVerifyFailed;
    }
    auto cf = io::resolve_form(c);
    doc.update(describe_job(c, cf));
    auto omega = c.omega_lattice();
    doc["omega_basis"] = io::lattice_to_json(omega);
    doc["lattices"] = {{"L1", io::lattice_pair_to_json(sublattice_L(cf, c.triple.pi1, omega))},
                       {"L2", io::lattice_pair_to_json(sublattice_L(cf, c.triple.pi2, omega))}};
    doc["completely_disjoint"] = completely_disjoint(c.rd, c.triple);
    emit(doc, o, "compat.json");
    return kOk;
}

int cmd_twist(const Overrides& o) {
    auto c = load_config(o);
    auto cf = io::resolve_form(c);
    Pairing pr(cf, c.height_cap);
    auto omega = c.omega_lattice();
    auto rep = run_twist(pr, c.triple, omega, c.options);
    json checks = json::array();
    for (const auto& k : rep.checks) checks.push_back(io::check_to_json(k));
    bool pass = rep.all_pass();
    if (completely_disjoint(c.rd, c.triple) && cf.u().is_zero() && !c.triple.empty()) {
        auto nd = nondegeneracy_witness(Cocycle(pr, c.triple, omega));
        checks.push_back({{"name", "nondegeneracy_witness"},
                          {"pass", nd.pass},
                          {"witness", std::to_string(nd.directions_hit) + "/" + std::to_string(nd.directions_required) +
                                          " directions, toral rank " + std::to_string(nd.toral_rank) + "/" +
                                          std::to_string(nd.toral_rank_required)}});
        pass = pass && nd.pass;
    }
    json constants = json::array();
    for (size_t a = 0; a < pr.rank(); ++a) constants.push_back(io::fraction_to_json(pr.constant(a)));
    size_t n = rep.r.n;

    json doc = envelope("twist");
    doc.update(describe_job(c, cf));
    doc["pass"] = pass;
    doc["checks"] = checks;
    doc["calibration"] = {{"pairing_constants", constants}, {"kappa", io::rational_matrix_to_json(rep.kappa)}};
    doc["gamma_table"] = io::gamma_table_to_json(rep.gamma, n);
    doc["r"] = io::rmatrix_to_json(rep.r);
    doc["r_prime"] = io::rmatrix_to_json(rep.r_prime);
    doc["r_prime_min_poly_degree"] = rep.min_poly_degree;
    doc["r_prime_nonstandard_support"] = io::support_to_json(rep.nonstandard, n);
    doc["relations_differ"] = rep.relations_differ;
    if (rep.relations_differ) doc["relations_witness"] = rep.relations_witness;
    if (c.dump_gram) doc["gram"] = io::gram_dump(pr);
    emit(doc, o, c.report_name);
    if (!o.out.empty()) {
        json rp = io::rmatrix_to_json(rep.r_prime);
        rp["schema_version"] = io::kSchemaVersion;
        std::ofstream(fs::path(o.out) / c.r_prime_name) << rp.dump(2) << "\n";
    }
    return pass ? kOk : kVerifyFailed;
}

int cmd_verify(const Overrides& o, const std::string& path) {
    json in = io::read_json_file(path);
    RMatrix rm = io::rmatrix_from_json(in.contains("r_prime") ? in.at("r_prime") : in);
    json checks = json::array();
    bool qybe = satisfies_qybe(rm), braid = satisfies_braid_relation(rm);
    size_t deg = minimal_polynomial_degree(rm);
    checks.push_back({{"name", "qybe"}, {"pass", qybe}});
    checks.push_back({{"name", "braid_relation"}, {"pass", braid}});
    checks.push_back({{"name", "hecke"}, {"pass", deg == 2}, {"witness", "minimal polynomial degree " + std::to_string(deg)}});
    auto ns = nonstandard_support(rm);
    json doc = envelope("verify");
    doc["n"] = rm.n;
    doc["checks"] = checks;
    doc["min_poly_degree"] = deg;
    doc["support"] = ns.empty() ? "standard pattern" : "nonstandard";
    doc["nonstandard_entries"] = io::support_to_json(ns, rm.n);
    bool pass = qybe && braid && deg == 2;
    doc["pass"] = pass;
    emit(doc, o, "verify.json");
    return pass ? kOk : kVerifyFailed;
}

int fail(const std::string& kind, const std::string& message, int code) {
    json doc = {{"schema_version", io::kSchemaVersion}, {"error", {{"kind", kind}, {"message", message}}}};
    std::cout << doc.dump(2) << "\n";
    std::cerr << "bdtwist: " << message << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Belavin-Drinfeld cocycle twists of multiparameter quantum groups"};
    app.require_subcommand(1);
    app.fallthrough();
    Overrides o;
    app.add_option("--config", o.config, "job configuration (JSON)");
    app.add_option("--out", o.out, "directory for output files");
    app.add_option("--height-cap", o.height_cap, "bound on the height of graded computations");
    app.add_option("--omega", o.omega, "lattice Ω for the toral parts")->check(CLI::IsMember({"root", "weight"}));
    app.add_option("--sign", o.sign, "sign convention for u")->check(CLI::IsMember({"plus", "minus"}));

    std::vector<std::string> triple_args;
    std::string verify_path;
    auto* triples = app.add_subcommand("triples", "list disjoint triples of a root datum");
    triples->add_option("datum", triple_args, "TYPE RANK (otherwise taken from --config)");
    auto* compat = app.add_subcommand("compat", "compatible forms and the lattices L1, L2");
    auto* twist = app.add_subcommand("twist", "build the cocycle, verify it and emit R'");
    auto* verify = app.add_subcommand("verify", "check an R-matrix file");
    verify->add_option("path", verify_path, "R-matrix or twist report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*triples) return cmd_triples(o, triple_args);
        if (*compat) return cmd_compat(o);
        if (*twist) return cmd_twist(o);
        if (*verify) return cmd_verify(o, verify_path);
    } catch (const InputError& e) {
        return fail("InputError", e.what(), kInputError);
    } catch (const json::exception& e) {
        return fail("InputError", e.what(), kInputError);
    } catch (const Error& e) {
        return fail("VerificationError", e.what(), kVerifyFailed);
    }
    return kInputError;
}
