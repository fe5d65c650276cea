// partalg: command-line front end for the operator-algebra partition toolkit.
//
// Exit codes: 0 = all checked properties pass, 1 = a checked property failed
// (the report is still written), 2 = usage or input error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "partalg/examples.hpp"
#include "partalg/json_io.hpp"
#include "partalg/representation.hpp"

using nlohmann::json;
using namespace partalg;

namespace {

struct GlobalOpts {
    Config cfg;
    bool tol_from_flag = false;
    std::string out;  // empty = stdout
    int jobs = 1;
    bool timing = false;
    std::chrono::steady_clock::time_point start;
};

void write_report(const GlobalOpts& g, json report) {
    if (g.timing) {
        const auto elapsed = std::chrono::steady_clock::now() - g.start;
        report["timing_ms"] =
            std::chrono::duration<double, std::milli>(elapsed).count();
    }
    const std::string text = report.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(g.out);
        if (!out) throw std::runtime_error("cannot open output file: " + g.out);
        out << text;
    }
}

json config_json(const Config& cfg) {
    return json{{"tol", cfg.tol}, {"seed", cfg.seed}};
}

Config effective_config(const GlobalOpts& g, const SpecDocument& doc) {
    Config cfg = doc.cfg;  // spec meta applied over CLI defaults
    if (g.tol_from_flag) cfg.tol = g.cfg.tol;
    cfg.seed = g.cfg.seed;
    return cfg;
}

json partition_report(const PartitionReport& rep) {
    json pairs = json::array();
    for (const auto& pr : rep.pairs)
        pairs.push_back(json{{"s", pr.s_key},
                             {"t", pr.t_key},
                             {"verdict", pr.report.verdict},
                             {"containment_ok", pr.report.containment_ok},
                             {"block_distance", pr.report.block_distance},
                             {"centre_distance", pr.report.centre_distance}});
    return json{{"verdict", rep.verdict},
                {"boundary_empty_ok", rep.boundary_empty_ok},
                {"boundary_full_ok", rep.boundary_full_ok},
                {"pairs", std::move(pairs)}};
}

int cmd_analyze(const GlobalOpts& g, const std::string& input) {
    SpecDocument doc = parse_spec_file(input, g.cfg);
    const Config cfg = effective_config(g, doc);
    if (doc.kind != "algebra")
        throw std::runtime_error("analyze expects a spec of kind \"algebra\"");

    const OperatorAlgebra a = generate(doc.ambient_dim, doc.generators, cfg);
    const BlockStructure bs = block_structure(a, cfg);
    json blocks = json::array();
    for (size_t l = 0; l < bs.factor_dims.size(); ++l)
        blocks.push_back(json{
            {"factor_dim", bs.factor_dims[l]},
            {"multiplicity", bs.multiplicities[l]},
            {"rank", int(std::lround(bs.central_projectors[l].trace().real()))}});
    write_report(g, json{{"command", "analyze"},
                         {"config", config_json(cfg)},
                         {"ambient_dim", doc.ambient_dim},
                         {"dim", a.dim()},
                         {"centre_dim", int(bs.factor_dims.size())},
                         {"blocks", std::move(blocks)}});
    return 0;
}

int cmd_partition_check(const GlobalOpts& g, const std::string& input) {
    SpecDocument doc = parse_spec_file(input, g.cfg);
    const Config cfg = effective_config(g, doc);
    const PartitionReport rep = check_partition(doc.partition, cfg);
    write_report(g, json{{"command", "partition check"},
                         {"config", config_json(cfg)},
                         {"report", partition_report(rep)}});
    return rep.verdict ? 0 : 1;
}

int cmd_routes(const GlobalOpts& g, const std::string& input) {
    SpecDocument doc = parse_spec_file(input, g.cfg);
    const Config cfg = effective_config(g, doc);
    const CentreTable table = centres_via_routes(doc.partition, cfg);
    json subsets = json::array();
    for (const auto& e : table.entries)
        subsets.push_back(json{{"subset", e.key},
                               {"eta", route_json(e.eta)},
                               {"classes", int(e.route_projectors.size())},
                               {"max_distance", e.max_distance}});
    write_report(g, json{{"command", "routes"},
                         {"config", config_json(cfg)},
                         {"sigma", route_json(table.sigma)},
                         {"eta_x", route_json(table.eta_x)},
                         {"subsets", std::move(subsets)},
                         {"cross_check_ok", table.ok}});
    return table.ok ? 0 : 1;
}

int cmd_represent(const GlobalOpts& g, const std::string& input, bool audit) {
    SpecDocument doc = parse_spec_file(input, g.cfg);
    const Config cfg = effective_config(g, doc);
    const Partition& p = doc.partition;

    const PartitionReport pre = check_partition(p, cfg);
    if (!pre.verdict) {
        write_report(g, json{{"command", "represent"},
                             {"config", config_json(cfg)},
                             {"error", "input is not a valid partition"},
                             {"report", partition_report(pre)}});
        return 1;
    }

    const Representation rep = construct_representation(p, cfg);
    json site_dims = json::object();
    for (size_t n = 0; n < rep.sites.size(); ++n)
        site_dims[rep.sites[n]] = rep.space.dims[n];

    json dephasings = json::array();
    for (const auto& d : extract_dephasings(p, rep, cfg))
        dephasings.push_back(json{{"subset", d.subset_key},
                                  {"phases", d.phases},
                                  {"residual", d.residual}});

    json report{{"command", "represent"},
                {"config", config_json(cfg)},
                {"site_sector_dims", std::move(site_dims)},
                {"sigma", route_json(rep.sigma)},
                {"eta_x", route_json(rep.eta_x)},
                {"intertwiner", matrix_to_json(rep.intertwiner)},
                {"dephasings", std::move(dephasings)}};

    bool ok = true;
    if (audit) {
        const RepresentationAudit ra = audit_representation(p, rep, cfg);
        json subsets = json::array();
        for (const auto& sa : ra.subsets)
            subsets.push_back(json{{"subset", sa.subset_key},
                                   {"distance", sa.distance},
                                   {"localised", sa.localised}});
        report["audit"] = json{{"subsets", std::move(subsets)},
                               {"fully_localised", ra.fully_localised}};
        ok = ra.fully_localised;
    }
    write_report(g, std::move(report));
    return ok ? 0 : 1;
}

int cmd_fermion(const GlobalOpts& g, int modes, const std::string& check,
                const std::string& emit_spec) {
    const Config cfg = g.cfg;
    const Partition p = fermionic_partition(modes, cfg);
    if (!emit_spec.empty()) {
        std::ofstream out(emit_spec);
        if (!out)
            throw std::runtime_error("cannot open output file: " + emit_spec);
        out << partition_spec_json(p).dump(2) << "\n";
    }

    json report{{"command", "fermion"},
                {"config", config_json(cfg)},
                {"modes", modes}};
    bool ok = true;

    const FermionSystem sys = jw_system(modes);
    if (check == "all" || check == "projectors") {
        // closed-form parity projector vs the diagonal odd-parity oracle
        double worst = 0.0;
        for (int mask = 1; mask < (1 << modes); ++mask) {
            std::vector<int> S;
            for (int i = 0; i < modes; ++i)
                if (mask & (1 << i)) S.push_back(i);
            const CMat formula = parity_projector(sys, S);
            CMat diag = CMat::Zero(sys.dim(), sys.dim());
            for (int b = 0; b < sys.dim(); ++b) {
                int k = 0;
                for (int i : S) k += (b >> (modes - 1 - i)) & 1;
                if (k % 2 == 1) diag(b, b) = 1.0;
            }
            worst = std::max(worst, (formula - diag).norm());
        }
        report["projector_formula_error"] = worst;
        ok = ok && worst <= 1e-12;
    }
    if (check == "all" || check == "partition") {
        const PartitionReport rep = check_partition(p, cfg);
        report["partition"] = partition_report(rep);
        ok = ok && rep.verdict;
    }
    report["verdict"] = ok;
    write_report(g, std::move(report));
    return ok ? 0 : 1;
}

int cmd_example(const GlobalOpts& g, const std::string& which, int d,
                int modes) {
    Partition p;
    if (which == "factorisation")
        p = factorisation_partition(2, 2, g.cfg);
    else if (which == "two-trajectories")
        p = two_trajectories_partition(d, g.cfg);
    else if (which == "tripartite")
        p = tripartite_partition(d, g.cfg);
    else if (which == "fermion")
        p = fermionic_partition(modes, g.cfg);
    else
        throw CLI::ValidationError("example",
                                   "unknown example \"" + which + "\"");
    write_report(g, partition_spec_json(p));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-algebra partition toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("PARTALG_TOL")) {
        try {
            g.cfg.tol = std::stod(env);
        } catch (...) {
            std::cerr << "invalid PARTALG_TOL value: " << env << "\n";
            return 2;
        }
    }

    auto* tol_opt =
        app.add_option("--tol", g.cfg.tol, "numerical tolerance")->capture_default_str();
    app.add_option("--seed", g.cfg.seed, "PRNG seed")->capture_default_str();
    app.add_option("--out", g.out, "report path (default stdout)");
    app.add_option("--jobs", g.jobs, "max concurrent independent checks")
        ->capture_default_str();
    app.add_flag("--timing", g.timing, "include timing in the report");

    std::string input;
    bool audit = false;
    int modes = 2, d = 2;
    std::string check = "all", emit_spec, which;

    auto* analyze = app.add_subcommand("analyze", "algebra block structure");
    analyze->add_option("--input", input, "spec JSON")->required();

    auto* partition = app.add_subcommand("partition", "partition commands");
    auto* pcheck = partition->add_subcommand("check", "validate a partition");
    pcheck->add_option("--input", input, "partition spec JSON")->required();
    partition->require_subcommand(1);

    auto* routes = app.add_subcommand("routes", "σ / η_X / η_S dump");
    routes->add_option("--input", input, "partition spec JSON")->required();

    auto* represent =
        app.add_subcommand("represent", "construct the representation");
    represent->add_option("--input", input, "partition spec JSON")->required();
    represent->add_flag("--audit", audit, "audit full localisation");

    auto* fermion = app.add_subcommand("fermion", "N-mode fermionic system");
    fermion->add_option("--modes", modes, "number of modes")
        ->required()
        ->check(CLI::Range(2, 5));
    fermion->add_option("--check", check, "all | partition | projectors")
        ->check(CLI::IsMember({"all", "partition", "projectors"}));
    fermion->add_option("--emit-spec", emit_spec,
                        "also write the partition spec JSON here");

    auto* example = app.add_subcommand("example", "emit a built-in example");
    example->add_option("name", which, "factorisation | two-trajectories | tripartite | fermion")
        ->required();
    example->add_option("--d", d, "internal dimension")->check(CLI::Range(2, 6));
    example->add_option("--modes", modes, "fermionic modes")
        ->check(CLI::Range(2, 5));

    // allow the global options (--out, --tol, ...) after the subcommand too
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    g.tol_from_flag = tol_opt->count() > 0;
    g.start = std::chrono::steady_clock::now();

    try {
        if (*analyze) return cmd_analyze(g, input);
        if (*partition) return cmd_partition_check(g, input);
        if (*routes) return cmd_routes(g, input);
        if (*represent) return cmd_represent(g, input, audit);
        if (*fermion) return cmd_fermion(g, modes, check, emit_spec);
        if (*example) return cmd_example(g, which, d, modes);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
