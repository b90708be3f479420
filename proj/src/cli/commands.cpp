#include "ivfopt/cli.hpp"

#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "cli/args.hpp"
#include "cli/json_report.hpp"
#include "cli/repro.hpp"
#include "ivfopt/corpus.hpp"
#include "ivfopt/optimality.hpp"

namespace ivfopt::cli {

namespace {

struct Options {
    std::string ivf;
    std::string ivf1;
    std::string ivf2;
    std::string u;
    std::string g;
    std::string c_list;
    std::string domain;
    std::string mode = "both";
    std::string case_id;
    double c = 0.0;
    std::optional<std::size_t> grid;
    double tol = kDefaultTol;
    bool no_focal = false;
    int splits = 20;
};

std::vector<double> c_values(const Options& o) {
    return o.c_list.empty() ? default_c_list() : parse_floats(o.c_list);
}

double scalar_u(const Ivf& f, const Options& o) {
    if (f.dim() != 1) throw DimensionError("'" + f.name() + "' is not one-dimensional");
    return point_for(f, o.u)[0];
}

int emit(Report& rep, std::ostream& out, bool holds) {
    rep.results["holds"] = holds;
    out << rep.dump();
    return holds ? 0 : 1;
}

int cmd_check_member(const Options& o, Report& rep, std::ostream& out) {
    const Ivf f = load_ivf(o.ivf);
    const auto u = point_for(f, o.u);
    const WeakCandidate cand(parse_intervals(o.g), o.c);
    if (cand.g.size() != f.dim()) throw DimensionError("G has the wrong number of components");
    rep.inputs = {{"ivf", o.ivf}, {"u", vector_json(u)}, {"candidate", candidate_json(cand)}, {"tol", num(o.tol)}};
    const CheckResult r = member_check(f, u, cand, grid_spec(o.grid, o.no_focal), o.tol);
    rep.results = {{"member", r.holds}};
    if (!r.holds) {
        rep.results["witness"] = vector_json(*r.witness);
        rep.results["violation"] = num(r.violation);
        rep.diag("info", "weak-subgradient inequality fails", r.witness);
    }
    return emit(rep, out, r.holds);
}

int cmd_region(const Options& o, Report& rep, std::ostream& out) {
    const Ivf f = load_ivf(o.ivf);
    const double u = scalar_u(f, o);
    const std::vector<double> cs = o.c_list.empty() ? std::vector<double>{o.c} : parse_floats(o.c_list);
    rep.inputs = {{"ivf", o.ivf}, {"u", num(u)}, {"c", vector_json(cs)}};
    const FocalSweep sweep = FocalSweep::build(f, std::span<const double>(&u, 1), grid_spec(o.grid, o.no_focal));
    json regions = json::array();
    for (const double c : cs) regions.push_back(region_json(region_1d(sweep, c, o.tol)));
    rep.results = {{"regions", regions}};
    out << rep.dump();
    return 0;
}

int cmd_repro(const Options& o, Report& rep, std::ostream& out) {
    rep.inputs = {{"case", o.case_id}};
    std::vector<const ReproCase*> selected;
    for (const auto& c : repro_cases()) {
        if (o.case_id == "all" || o.case_id == c.id) selected.push_back(&c);
    }
    if (selected.empty()) throw UsageError("unknown repro case '" + o.case_id + "'");
    json cases = json::array();
    std::size_t passed = 0;
    for (const ReproCase* c : selected) {
        json r = run_repro_case(*c);
        if (r["status"] == "PASS") ++passed;
        cases.push_back(std::move(r));
    }
    rep.results = {{"cases", cases}, {"passed", passed}, {"total", selected.size()}};
    return emit(rep, out, passed == selected.size());
}

int cmd_efficiency(const Options& o, Report& rep, std::ostream& out) {
    if (o.mode != "weak" && o.mode != "efficient" && o.mode != "both") {
        throw UsageError("--mode must be weak, efficient or both");
    }
    const Ivf f = load_ivf(o.ivf);
    const auto u = point_for(f, o.u);
    const GridSpec spec = grid_spec(o.grid, o.no_focal);
    rep.inputs = {{"ivf", o.ivf}, {"u", vector_json(u)}, {"mode", o.mode}, {"tol", num(o.tol)}};
    bool holds = true;
    if (o.mode != "efficient") {
        const CheckResult r = weak_efficient_check(f, u, spec, o.tol);
        rep.results["weak_efficient"] = check_json(r);
        holds = holds && r.holds;
        if (!r.holds) rep.diag("info", "a grid point dominates f(u)", r.witness);
    }
    if (o.mode != "weak") {
        const CheckResult r = efficient_check(f, u, spec, o.tol);
        rep.results["efficient"] = check_json(r);
        holds = holds && r.holds;
        if (!r.holds) rep.diag("info", "a grid point strictly dominates f(u)", r.witness);
    }
    return emit(rep, out, holds);
}

int cmd_sum_rule(const Options& o, Report& rep, std::ostream& out) {
    const Ivf f1 = load_ivf(o.ivf1);
    const Ivf f2 = load_ivf(o.ivf2);
    const double u = scalar_u(f1, o);
    const auto cs = c_values(o);
    rep.inputs = {{"ivf1", o.ivf1}, {"ivf2", o.ivf2}, {"u", num(u)}, {"c", vector_json(cs)}, {"splits", o.splits}};
    const SumRuleReport r = sum_rule_experiment(f1, f2, u, cs, grid_spec(o.grid, o.no_focal), o.splits, o.tol);
    json per_c = json::array();
    bool equal = true;
    for (const auto& s : r.per_c) {
        json slice{{"c", num(s.c)},
                   {"equal", s.equal},
                   {"parts_subset_of_sum", s.parts_subset_of_sum},
                   {"sum_subset_of_parts", s.sum_subset_of_parts},
                   {"region_of_sum", region_json(s.region_of_sum)}};
        if (s.witness) {
            const auto& w = *s.witness;
            json wj{{"g", interval_json(w.g)},
                    {"c", num(w.c)},
                    {"member_of_part1", w.member_of_part1},
                    {"member_of_part2", w.member_of_part2},
                    {"member_of_sum", w.member_of_sum},
                    {"verified", w.verified}};
            if (w.part1) wj["part1"] = candidate_json(*w.part1);
            if (w.part2) wj["part2"] = candidate_json(*w.part2);
            slice["witness"] = wj;
        }
        equal = equal && s.equal;
        per_c.push_back(std::move(slice));
    }
    rep.results = {{"per_c", per_c}, {"clipped", r.clipped}};
    if (r.clipped) rep.diag("warning", "unbounded regions were clipped to +-1e6 for the vertex comparison");
    return emit(rep, out, equal);
}

int cmd_diff_opt(const Options& o, Report& rep, std::ostream& out) {
    const Ivf f1 = load_ivf(o.ivf1);
    const Ivf f2 = load_ivf(o.ivf2);
    const double u = scalar_u(f1, o);
    const auto cs = c_values(o);
    rep.inputs = {{"ivf1", o.ivf1}, {"ivf2", o.ivf2}, {"u", num(u)}, {"c", vector_json(cs)}};
    const InclusionReport r = diff_inclusion_check(f1, f2, u, cs, grid_spec(o.grid, o.no_focal), o.tol);
    json per_c = json::array();
    for (const auto& s : r.per_c) {
        json slice{{"c", num(s.c)},
                   {"subset", s.subset},
                   {"region1", region_json(s.region1)},
                   {"region2", region_json(s.region2)}};
        if (s.witness) slice["witness"] = json::array({num(s.witness->first), num(s.witness->second)});
        per_c.push_back(std::move(slice));
    }
    rep.results = {{"per_c", per_c},
                   {"subset", r.overall},
                   {"weak_eff_at_u", r.weak_eff_at_u},
                   {"efficient_at_u", r.efficient_at_u},
                   {"values_equal_at_u", r.values_equal_at_u},
                   {"width", std::string(to_string(r.width))}};
    return emit(rep, out, r.overall);
}

int cmd_normal_cone(const Options& o, Report& rep, std::ostream& out) {
    const Box box = parse_box(o.domain);
    const auto u = parse_floats(o.u);
    const WeakCandidate cand(parse_intervals(o.g), o.c);
    rep.inputs = {{"domain", o.domain}, {"u", vector_json(u)}, {"candidate", candidate_json(cand)}, {"tol", num(o.tol)}};
    const CheckResult r = normal_cone_member_check(box, u, cand, grid_spec(o.grid, o.no_focal), o.tol);
    rep.results = {{"member", r.holds}};
    if (!r.holds) {
        rep.results["witness"] = vector_json(*r.witness);
        rep.results["violation"] = num(r.violation);
        rep.diag("info", "candidate leaves the augmented normal cone", r.witness);
    }
    return emit(rep, out, r.holds);
}

int cmd_zero_opt(const Options& o, Report& rep, std::ostream& out) {
    const Ivf f = load_ivf(o.ivf);
    const auto u = point_for(f, o.u);
    rep.inputs = {{"ivf", o.ivf}, {"u", vector_json(u)}, {"tol", num(o.tol)}};
    const ZeroOptimalityResult r = zero_optimality_check(f, u, grid_spec(o.grid, o.no_focal), o.tol);
    rep.results = {{"zero_inclusion", r.holds}, {"in_subdiff", r.in_subdiff}};
    if (r.witness) rep.diag("info", "(0, 0) is not a weak subgradient", r.witness);
    return emit(rep, out, r.holds);
}

int cmd_lipschitz(const Options& o, Report& rep, std::ostream& out) {
    const Ivf f = load_ivf(o.ivf);
    const auto u = point_for(f, o.u);
    const std::vector<double> probe = o.c_list.empty() ? std::vector<double>{} : parse_floats(o.c_list);
    rep.inputs = {{"ivf", o.ivf}, {"u", vector_json(u)}};
    const EquivalenceReport eq = equivalence_report(f, u, grid_spec(o.grid, o.no_focal), probe, o.tol);
    const LipschitzReport& l = eq.lipschitz;
    json res{{"weak_subdiff_nonempty", eq.weak_subdiff_nonempty},
             {"lower_lipschitz", eq.lower_lipschitz},
             {"certificate_exists", eq.certificate_exists},
             {"agree", eq.agree()},
             {"sampled_max", num(l.sampled_max)},
             {"shell_max", vector_json(l.shell_max)},
             {"divergent", l.divergent}};
    res["global_l"] = l.global_l ? num(*l.global_l) : json(nullptr);
    res["local_l"] = l.local_l ? num(*l.local_l) : json(nullptr);
    res["c_min"] = eq.c_min ? num(*eq.c_min) : json(nullptr);
    if (l.certificate) {
        res["certificate"] = {{"p", num(l.certificate->first)}, {"q", interval_json(l.certificate->second)}};
    }
    rep.results = res;
    for (const auto& cav : eq.caveats) rep.diag("warning", cav);
    return emit(rep, out, eq.lower_lipschitz);
}

int cmd_plot_data(const Options& o, std::ostream& out) {
    const Ivf f = load_ivf(o.ivf);
    const double u = scalar_u(f, o);
    const WeakCandidate cand(parse_intervals(o.g), o.c);
    if (cand.g.size() != 1) throw DimensionError("G must have one component");
    const GridSpec spec = grid_spec(o.grid, true);
    const std::size_t points = spec.points == 0 ? default_points(1) : spec.points;
    out << "y,phi_lo,phi_hi,h_lo,h_hi\n";
    for (const auto& r : support_rows(f, u, cand, points)) {
        out << format_number(r.y) << ',' << format_number(r.phi.lo()) << ',' << format_number(r.phi.hi()) << ','
            << format_number(r.h.lo()) << ',' << format_number(r.h.hi()) << '\n';
    }
    return 0;
}

int cmd_list(Report& rep, std::ostream& out) {
    json names = json::array();
    for (const auto& n : corpus_names()) {
        const Ivf f = corpus_get(n);
        names.push_back({{"name", n}, {"dim", f.dim()}});
    }
    rep.results = {{"corpus", names}};
    out << rep.dump();
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interval-valued function calculus and weak-subgradient checks", "ivfopt"};
    app.require_subcommand(1);
    Options o;

    auto add_ivf = [&o](CLI::App* s) { s->add_option("--ivf", o.ivf, "IVF file or corpus:<name>")->required(); };
    auto add_pair = [&o](CLI::App* s) {
        s->add_option("--ivf1", o.ivf1, "first IVF")->required();
        s->add_option("--ivf2", o.ivf2, "second IVF")->required();
    };
    auto add_u = [&o](CLI::App* s) { s->add_option("--u", o.u, "point, comma separated")->required(); };
    auto add_grid = [&o](CLI::App* s) {
        s->add_option("--grid", o.grid, "grid points per axis");
        s->add_flag("--no-focal", o.no_focal, "disable refinement around u");
        s->add_option("--tol", o.tol, "comparison tolerance");
    };
    auto add_candidate = [&o](CLI::App* s) {
        s->add_option("--g", o.g, "G as \"lo,hi[;lo,hi...]\"")->required();
        s->add_option("--c", o.c, "c >= 0")->required();
    };

    std::vector<std::pair<CLI::App*, std::function<int(Report&)>>> commands;
    auto command = [&](const char* name, const char* help, auto&& setup, std::function<int(Report&)> run) {
        CLI::App* s = app.add_subcommand(name, help);
        setup(s);
        commands.emplace_back(s, std::move(run));
    };

    command("check-member", "weak-subgradient membership of (G, c) at u",
            [&](CLI::App* s) { add_ivf(s), add_u(s), add_candidate(s), add_grid(s); },
            [&](Report& r) { return cmd_check_member(o, r, out); });
    command("region", "admissible (g_lo, g_hi) for fixed c (1D)",
            [&](CLI::App* s) {
                add_ivf(s), add_u(s), add_grid(s);
                s->add_option("--c", o.c, "c >= 0");
                s->add_option("--c-list", o.c_list, "several c values, comma separated");
            },
            [&](Report& r) { return cmd_region(o, r, out); });
    command("repro", "reproduce the worked examples against embedded expectations",
            [&](CLI::App* s) { s->add_option("--case", o.case_id, "case id or all")->required(); },
            [&](Report& r) { return cmd_repro(o, r, out); });
    command("efficiency", "weak efficiency and efficiency of u",
            [&](CLI::App* s) {
                add_ivf(s), add_u(s), add_grid(s);
                s->add_option("--mode", o.mode, "weak, efficient or both");
            },
            [&](Report& r) { return cmd_efficiency(o, r, out); });
    command("sum-rule", "compare the subdifferential of a sum with the sum of subdifferentials (1D)",
            [&](CLI::App* s) {
                add_pair(s), add_u(s), add_grid(s);
                s->add_option("--c-list", o.c_list, "c values, comma separated");
                s->add_option("--splits", o.splits, "number of c1 steps in [0, c]");
            },
            [&](Report& r) { return cmd_sum_rule(o, r, out); });
    command("diff-opt", "region of ivf1 versus region of ivf2 at u (1D)",
            [&](CLI::App* s) {
                add_pair(s), add_u(s), add_grid(s);
                s->add_option("--c-list", o.c_list, "c values, comma separated");
            },
            [&](Report& r) { return cmd_diff_opt(o, r, out); });
    command("normal-cone", "membership of (G, c) in the augmented normal cone of a box",
            [&](CLI::App* s) {
                s->add_option("--domain", o.domain, "box as \"lo,hi[;lo,hi...]\"")->required();
                add_u(s), add_candidate(s), add_grid(s);
            },
            [&](Report& r) { return cmd_normal_cone(o, r, out); });
    command("zero-opt", "(0, 0) in the weak subdifferential plus the normal cone",
            [&](CLI::App* s) { add_ivf(s), add_u(s), add_grid(s); },
            [&](Report& r) { return cmd_zero_opt(o, r, out); });
    command("lipschitz", "lower-Lipschitz estimate and the three equivalent conditions",
            [&](CLI::App* s) {
                add_ivf(s), add_u(s), add_grid(s);
                s->add_option("--c-list", o.c_list, "c values probed for a nonempty region");
            },
            [&](Report& r) { return cmd_lipschitz(o, r, out); });
    command("plot-data", "CSV of f and its support function on a uniform grid (1D)",
            [&](CLI::App* s) {
                add_ivf(s), add_u(s), add_candidate(s);
                s->add_option("--grid", o.grid, "number of grid points");
            },
            [&](Report&) { return cmd_plot_data(o, out); });
    command("list", "built-in corpus entries", [](CLI::App*) {}, [&](Report& r) { return cmd_list(r, out); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    for (auto& [sub, run] : commands) {
        if (!sub->parsed()) continue;
        Report rep;
        rep.command = sub->get_name();
        try {
            return run(rep);
        } catch (const std::exception& e) {
            rep.results = json::object();
            std::optional<std::vector<double>> witness;
            if (const auto* w = dynamic_cast<const WitnessError*>(&e)) witness = w->witness();
            rep.diag("error", e.what(), witness);
            out << rep.dump();
            err << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}

}  // namespace ivfopt::cli
