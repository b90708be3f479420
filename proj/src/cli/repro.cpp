#include "cli/repro.hpp"

#include <cmath>
#include <numbers>

#include "cli/args.hpp"
#include "ivfopt/corpus.hpp"
#include "ivfopt/optimality.hpp"

namespace ivfopt::cli {

namespace {

const std::vector<double> kCs{0.0, 0.5, 1.0};

json regions_at(std::string_view name, double u) {
    const Ivf f = corpus_get(name);
    const FocalSweep sweep = FocalSweep::build(f, std::span<const double>(&u, 1));
    json regions = json::array();
    for (const double c : kCs) regions.push_back(region_json(region_1d(sweep, c)));
    return regions;
}

json run_example_3_1_u0() { return {{"regions", regions_at("example_3_1", 0.0)}}; }

json run_example_3_1_u1() {
    const Ivf f = corpus_get("example_3_1");
    const double u = 1.0;
    const WeakCandidate zero(IntervalVector{Interval(0.0, 0.0)}, 0.0);
    return {{"regions", regions_at("example_3_1", u)},
            {"zero_candidate", check_json(member_check(f, std::span<const double>(&u, 1), zero))}};
}

json run_figure_1_member() {
    const Ivf f = corpus_get("figure_1");
    const double u = 1.0;
    const WeakCandidate cand(IntervalVector{Interval(0.25, 1.5)}, 0.5);
    const std::span<const double> uu(&u, 1);
    const double y2 = 2.0;
    const auto rows = support_rows(f, u, cand, 2001);
    bool below = true;
    for (const auto& r : rows) below = below && preceq(r.h, r.phi);
    return {{"member", check_json(member_check(f, uu, cand))},
            {"h_at_u", interval_json(support_ivf_eval(f, uu, cand, uu))},
            {"h_at_2", interval_json(support_ivf_eval(f, uu, cand, std::span<const double>(&y2, 1)))},
            {"phi_at_2", interval_json(f.eval(y2))},
            {"support_rows", rows.size()},
            {"support_holds", below}};
}

json witness_json(const SumRuleWitness& w) {
    json out{{"g", interval_json(w.g)},
             {"c", num(w.c)},
             {"member_of_part1", w.member_of_part1},
             {"member_of_part2", w.member_of_part2},
             {"member_of_sum", w.member_of_sum},
             {"verified", w.verified}};
    if (w.part1) out["part1"] = candidate_json(*w.part1);
    if (w.part2) out["part2"] = candidate_json(*w.part2);
    return out;
}

json run_sum_rule() {
    const Ivf f1 = corpus_get("sum_rule_phi1");
    const Ivf f2 = corpus_get("sum_rule_phi2");
    const std::vector<double> cs{0.0, 0.5};
    const SumRuleReport rep = sum_rule_experiment(f1, f2, 0.0, cs);
    json per_c = json::array();
    for (const auto& s : rep.per_c) {
        json slice{{"c", num(s.c)},
                   {"equal", s.equal},
                   {"parts_subset_of_sum", s.parts_subset_of_sum},
                   {"sum_subset_of_parts", s.sum_subset_of_parts},
                   {"region_of_sum", region_json(s.region_of_sum)}};
        if (s.witness) slice["witness"] = witness_json(*s.witness);
        per_c.push_back(std::move(slice));
    }

    // A fixed split at c = 0: ([-1,0.3], 0) for the first function, ([-1,0], 0) for the second.
    const double u = 0.0;
    const std::span<const double> uu(&u, 1);
    const WeakCandidate p1(IntervalVector{Interval(-1.0, 0.3)}, 0.0);
    const WeakCandidate p2(IntervalVector{Interval(-1.0, 0.0)}, 0.0);
    const WeakCandidate total(IntervalVector{Interval(-2.0, 0.3)}, 0.0);
    const bool m1 = member_check(f1, uu, p1).holds;
    const bool m2 = member_check(f2, uu, p2).holds;
    const bool ms = member_check(sum(f1, f2), uu, total).holds;
    json fixed{{"g", interval_json(total.g[0])},
               {"part1", candidate_json(p1)},
               {"part2", candidate_json(p2)},
               {"member_of_part1", m1},
               {"member_of_part2", m2},
               {"member_of_sum", ms},
               {"verified", m1 && m2 && !ms}};
    return {{"per_c", per_c}, {"clipped", rep.clipped}, {"fixed_split", fixed}};
}

json inclusion_json(std::string_view name1, std::string_view name2, const std::vector<double>& cs) {
    const Ivf f1 = corpus_get(name1);
    const Ivf f2 = corpus_get(name2);
    const InclusionReport rep = diff_inclusion_check(f1, f2, 0.0, cs);
    json per_c = json::array();
    for (const auto& s : rep.per_c) {
        json slice{{"c", num(s.c)},
                   {"subset", s.subset},
                   {"reverse_subset", region_subset(s.region2, s.region1)},
                   {"region1", region_json(s.region1)},
                   {"region2", region_json(s.region2)}};
        if (s.witness) slice["witness"] = json::array({num(s.witness->first), num(s.witness->second)});
        per_c.push_back(std::move(slice));
    }
    return {{"per_c", per_c},
            {"overall", rep.overall},
            {"weak_eff_at_u", rep.weak_eff_at_u},
            {"efficient_at_u", rep.efficient_at_u},
            {"values_equal_at_u", rep.values_equal_at_u},
            {"width", std::string(to_string(rep.width))}};
}

json run_note_4_1() { return inclusion_json("note_4_1_phi1", "note_4_1_phi2", {0.0, 0.5, 1.0}); }
json run_note_4_2() { return inclusion_json("note_4_2_phi1", "note_4_2_phi2", {1.5, 2.0}); }
json run_remark_4_1() { return inclusion_json("remark_4_1_phi1", "remark_4_1_phi2", {1.0, 2.0}); }

json run_log_lipschitz() {
    const Ivf f = corpus_get("log_example");
    json points = json::array();
    for (const double u : {1.0, 1.5, 2.0, std::numbers::e}) {
        const EquivalenceReport eq = equivalence_report(f, std::span<const double>(&u, 1));
        const auto& l = eq.lipschitz;
        json p{{"u", num(u)},
               {"weak_subdiff_nonempty", eq.weak_subdiff_nonempty},
               {"lower_lipschitz", eq.lower_lipschitz},
               {"certificate_exists", eq.certificate_exists},
               {"agree", eq.agree()},
               {"global_l_at_most_2", l.global_l && *l.global_l <= 2.0}};
        p["global_l"] = l.global_l ? num(*l.global_l) : json(nullptr);
        p["local_l"] = l.local_l ? num(*l.local_l) : json(nullptr);
        points.push_back(std::move(p));
    }
    return {{"points", points}};
}

json run_zero_inclusion_demo() {
    const Ivf f = corpus_get("theorem_4_3_psi");
    json points = json::array();
    for (const double u : {-1.0, 0.0, 0.5}) {
        const std::span<const double> uu(&u, 1);
        const ZeroOptimalityResult z = zero_optimality_check(f, uu);
        const CheckResult w = weak_efficient_check(f, uu);
        points.push_back({{"u", num(u)},
                          {"zero_inclusion", z.holds},
                          {"weak_efficient", w.holds},
                          {"agree", z.holds == w.holds}});
    }
    return {{"points", points}};
}

constexpr std::string_view kRegionTol = R"({"default": 1e-9, "g_lo": 1e-3, "g_hi": 1e-3})";

const std::vector<ReproCase> kCases{
    {"example_3_1_u0", "regions of [y^2, |y|] at u = 0", run_example_3_1_u0,
     R"({"regions": [
          {"c": 0,   "g_lo": [-1, 0],     "g_hi": [0, 1],      "empty": false},
          {"c": 0.5, "g_lo": [-1.5, 0.5], "g_hi": [-0.5, 1.5], "empty": false},
          {"c": 1,   "g_lo": [-2, 1],     "g_hi": [-1, 2],     "empty": false}]})",
     kRegionTol},
    {"example_3_1_u1", "regions of [y^2, |y|] at u = 1", run_example_3_1_u1,
     R"({"regions": [
          {"c": 0,   "g_lo": [1, "inf"],   "g_hi": [2, "inf"],   "empty": false},
          {"c": 0.5, "g_lo": [0.5, "inf"], "g_hi": [1.5, "inf"], "empty": false},
          {"c": 1,   "g_lo": [0, "inf"],   "g_hi": [1, "inf"],   "empty": false}],
         "zero_candidate": {"holds": false}})",
     kRegionTol},
    {"figure_1_member", "support function of ([0.25,1.5], 0.5) at u = 1", run_figure_1_member,
     R"({"member": {"holds": true}, "h_at_u": [0, 0], "h_at_2": [-0.25, 1], "phi_at_2": [1, 3],
         "support_rows": 2001, "support_holds": true})",
     R"({"default": 1e-9})"},
    {"sum_rule_counterexample", "sum of subdifferentials versus subdifferential of the sum at u = 0", run_sum_rule,
     R"({"per_c": [
          {"c": 0, "equal": false,
           "region_of_sum": {"g_lo": [-2, -1], "g_hi": [-0.5, -0.5], "empty": false},
           "witness": {"g": [-2, 0.5], "member_of_part1": true, "member_of_part2": true,
                       "member_of_sum": false, "verified": true}},
          {"c": 0.5, "equal": false,
           "region_of_sum": {"g_lo": [-2.5, -0.5], "g_hi": [-1, 0], "empty": false},
           "witness": {"member_of_part1": true, "member_of_part2": true,
                       "member_of_sum": false, "verified": true}}],
         "fixed_split": {"member_of_part1": true, "member_of_part2": true, "member_of_sum": false,
                         "verified": true}})",
     R"({"default": 1e-9, "g_lo": 1e-3, "g_hi": 1e-3, "g": 1e-6})"},
    {"note_4_1", "[2|y|, |y|+1] versus [|y|, 2y^2+|y|] at u = 0", run_note_4_1,
     R"({"per_c": [
          {"c": 0,   "subset": false, "region1": {"g_lo": [-2, 1], "g_hi": [-1, 2]},
                                      "region2": {"g_lo": [-1, 1], "g_hi": [-1, 1]}},
          {"c": 0.5, "subset": false, "region1": {"g_lo": [-2.5, 1.5], "g_hi": [-1.5, 2.5]},
                                      "region2": {"g_lo": [-1.5, 1.5], "g_hi": [-1.5, 1.5]}},
          {"c": 1,   "subset": false, "region1": {"g_lo": [-3, 2], "g_hi": [-2, 3]},
                                      "region2": {"g_lo": [-2, 2], "g_hi": [-2, 2]}}],
         "overall": false, "efficient_at_u": true, "values_equal_at_u": false})",
     kRegionTol},
    {"note_4_2", "cubic/linear pair with mixed widths at u = 0", run_note_4_2,
     R"({"per_c": [
          {"c": 1.5, "subset": false, "reverse_subset": false,
           "region1": {"g_lo": [-0.5, 1.5], "g_hi": [2.5, 2.5]},
           "region2": {"g_lo": [0.5, 1.5], "g_hi": [1.5, 6.5]}},
          {"c": 2, "subset": false, "reverse_subset": false,
           "region1": {"g_lo": [-1, 2], "g_hi": [2, 3]},
           "region2": {"g_lo": [0, 2], "g_hi": [1, 7]}}],
         "overall": false, "efficient_at_u": true, "width": "mixed"})",
     kRegionTol},
    {"remark_4_1", "inclusion without weak efficiency at u = 0", run_remark_4_1,
     R"({"per_c": [
          {"c": 1, "subset": false, "reverse_subset": true,
           "region1": {"g_lo": [0.5, 1], "g_hi": [2, 2], "empty": false},
           "region2": {"g_lo": [1, 1], "g_hi": [2, 2], "empty": false}},
          {"c": 2, "subset": false, "reverse_subset": true,
           "region1": {"g_lo": [-0.5, 2], "g_hi": [1, 3], "empty": false},
           "region2": {"g_lo": [0, 2], "g_hi": [1, 3], "empty": false}}],
         "weak_eff_at_u": false, "width": "mixed"})",
     kRegionTol},
    {"log_lipschitz", "ln(y) [1,2] on [1, e]", run_log_lipschitz,
     R"({"points": [
          {"u": 1, "agree": true, "lower_lipschitz": true, "global_l_at_most_2": true, "global_l": 0},
          {"u": 1.5, "agree": true, "lower_lipschitz": true, "global_l_at_most_2": true},
          {"u": 2, "agree": true, "lower_lipschitz": true, "global_l_at_most_2": true},
          {"u": 2.718281828459045, "agree": true, "lower_lipschitz": true, "global_l_at_most_2": true,
           "global_l": 1.16395341373865}]})",
     R"({"default": 1e-9, "global_l": 1e-6})"},
    {"theorem_4_3_demo", "zero inclusion versus weak efficiency for [|y|, 2|y|]", run_zero_inclusion_demo,
     R"({"points": [
          {"u": -1, "zero_inclusion": false, "weak_efficient": false, "agree": true},
          {"u": 0, "zero_inclusion": true, "weak_efficient": true, "agree": true},
          {"u": 0.5, "zero_inclusion": false, "weak_efficient": false, "agree": true}]})",
     R"({"default": 1e-9})"},
};

std::string show(const json& j) { return j.is_number() ? format_number(j.get<double>()) : j.dump(); }

void compare(const json& a, const json& e, const json& tol, double cur_tol, const std::string& path,
             std::vector<std::string>& out) {
    if (e.is_object()) {
        if (!a.is_object()) {
            out.push_back(path + ": expected an object");
            return;
        }
        for (auto it = e.begin(); it != e.end(); ++it) {
            const std::string p = path + "/" + it.key();
            if (!a.contains(it.key())) {
                out.push_back(p + ": missing");
                continue;
            }
            const double t = tol.contains(it.key()) ? tol[it.key()].get<double>() : cur_tol;
            compare(a[it.key()], it.value(), tol, t, p, out);
        }
        return;
    }
    if (e.is_array()) {
        if (!a.is_array() || a.size() != e.size()) {
            out.push_back(path + ": expected " + std::to_string(e.size()) + " entries");
            return;
        }
        for (std::size_t i = 0; i < e.size(); ++i) compare(a[i], e[i], tol, cur_tol, path + "/" + std::to_string(i), out);
        return;
    }
    if (e.is_number()) {
        const bool ok = a.is_number() && std::abs(a.get<double>() - e.get<double>()) <= cur_tol;
        if (!ok) out.push_back(path + ": expected " + show(e) + ", got " + show(a));
        return;
    }
    if (a != e) out.push_back(path + ": expected " + show(e) + ", got " + show(a));
}

}  // namespace

const std::vector<ReproCase>& repro_cases() { return kCases; }

std::vector<std::string> compare_payload(const json& actual, const json& expected, const json& tolerance) {
    std::vector<std::string> out;
    const double base = tolerance.value("default", 1e-9);
    compare(actual, expected, tolerance, base, "", out);
    return out;
}

json run_repro_case(const ReproCase& c) {
    const json actual = c.run();
    const auto mismatches = compare_payload(actual, json::parse(c.expected), json::parse(c.tolerance));
    return {{"id", c.id},
            {"title", c.title},
            {"status", mismatches.empty() ? "PASS" : "FAIL"},
            {"mismatches", mismatches},
            {"actual", actual}};
}

}  // namespace ivfopt::cli
