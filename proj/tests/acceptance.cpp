// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Tolerances and time limits are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/repro.hpp"
#include "ivfopt/cli.hpp"
#include "ivfopt/corpus.hpp"
#include "ivfopt/optimality.hpp"
#include "ivfopt/weak_subdiff.hpp"
#include "support/suites.hpp"

using json = nlohmann::json;
using namespace ivfopt;

namespace {

constexpr double kRegionTol = 1e-3;
constexpr double kMemberTol = 1e-9;
constexpr double kRegion1Seconds = 1.0;
constexpr double kFigureSeconds = 1.0;
constexpr double kSumRuleSeconds = 2.0;
constexpr double kLemmaSeconds = 5.0;
constexpr double kReproSeconds = 10.0;
constexpr double kLogLipschitzBound = 2.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Collects failures for one criterion.
struct Check {
    std::vector<std::string> problems;

    void expect(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
    void near(double got, double want, double tol, const std::string& what) {
        const bool ok = std::isinf(want) ? got == want : std::abs(got - want) <= tol;
        if (!ok) {
            std::ostringstream m;
            m << what << ": expected " << want << ", got " << got;
            problems.push_back(m.str());
        }
    }
};

struct CliRun {
    int code;
    std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str()};
}

double json_bound(const json& v) {
    if (v.is_string()) return v.get<std::string>() == "inf" ? INFINITY : -INFINITY;
    return v.get<double>();
}

void criterion_regions(Check& ck) {
    const double inf = INFINITY;
    for (const double u : {0.0, 1.0}) {
        const auto t0 = Clock::now();
        const CliRun r = cli({"region", "--ivf", "corpus:example_3_1", "--u", u == 0.0 ? "0" : "1", "--c-list",
                              "0,0.5,1"});
        const double dt = seconds_since(t0);
        ck.expect(r.code == 0, "region command failed");
        ck.expect(dt < kRegion1Seconds, "u=" + std::to_string(u) + " took " + std::to_string(dt) + " s");
        if (r.code != 0) return;
        const json regions = json::parse(r.out)["results"]["regions"];
        for (const auto& reg : regions) {
            const double c = reg["c"].get<double>();
            const std::string at = "u=" + std::to_string(u) + " c=" + std::to_string(c);
            ck.expect(!reg["empty"].get<bool>(), at + " empty");
            const double lo_min = json_bound(reg["g_lo"][0]), lo_max = json_bound(reg["g_lo"][1]);
            const double hi_min = json_bound(reg["g_hi"][0]), hi_max = json_bound(reg["g_hi"][1]);
            if (u == 0.0) {
                ck.near(lo_min, -1 - c, kRegionTol, at + " g_lo min");
                ck.near(lo_max, c, kRegionTol, at + " g_lo max");
                ck.near(hi_min, -c, kRegionTol, at + " g_hi min");
                ck.near(hi_max, 1 + c, kRegionTol, at + " g_hi max");
            } else {
                ck.near(lo_min, 1 - c, kRegionTol, at + " g_lo min");
                ck.near(lo_max, inf, 0, at + " g_lo max");
                ck.near(hi_min, 2 - c, kRegionTol, at + " g_hi min");
                ck.near(hi_max, inf, 0, at + " g_hi max");
            }
        }
        ck.expect(regions.size() == 3, "expected three regions");
    }
}

void criterion_figure(Check& ck) {
    const auto t0 = Clock::now();
    const Ivf f = corpus_get("figure_1");
    const std::vector<double> u{1.0};
    ck.expect(member_check(f, u, WeakCandidate(IntervalVector{{0.25, 1.5}}, 0.5), {}, kMemberTol).holds,
              "candidate is not a member");
    const CliRun r = cli({"plot-data", "--ivf", "corpus:figure_1", "--u", "1", "--g", "0.25,1.5", "--c", "0.5"});
    ck.expect(r.code == 0, "plot-data failed");
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream cells(line);
        std::vector<double> v;
        for (std::string cell; std::getline(cells, cell, ',');) v.push_back(std::stod(cell));
        if (v.size() != 5 || v[3] > v[1] + kMemberTol || v[4] > v[2] + kMemberTol) {
            ck.expect(false, "support property fails at row '" + line + "'");
        }
    }
    ck.expect(rows == 2001, "expected 2001 rows, got " + std::to_string(rows));
    const double dt = seconds_since(t0);
    ck.expect(dt < kFigureSeconds, "took " + std::to_string(dt) + " s");
}

void criterion_sum_rule(Check& ck) {
    const auto t0 = Clock::now();
    const Ivf f1 = corpus_get("sum_rule_phi1");
    const Ivf f2 = corpus_get("sum_rule_phi2");
    const Ivf s = sum_ivf(f1, f2);
    const std::vector<double> cs{0.0, 0.5};
    const std::vector<double> u{0.0};
    const SumRuleReport rep = sum_rule_experiment(f1, f2, 0.0, cs, {}, 20, kMemberTol);
    ck.expect(rep.per_c.size() == 2, "expected two slices");
    for (const auto& sl : rep.per_c) {
        const std::string at = "c=" + std::to_string(sl.c);
        ck.expect(!sl.equal, at + " reported equal");
        if (!sl.witness || !sl.witness->part1 || !sl.witness->part2) {
            ck.expect(false, at + " has no split witness");
            continue;
        }
        const auto& w = *sl.witness;
        ck.expect(member_check(f1, u, *w.part1, {}, kMemberTol).holds, at + " part 1 not a member");
        ck.expect(member_check(f2, u, *w.part2, {}, kMemberTol).holds, at + " part 2 not a member");
        ck.expect(!member_check(s, u, WeakCandidate(IntervalVector{w.g}, w.c), {}, kMemberTol).holds,
                  at + " candidate is a member of the sum");
        ck.near(w.part1->c + w.part2->c, w.c, 1e-12, at + " split of c");
        ck.near(w.part1->g[0].lo() + w.part2->g[0].lo(), w.g.lo(), 1e-12, at + " split of g_lo");
        ck.near(w.part1->g[0].hi() + w.part2->g[0].hi(), w.g.hi(), 1e-12, at + " split of g_hi");
    }
    const double dt = seconds_since(t0);
    ck.expect(dt < kSumRuleSeconds, "took " + std::to_string(dt) + " s");
}

void criterion_note(Check& ck) {
    const InclusionReport r =
        diff_inclusion_check(corpus_get("note_4_1_phi1"), corpus_get("note_4_1_phi2"), 0.0);
    ck.expect(!r.per_c.empty(), "no slices");
    for (const auto& s : r.per_c) {
        const std::string at = "c=" + std::to_string(s.c);
        ck.expect(!s.subset, at + " reported subset");
        ck.near(s.region1.lo_min, -2 - s.c, kRegionTol, at + " first g_lo min");
        ck.near(s.region2.lo_min, -1 - s.c, kRegionTol, at + " second g_lo min");
    }
    ck.expect(!r.overall, "overall inclusion reported");
}

void criterion_lemmas(Check& ck) {
    const auto t0 = Clock::now();
    std::uint64_t seed = 1000;
    for (const auto& c : testkit::lemma_cases()) {
        const auto r = testkit::run_lemma(c, seed++);
        ck.expect(r.accepted == 10000, c.name + ": only " + std::to_string(r.accepted) + " samples");
        ck.expect(r.failures == 0, c.name + ": " + std::to_string(r.failures) + " failures");
    }
    const double dt = seconds_since(t0);
    ck.expect(dt < kLemmaSeconds, "took " + std::to_string(dt) + " s");
}

void criterion_structure(Check& ck) {
    const auto r = testkit::structure_suite(31, 100, kMemberTol);
    ck.expect(r.convexity_checks == 5L * 3 * 100 * 5, "ran " + std::to_string(r.convexity_checks) + " blend checks");
    ck.expect(r.convexity_failures == 0, std::to_string(r.convexity_failures) + " blends are not members");
    ck.expect(r.corner_checks > 0, "no bounded region corners");
    ck.expect(r.corner_failures == 0, std::to_string(r.corner_failures) + " corners are not members");
    for (const auto& m : r.messages) ck.expect(false, m);
}

void criterion_equivalence(Check& ck) {
    const auto r = testkit::equivalence_suite();
    for (const auto& m : r.mismatches) ck.expect(false, m);
    ck.expect(r.checks >= static_cast<long>(corpus_names().size()), "too few probe points");
    const Ivf lg = corpus_get("log_example");
    for (const double u : {1.0, 1.5, 2.0, std::exp(1.0)}) {
        const std::vector<double> p{u};
        const EquivalenceReport e = equivalence_report(lg, p);
        ck.expect(e.agree(), "log example disagrees at " + std::to_string(u));
        ck.expect(e.lipschitz.global_l && *e.lipschitz.global_l <= kLogLipschitzBound,
                  "log example global L above 2 at " + std::to_string(u));
    }
}

void criterion_zero_opt(Check& ck) {
    const auto r = testkit::zero_optimality_suite(11);
    for (const auto& m : r.mismatches) ck.expect(false, m);
    ck.expect(r.checks == 11L * static_cast<long>(corpus_names().size()),
              "ran " + std::to_string(r.checks) + " probes");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_repro(Check& ck) {
    const auto t0 = Clock::now();
    const CliRun a = cli({"repro", "--case", "all"});
    const double dt = seconds_since(t0);
    const CliRun b = cli({"repro", "--case", "all"});
    ck.expect(a.code == 0, "repro reported failures");
    ck.expect(a.out == b.out, "reports differ between runs");
    ck.expect(dt < kReproSeconds, "took " + std::to_string(dt) + " s");
    const json j = json::parse(a.out);
    ck.expect(j["results"]["passed"] == 9 && j["results"]["total"] == 9, "expected 9/9 cases passing");
    for (const auto& c : cli::repro_cases()) {
        const std::string id(c.id);
        const CliRun one = cli({"repro", "--case", id});
        ck.expect(one.out == read_file(std::string(IVFOPT_GOLDEN_DIR) + "/" + id + ".json"),
                  id + " differs from its golden report");
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* title;
        void (*run)(Check&);
    };
    const Criterion criteria[] = {
        {"example_3_1 regions at u=0 and u=1", criterion_regions},
        {"figure_1 candidate and support property", criterion_figure},
        {"sum-rule counterexample", criterion_sum_rule},
        {"note_4_1 non-inclusion", criterion_note},
        {"gH identity property suite", criterion_lemmas},
        {"convexity and closedness suite", criterion_structure},
        {"nonemptiness equivalence suite", criterion_equivalence},
        {"zero-optimality equivalence", criterion_zero_opt},
        {"repro all, byte-stable", criterion_repro},
    };
    int failed = 0;
    int n = 0;
    for (const auto& c : criteria) {
        ++n;
        Check ck;
        const auto t0 = Clock::now();
        try {
            c.run(ck);
        } catch (const std::exception& e) {
            ck.expect(false, std::string("exception: ") + e.what());
        }
        const double dt = seconds_since(t0);
        const bool ok = ck.problems.empty();
        failed += ok ? 0 : 1;
        std::printf("%s %d %s (%.3f s)\n", ok ? "PASS" : "FAIL", n, c.title, dt);
        for (const auto& p : ck.problems) std::printf("    %s\n", p.c_str());
    }
    std::printf("%d/%d criteria passed\n", n - failed, n);
    return failed == 0 ? 0 : 1;
}
