#pragma once

// Randomized and corpus-wide sweeps shared by the unit tests and the
// acceptance binary. Each returns counts so callers can assert or report.

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ivfopt/corpus.hpp"
#include "ivfopt/interval.hpp"
#include "ivfopt/optimality.hpp"
#include "ivfopt/weak_subdiff.hpp"
#include "support/gen.hpp"

namespace ivfopt::testkit {

// ---- gH identities ----

inline constexpr double kLemmaTol = 1e-12;

/// One identity. `trial` draws operands; returns false when the hypothesis
/// fails (sample rejected), otherwise sets `ok`.
struct LemmaCase {
    std::string name;
    std::function<bool(Gen&, bool&)> trial;
};

inline std::vector<LemmaCase> lemma_cases() {
    const auto pt = [](double k) { return Interval::point(k); };
    std::vector<LemmaCase> out;
    out.push_back({"eps_below_double_difference", [pt](Gen& g, bool& ok) {
                       // eps <= (W - Y) - Z  implies  Z + eps <= W - Y
                       const Interval w = g.interval(), y = g.interval(), z = g.interval();
                       const double eps = g.real(0.0, 5.0);
                       if (!preceq(pt(eps), gh_sub(gh_sub(w, y), z))) return false;
                       ok = preceq(add(z, pt(eps)), gh_sub(w, y), kLemmaTol);
                       return true;
                   }});
    out.push_back({"difference_of_sums_inclusion", [](Gen& g, bool& ok) {
                       // (X + Y) - (Z + W) within (X - Z) + (Y - W)
                       const Interval x = g.interval(), y = g.interval(), z = g.interval(), w = g.interval();
                       const Interval lhs = gh_sub(add(x, y), add(z, w));
                       const Interval rhs = add(gh_sub(x, z), gh_sub(y, w));
                       ok = lhs.lo() >= rhs.lo() - kLemmaTol && lhs.hi() <= rhs.hi() + kLemmaTol;
                       return true;
                   }});
    out.push_back({"negation_identity_exact", [](Gen& g, bool& ok) {
                       // 0 - ((-W - -Y) - -Z) == (W - Y) - Z, bit for bit
                       const Interval w = g.interval(), y = g.interval(), z = g.interval();
                       const Interval lhs = gh_sub(
                           kZero, gh_sub(gh_sub(scalar_mul(-1, w), scalar_mul(-1, y)), scalar_mul(-1, z)));
                       ok = lhs == gh_sub(gh_sub(w, y), z);
                       return true;
                   }});
    out.push_back({"order_i", [](Gen& g, bool& ok) {
                       // 0 <= X - Y  implies  0 - Z <= (X - Y) - Z
                       const Interval x = g.interval(), y = g.interval(), z = g.interval();
                       if (!preceq(kZero, gh_sub(x, y))) return false;
                       ok = preceq(gh_sub(kZero, z), gh_sub(gh_sub(x, y), z), kLemmaTol);
                       return true;
                   }});
    out.push_back({"order_ii", [](Gen& g, bool& ok) {
                       // Z <= X - Y  implies  Z - W <= (X - Y) - W
                       const Interval x = g.interval(), y = g.interval(), z = g.interval(), w = g.interval();
                       if (!preceq(z, gh_sub(x, y))) return false;
                       ok = preceq(gh_sub(z, w), gh_sub(gh_sub(x, y), w), kLemmaTol);
                       return true;
                   }});
    out.push_back({"order_iii", [pt](Gen& g, bool& ok) {
                       // X - Y <= [L, L]  implies  [-L, -L] <= Y - X
                       const Interval x = g.interval(), y = g.interval();
                       const double l = g.real(-10.0, 10.0);
                       if (!preceq(gh_sub(x, y), pt(l))) return false;
                       ok = preceq(pt(-l), gh_sub(y, x), kLemmaTol);
                       return true;
                   }});
    out.push_back({"order_iv", [pt](Gen& g, bool& ok) {
                       // [-k, -k] <= X - Y  implies  Y - [k, k] <= X
                       const Interval x = g.interval(), y = g.interval();
                       const double k = g.real(-10.0, 10.0);
                       if (!preceq(pt(-k), gh_sub(x, y))) return false;
                       ok = preceq(gh_sub(y, pt(k)), x, kLemmaTol);
                       return true;
                   }});
    out.push_back({"order_v", [](Gen& g, bool& ok) {
                       // Z <= X + Y  implies  Z - Y <= X
                       const Interval x = g.interval(), y = g.interval(), z = g.interval();
                       if (!preceq(z, add(x, y))) return false;
                       ok = preceq(gh_sub(z, y), x, kLemmaTol);
                       return true;
                   }});
    out.push_back({"inner_product_norm_bound", [](Gen& g, bool& ok) {
                       // -||y|| ||C|| <= ||y^T C||
                       const auto n = static_cast<std::size_t>(g.integer(1, 6));
                       const auto y = g.point(n);
                       std::vector<Interval> comps(n);
                       for (auto& c : comps) c = g.interval();
                       const IntervalVector cv(comps);
                       ok = -euclidean_norm(y) * vec_norm(cv) <= norm(inner_product(y, cv)) + kLemmaTol;
                       return true;
                   }});
    return out;
}

struct LemmaOutcome {
    std::string name;
    int accepted = 0;
    int failures = 0;
};

/// Runs `c` until `samples` draws satisfy its hypothesis (or the attempt budget runs out).
inline LemmaOutcome run_lemma(const LemmaCase& c, std::uint64_t seed, int samples = 10000) {
    Gen g(seed);
    LemmaOutcome out{c.name};
    for (long attempt = 0; out.accepted < samples && attempt < 1000L * samples; ++attempt) {
        bool ok = true;
        if (!c.trial(g, ok)) continue;
        ++out.accepted;
        if (!ok) ++out.failures;
    }
    return out;
}

// ---- structure of the weak subdifferential ----

struct StructureOutcome {
    long convexity_checks = 0;
    long convexity_failures = 0;
    long corner_checks = 0;
    long corner_failures = 0;
    std::vector<std::string> messages;
};

struct FocalCase {
    const char* name;
    std::vector<double> points;
};

inline std::vector<FocalCase> structure_cases() {
    return {
        {"example_3_1", {0.0, 0.5, -0.5}},
        {"figure_1", {1.0, 0.0, -0.5}},
        {"note_4_1_phi2", {0.0, 0.2, -0.3}},
        {"quadratic_band", {0.0, 0.3, -0.7}},
        {"log_example", {1.0, 1.5, 2.5}},
    };
}

/// Blends of sampled members stay members; corners of bounded regions are members.
inline StructureOutcome structure_suite(std::uint64_t seed = 31, int pairs = 100, double tol = kDefaultTol) {
    const double c_values[] = {0.0, 0.5, 1.0, 2.0};
    const double betas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    Gen g(seed);
    StructureOutcome out;
    auto note = [&out](const std::string& m) {
        if (out.messages.size() < 20) out.messages.push_back(m);
    };
    for (const auto& fc : structure_cases()) {
        const Ivf f = corpus_get(fc.name);
        for (const double u : fc.points) {
            const std::vector<double> uv{u};
            const FocalSweep sweep = FocalSweep::build(f, uv);
            std::vector<Region1D> regions;
            for (const double c : c_values) {
                const Region1D r = region_1d(sweep, c, tol);
                if (r.empty) continue;
                regions.push_back(r);
                if (!r.bounded()) continue;
                for (const auto& [lo, hi] : r.vertices()) {
                    ++out.corner_checks;
                    if (!member_check(sweep, WeakCandidate(IntervalVector{Interval(lo, hi)}, c), tol)) {
                        ++out.corner_failures;
                        std::ostringstream m;
                        m << "corner (" << lo << ", " << hi << ") c=" << c << " of " << fc.name << " at " << u;
                        note(m.str());
                    }
                }
            }
            if (regions.empty()) {
                note(std::string("no nonempty region for ") + fc.name);
                continue;
            }
            auto sample = [&g, &regions]() {
                const Region1D& r = regions[static_cast<std::size_t>(g.integer(0, static_cast<int>(regions.size()) - 1))];
                auto [a, b] = r.lo_range();
                auto [c, d] = r.hi_range();
                // Unbounded sides are sampled within 10 units of the finite one.
                if (!std::isfinite(a)) a = std::min(b, d) - 10.0;
                if (!std::isfinite(b)) b = std::max(a, c) + 10.0;
                if (!std::isfinite(c)) c = a - 10.0;
                if (!std::isfinite(d)) d = std::max(b, c) + 10.0;
                for (int k = 0; k < 100000; ++k) {
                    const double lo = g.real(a, b);
                    const double hi = g.real(c, d);
                    if (lo <= hi) return WeakCandidate(IntervalVector{Interval(lo, hi)}, r.c);
                }
                // Polygon reduced to (nearly) the diagonal point.
                const double m = 0.5 * (a + d);
                return WeakCandidate(IntervalVector{Interval(m, m)}, r.c);
            };
            for (int p = 0; p < pairs; ++p) {
                const WeakCandidate k1 = sample();
                const WeakCandidate k2 = sample();
                for (const double beta : betas) {
                    const Interval blend = add(scalar_mul(beta, k1.g[0]), scalar_mul(1.0 - beta, k2.g[0]));
                    const WeakCandidate k(IntervalVector{blend}, beta * k1.c + (1.0 - beta) * k2.c);
                    ++out.convexity_checks;
                    if (!member_check(sweep, k, tol)) {
                        ++out.convexity_failures;
                        std::ostringstream m;
                        m << "blend " << blend << " c=" << k.c << " of " << fc.name << " at " << u;
                        note(m.str());
                    }
                }
            }
        }
    }
    return out;
}

// ---- corpus-wide probe points ----

/// Points at fractions k/(n-1) of the (clipped) domain, along the diagonal in higher dimensions.
inline std::vector<std::vector<double>> probe_points(const Ivf& f, int n) {
    std::vector<std::vector<double>> out;
    for (int k = 0; k < n; ++k) {
        const double s = n == 1 ? 0.5 : static_cast<double>(k) / (n - 1);
        std::vector<double> p;
        for (const Bound& b : f.domain()) {
            const double lo = std::isfinite(b.lo) ? b.lo : -10.0;
            const double hi = std::isfinite(b.hi) ? b.hi : 10.0;
            p.push_back(lo + s * (hi - lo));
        }
        if (f.contains(p)) out.push_back(std::move(p));
    }
    return out;
}

inline std::string describe_point(std::span<const double> p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ")";
    return os.str();
}

struct SweepOutcome {
    long checks = 0;
    std::vector<std::string> mismatches;
};

/// Conditions (a), (b), (c) of the nonemptiness characterization agree.
inline SweepOutcome equivalence_suite(int points = 3) {
    SweepOutcome out;
    for (const auto& name : corpus_names()) {
        const Ivf f = corpus_get(name);
        auto probes = probe_points(f, points + 2);  // interior fractions only
        if (probes.size() > 2) probes = std::vector<std::vector<double>>(probes.begin() + 1, probes.end() - 1);
        for (const auto& p : probes) {
            ++out.checks;
            const EquivalenceReport r = equivalence_report(f, p);
            if (!r.agree()) {
                out.mismatches.push_back(name + " at " + describe_point(p) + ": nonempty=" +
                                         std::to_string(r.weak_subdiff_nonempty) +
                                         " lipschitz=" + std::to_string(r.lower_lipschitz) +
                                         " certificate=" + std::to_string(r.certificate_exists));
            }
        }
    }
    return out;
}

/// Zero-optimality (membership path) agrees with weak efficiency (dominance path).
inline SweepOutcome zero_optimality_suite(int points = 11) {
    SweepOutcome out;
    for (const auto& name : corpus_names()) {
        const Ivf f = corpus_get(name);
        for (const auto& p : probe_points(f, points)) {
            ++out.checks;
            const bool a = zero_optimality_check(f, p).holds;
            const bool b = weak_efficient_check(f, p).holds;
            if (a != b) {
                out.mismatches.push_back(name + " at " + describe_point(p) + ": zero_opt=" + std::to_string(a) +
                                         " weak_efficient=" + std::to_string(b));
            }
        }
    }
    return out;
}

}  // namespace ivfopt::testkit
