#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "escapeflow/closed_form.hpp"
#include "escapeflow/dynamics.hpp"
#include "escapeflow/forest.hpp"
#include "escapeflow/init.hpp"

namespace escapeflow {

/// Worker cap: ESCAPEFLOW_THREADS if set, else all cores.
int worker_count();

/// Run fn(0..n-1), possibly on several workers.  Tasks must only write
/// their own slot so results are independent of the partitioning.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Central window: vertices at 1-norm distance >= min_side/4 from the
/// boundary (every vertex on a torus).  Damps boundary artifacts of the
/// finite root policy.
std::vector<VertexId> interior_ids(const LatticeSpec& spec);

/// The standard escape-experiment forest on a box with even sides: a
/// minimal spanning forest on the half box (layered for d > 2), rooted by
/// policy, scaled up by 2 and shifted by the seed-derived W.
Forest make_scaled_msf_forest(const LatticeSpec& target, std::uint64_t seed,
                              const RootPolicy& policy = RootPolicy::boundary_closest());

enum class TriVerdict { Pass, Fail, NotRun };

const char* tri_verdict_name(TriVerdict v);

/// Raw dynamics vs the forest-intrinsic closed form, compared exactly at
/// every step until extinction.
struct EquivalenceReport {
    bool pass = false;
    std::uint64_t extinction_step = 0;
    std::uint64_t total_ties = 0;
    bool flux_ok = true;
    bool truncated = false;
    std::string failure;
};

/// Requires a property-(ii) oriented forest under box-sink topology;
/// starts from the descendant-count configuration.  Also verifies the
/// strict flux inequality at every step.
EquivalenceReport equivalence_check(const Forest& f, std::uint64_t budget,
                                    std::uint64_t seed);

struct EscapeRun {
    std::uint64_t seed = 0;
    bool completed = false;
    std::uint64_t extinction_step = 0;
    std::size_t interior_count = 0;
    Int initial_total;
    Int initial_interior_sum;
    Int final_interior_sum;
    Int sink_final;
};

/// One descendant-init drain-to-sink run plus its interior bookkeeping.
EscapeRun escape_run(const Forest& f, std::uint64_t seed, std::uint64_t budget);

struct EscapeReport {
    std::size_t runs = 0;
    std::size_t completed = 0;
    std::size_t truncated = 0;
    bool final_interior_all_zero = true;   // over completed runs, exact
    bool sink_matches_initial = true;      // sink == initial total, exact
    bool initial_mean_at_least_one = true; // interior sum >= interior count
    double mean_initial_interior = 0.0;
    double mean_final_interior = 0.0;
};

EscapeReport aggregate_escape(const std::vector<EscapeRun>& runs);

/// Median central-window mean of C_0 per box side, for the descendant
/// configuration against a bounded i.i.d. control.
struct DivergenceReport {
    std::vector<int> sides;
    std::vector<double> medians;
    std::vector<double> control_medians;
    bool increasing = false;
    double control_spread = 0.0;  // (max - min) / min over the control series
    bool control_flat = false;
};

DivergenceReport divergence_probe(const std::vector<int>& sides, int seeds_per_side,
                                  std::uint64_t seed0, double control_tol = 0.05);

struct FixationReport {
    std::size_t runs = 0;
    std::size_t fixated = 0;
    std::uint64_t budget = 0;
    std::vector<std::uint64_t> times;  // fixation step of each fixated run
};

/// Empirical fixation probe on i.i.d. initial configurations.
FixationReport fixation_stats(const LatticeSpec& spec, const InitSpec& init, int runs,
                              std::uint64_t budget, std::uint64_t seed0);

struct LightConeReport {
    TriVerdict verdict = TriVerdict::NotRun;
    std::uint64_t ties_small = 0;
    std::uint64_t ties_big = 0;
    std::string detail;
};

/// Paired-box agreement: a side-L box and a side-(L+2m) box, identically
/// initialized on the overlap, must agree exactly on the radius-r central
/// window through step n, provided r + 2n is at most the window's margin.
/// Tie-free regimes only: any tie yields a not-run verdict.
LightConeReport light_cone_check(int L, int m, int r, int steps, std::uint64_t seed,
                                 const InitSpec& init);

/// Per-run aggregate as emitted by the driver.
struct RunReport {
    std::string config_digest;
    std::vector<std::string> total_series;
    std::vector<std::string> sink_series;
    std::vector<std::size_t> positive_series;
    std::vector<std::uint64_t> tie_series;
    std::optional<std::uint64_t> fixation_step;
    bool truncated = false;
};

template <Quantity Q>
RunReport make_run_report(const std::string& digest, const RunResult<Q>& rr) {
    RunReport rep;
    rep.config_digest = digest;
    for (const StepRecord<Q>& rec : rr.trace) {
        rep.total_series.push_back(quantity_to_string(rec.total));
        rep.sink_series.push_back(quantity_to_string(rec.sink));
        rep.positive_series.push_back(rec.positive);
        rep.tie_series.push_back(rec.ties);
    }
    if (rr.reason == StopReason::Fixation && !rr.trace.empty())
        rep.fixation_step = rr.trace.back().step;
    rep.truncated = rr.truncated;
    return rep;
}

}  // namespace escapeflow
