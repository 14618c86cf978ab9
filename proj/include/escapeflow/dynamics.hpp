#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "escapeflow/field.hpp"
#include "escapeflow/forest.hpp"
#include "escapeflow/lattice.hpp"
#include "escapeflow/rng.hpp"

namespace escapeflow {

/// One step's routing map: the argmax sets M_n(x) and chosen targets
/// a_n(x).  Targets are stored densely (empty vertices target themselves);
/// argmax sets are stored CSR-style for the support snapshot only.  An
/// empty argmax slice marks a root routed to the virtual sink, which is
/// richer than any finite value by fiat.
struct RoutingDecision {
    static constexpr std::int64_t kSink = -1;

    std::uint64_t step = 0;
    std::vector<std::int64_t> target;
    std::vector<VertexId> support;            // snapshot, ascending
    std::vector<std::uint32_t> argmax_offset; // support.size() + 1 entries
    std::vector<VertexId> argmax_items;
    std::uint64_t tie_count = 0;

    std::span<const VertexId> argmax_of(std::size_t support_pos) const {
        return {argmax_items.data() + argmax_offset[support_pos],
                argmax_items.data() + argmax_offset[support_pos + 1]};
    }
};

/// Resolves a tie among m argmax candidates for vertex x at step n.
using TiePicker =
    std::function<std::uint32_t(std::uint64_t step, VertexId x, std::uint32_t m)>;

/// The canonical tie source: uniform, keyed by (seed, step, vertex) so the
/// outcome is independent of evaluation order and replayable.
inline TiePicker keyed_tie_picker(std::uint64_t seed) {
    return [seed](std::uint64_t n, VertexId x, std::uint32_t m) {
        return rng::tie_pick(seed, n, x, m);
    };
}

/// Root membership mask used for sink routing under box-sink topology.
inline std::vector<std::uint8_t> root_mask(const Forest& f) {
    std::vector<std::uint8_t> mask(f.spec.vertex_count(), 0);
    for (VertexId r : f.roots) mask[r] = 1;
    return mask;
}

/// Richest-neighbor routing: each positive vertex picks a maximizer of the
/// field over its closed neighborhood, ties resolved by `pick`.  Under
/// box-sink topology a positive forest root targets the sink
/// unconditionally.
template <Quantity Q>
RoutingDecision route(const ResourceField<Q>& field, const NeighborTable& nbr,
                      const std::vector<std::uint8_t>* sink_roots,
                      const TiePicker& pick) {
    const std::size_t n = field.values.size();
    RoutingDecision d;
    d.step = field.step_index;
    d.target.resize(n);
    std::iota(d.target.begin(), d.target.end(), std::int64_t{0});
    d.support = field.support;
    d.argmax_offset.reserve(d.support.size() + 1);
    d.argmax_offset.push_back(0);

    const bool sink_active =
        field.spec.topology == Topology::BoxSink && sink_roots != nullptr;

    for (std::size_t pos = 0; pos < d.support.size(); ++pos) {
        const VertexId x = d.support[pos];
        if (sink_active && (*sink_roots)[x]) {
            d.target[x] = RoutingDecision::kSink;
            d.argmax_offset.push_back(static_cast<std::uint32_t>(d.argmax_items.size()));
            continue;
        }
        const VertexId* nb = nbr.begin_of(x);
        const VertexId* nb_end = nbr.end_of(x);
        const Q* best = &field.values[*nb];
        for (const VertexId* it = nb + 1; it != nb_end; ++it)
            if (field.values[*it] > *best) best = &field.values[*it];
        std::uint32_t m = 0;
        for (const VertexId* it = nb; it != nb_end; ++it)
            if (field.values[*it] == *best) {
                d.argmax_items.push_back(*it);
                ++m;
            }
        std::uint32_t choice = 0;
        if (m > 1) {
            ++d.tie_count;
            choice = pick(d.step, x, m);
        }
        d.target[x] = d.argmax_items[d.argmax_items.size() - m + choice];
        d.argmax_offset.push_back(static_cast<std::uint32_t>(d.argmax_items.size()));
    }
    return d;
}

/// Apply a routing decision: the new value at x is the sum of routed
/// values, accumulated in ascending lexicographic order of the source (so
/// float runs are reproducible bit for bit).
template <Quantity Q>
ResourceField<Q> step(const ResourceField<Q>& field, const RoutingDecision& decision) {
    if (decision.step != field.step_index || decision.target.size() != field.values.size())
        throw std::invalid_argument("step: decision does not match field");
    ResourceField<Q> out(field.spec);
    out.sink = field.sink;
    out.step_index = field.step_index + 1;
    for (VertexId y : field.support) {
        std::int64_t t = decision.target[y];
        if (t == RoutingDecision::kSink) out.sink += field.values[y];
        else out.values[static_cast<std::size_t>(t)] += field.values[y];
    }
    out.rebuild_support();
    return out;
}

/// Sufficient fixation condition: every positive vertex is its own strict
/// argmax.  All targets are then the identity, so no vertex receives
/// anything and the configuration is provably constant forever.
template <Quantity Q>
bool is_fixated(const ResourceField<Q>& field, const RoutingDecision& d) {
    for (std::size_t pos = 0; pos < d.support.size(); ++pos) {
        const VertexId x = d.support[pos];
        if (d.target[x] != static_cast<std::int64_t>(x)) return false;
        if (d.argmax_of(pos).size() != 1) return false;
    }
    return true;
}

template <Quantity Q>
struct StepRecord {
    std::uint64_t step = 0;
    Q total{};
    Q sink{};
    std::size_t positive = 0;
    std::uint64_t ties = 0;  // ties in the decision that produced this state
};

enum class StopMode { Fixation, Empty, Budget };
enum class StopReason { Fixation, Empty, Budget };

inline const char* stop_mode_name(StopMode m) {
    switch (m) {
        case StopMode::Fixation: return "fixation";
        case StopMode::Empty: return "empty";
        case StopMode::Budget: return "budget";
    }
    throw std::logic_error("unknown stop mode");
}

inline StopMode stop_mode_from_name(const std::string& s) {
    if (s == "fixation") return StopMode::Fixation;
    if (s == "empty") return StopMode::Empty;
    if (s == "budget") return StopMode::Budget;
    throw std::invalid_argument("unknown stop mode: " + s);
}

template <Quantity Q>
struct RunResult {
    ResourceField<Q> field;
    std::vector<StepRecord<Q>> trace;   // one row per recorded state
    StopReason reason = StopReason::Budget;
    bool truncated = false;             // budget hit before the requested stop
    std::uint64_t total_ties = 0;
};

/// Iterate route+step until the requested stop, an empty field, or the
/// budget.  Trace row k describes the state after k steps; its tie column
/// counts the ties of the decision that produced it (0 for the initial
/// row).
template <Quantity Q>
RunResult<Q> run(ResourceField<Q> field, std::uint64_t budget, StopMode mode,
                 std::uint64_t seed, const Forest* sink_forest = nullptr,
                 const std::function<void(const ResourceField<Q>&)>& on_state = {}) {
    NeighborTable nbr(field.spec);
    std::vector<std::uint8_t> mask;
    if (sink_forest != nullptr) mask = root_mask(*sink_forest);
    const TiePicker pick = keyed_tie_picker(seed);

    RunResult<Q> res;
    std::uint64_t last_ties = 0;
    for (;;) {
        res.trace.push_back(StepRecord<Q>{field.step_index, field.total(), field.sink,
                                          field.support.size(), last_ties});
        if (on_state) on_state(field);
        if (field.empty_of_resource()) {
            res.reason = mode == StopMode::Fixation ? StopReason::Fixation : StopReason::Empty;
            break;
        }
        if (field.step_index >= budget) {
            res.reason = StopReason::Budget;
            res.truncated = mode != StopMode::Budget;
            break;
        }
        RoutingDecision d = route(field, nbr, mask.empty() ? nullptr : &mask, pick);
        if (mode == StopMode::Fixation && is_fixated(field, d)) {
            res.reason = StopReason::Fixation;
            break;
        }
        field = step(field, d);
        last_ties = d.tie_count;
        res.total_ties += d.tie_count;
    }
    res.field = std::move(field);
    return res;
}

}  // namespace escapeflow
