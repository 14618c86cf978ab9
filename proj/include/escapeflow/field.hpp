#pragma once

#include <cstdint>
#include <vector>

#include "escapeflow/lattice.hpp"
#include "escapeflow/quantity.hpp"

namespace escapeflow {

/// The configuration C_n: one quantity per in-box vertex plus a sink
/// accumulator (meaningful under box-sink topology).  `support` caches the
/// sorted ids of positive vertices; since an empty vertex can never receive
/// mass, the support only ever shrinks along a trajectory.
template <Quantity Q>
struct ResourceField {
    LatticeSpec spec;
    std::vector<Q> values;
    Q sink{};
    std::uint64_t step_index = 0;
    std::vector<VertexId> support;

    ResourceField() = default;

    explicit ResourceField(const LatticeSpec& s)
        : spec(s), values(s.vertex_count(), Q{}) {}

    const Q& at(const Coord& x) const { return values[spec.flatten(x)]; }

    void set(const Coord& x, Q v) { values[spec.flatten(x)] = std::move(v); }

    /// Recompute the support cache from the dense values.
    void rebuild_support() {
        support.clear();
        for (VertexId v = 0; v < values.size(); ++v)
            if (values[v] > Q{}) support.push_back(v);
    }

    /// Sum of in-box values (the sink is tracked separately).
    Q total() const {
        Q t{};
        for (VertexId v : support) t += values[v];
        return t;
    }

    bool empty_of_resource() const { return support.empty(); }
};

}  // namespace escapeflow
