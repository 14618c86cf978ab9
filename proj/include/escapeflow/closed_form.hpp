#pragma once

#include <cstdint>
#include <vector>

#include "escapeflow/field.hpp"
#include "escapeflow/forest.hpp"
#include "escapeflow/quantity.hpp"

namespace escapeflow {

/// Membership of the leaf-peeled forests T_n.  removed_at(x) records the
/// first n with x outside T_n (0 for non-members, -1 while still alive).
struct PeelState {
    std::vector<std::uint8_t> alive;
    std::uint64_t n = 0;
    std::vector<std::int64_t> removed_at;
};

PeelState initial_peel_state(const Forest& f);

/// One application of the leaf-deletion map: removes every alive member
/// whose alive-neighbor count is exactly 1, where a root's virtual sink
/// link counts as a neighbor (so roots survive until their whole subtree
/// is gone).  All removals happen simultaneously.
PeelState peel(PeelState state, const Forest& f);

/// T_n computed directly from heights: {x : height(x) >= n}.  Must equal
/// iterated peel.
std::vector<std::uint8_t> membership_by_height(const Forest& f, const ForestStats& st,
                                               std::int64_t n);

/// The forest-intrinsic evolution: every positive vertex forwards its
/// whole value to its parent; root values move to the sink.  Requires the
/// field to be supported on the current alive set.
ResourceField<Int> parent_forward_step(const ResourceField<Int>& field, const Forest& f,
                                       const PeelState& state);

struct FluxReport {
    bool ok = true;
    std::vector<VertexId> violations;
};

/// Strict flux inequality: on the alive set each value strictly dominates
/// the sum of its children's values; off the alive set values are 0.
/// Exact-integer fields only (strictness is meaningless in float).
FluxReport check_flux_stab(const ResourceField<Int>& field, const Forest& f,
                           const PeelState& state);

}  // namespace escapeflow
