#include "escapeflow/closed_form.hpp"

#include <stdexcept>

namespace escapeflow {

PeelState initial_peel_state(const Forest& f) {
    if (!f.oriented()) throw std::invalid_argument("peel state needs an oriented forest");
    PeelState st;
    st.alive.assign(f.member.begin(), f.member.end());
    st.n = 0;
    st.removed_at.assign(f.member.size(), 0);
    for (VertexId v = 0; v < f.member.size(); ++v)
        if (f.member[v]) st.removed_at[v] = -1;
    return st;
}

PeelState peel(PeelState state, const Forest& f) {
    if (state.alive.size() != f.member.size())
        throw std::invalid_argument("peel: state does not match forest");
    ForestAdjacency adj(f);
    std::vector<VertexId> removing;
    for (VertexId v = 0; v < state.alive.size(); ++v) {
        if (!state.alive[v]) continue;
        std::size_t degree = f.is_root(v) ? 1 : 0;  // virtual sink link
        for (const VertexId* it = adj.begin_of(v); it != adj.end_of(v); ++it)
            if (state.alive[*it]) ++degree;
        if (degree == 1) removing.push_back(v);
    }
    ++state.n;
    for (VertexId v : removing) {
        state.alive[v] = 0;
        state.removed_at[v] = static_cast<std::int64_t>(state.n);
    }
    return state;
}

std::vector<std::uint8_t> membership_by_height(const Forest& f, const ForestStats& st,
                                               std::int64_t n) {
    std::vector<std::uint8_t> out(f.member.size(), 0);
    for (VertexId v = 0; v < f.member.size(); ++v)
        if (f.member[v] && st.height[v] >= n) out[v] = 1;
    return out;
}

ResourceField<Int> parent_forward_step(const ResourceField<Int>& field, const Forest& f,
                                       const PeelState& state) {
    if (!f.oriented()) throw std::invalid_argument("parent_forward_step: forest must be oriented");
    if (field.values.size() != f.member.size())
        throw std::invalid_argument("parent_forward_step: field does not match forest");
    for (VertexId v : field.support)
        if (!state.alive[v])
            throw std::logic_error("parent_forward_step: field positive outside the alive set");

    ResourceField<Int> out(field.spec);
    out.sink = field.sink;
    out.step_index = field.step_index + 1;
    for (VertexId y : field.support) {
        if (f.parent[y] == Forest::kRoot) out.sink += field.values[y];
        else out.values[static_cast<std::size_t>(f.parent[y])] += field.values[y];
    }
    out.rebuild_support();
    return out;
}

FluxReport check_flux_stab(const ResourceField<Int>& field, const Forest& f,
                           const PeelState& state) {
    if (field.values.size() != f.member.size() || state.alive.size() != f.member.size())
        throw std::invalid_argument("check_flux_stab: size mismatch");
    ChildTable children(f);
    FluxReport rep;
    for (VertexId v = 0; v < state.alive.size(); ++v) {
        if (state.alive[v]) {
            Int child_sum = 0;
            for (const VertexId* it = children.begin_of(v); it != children.end_of(v); ++it)
                child_sum += field.values[*it];
            if (!(field.values[v] > child_sum)) {
                rep.ok = false;
                rep.violations.push_back(v);
            }
        } else if (field.values[v] != 0) {
            rep.ok = false;
            rep.violations.push_back(v);
        }
    }
    return rep;
}

}  // namespace escapeflow
