#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "escapeflow/lattice.hpp"

namespace escapeflow {

/// One uniform weight per canonical lattice edge (aligned with
/// lattice_edges(spec)).  Weights are pairwise distinct: collisions are
/// re-drawn.
struct EdgeWeights {
    std::vector<double> w;
};

EdgeWeights sample_weights(const LatticeSpec& spec, std::uint64_t seed);

/// Layer-keyed variant: independent weight streams per layer index.
EdgeWeights sample_weights(const LatticeSpec& spec, std::uint64_t seed,
                           std::uint64_t layer);

/// A forest embedded in the lattice.  Unoriented forests carry only the
/// edge set; oriented forests additionally hold the parent relation, with
/// each root standing in for the unique end of an infinite one-ended tree
/// (its virtual parent is the sink).
struct Forest {
    static constexpr std::int64_t kRoot = -1;
    static constexpr std::int64_t kNotMember = -2;

    LatticeSpec spec;
    std::vector<std::uint8_t> member;   // size vertex_count()
    std::vector<Edge> edges;            // sorted canonical
    std::vector<std::int64_t> parent;   // empty while unoriented
    std::vector<VertexId> roots;        // sorted

    bool oriented() const { return !parent.empty(); }
    bool is_member(VertexId v) const { return member[v] != 0; }
    bool is_root(VertexId v) const;
    std::size_t member_count() const;
    std::vector<VertexId> members_sorted() const;
    bool has_edge(VertexId a, VertexId b) const;
};

/// CSR adjacency restricted to forest edges.
struct ForestAdjacency {
    std::vector<std::uint32_t> offsets;
    std::vector<VertexId> items;

    explicit ForestAdjacency(const Forest& f);

    const VertexId* begin_of(VertexId v) const { return items.data() + offsets[v]; }
    const VertexId* end_of(VertexId v) const { return items.data() + offsets[v + 1]; }
    std::size_t degree(VertexId v) const { return offsets[v + 1] - offsets[v]; }
};

/// Children lists of an oriented forest (CSR).
struct ChildTable {
    std::vector<std::uint32_t> offsets;
    std::vector<VertexId> items;

    explicit ChildTable(const Forest& f);

    const VertexId* begin_of(VertexId v) const { return items.data() + offsets[v]; }
    const VertexId* end_of(VertexId v) const { return items.data() + offsets[v + 1]; }
};

/// Minimal spanning forest of the lattice under the given weights: on a
/// finite connected graph, deleting the heaviest edge of every cycle
/// leaves exactly the minimum-weight spanning tree, so the construction
/// is Kruskal with union-find.  Returned unoriented.
Forest build_msf(const LatticeSpec& spec, const EdgeWeights& w);

/// Kruskal on an arbitrary sub-edge-set of the lattice (edge ids into
/// lattice_edges(spec)).  Spans the vertices covered by `edge_ids`.
Forest build_msf_subgraph(const LatticeSpec& spec,
                          const std::vector<std::size_t>& edge_ids,
                          const EdgeWeights& w);

/// Independent 2-D minimal spanning forests in each Z^2 x {z} layer of a
/// d > 2 box; no edge crosses layers.  Returned unoriented.
Forest layer_embed(const LatticeSpec& spec, std::uint64_t seed);

/// Root an unoriented tree: parents point one step along the unique path
/// toward `root`.
Forest orient(const Forest& tree, const Coord& root);

/// How the root of each component is designated.
struct RootPolicy {
    enum class Kind { BoundaryClosest, LexMin, Fixed };
    Kind kind = Kind::BoundaryClosest;
    Coord fixed;  // Kind::Fixed only

    static RootPolicy boundary_closest() { return {Kind::BoundaryClosest, {}}; }
    static RootPolicy lex_min() { return {Kind::LexMin, {}}; }
    static RootPolicy fixed_root(Coord c) { return {Kind::Fixed, std::move(c)}; }
};

std::string root_policy_name(const RootPolicy& p);
RootPolicy root_policy_from_name(const std::string& name);

/// Orient every component of an unoriented forest, choosing one root per
/// component by policy.
Forest orient_components(const Forest& f, const RootPolicy& policy);

/// Scale a forest up by a factor 2 and translate by W in {0,1}^d: member x
/// maps to 2x+W, every edge (x,y) gains a midpoint x+y+W, and each original
/// edge splits into two.  Orientation is inherited (a midpoint's parent is
/// the scaled parent endpoint).  The result lives in a box with doubled
/// sides and satisfies property (ii): any two adjacent members are joined
/// by a forest edge.
Forest scale_up(const Forest& h, const Coord& w_shift);

/// Translate a forest by a nonnegative offset into a (possibly larger) box.
Forest translate(const Forest& f, const Coord& offset, const LatticeSpec& target);

/// Subtree sizes and heights of an oriented forest.
struct ForestStats {
    std::vector<std::int64_t> desc;    // descendants incl. self; -1 off forest
    std::vector<std::int64_t> height;  // 0 for leaves; -1 off forest
};

ForestStats stats(const Forest& f);

struct PropertyIIReport {
    bool ok = true;
    std::vector<Edge> violations;
};

/// Check that every lattice edge with both endpoints in the forest is a
/// forest edge.
PropertyIIReport verify_property_ii(const Forest& f);

}  // namespace escapeflow
