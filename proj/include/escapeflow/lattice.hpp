#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace escapeflow {

/// Lattice coordinates of a vertex, length d.
using Coord = std::vector<int>;

/// Flattened index of an in-box vertex.  Flattening is row-major with the
/// first coordinate most significant, so ascending id order coincides with
/// ascending lexicographic coordinate order.
using VertexId = std::uint32_t;

enum class Topology { Torus, BoxZero, BoxSink };

std::string topology_name(Topology t);
Topology topology_from_name(const std::string& name);

/// A finite stand-in for the d-dimensional integer lattice: a box of
/// side lengths sides[i], either wrapped (torus) or truncated.  Out-of-box
/// vertices are represented by absence; they behave as permanently empty.
struct LatticeSpec {
    int d = 0;
    std::vector<int> sides;
    Topology topology = Topology::BoxZero;

    LatticeSpec() = default;
    LatticeSpec(int d_, std::vector<int> sides_, Topology topo);

    std::size_t vertex_count() const;
    bool contains(const Coord& x) const;
    VertexId flatten(const Coord& x) const;
    Coord unflatten(VertexId id) const;

    /// Wrap coordinates into range on a torus; on boxes, checked identity.
    Coord canonical(const Coord& x) const;

    bool operator==(const LatticeSpec& o) const {
        return d == o.d && sides == o.sides && topology == o.topology;
    }
};

/// Closed neighborhood of x: x itself plus every in-lattice vertex at
/// 1-norm distance 1, in ascending lexicographic order.
std::vector<Coord> neighbors(const Coord& x, const LatticeSpec& spec);

/// All in-lattice vertices within 1-norm distance `radius` of `center`,
/// sorted lexicographically.
std::vector<Coord> window(const Coord& center, int radius, const LatticeSpec& spec);

/// 1-norm distance from x to the nearest out-of-box position.
/// Returns a large sentinel on a torus, which has no boundary.
int boundary_distance(const Coord& x, const LatticeSpec& spec);

/// Undirected lattice edge between flattened ids, stored with a < b.
struct Edge {
    VertexId a = 0;
    VertexId b = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Canonical edge list of the finite lattice: sorted, deduplicated
/// (wrap-around on 2-wide tori would otherwise produce doubles).
std::vector<Edge> lattice_edges(const LatticeSpec& spec);

/// CSR adjacency over flattened ids; each list is sorted and includes the
/// vertex itself (closed neighborhoods drive the dynamics).
struct NeighborTable {
    std::vector<std::uint32_t> offsets;
    std::vector<VertexId> items;

    explicit NeighborTable(const LatticeSpec& spec);

    std::size_t degree(VertexId v) const { return offsets[v + 1] - offsets[v]; }
    const VertexId* begin_of(VertexId v) const { return items.data() + offsets[v]; }
    const VertexId* end_of(VertexId v) const { return items.data() + offsets[v + 1]; }
};

}  // namespace escapeflow
