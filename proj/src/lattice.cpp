#include "escapeflow/lattice.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <stdexcept>

namespace escapeflow {

std::string topology_name(Topology t) {
    switch (t) {
        case Topology::Torus: return "torus";
        case Topology::BoxZero: return "box-zero";
        case Topology::BoxSink: return "box-sink";
    }
    throw std::logic_error("unknown topology");
}

Topology topology_from_name(const std::string& name) {
    if (name == "torus") return Topology::Torus;
    if (name == "box-zero") return Topology::BoxZero;
    if (name == "box-sink") return Topology::BoxSink;
    throw std::invalid_argument("unknown topology: " + name);
}

LatticeSpec::LatticeSpec(int d_, std::vector<int> sides_, Topology topo)
    : d(d_), sides(std::move(sides_)), topology(topo) {
    if (d < 1) throw std::invalid_argument("lattice dimension must be >= 1");
    if (sides.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("sides length must equal dimension");
    for (int s : sides)
        if (s < 2) throw std::invalid_argument("every side length must be >= 2");
    std::size_t n = 1;
    for (int s : sides) {
        n *= static_cast<std::size_t>(s);
        if (n > (1u << 30)) throw std::invalid_argument("lattice too large");
    }
}

std::size_t LatticeSpec::vertex_count() const {
    std::size_t n = 1;
    for (int s : sides) n *= static_cast<std::size_t>(s);
    return n;
}

bool LatticeSpec::contains(const Coord& x) const {
    if (x.size() != static_cast<std::size_t>(d)) return false;
    for (int i = 0; i < d; ++i) {
        auto ui = static_cast<std::size_t>(i);
        if (x[ui] < 0 || x[ui] >= sides[ui]) return false;
    }
    return true;
}

VertexId LatticeSpec::flatten(const Coord& x) const {
    if (!contains(x)) throw std::domain_error("vertex outside lattice");
    std::size_t id = 0;
    for (int i = 0; i < d; ++i) {
        auto ui = static_cast<std::size_t>(i);
        id = id * static_cast<std::size_t>(sides[ui]) + static_cast<std::size_t>(x[ui]);
    }
    return static_cast<VertexId>(id);
}

Coord LatticeSpec::unflatten(VertexId id) const {
    std::size_t rest = id;
    Coord x(static_cast<std::size_t>(d));
    for (int i = d - 1; i >= 0; --i) {
        auto ui = static_cast<std::size_t>(i);
        auto side = static_cast<std::size_t>(sides[ui]);
        x[ui] = static_cast<int>(rest % side);
        rest /= side;
    }
    return x;
}

Coord LatticeSpec::canonical(const Coord& x) const {
    if (x.size() != static_cast<std::size_t>(d))
        throw std::domain_error("coordinate arity mismatch");
    if (topology != Topology::Torus) {
        if (!contains(x)) throw std::domain_error("vertex outside lattice");
        return x;
    }
    Coord y(x.size());
    for (int i = 0; i < d; ++i) {
        auto ui = static_cast<std::size_t>(i);
        int side = sides[ui];
        int v = x[ui] % side;
        if (v < 0) v += side;
        y[ui] = v;
    }
    return y;
}

std::vector<Coord> neighbors(const Coord& x, const LatticeSpec& spec) {
    if (!spec.contains(x)) throw std::domain_error("neighbors: vertex outside lattice");
    std::vector<Coord> out;
    out.reserve(static_cast<std::size_t>(2 * spec.d + 1));
    out.push_back(x);
    for (int i = 0; i < spec.d; ++i) {
        auto ui = static_cast<std::size_t>(i);
        for (int dir : {-1, +1}) {
            Coord y = x;
            y[ui] += dir;
            if (spec.topology == Topology::Torus) {
                y = spec.canonical(y);
            } else if (!spec.contains(y)) {
                continue;  // absent vertex: permanently zero, omitted
            }
            out.push_back(std::move(y));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Coord> window(const Coord& center, int radius, const LatticeSpec& spec) {
    if (radius < 0) throw std::invalid_argument("window: radius must be >= 0");
    if (!spec.contains(center)) throw std::domain_error("window: center outside lattice");
    std::vector<Coord> out;
    Coord offset(static_cast<std::size_t>(spec.d), 0);
    std::function<void(int, int)> rec = [&](int axis, int budget) {
        if (axis == spec.d) {
            Coord y(center);
            for (int i = 0; i < spec.d; ++i) y[static_cast<std::size_t>(i)] += offset[static_cast<std::size_t>(i)];
            if (spec.topology == Topology::Torus) {
                out.push_back(spec.canonical(y));
            } else if (spec.contains(y)) {
                out.push_back(std::move(y));
            }
            return;
        }
        for (int delta = -budget; delta <= budget; ++delta) {
            offset[static_cast<std::size_t>(axis)] = delta;
            rec(axis + 1, budget - std::abs(delta));
        }
        offset[static_cast<std::size_t>(axis)] = 0;
    };
    rec(0, radius);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int boundary_distance(const Coord& x, const LatticeSpec& spec) {
    if (!spec.contains(x)) throw std::domain_error("boundary_distance: vertex outside lattice");
    if (spec.topology == Topology::Torus) return INT_MAX;
    int best = INT_MAX;
    for (int i = 0; i < spec.d; ++i) {
        auto ui = static_cast<std::size_t>(i);
        best = std::min(best, std::min(x[ui], spec.sides[ui] - 1 - x[ui]));
    }
    return best;
}

std::vector<Edge> lattice_edges(const LatticeSpec& spec) {
    std::vector<Edge> edges;
    const std::size_t n = spec.vertex_count();
    edges.reserve(n * static_cast<std::size_t>(spec.d));
    for (VertexId u = 0; u < n; ++u) {
        Coord x = spec.unflatten(u);
        for (int i = 0; i < spec.d; ++i) {
            Coord y = x;
            y[static_cast<std::size_t>(i)] += 1;
            if (spec.topology == Topology::Torus) {
                y = spec.canonical(y);
            } else if (!spec.contains(y)) {
                continue;
            }
            VertexId v = spec.flatten(y);
            if (u == v) continue;
            edges.push_back(Edge{std::min(u, v), std::max(u, v)});
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

NeighborTable::NeighborTable(const LatticeSpec& spec) {
    const std::size_t n = spec.vertex_count();
    offsets.resize(n + 1, 0);
    items.reserve(n * static_cast<std::size_t>(2 * spec.d + 1));
    for (VertexId u = 0; u < n; ++u) {
        Coord x = spec.unflatten(u);
        std::vector<Coord> nb = neighbors(x, spec);
        for (const Coord& y : nb) items.push_back(spec.flatten(y));
        offsets[u + 1] = static_cast<std::uint32_t>(items.size());
    }
}

}  // namespace escapeflow
