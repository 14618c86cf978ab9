#include "escapeflow/forest.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "escapeflow/rng.hpp"

namespace escapeflow {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), VertexId{0});
    }

    VertexId find(VertexId v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    bool unite(VertexId a, VertexId b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<VertexId> parent_;
    std::vector<std::uint8_t> rank_;
};

EdgeWeights sample_weights_keyed(const LatticeSpec& spec, std::uint64_t key) {
    const std::size_t m = lattice_edges(spec).size();
    rng::Sequence seq(key);
    EdgeWeights ew;
    ew.w.reserve(m);
    std::unordered_set<double> seen;
    seen.reserve(m * 2);
    for (std::size_t i = 0; i < m; ++i) {
        double u = seq.next_u01();
        while (!seen.insert(u).second) u = seq.next_u01();  // re-draw collisions
        ew.w.push_back(u);
    }
    return ew;
}

void check_distinct(const EdgeWeights& w) {
    std::vector<double> s(w.w);
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("edge weights must be pairwise distinct");
}

}  // namespace

EdgeWeights sample_weights(const LatticeSpec& spec, std::uint64_t seed) {
    return sample_weights_keyed(spec, rng::stream_key(seed, rng::Stream::Weights));
}

EdgeWeights sample_weights(const LatticeSpec& spec, std::uint64_t seed,
                           std::uint64_t layer) {
    return sample_weights_keyed(spec, rng::stream_key(seed, rng::Stream::Weights, layer));
}

bool Forest::is_root(VertexId v) const {
    return oriented() && member[v] && parent[v] == kRoot;
}

std::size_t Forest::member_count() const {
    std::size_t n = 0;
    for (std::uint8_t m : member) n += m;
    return n;
}

std::vector<VertexId> Forest::members_sorted() const {
    std::vector<VertexId> out;
    out.reserve(member_count());
    for (VertexId v = 0; v < member.size(); ++v)
        if (member[v]) out.push_back(v);
    return out;
}

bool Forest::has_edge(VertexId a, VertexId b) const {
    Edge e{std::min(a, b), std::max(a, b)};
    return std::binary_search(edges.begin(), edges.end(), e);
}

ForestAdjacency::ForestAdjacency(const Forest& f) {
    const std::size_t n = f.spec.vertex_count();
    std::vector<std::uint32_t> deg(n, 0);
    for (const Edge& e : f.edges) {
        ++deg[e.a];
        ++deg[e.b];
    }
    offsets.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + deg[v];
    items.resize(offsets[n]);
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const Edge& e : f.edges) {
        items[cursor[e.a]++] = e.b;
        items[cursor[e.b]++] = e.a;
    }
    for (std::size_t v = 0; v < n; ++v)
        std::sort(items.begin() + offsets[v], items.begin() + offsets[v + 1]);
}

ChildTable::ChildTable(const Forest& f) {
    if (!f.oriented()) throw std::invalid_argument("ChildTable: forest is not oriented");
    const std::size_t n = f.spec.vertex_count();
    std::vector<std::uint32_t> deg(n, 0);
    for (VertexId v = 0; v < n; ++v)
        if (f.member[v] && f.parent[v] >= 0) ++deg[static_cast<std::size_t>(f.parent[v])];
    offsets.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + deg[v];
    items.resize(offsets[n]);
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (VertexId v = 0; v < n; ++v)
        if (f.member[v] && f.parent[v] >= 0)
            items[cursor[static_cast<std::size_t>(f.parent[v])]++] = v;
    // filled in ascending child order already: v runs ascending
}

Forest build_msf_subgraph(const LatticeSpec& spec,
                          const std::vector<std::size_t>& edge_ids,
                          const EdgeWeights& w) {
    check_distinct(w);
    const std::vector<Edge> all = lattice_edges(spec);
    if (w.w.size() != all.size())
        throw std::invalid_argument("weight vector does not match lattice edge count");

    std::vector<std::size_t> order(edge_ids);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return w.w[a] < w.w[b]; });

    Forest f;
    f.spec = spec;
    f.member.assign(spec.vertex_count(), 0);
    UnionFind uf(spec.vertex_count());
    for (std::size_t id : edge_ids) {
        f.member[all[id].a] = 1;
        f.member[all[id].b] = 1;
    }
    for (std::size_t id : order)
        if (uf.unite(all[id].a, all[id].b)) f.edges.push_back(all[id]);
    std::sort(f.edges.begin(), f.edges.end());
    return f;
}

Forest build_msf(const LatticeSpec& spec, const EdgeWeights& w) {
    const std::size_t m = lattice_edges(spec).size();
    std::vector<std::size_t> ids(m);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    Forest f = build_msf_subgraph(spec, ids, w);
    // a spanning forest covers every vertex, edges or not
    std::fill(f.member.begin(), f.member.end(), std::uint8_t{1});
    return f;
}

Forest layer_embed(const LatticeSpec& spec, std::uint64_t seed) {
    if (spec.d < 3) throw std::invalid_argument("layer_embed requires d >= 3");
    LatticeSpec plane(2, {spec.sides[0], spec.sides[1]}, spec.topology);
    const std::vector<Edge> plane_edges = lattice_edges(plane);

    std::size_t layer_count = 1;
    for (int i = 2; i < spec.d; ++i) layer_count *= static_cast<std::size_t>(spec.sides[static_cast<std::size_t>(i)]);

    Forest f;
    f.spec = spec;
    f.member.assign(spec.vertex_count(), 1);
    for (std::size_t layer = 0; layer < layer_count; ++layer) {
        EdgeWeights w = sample_weights(plane, seed, layer);
        Forest tree = build_msf(plane, w);
        // lift the layer tree into d dimensions at layer coordinate z
        Coord z(static_cast<std::size_t>(spec.d - 2));
        std::size_t rest = layer;
        for (int i = spec.d - 3; i >= 0; --i) {
            auto side = static_cast<std::size_t>(spec.sides[static_cast<std::size_t>(i + 2)]);
            z[static_cast<std::size_t>(i)] = static_cast<int>(rest % side);
            rest /= side;
        }
        auto lift = [&](VertexId pv) {
            Coord p2 = plane.unflatten(pv);
            Coord full(static_cast<std::size_t>(spec.d));
            full[0] = p2[0];
            full[1] = p2[1];
            for (int i = 2; i < spec.d; ++i) full[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i - 2)];
            return spec.flatten(full);
        };
        for (const Edge& e : tree.edges) {
            VertexId a = lift(e.a), b = lift(e.b);
            f.edges.push_back(Edge{std::min(a, b), std::max(a, b)});
        }
    }
    std::sort(f.edges.begin(), f.edges.end());
    return f;
}

Forest orient(const Forest& tree, const Coord& root) {
    VertexId r = tree.spec.flatten(root);
    if (!tree.member[r]) throw std::invalid_argument("orient: root is not a vertex of the forest");
    Forest f(tree);
    f.parent.assign(f.spec.vertex_count(), Forest::kNotMember);
    f.roots = {r};

    ForestAdjacency adj(tree);
    f.parent[r] = Forest::kRoot;
    std::deque<VertexId> queue{r};
    std::size_t reached = 0;
    while (!queue.empty()) {
        VertexId cur = queue.front();
        queue.pop_front();
        ++reached;
        for (const VertexId* it = adj.begin_of(cur); it != adj.end_of(cur); ++it) {
            if (f.parent[*it] != Forest::kNotMember) continue;
            f.parent[*it] = cur;
            queue.push_back(*it);
        }
    }
    std::size_t members = tree.member_count();
    // reachability + edge count together rule out cycles and extra components
    if (reached != members || tree.edges.size() + 1 != members)
        throw std::invalid_argument("orient: input is not a single acyclic component");
    return f;
}

std::string root_policy_name(const RootPolicy& p) {
    switch (p.kind) {
        case RootPolicy::Kind::BoundaryClosest: return "boundary";
        case RootPolicy::Kind::LexMin: return "lexmin";
        case RootPolicy::Kind::Fixed: {
            std::string s = "fixed";
            for (int c : p.fixed) s += ":" + std::to_string(c);
            return s;
        }
    }
    throw std::logic_error("unknown root policy");
}

RootPolicy root_policy_from_name(const std::string& name) {
    if (name == "boundary") return RootPolicy::boundary_closest();
    if (name == "lexmin") return RootPolicy::lex_min();
    if (name.rfind("fixed", 0) == 0) {
        Coord c;
        std::size_t pos = 5;
        while (pos < name.size() && name[pos] == ':') {
            std::size_t next = name.find(':', pos + 1);
            std::string tok = name.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1);
            c.push_back(std::stoi(tok));
            pos = next == std::string::npos ? name.size() : next;
        }
        if (c.empty()) throw std::invalid_argument("fixed root policy needs coordinates");
        return RootPolicy::fixed_root(std::move(c));
    }
    throw std::invalid_argument("unknown root policy: " + name);
}

Forest orient_components(const Forest& f, const RootPolicy& policy) {
    const std::size_t n = f.spec.vertex_count();
    UnionFind uf(n);
    for (const Edge& e : f.edges) uf.unite(e.a, e.b);

    // pick a root per component: minimal boundary distance, ties broken
    // lexicographically (ascending id order does both at once)
    std::vector<std::int64_t> chosen(n, -1);
    std::vector<int> best(n, INT_MAX);
    for (VertexId v = 0; v < n; ++v) {
        if (!f.member[v]) continue;
        VertexId rep = uf.find(v);
        int score = 0;
        switch (policy.kind) {
            case RootPolicy::Kind::BoundaryClosest:
                score = boundary_distance(f.spec.unflatten(v), f.spec);
                break;
            case RootPolicy::Kind::LexMin:
                score = 0;
                break;
            case RootPolicy::Kind::Fixed:
                score = 0;
                break;
        }
        if (score < best[rep]) {
            best[rep] = score;
            chosen[rep] = v;
        }
    }
    if (policy.kind == RootPolicy::Kind::Fixed) {
        VertexId fixed = f.spec.flatten(policy.fixed);
        if (!f.member[fixed]) throw std::invalid_argument("fixed root is not a forest member");
        chosen[uf.find(fixed)] = fixed;
    }

    Forest out(f);
    out.parent.assign(n, Forest::kNotMember);
    out.roots.clear();
    ForestAdjacency adj(f);
    for (VertexId v = 0; v < n; ++v) {
        if (!f.member[v]) continue;
        VertexId rep = uf.find(v);
        if (chosen[rep] != static_cast<std::int64_t>(v)) continue;
        out.parent[v] = Forest::kRoot;
        out.roots.push_back(v);
        std::deque<VertexId> queue{v};
        while (!queue.empty()) {
            VertexId cur = queue.front();
            queue.pop_front();
            for (const VertexId* it = adj.begin_of(cur); it != adj.end_of(cur); ++it) {
                if (out.parent[*it] != Forest::kNotMember) continue;
                out.parent[*it] = cur;
                queue.push_back(*it);
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

Forest scale_up(const Forest& h, const Coord& w_shift) {
    if (!h.oriented()) throw std::invalid_argument("scale_up: forest must be oriented");
    if (w_shift.size() != static_cast<std::size_t>(h.spec.d))
        throw std::invalid_argument("scale_up: shift arity mismatch");
    for (int b : w_shift)
        if (b != 0 && b != 1)
            throw std::invalid_argument("scale_up: shift must lie in {0,1}^d");

    std::vector<int> big_sides(h.spec.sides);
    for (int& s : big_sides) s *= 2;
    LatticeSpec big(h.spec.d, big_sides, h.spec.topology);

    Forest out;
    out.spec = big;
    out.member.assign(big.vertex_count(), 0);
    out.parent.assign(big.vertex_count(), Forest::kNotMember);

    auto scaled = [&](VertexId v) {
        Coord c = h.spec.unflatten(v);
        for (int i = 0; i < h.spec.d; ++i) {
            auto ui = static_cast<std::size_t>(i);
            c[ui] = 2 * c[ui] + w_shift[ui];
        }
        return big.flatten(c);
    };
    auto midpoint = [&](VertexId a, VertexId b) {
        Coord ca = h.spec.unflatten(a), cb = h.spec.unflatten(b);
        for (int i = 0; i < h.spec.d; ++i) {
            auto ui = static_cast<std::size_t>(i);
            ca[ui] = ca[ui] + cb[ui] + w_shift[ui];
        }
        return big.flatten(ca);
    };

    for (VertexId v = 0; v < h.member.size(); ++v) {
        if (!h.member[v]) continue;
        VertexId sv = scaled(v);
        out.member[sv] = 1;
        if (h.parent[v] == Forest::kRoot) {
            out.parent[sv] = Forest::kRoot;
            out.roots.push_back(sv);
        } else {
            VertexId p = static_cast<VertexId>(h.parent[v]);
            VertexId mid = midpoint(v, p);
            out.member[mid] = 1;
            out.parent[sv] = mid;
            out.parent[mid] = scaled(p);
            VertexId sp = scaled(p);
            out.edges.push_back(Edge{std::min(sv, mid), std::max(sv, mid)});
            out.edges.push_back(Edge{std::min(mid, sp), std::max(mid, sp)});
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

Forest translate(const Forest& f, const Coord& offset, const LatticeSpec& target) {
    if (offset.size() != static_cast<std::size_t>(f.spec.d) || target.d != f.spec.d)
        throw std::invalid_argument("translate: arity mismatch");
    auto moved = [&](VertexId v) {
        Coord c = f.spec.unflatten(v);
        for (int i = 0; i < f.spec.d; ++i) c[static_cast<std::size_t>(i)] += offset[static_cast<std::size_t>(i)];
        return target.flatten(c);  // throws if out of the target box
    };

    Forest out;
    out.spec = target;
    out.member.assign(target.vertex_count(), 0);
    if (f.oriented()) out.parent.assign(target.vertex_count(), Forest::kNotMember);
    for (VertexId v = 0; v < f.member.size(); ++v) {
        if (!f.member[v]) continue;
        VertexId nv = moved(v);
        out.member[nv] = 1;
        if (f.oriented()) {
            if (f.parent[v] == Forest::kRoot) out.parent[nv] = Forest::kRoot;
            else out.parent[nv] = moved(static_cast<VertexId>(f.parent[v]));
        }
    }
    for (const Edge& e : f.edges) {
        VertexId a = moved(e.a), b = moved(e.b);
        out.edges.push_back(Edge{std::min(a, b), std::max(a, b)});
    }
    for (VertexId r : f.roots) out.roots.push_back(moved(r));
    std::sort(out.edges.begin(), out.edges.end());
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

ForestStats stats(const Forest& f) {
    if (!f.oriented()) throw std::invalid_argument("stats: forest must be oriented");
    const std::size_t n = f.spec.vertex_count();
    ForestStats st;
    st.desc.assign(n, -1);
    st.height.assign(n, -1);

    std::vector<std::uint32_t> pending(n, 0);
    for (VertexId v = 0; v < n; ++v)
        if (f.member[v] && f.parent[v] >= 0) ++pending[static_cast<std::size_t>(f.parent[v])];

    std::deque<VertexId> queue;
    for (VertexId v = 0; v < n; ++v) {
        if (!f.member[v]) continue;
        st.desc[v] = 1;
        st.height[v] = 0;
        if (pending[v] == 0) queue.push_back(v);
    }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        if (f.parent[v] < 0) continue;
        auto p = static_cast<std::size_t>(f.parent[v]);
        st.desc[p] += st.desc[v];
        st.height[p] = std::max(st.height[p], st.height[v] + 1);
        if (--pending[p] == 0) queue.push_back(static_cast<VertexId>(p));
    }
    return st;
}

PropertyIIReport verify_property_ii(const Forest& f) {
    PropertyIIReport rep;
    for (const Edge& e : lattice_edges(f.spec)) {
        if (!f.member[e.a] || !f.member[e.b]) continue;
        if (!f.has_edge(e.a, e.b)) {
            rep.ok = false;
            rep.violations.push_back(e);
        }
    }
    return rep;
}

}  // namespace escapeflow
