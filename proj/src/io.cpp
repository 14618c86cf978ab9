#include "escapeflow/io.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace escapeflow {

std::string fnv1a64_hex(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

Json forest_to_json(const Forest& f) {
    Json j;
    j["d"] = f.spec.d;
    j["sides"] = f.spec.sides;
    Json roots = Json::array();
    for (VertexId r : f.roots) roots.push_back(f.spec.unflatten(r));
    j["roots"] = std::move(roots);
    Json parents = Json::array();
    if (f.oriented()) {
        // ascending id order == ascending lexicographic child order
        for (VertexId v = 0; v < f.member.size(); ++v) {
            if (!f.member[v] || f.parent[v] < 0) continue;
            parents.push_back(Json::array(
                {f.spec.unflatten(v), f.spec.unflatten(static_cast<VertexId>(f.parent[v]))}));
        }
    }
    j["parents"] = std::move(parents);
    return j;
}

Forest forest_from_json(const Json& j, Topology topology) {
    LatticeSpec spec(j.at("d").get<int>(), j.at("sides").get<std::vector<int>>(), topology);
    Forest f;
    f.spec = spec;
    f.member.assign(spec.vertex_count(), 0);
    f.parent.assign(spec.vertex_count(), Forest::kNotMember);
    for (const Json& r : j.at("roots")) {
        VertexId v = spec.flatten(r.get<Coord>());
        f.member[v] = 1;
        f.parent[v] = Forest::kRoot;
        f.roots.push_back(v);
    }
    for (const Json& pair : j.at("parents")) {
        VertexId child = spec.flatten(pair.at(0).get<Coord>());
        VertexId parent = spec.flatten(pair.at(1).get<Coord>());
        f.member[child] = 1;
        f.member[parent] = 1;
        f.parent[child] = parent;
        f.edges.push_back(Edge{std::min(child, parent), std::max(child, parent)});
    }
    for (VertexId v = 0; v < f.member.size(); ++v)
        if (f.member[v] && f.parent[v] == Forest::kNotMember)
            throw std::invalid_argument("forest json: member without parent or root mark");
    std::sort(f.edges.begin(), f.edges.end());
    std::sort(f.roots.begin(), f.roots.end());
    return f;
}

void write_trace_header(std::ostream& out, const std::string& digest) {
    out << "# config " << digest << '\n';
    out << "step,total,sink,positive,ties\n";
}

}  // namespace escapeflow
