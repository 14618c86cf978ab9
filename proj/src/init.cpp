#include "escapeflow/init.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "escapeflow/rng.hpp"

namespace escapeflow {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace

InitSpec init_spec_from_name(const std::string& name) {
    std::vector<std::string> parts = split(name, ':');
    InitSpec spec;
    const std::string& kind = parts[0];
    if (kind == "descendants") {
        if (parts.size() != 1) throw std::invalid_argument("descendants takes no parameters");
        spec.kind = InitSpec::Kind::Descendants;
    } else if (kind == "uniform") {
        if (parts.size() != 3) throw std::invalid_argument("expected uniform:a:b");
        spec.kind = InitSpec::Kind::Uniform;
        spec.a = std::stod(parts[1]);
        spec.b = std::stod(parts[2]);
    } else if (kind == "exponential") {
        if (parts.size() != 2) throw std::invalid_argument("expected exponential:rate");
        spec.kind = InitSpec::Kind::Exponential;
        spec.rate = std::stod(parts[1]);
    } else if (kind == "integer") {
        if (parts.size() != 3) throw std::invalid_argument("expected integer:lo:hi");
        spec.kind = InitSpec::Kind::IidInteger;
        spec.lo = std::stoll(parts[1]);
        spec.hi = std::stoll(parts[2]);
    } else if (kind == "file") {
        if (parts.size() < 2) throw std::invalid_argument("expected file:path");
        spec.kind = InitSpec::Kind::File;
        spec.path = name.substr(5);
    } else {
        throw std::invalid_argument("unknown init kind: " + kind);
    }
    return spec;
}

std::string init_spec_name(const InitSpec& spec) {
    std::ostringstream os;
    switch (spec.kind) {
        case InitSpec::Kind::Descendants: return "descendants";
        case InitSpec::Kind::Uniform:
            os << "uniform:" << spec.a << ":" << spec.b;
            return os.str();
        case InitSpec::Kind::Exponential:
            os << "exponential:" << spec.rate;
            return os.str();
        case InitSpec::Kind::IidInteger:
            os << "integer:" << spec.lo << ":" << spec.hi;
            return os.str();
        case InitSpec::Kind::File: return "file:" + spec.path;
    }
    throw std::logic_error("unknown init kind");
}

ResourceField<Int> descendant_init(const Forest& f, const LatticeSpec& spec) {
    if (!f.oriented()) throw std::invalid_argument("descendant_init: forest must be oriented");
    ForestStats st = stats(f);
    ResourceField<Int> field(spec);
    for (VertexId v = 0; v < f.member.size(); ++v) {
        if (!f.member[v]) continue;
        Coord c = f.spec.unflatten(v);
        field.values[spec.flatten(c)] = st.desc[v];  // throws if outside spec
    }
    field.rebuild_support();
    return field;
}

ResourceField<double> iid_uniform_init(const LatticeSpec& spec, double a, double b,
                                       std::uint64_t seed) {
    if (!(a >= 0.0) || !(b > a) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("uniform init requires 0 <= a < b, finite");
    ResourceField<double> field(spec);
    for (VertexId v = 0; v < field.values.size(); ++v) {
        rng::Sequence seq(rng::stream_key(seed, rng::Stream::Init, v));
        field.values[v] = a + seq.next_u01() * (b - a);
    }
    field.rebuild_support();
    return field;
}

ResourceField<double> iid_exponential_init(const LatticeSpec& spec, double rate,
                                           std::uint64_t seed) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("exponential init requires rate > 0");
    ResourceField<double> field(spec);
    for (VertexId v = 0; v < field.values.size(); ++v) {
        rng::Sequence seq(rng::stream_key(seed, rng::Stream::Init, v));
        field.values[v] = -std::log1p(-seq.next_u01()) / rate;
    }
    field.rebuild_support();
    return field;
}

ResourceField<Int> iid_integer_init(const LatticeSpec& spec, std::int64_t lo,
                                    std::int64_t hi, std::uint64_t seed) {
    if (lo < 0 || hi < lo)
        throw std::invalid_argument("integer init requires 0 <= lo <= hi");
    ResourceField<Int> field(spec);
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    for (VertexId v = 0; v < field.values.size(); ++v) {
        rng::Sequence seq(rng::stream_key(seed, rng::Stream::Init, v));
        field.values[v] = lo + static_cast<std::int64_t>(seq.next_below(span));
    }
    field.rebuild_support();
    return field;
}

template <Quantity Q>
ResourceField<Q> load_field_csv(std::istream& in, const LatticeSpec& spec) {
    ResourceField<Q> field(spec);
    std::vector<std::uint8_t> seen(spec.vertex_count(), 0);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells = split(line, ',');
        if (cells.size() != static_cast<std::size_t>(spec.d) + 1)
            throw std::invalid_argument("field csv line " + std::to_string(lineno) +
                                        ": expected d coordinates and a value");
        Coord x(static_cast<std::size_t>(spec.d));
        for (int i = 0; i < spec.d; ++i) x[static_cast<std::size_t>(i)] = std::stoi(cells[static_cast<std::size_t>(i)]);
        VertexId id = spec.flatten(x);  // domain error if out of lattice
        if (seen[id])
            throw std::invalid_argument("field csv line " + std::to_string(lineno) +
                                        ": duplicate vertex");
        seen[id] = 1;
        const std::string& val = cells.back();
        if constexpr (std::same_as<Q, Int>) {
            field.values[id] = parse_int_quantity(val);
        } else {
            field.values[id] = parse_float_quantity(val);
        }
    }
    field.rebuild_support();
    return field;
}

template ResourceField<Int> load_field_csv<Int>(std::istream&, const LatticeSpec&);
template ResourceField<double> load_field_csv<double>(std::istream&, const LatticeSpec&);

}  // namespace escapeflow
