#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "escapeflow/dynamics.hpp"
#include "escapeflow/field.hpp"
#include "escapeflow/forest.hpp"

namespace escapeflow {

using Json = nlohmann::ordered_json;

/// Stable 64-bit content hash, rendered as 16 hex digits.  Embedded in
/// every output file so a run directory is self-identifying.
std::string fnv1a64_hex(std::string_view data);

/// Forest as JSON: d, sides, roots, parents; parent pairs sorted by child
/// coordinates.
Json forest_to_json(const Forest& f);
Forest forest_from_json(const Json& j, Topology topology);

void write_trace_header(std::ostream& out, const std::string& digest);

template <Quantity Q>
void write_trace_row(std::ostream& out, const StepRecord<Q>& rec) {
    out << rec.step << ',' << quantity_to_string(rec.total) << ','
        << quantity_to_string(rec.sink) << ',' << rec.positive << ',' << rec.ties << '\n';
}

template <Quantity Q>
void write_trace_csv(std::ostream& out, const std::string& digest,
                     const std::vector<StepRecord<Q>>& trace) {
    write_trace_header(out, digest);
    for (const StepRecord<Q>& rec : trace) write_trace_row(out, rec);
}

/// Field as `x_1,...,x_d,value` rows over the support, ascending; absent
/// rows mean 0.  Readable back through load_field_csv.
template <Quantity Q>
void write_field_csv(std::ostream& out, const std::string& digest,
                     const ResourceField<Q>& field) {
    out << "# config " << digest << '\n';
    for (VertexId v : field.support) {
        Coord c = field.spec.unflatten(v);
        for (int x : c) out << x << ',';
        out << quantity_to_string(field.values[v]) << '\n';
    }
}

/// Plain-text PGM (P2) snapshot of a 2-D field; gray level is the value
/// scaled then clamped to [0,255].
template <Quantity Q>
void write_pgm(std::ostream& out, const std::string& digest,
               const ResourceField<Q>& field, double scale) {
    if (field.spec.d != 2) throw std::invalid_argument("pgm snapshots require d = 2");
    const int rows = field.spec.sides[0], cols = field.spec.sides[1];
    out << "P2\n# config " << digest << '\n' << cols << ' ' << rows << "\n255\n";
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            double v;
            if constexpr (std::same_as<Q, Int>) {
                v = field.values[field.spec.flatten({i, j})].convert_to<double>();
            } else {
                v = field.values[field.spec.flatten({i, j})];
            }
            long level = std::lround(std::floor(v * scale));
            if (level < 0) level = 0;
            if (level > 255) level = 255;
            out << level << (j + 1 == cols ? '\n' : ' ');
        }
    }
}

}  // namespace escapeflow
