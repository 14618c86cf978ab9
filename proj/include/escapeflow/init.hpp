#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "escapeflow/field.hpp"
#include "escapeflow/forest.hpp"
#include "escapeflow/quantity.hpp"

namespace escapeflow {

/// Initial-configuration kinds.  Parsed from "descendants",
/// "uniform:a:b", "exponential:rate", "integer:lo:hi", "file:path".
struct InitSpec {
    enum class Kind { Descendants, Uniform, Exponential, IidInteger, File };

    Kind kind = Kind::Descendants;
    double a = 0.0, b = 1.0;   // uniform bounds
    double rate = 1.0;         // exponential
    std::int64_t lo = 0, hi = 0;
    std::string path;

    bool needs_forest() const { return kind == Kind::Descendants; }
    bool float_valued() const {
        return kind == Kind::Uniform || kind == Kind::Exponential;
    }
};

InitSpec init_spec_from_name(const std::string& name);
std::string init_spec_name(const InitSpec& spec);

/// C_0(x) = number of descendants of x (including itself) on the forest,
/// 0 elsewhere.  Exact integers; sink starts at 0.
ResourceField<Int> descendant_init(const Forest& f, const LatticeSpec& spec);

/// Independent draws per vertex, keyed by (seed, vertex) so generation is
/// order-independent.  Distribution parameters with negative support are
/// rejected.
ResourceField<double> iid_uniform_init(const LatticeSpec& spec, double a, double b,
                                       std::uint64_t seed);
ResourceField<double> iid_exponential_init(const LatticeSpec& spec, double rate,
                                           std::uint64_t seed);
ResourceField<Int> iid_integer_init(const LatticeSpec& spec, std::int64_t lo,
                                    std::int64_t hi, std::uint64_t seed);

/// Read `x_1,...,x_d,value` rows; unlisted vertices default to 0.  Lines
/// starting with '#' are skipped.  Infinite, negative, or duplicate
/// entries are rejected.
template <Quantity Q>
ResourceField<Q> load_field_csv(std::istream& in, const LatticeSpec& spec);

}  // namespace escapeflow
