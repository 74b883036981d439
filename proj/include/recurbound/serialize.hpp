#ifndef RECURBOUND_SERIALIZE_HPP
#define RECURBOUND_SERIALIZE_HPP

// JSON encodings. Every number is written as {"exact": "p/q", "decimal": "..."};
// the decimal field is for reading only and is never parsed back.

#include <filesystem>

#include "json.hpp"
#include "recurbound/ball.hpp"
#include "recurbound/casestudies.hpp"
#include "recurbound/dfinite.hpp"

namespace recurbound {

using nlohmann::json;

json to_json(const Rational& x);
json to_json(const ComplexRational& z);
json to_json(const BinFloat& x);
json to_json(const Ball& b);
json to_json(const RecOperator& rec);
json to_json(const MajorantParams& mp);
json to_json(const DfsumResult& res, bool include_trace = false);
json to_json(const SimulationReport& report);

/// Scalar from a JSON number, a rational string, or {"re": .., "im": ..}.
ComplexRational complex_from_json(const json& j);

/// {"order": r, "polys": [[...], ...]}; polys[i] holds p_i in ascending powers.
DiffOperator operator_from_json(const json& j);
DiffOperator load_operator_file(const std::filesystem::path& path);

}  // namespace recurbound

#endif  // RECURBOUND_SERIALIZE_HPP
