#pragma once

#include "momentflow/catalog.hpp"
#include "momentflow/flows.hpp"
#include "momentflow/hesselink.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

namespace momentflow::io {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Json to_json(const RationalVector& v);
Json to_json(const MomentValue& m);
Json to_json(const HesselinkLabel& label);
Json to_json(const MinNormCertificate& cert);
Json to_json(const StratumReport& r);
Json to_json(const JordanLabel& j);
Json to_json(const DerivationReport& d);
Json to_json(const CriticalBracketCheck& c);
Json weight_to_json(const WeightVector& w);
Json semistable_json();

Matrix matrix_from_json(const Json& j);
Vector vector_from_json(const Json& j);
/// Accepts "p/q" strings, integers, and ["p","q"] pairs.
Rational rational_from_json(const Json& j);
RationalVector rational_vector_from_json(const Json& j);

/// Vector file: {"family", "n", "coords"} or {"family": "TorusWeights", "weights", "coords"}.
RepVector rep_vector_from_json(const Json& j);
Json to_json(const RepVector& v);

/// Label document as emitted by to_json(HesselinkLabel); nullopt for a semistable marker.
std::optional<HesselinkLabel> label_from_json(const Json& j);

/// Reads `@path` as file contents, "-" as standard input, anything else verbatim.
std::string read_argument(const std::string& value);

/// key=value lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> parse_config(const std::string& text);

/// %.17g formatting.
std::string format_double(double x);

}  // namespace momentflow::io
