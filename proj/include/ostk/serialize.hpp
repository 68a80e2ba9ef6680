#pragma once

#include <string>

#include <json.hpp>

#include "ostk/maps.hpp"
#include "ostk/quotient.hpp"

namespace ostk {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "ostk-json/1";

/// Matrices are row-major nested arrays of [re, im] pairs.
Json to_json(const CMatrix& m);
Json to_json(const CVector& v);
Json to_json(const RVector& v);
CMatrix matrix_from_json(const Json& j);
CVector cvector_from_json(const Json& j);
RVector rvector_from_json(const Json& j);

/// Systems serialize their construction recursively: concrete data for
/// realized systems, parents plus parameters for derived kinds.
Json to_json(const OperatorSystem& s);
SystemPtr system_from_json(const Json& j);

/// {level, coeffs} for every kind, {level, realized} accepted for realized systems.
Json to_json(const LevelElement& u);
LevelElement element_from_json(const Json& j, const SystemPtr& s);

Json to_json(const LinearMap& phi);
/// {source, target, images} with coefficient images, or image_matrices for a realized target.
LinearMap map_from_json(const Json& j);

Json to_json(const Subspace& j);
Subspace subspace_from_json(const Json& j);

Json to_json(const Certificate& c);
Json to_json(const ConeVerdict& v);

/// Parses text, reporting malformed input as InputError with line and column.
Json parse_json(const std::string& text, const std::string& source = "input");
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
std::string dump(const Json& j);

}  // namespace ostk
