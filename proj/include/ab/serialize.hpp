#ifndef AB_SERIALIZE_HPP
#define AB_SERIALIZE_HPP

#include "ab/extparam.hpp"
#include "ab/scattering.hpp"
#include "ab/spectral.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace ab {

using json = nlohmann::ordered_json;

/// 17 significant digits, lowercase scientific: lossless and byte-stable.
std::string format_double(double x);

/// Compact dump with every floating-point number written by format_double.
std::string dump(const json& j, int indent = 2);

/// {"kind": "U"|"B"|"PiTheta"|"Relation", "alpha": a, "data": [[re, im], ...]}.
/// Matrices are row-major; PiTheta lists Pi then Theta, Relation N1 then N2.
/// An infinite B sector has "inf" on its diagonal and zeros off it.
json to_json(const ExtensionSpec& s);
ExtensionSpec spec_from_json(const json& j);

/// A named extension ("friedrichs", "krein"), "@path" to a JSON file, or inline JSON.
/// `alpha` is used for named extensions and when the JSON omits it.
ExtensionSpec parse_extension(const std::string& arg, double alpha);

SpecKind parse_kind(const std::string& name);

json to_json(const Vec2& v);
json to_json(const SMatrixKernel& s);

/// {"bound_states": [...], "resonances": [...], "ac_spectrum": [0, "inf"]}.
json spectral_report(const std::vector<BoundState>& bs, const std::vector<Vec2>& resonances);

} // namespace ab

#endif
