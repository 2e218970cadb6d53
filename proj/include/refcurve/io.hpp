// JSON forms: LaurentY as [[k, "c"], ...] with k in y^{1/2}-units,
// SeriesQ as {"offset", "trunc", "coeffs"}.
#pragma once

#include <json.hpp>

#include "refcurve/series.hpp"

namespace refcurve {

using Json = nlohmann::ordered_json;

Json to_json(const LaurentY& a);
Json to_json(const SeriesQ& s);
Json to_json(const SeriesXQ& s);
LaurentY laurent_from_json(const Json& j);
SeriesQ series_from_json(const Json& j);
SeriesXQ seriesxq_from_json(const Json& j);

/// Parses "p/q" or an integer.
Rational parse_rational(const std::string& s);

}  // namespace refcurve
