#include "refcurve/io.hpp"

#include <stdexcept>

namespace refcurve {

Json to_json(const LaurentY& a) {
  Json j = Json::array();
  for (const auto& [k, c] : a.terms()) j.push_back(Json::array({k, c.get_str()}));
  return j;
}

Json to_json(const SeriesQ& s) {
  Json coeffs = Json::array();
  for (int k = s.offset(); k <= s.trunc(); ++k) coeffs.push_back(to_json(s.coeff(k)));
  return Json{{"offset", s.offset()}, {"trunc", s.trunc()}, {"coeffs", coeffs}};
}

Json to_json(const SeriesXQ& s) {
  Json rows = Json::array();
  for (int i = 0; i <= s.xord(); ++i) rows.push_back(to_json(s.x_coeff(i))["coeffs"]);
  return Json{{"xord", s.xord()}, {"qord", s.qord()}, {"rows", rows}};
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational number: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

LaurentY laurent_from_json(const Json& j) {
  std::vector<LaurentY::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw std::invalid_argument("LaurentY JSON: expected [k, c]");
    terms.emplace_back(t[0].get<int>(), parse_rational(t[1].get<std::string>()));
  }
  return LaurentY::from_terms(std::move(terms));
}

SeriesQ series_from_json(const Json& j) {
  std::vector<LaurentY> c;
  for (const auto& e : j.at("coeffs")) c.push_back(laurent_from_json(e));
  return SeriesQ(std::move(c), j.at("trunc").get<int>(), j.at("offset").get<int>());
}

SeriesXQ seriesxq_from_json(const Json& j) {
  SeriesXQ s(j.at("xord").get<int>(), j.at("qord").get<int>());
  const Json& rows = j.at("rows");
  for (int i = 0; i <= s.xord(); ++i)
    for (int k = 0; k <= s.qord(); ++k) s.at(i, k) = laurent_from_json(rows.at(i).at(k));
  return s;
}

}  // namespace refcurve
