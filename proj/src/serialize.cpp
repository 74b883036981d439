#include "recurbound/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace recurbound {

json to_json(const Rational& x) { return {{"exact", to_string(x)}, {"decimal", to_decimal(x)}}; }

json to_json(const ComplexRational& z) { return {{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

json to_json(const BinFloat& x) {
  return {{"mantissa", x.mantissa().get_str()},
          {"exponent", x.exponent()},
          {"precision", x.precision()},
          {"value", to_json(x.to_rational())}};
}

json to_json(const Ball& b) {
  return {{"mid", {{"re", to_json(b.mid().re.to_rational())}, {"im", to_json(b.mid().im.to_rational())}}},
          {"rad", to_json(b.rad())}};
}

json to_json(const RecOperator& rec) {
  json polys = json::array();
  for (const auto& p : rec.b) {
    json coeffs = json::array();
    for (const auto& c : p) coeffs.push_back(c.is_real() ? json(to_string(c.re)) : json{{"re", to_string(c.re)}, {"im", to_string(c.im)}});
    polys.push_back(std::move(coeffs));
  }
  return {{"order", rec.order()}, {"b", std::move(polys)}};
}

json to_json(const MajorantParams& mp) {
  json j = {{"alpha", to_json(mp.alpha)}, {"c", to_json(mp.c)}, {"M", to_json(mp.M)}, {"m", mp.m}};
  j["rho_lower"] = mp.rho_lower ? to_json(*mp.rho_lower) : json(nullptr);
  return j;
}

json to_json(const DfsumResult& res, bool include_trace) {
  json j = {{"enclosure", to_json(res.enclosure)},
            {"eta_bar", to_json(res.eta_bar)},
            {"Delta_N", to_json(res.Delta_N)},
            {"partial_sum_rad", to_json(res.partial_sum_rad)},
            {"u0_hat", to_json(res.u0_hat)},
            {"delta0_hat", to_json(res.delta0_hat)},
            {"sigma", to_json(res.sigma)},
            {"A", to_json(res.A)},
            {"majorant", to_json(res.params)},
            {"recurrence", to_json(res.rec)}};
  json g = json::array();
  for (const auto& x : res.ghat_lower) g.push_back(to_json(x));
  j["ghat_lower"] = std::move(g);
  if (include_trace) {
    json t = json::array();
    for (const auto& x : res.eta_trace) t.push_back(to_json(x));
    j["eta_trace"] = std::move(t);
  }
  return j;
}

json to_json(const SimulationReport& report) {
  json params = json::object();
  for (const auto& [key, value] : report.parameters) {
    params[key] = std::holds_alternative<Rational>(value) ? to_json(std::get<Rational>(value))
                                                         : json(std::get<std::string>(value));
  }
  json records = json::array();
  for (const auto& r : report.records) {
    json rec = {{"index", r.index},
                {"computed", to_json(r.computed)},
                {"exact", to_json(r.exact)},
                {"error", to_json(r.error())},
                {"bound", to_json(r.bound)},
                {"ok", r.ok()}};
    const auto q = r.ratio();
    rec["ratio"] = q ? to_json(*q) : json(nullptr);
    if (r.comparison) rec["comparison"] = to_json(*r.comparison);
    records.push_back(std::move(rec));
  }
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"name", report.name},
          {"parameters", std::move(params)},
          {"summary", {{"all_ok", report.all_ok()}, {"passed", report.passed()}, {"max_ratio", to_json(report.max_ratio())}}},
          {"checks", std::move(checks)},
          {"records", std::move(records)}};
}

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_number_float()) {
    Rational r;
    mpq_set_d(r.get_mpq_t(), j.get<double>());
    return r;
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected a number or rational string, got " + j.dump());
}

}  // namespace

ComplexRational complex_from_json(const json& j) {
  if (j.is_object()) {
    return {j.contains("re") ? rational_from_json(j.at("re")) : Rational(0),
            j.contains("im") ? rational_from_json(j.at("im")) : Rational(0)};
  }
  return rational_from_json(j);
}

DiffOperator operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("polys")) throw std::invalid_argument("operator must be an object with \"polys\"");
  const json& polys = j.at("polys");
  if (!polys.is_array()) throw std::invalid_argument("\"polys\" must be an array");
  std::vector<Poly> ps;
  for (const auto& p : polys) {
    if (!p.is_array()) throw std::invalid_argument("each polynomial must be an array of coefficients");
    Poly coeffs;
    for (const auto& c : p) coeffs.push_back(complex_from_json(c));
    ps.push_back(std::move(coeffs));
  }
  if (j.contains("order") && j.at("order").get<long>() + 1 != static_cast<long>(ps.size()))
    throw std::invalid_argument("\"order\" does not match the number of polynomials");
  return DiffOperator(std::move(ps));
}

DiffOperator load_operator_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open operator file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed operator file " + path.string() + ": " + e.what());
  }
  return operator_from_json(j);
}

}  // namespace recurbound
