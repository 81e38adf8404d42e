#include "widthlab/json_io.hpp"

#include <algorithm>

namespace widthlab {

namespace {

const json& require_field(const json& j, const std::string& key,
                          const std::string& path) {
  if (!j.contains(key)) {
    throw validation_error(path + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw validation_error(path + ": expected a number");
  return j.get<double>();
}

Eigen::VectorXd as_vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw validation_error(path + ": expected a non-empty array of numbers");
  }
  Eigen::VectorXd v(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    v[static_cast<Eigen::Index>(k)] =
        as_number(j[k], path + "[" + std::to_string(k) + "]");
  }
  return v;
}

Eigen::MatrixXd as_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw validation_error(path + ": expected an array of rows");
  }
  const std::size_t rows = j.size();
  Eigen::MatrixXd m;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = as_vector(j[r], path + "[" + std::to_string(r) + "]");
    if (r == 0) {
      m.resize(rows, row.size());
    } else if (row.size() != m.cols()) {
      throw validation_error(path + ": ragged matrix rows");
    }
    m.row(static_cast<Eigen::Index>(r)) = row;
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out.push_back(vector_to_json(m.row(r).transpose()));
  }
  return out;
}

}  // namespace

void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const std::string& path) {
  if (!j.is_object()) throw validation_error(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw validation_error(path + ": unknown field \"" + key + "\"");
    }
  }
}

SupportBody parse_body(const json& j, const std::string& path) {
  const std::string type =
      require_field(j, "type", path).get<std::string>();
  if (type == "ball") {
    require_keys(j, {"type", "center", "radius"}, path);
    return SupportBody::ball(as_vector(require_field(j, "center", path),
                                       path + ".center"),
                             as_number(require_field(j, "radius", path),
                                       path + ".radius"));
  }
  if (type == "ellipsoid") {
    require_keys(j, {"type", "matrix", "center"}, path);
    return SupportBody::ellipsoid(
        as_matrix(require_field(j, "matrix", path), path + ".matrix"),
        as_vector(require_field(j, "center", path), path + ".center"));
  }
  if (type == "polytope") {
    require_keys(j, {"type", "vertices"}, path);
    const auto& verts = require_field(j, "vertices", path);
    if (!verts.is_array()) {
      throw validation_error(path + ".vertices: expected an array");
    }
    std::vector<Eigen::VectorXd> vertices;
    vertices.reserve(verts.size());
    for (std::size_t k = 0; k < verts.size(); ++k) {
      vertices.push_back(as_vector(
          verts[k], path + ".vertices[" + std::to_string(k) + "]"));
    }
    return SupportBody::polytope(std::move(vertices));
  }
  if (type == "linear_image") {
    require_keys(j, {"type", "matrix", "body"}, path);
    auto inner = parse_body(require_field(j, "body", path), path + ".body");
    return linear_image(inner, as_matrix(require_field(j, "matrix", path),
                                         path + ".matrix"));
  }
  throw validation_error(path + ": unknown body type \"" + type + "\"");
}

json body_to_json(const SupportBody& body) {
  return std::visit(
      [](const auto& b) -> json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return {{"type", "ball"},
                  {"center", vector_to_json(b.center)},
                  {"radius", b.radius}};
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          return {{"type", "ellipsoid"},
                  {"matrix", matrix_to_json(b.shape)},
                  {"center", vector_to_json(b.center)}};
        } else if constexpr (std::is_same_v<T, Polytope>) {
          json verts = json::array();
          for (const auto& v : b.vertices) verts.push_back(vector_to_json(v));
          return {{"type", "polytope"}, {"vertices", std::move(verts)}};
        } else {
          return {{"type", "linear_image"},
                  {"matrix", matrix_to_json(b.matrix)},
                  {"body", body_to_json(*b.inner)}};
        }
      },
      body.body());
}

OrliczFunction parse_phi(const json& j, const std::string& path) {
  const std::string type = require_field(j, "type", path).get<std::string>();
  if (type == "power") {
    require_keys(j, {"type", "p"}, path);
    return OrliczFunction::power(
        as_number(require_field(j, "p", path), path + ".p"));
  }
  if (type == "mixture") {
    require_keys(j, {"type", "weights", "exponents"}, path);
    const auto w = as_vector(require_field(j, "weights", path),
                             path + ".weights");
    const auto e = as_vector(require_field(j, "exponents", path),
                             path + ".exponents");
    return OrliczFunction::mixture(
        std::vector<double>(w.data(), w.data() + w.size()),
        std::vector<double>(e.data(), e.data() + e.size()));
  }
  throw validation_error(path + ": unknown phi type \"" + type + "\"");
}

json phi_to_json(const OrliczFunction& phi) {
  return std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, OrliczFunction::Power>) {
          return {{"type", "power"}, {"p", d.p}};
        } else {
          return {{"type", "mixture"},
                  {"weights", d.weights},
                  {"exponents", d.exponents}};
        }
      },
      phi.descriptor());
}

OrliczFunctionM parse_phi_m(const json& j, const std::string& path) {
  const std::string type = require_field(j, "type", path).get<std::string>();
  if (type != "sum") {
    throw validation_error(path + ": unknown phi_m type \"" + type + "\"");
  }
  require_keys(j, {"type", "parts", "coefficients"}, path);
  const auto& parts = require_field(j, "parts", path);
  if (!parts.is_array()) {
    throw validation_error(path + ".parts: expected an array");
  }
  std::vector<OrliczFunction> fns;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    fns.push_back(
        parse_phi(parts[k], path + ".parts[" + std::to_string(k) + "]"));
  }
  std::vector<double> coeffs(fns.size(), 1.0);
  if (j.contains("coefficients")) {
    const auto c = as_vector(j.at("coefficients"), path + ".coefficients");
    coeffs.assign(c.data(), c.data() + c.size());
  }
  return OrliczFunctionM(std::move(fns), std::move(coeffs));
}

json phi_m_to_json(const OrliczFunctionM& phi) {
  json parts = json::array();
  for (const auto& f : phi.parts()) parts.push_back(phi_to_json(f));
  return {{"type", "sum"},
          {"parts", std::move(parts)},
          {"coefficients", phi.coefficients()}};
}

json rule_descriptor(const QuadratureRule& rule) {
  json out = {{"dim", rule.dim()},
              {"kind", rule.kind_name()},
              {"resolution", rule.resolution()}};
  if (rule.seed()) {
    out["seed"] = *rule.seed();
  } else {
    out["seed"] = nullptr;
  }
  return out;
}

json check_report_to_json(const CheckReport& report) {
  return {{"name", report.name},
          {"lhs", report.lhs},
          {"rhs", report.rhs},
          {"slack", report.slack},
          {"pass", report.pass},
          {"equality_case", report.equality_case},
          {"probe_only", report.probe_only},
          {"inconclusive", report.inconclusive},
          {"inputs", report.inputs_digest}};
}

json campaign_report_to_json(const CampaignReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(check_report_to_json(c));
  json summary = json::object();
  for (const auto& [name, s] : report.summary) {
    summary[name] = {{"trials", s.trials},
                     {"passes", s.passes},
                     {"inconclusive", s.inconclusive},
                     {"equality_cases", s.equality_cases},
                     {"min_slack", s.min_slack}};
  }
  return {{"config",
           {{"seed", report.config.seed},
            {"dim", report.config.dim},
            {"trials", report.config.trials},
            {"resolution", report.config.resolution},
            {"p_values", report.config.p_values},
            {"tolerances",
             {{"ineq", report.config.tol.ineq},
              {"identity", report.config.tol.identity},
              {"equality", report.config.tol.equality},
              {"fd_rel", report.config.tol.fd_rel}}}}},
          {"checks", std::move(checks)},
          {"summary", std::move(summary)},
          {"errors", report.errors},
          {"all_asserted_passed", report.all_asserted_passed}};
}

std::string campaign_report_to_csv(const CampaignReport& report) {
  std::string out =
      "name,lhs,rhs,slack,pass,equality_case,probe_only,inconclusive,inputs\n";
  for (const auto& c : report.checks) {
    out += c.name + "," + json(c.lhs).dump() + "," + json(c.rhs).dump() + "," +
           json(c.slack).dump() + "," + (c.pass ? "1" : "0") + "," +
           (c.equality_case ? "1" : "0") + "," + (c.probe_only ? "1" : "0") +
           "," + (c.inconclusive ? "1" : "0") + ",\"" + c.inputs_digest +
           "\"\n";
  }
  return out;
}

}  // namespace widthlab
