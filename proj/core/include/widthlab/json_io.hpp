#pragma once

#include <nlohmann/json.hpp>

#include "widthlab/geometry.hpp"
#include "widthlab/orlicz.hpp"
#include "widthlab/sphere_quad.hpp"
#include "widthlab/verify.hpp"
#include "widthlab/width_addition.hpp"

namespace widthlab {

using json = nlohmann::json;

// Parsing is strict: unknown keys raise validation_error naming the
// offending path.

/// {"type":"ball"|"ellipsoid"|"polytope"|"linear_image", ...}
SupportBody parse_body(const json& j, const std::string& path = "body");
json body_to_json(const SupportBody& body);

/// {"type":"power","p":2.0} | {"type":"mixture","weights":[...],"exponents":[...]}
OrliczFunction parse_phi(const json& j, const std::string& path = "phi");
json phi_to_json(const OrliczFunction& phi);

/// {"type":"sum","parts":[phi,...],"coefficients":[...]}
OrliczFunctionM parse_phi_m(const json& j, const std::string& path = "phi");
json phi_m_to_json(const OrliczFunctionM& phi);

/// {"dim":n,"kind":"...","resolution":r,"seed":s|null}
json rule_descriptor(const QuadratureRule& rule);

json check_report_to_json(const CheckReport& report);
json campaign_report_to_json(const CampaignReport& report);

/// Flat CSV rendering of the campaign's check list.
std::string campaign_report_to_csv(const CampaignReport& report);

/// Rejects any key of `j` outside `allowed`.
void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const std::string& path);

}  // namespace widthlab
