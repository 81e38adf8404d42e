// widthlab: width integrals, L_p/Orlicz width additions, and property
// verification of the associated inequalities, from the command line.
//
// Subcommands:
//   compute  evaluate a scalar functional (A_i, A_i_KL, A_pi, A_phi_i)
//   add      sample the half-width profile of a width addition
//   verify   run selected verification checks over a seeded ensemble
//   suite    run the full verification campaign
//
// Exit codes: 0 ok, 2 validation error, 3 numeric error, 4 verification
// failure.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "widthlab/functionals.hpp"
#include "widthlab/json_io.hpp"
#include "widthlab/verify.hpp"

namespace {

using widthlab::json;

constexpr const char* kVersion = "widthlab 1.0.0";

struct RuleOptions {
  int dim = 2;
  int resolution = 0;  // 0 -> per-dim default
  std::uint64_t seed = 42;
};

widthlab::QuadratureRule make_rule(const RuleOptions& opt) {
  const int res =
      opt.resolution > 0 ? opt.resolution : widthlab::default_resolution(opt.dim);
  return widthlab::build_rule(opt.dim, res,
                              opt.dim >= 4
                                  ? std::optional<std::uint64_t>{opt.seed}
                                  : std::nullopt);
}

// Inline JSON if the text parses; otherwise treat it as a file path.
json load_json_arg(const std::string& text, const std::string& what) {
  const auto parsed = json::parse(text, nullptr, false);
  if (!parsed.is_discarded()) return parsed;
  std::ifstream in(text);
  if (!in) {
    throw widthlab::validation_error(what + ": neither valid JSON nor a readable file: " + text);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto from_file = json::parse(buf.str(), nullptr, false);
  if (from_file.is_discarded()) {
    throw widthlab::validation_error(what + ": malformed JSON in file " + text);
  }
  return from_file;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw widthlab::validation_error("cannot open output file " + tmp);
    }
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << "\n";
  } else {
    write_atomic(out_path, content);
  }
}

widthlab::WidthProfile profile_arg(const std::string& text,
                                   const std::string& what, int dim) {
  auto body = widthlab::parse_body(load_json_arg(text, what), what);
  if (body.dim() != dim) {
    throw widthlab::validation_error(what + ": body dimension " +
                                     std::to_string(body.dim()) +
                                     " does not match --dim " +
                                     std::to_string(dim));
  }
  return widthlab::WidthProfile::from_body(std::move(body));
}

int run_compute(const RuleOptions& rule_opt, const std::string& functional,
                const std::string& body_text, const std::string& k_text,
                const std::string& l_text, const std::string& phi_text, int i,
                double p, const std::string& out_path) {
  const auto rule = make_rule(rule_opt);
  const int n = rule_opt.dim;
  if (i < 0 || i >= n) {
    throw widthlab::validation_error("index out of range 0 <= i < n");
  }

  json result = {{"functional", functional},
                 {"i", i},
                 {"rule", widthlab::rule_descriptor(rule)},
                 {"params", json::object()},
                 {"version", kVersion}};
  double value = 0.0;
  if (functional == "A_i") {
    const std::string text = body_text.empty() ? k_text : body_text;
    if (text.empty()) {
      throw widthlab::validation_error("compute A_i: need --body (or --K)");
    }
    value = widthlab::width_integral(profile_arg(text, "body", n), i, rule);
  } else if (functional == "A_i_KL") {
    if (k_text.empty() || l_text.empty()) {
      throw widthlab::validation_error("compute A_i_KL: need --K and --L");
    }
    value = widthlab::ith_mixed_width(profile_arg(k_text, "K", n),
                                      profile_arg(l_text, "L", n), i, rule);
  } else if (functional == "A_pi") {
    if (k_text.empty() || l_text.empty()) {
      throw widthlab::validation_error("compute A_pi: need --K and --L");
    }
    value = widthlab::lp_mixed_width(profile_arg(k_text, "K", n),
                                     profile_arg(l_text, "L", n), p, i, rule);
    result["params"]["p"] = p;
  } else if (functional == "A_phi_i") {
    if (k_text.empty() || l_text.empty() || phi_text.empty()) {
      throw widthlab::validation_error(
          "compute A_phi_i: need --K, --L and --phi");
    }
    const auto phi =
        widthlab::parse_phi(load_json_arg(phi_text, "phi"), "phi");
    value = widthlab::orlicz_mixed_width(phi, profile_arg(k_text, "K", n),
                                         profile_arg(l_text, "L", n), i, rule);
    result["params"]["phi"] = widthlab::phi_to_json(phi);
  } else {
    throw widthlab::validation_error("unknown functional \"" + functional +
                                     "\" (A_i | A_i_KL | A_pi | A_phi_i)");
  }
  result["value"] = value;
  emit(result.dump(2), out_path);
  return 0;
}

int run_add(const RuleOptions& rule_opt, const std::string& spec_text,
            const std::string& out_path) {
  const auto rule = make_rule(rule_opt);
  const int n = rule_opt.dim;
  const json spec = load_json_arg(spec_text, "addition spec");
  const std::string op =
      spec.contains("op") ? spec.at("op").get<std::string>() : "";

  widthlab::WidthProfile profile = [&]() -> widthlab::WidthProfile {
    if (op == "orlicz_sum") {
      widthlab::require_keys(spec, {"op", "phi", "bodies"}, "spec");
      const auto phi = widthlab::parse_phi_m(spec.at("phi"), "spec.phi");
      std::vector<widthlab::WidthProfile> operands;
      for (std::size_t k = 0; k < spec.at("bodies").size(); ++k) {
        operands.push_back(profile_arg(spec.at("bodies")[k].dump(),
                                       "spec.bodies[" + std::to_string(k) + "]",
                                       n));
      }
      return widthlab::orlicz_width_sum(phi, operands);
    }
    if (op == "combination") {
      widthlab::require_keys(
          spec, {"op", "phi1", "phi2", "K", "L", "alpha", "beta"}, "spec");
      return widthlab::orlicz_linear_combination(
          widthlab::parse_phi(spec.at("phi1"), "spec.phi1"),
          widthlab::parse_phi(spec.at("phi2"), "spec.phi2"),
          profile_arg(spec.at("K").dump(), "spec.K", n),
          profile_arg(spec.at("L").dump(), "spec.L", n),
          spec.at("alpha").get<double>(), spec.at("beta").get<double>());
    }
    if (op == "lp_sum") {
      widthlab::require_keys(spec, {"op", "p", "K", "L"}, "spec");
      return widthlab::lp_width_sum(
          spec.at("p").get<double>(),
          profile_arg(spec.at("K").dump(), "spec.K", n),
          profile_arg(spec.at("L").dump(), "spec.L", n));
    }
    throw widthlab::validation_error(
        "spec.op: expected orlicz_sum | combination | lp_sum");
  }();

  json nodes = json::array();
  json values = json::array();
  for (const auto& u : rule.nodes()) {
    json coords = json::array();
    for (Eigen::Index j = 0; j < u.coords().size(); ++j) {
      coords.push_back(u.coords()[j]);
    }
    nodes.push_back(std::move(coords));
    values.push_back(profile(u));
  }

  // Residual of the implicit equation where one exists; exact zero for the
  // closed-form L_p sum.
  double residual_max = 0.0;
  if (op == "orlicz_sum" || op == "combination") {
    const auto phi1 = op == "combination"
                          ? widthlab::parse_phi(spec.at("phi1"), "spec.phi1")
                          : widthlab::OrliczFunction::power(1.0);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const auto& u = rule.nodes()[k];
      const double lambda = values[k].get<double>();
      double total = 0.0;
      if (op == "orlicz_sum") {
        const auto phi = widthlab::parse_phi_m(spec.at("phi"), "spec.phi");
        for (std::size_t j = 0; j < spec.at("bodies").size(); ++j) {
          auto bj = profile_arg(spec.at("bodies")[j].dump(), "spec.bodies", n);
          total += phi.coefficients()[j] * phi.parts()[j].eval(bj(u) / lambda);
        }
      } else {
        const double alpha = spec.at("alpha").get<double>();
        const double beta = spec.at("beta").get<double>();
        if (beta == 0.0 && alpha == 1.0) {
          total = 1.0;  // short-circuit branch, identity by construction
        } else {
          total = alpha * phi1.eval(profile_arg(spec.at("K").dump(), "spec.K",
                                                n)(u) / lambda) +
                  beta * widthlab::parse_phi(spec.at("phi2"), "spec.phi2")
                             .eval(profile_arg(spec.at("L").dump(), "spec.L",
                                               n)(u) / lambda);
        }
      }
      residual_max = std::max(residual_max, std::abs(total - 1.0));
    }
  }

  const json out = {{"rule", widthlab::rule_descriptor(rule)},
                    {"nodes", std::move(nodes)},
                    {"values", std::move(values)},
                    {"residual_max", residual_max},
                    {"version", kVersion}};
  emit(out.dump(2), out_path);
  return 0;
}

int run_campaign_cmd(const widthlab::EnsembleConfig& config, int threads,
                     const std::string& format, const std::string& out_path) {
  const auto report = widthlab::run_campaign(config, threads);
  json j = widthlab::campaign_report_to_json(report);
  j["version"] = kVersion;
  if (format == "csv") {
    emit(widthlab::campaign_report_to_csv(report), out_path);
  } else {
    emit(j.dump(2), out_path);
  }
  return report.all_asserted_passed ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"width integrals of convex bodies: compute, add, verify"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RuleOptions rule_opt;
  std::string out_path;
  std::string format = "json";
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  auto add_rule_flags = [&](CLI::App* cmd) {
    cmd->add_option("--dim", rule_opt.dim, "ambient dimension n >= 2");
    cmd->add_option("--resolution", rule_opt.resolution,
                    "quadrature resolution (0 = per-dim default)");
    cmd->add_option("--seed", rule_opt.seed, "seed for all randomness");
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "json | csv");
    cmd->add_option("--threads", threads, "worker threads");
  };

  // compute
  auto* compute = app.add_subcommand("compute", "evaluate a functional");
  std::string functional = "A_i";
  std::string body_text, k_text, l_text, phi_text;
  int i = 0;
  double p = 1.0;
  compute->add_option("--functional", functional, "A_i | A_i_KL | A_pi | A_phi_i");
  compute->add_option("--body", body_text, "body JSON or path");
  compute->add_option("--K", k_text, "body K JSON or path");
  compute->add_option("--L", l_text, "body L JSON or path");
  compute->add_option("--phi", phi_text, "phi JSON or path");
  compute->add_option("--i", i, "functional index, 0 <= i < n");
  compute->add_option("--p", p, "L_p exponent, p >= 1");
  add_rule_flags(compute);

  // add
  auto* add = app.add_subcommand("add", "sample a width addition");
  std::string spec_text;
  add->add_option("--spec", spec_text, "addition descriptor JSON or path")
      ->required();
  add_rule_flags(add);

  // verify / suite
  widthlab::EnsembleConfig config;
  auto add_campaign_flags = [&](CLI::App* cmd) {
    cmd->add_option("--dim", config.dim, "ambient dimension");
    cmd->add_option("--trials", config.trials, "ensemble size");
    cmd->add_option("--seed", config.seed, "campaign seed");
    cmd->add_option("--resolution", config.resolution,
                    "campaign quadrature resolution (0 = default)");
    cmd->add_option("--tol-ineq", config.tol.ineq, "inequality slack floor");
    cmd->add_option("--tol-id", config.tol.identity, "identity tolerance");
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "json | csv");
    cmd->add_option("--threads", threads, "worker threads");
  };
  auto* verify = app.add_subcommand("verify", "run the verification campaign");
  add_campaign_flags(verify);
  auto* suite = app.add_subcommand("suite", "alias for the full campaign");
  add_campaign_flags(suite);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute) {
      return run_compute(rule_opt, functional, body_text, k_text, l_text,
                         phi_text, i, p, out_path);
    }
    if (*add) {
      return run_add(rule_opt, spec_text, out_path);
    }
    return run_campaign_cmd(config, threads, format, out_path);
  } catch (const widthlab::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const widthlab::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
