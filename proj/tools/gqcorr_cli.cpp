// Command-line front end: correlation reports, state-family factories,
// random sampling, Monte Carlo verification suites, figure data and the
// eavesdropping scenario. Exit codes: 0 success, 1 input error,
// 2 verification violations.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gqc/discord.hpp"
#include "gqc/entanglement.hpp"
#include "gqc/families.hpp"
#include "gqc/io.hpp"
#include "gqc/sampling.hpp"
#include "gqc/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitViolations = 2;

struct OutputTarget {
  std::string path;

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file) {
      file = std::make_unique<std::ofstream>(path);
      if (!*file) throw std::runtime_error("cannot open output file " + path);
    }
    return *file;
  }

  std::unique_ptr<std::ofstream> file;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("expected key=value parameter, got '" + kv + "'");
    }
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

double need(const std::map<std::string, double>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw std::runtime_error("missing required parameter " + key);
  return it->second;
}

json bound_report_to_json(const gqc::BoundReport& rep) {
  return json{{"suite", rep.suite},
              {"n_samples", rep.n_samples},
              {"n_violations", rep.n_violations},
              {"worst_margin", rep.worst_margin},
              {"slack", rep.slack},
              {"histogram", json{{"lo", rep.hist_lo}, {"hi", rep.hist_hi}, {"bins", rep.histogram}}},
              {"counts", rep.counts},
              {"violations", rep.violations}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-state quantum correlations toolkit"};
  app.require_subcommand(1);

  OutputTarget target;
  app.add_option("--out", target.path, "write output to a file instead of stdout")
      ->capture_default_str();

  // report
  auto* report_cmd = app.add_subcommand("report", "correlation report for a CM file (json or csv)");
  std::string report_path;
  std::string direction = "both";
  report_cmd->add_option("cm", report_path, "covariance matrix file")->required();
  report_cmd->add_option("--direction", direction, "left | right | both")
      ->check(CLI::IsMember({"left", "right", "both"}));

  // family
  auto* family_cmd = app.add_subcommand("family", "emit a named state family as CM json");
  std::string family_name;
  std::vector<std::string> family_params;
  family_cmd
      ->add_option("name", family_name,
                   "tms | squeezed_thermal | eq5 | separable_extremal | product_thermal")
      ->required();
  family_cmd->add_option("--param,--params", family_params, "family parameters as key=value");

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw random two-mode standard forms");
  gqc::SamplerConfig sampler_cfg;
  std::string class_name = "any";
  sample_cmd->add_option("--seed", sampler_cfg.seed, "rng seed")->capture_default_str();
  sample_cmd->add_option("--count", sampler_cfg.count, "number of states")->capture_default_str();
  sample_cmd->add_option("--class", class_name, "any | separable | entangled | product")
      ->check(CLI::IsMember({"any", "separable", "entangled", "product"}));
  sample_cmd->add_option("--a-max", sampler_cfg.a_max, "upper box bound for a")
      ->capture_default_str();
  sample_cmd->add_option("--b-max", sampler_cfg.b_max, "upper box bound for b")
      ->capture_default_str();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run a Monte Carlo verification suite");
  std::string suite;
  std::uint64_t verify_n = 10000;
  gqc::VerifyConfig verify_cfg;
  verify_cmd->add_option("suite", suite, "asymmetry | separable | entangled | oracle")->required();
  verify_cmd->add_option("-n,--samples", verify_n, "sample count")->capture_default_str();
  verify_cmd->add_option("--seed", verify_cfg.seed, "rng seed")->capture_default_str();
  verify_cmd->add_option("--threads", verify_cfg.threads, "worker threads (0 = hardware)")
      ->capture_default_str();

  // figure
  auto* figure_cmd = app.add_subcommand("figure", "emit scatter data for the two panels as CSV");
  std::string panel;
  std::uint64_t figure_n = 1000;
  gqc::VerifyConfig figure_cfg;
  figure_cmd->add_option("panel", panel, "left | right")
      ->check(CLI::IsMember({"left", "right"}))
      ->required();
  figure_cmd->add_option("-n,--samples", figure_n, "sample count")->capture_default_str();
  figure_cmd->add_option("--seed", figure_cfg.seed, "rng seed")->capture_default_str();
  figure_cmd->add_option("-o,--output", target.path, "output file (same as --out)");

  // eavesdrop
  auto* eave_cmd = app.add_subcommand("eavesdrop", "beam-splitter eavesdropping scenario");
  double ev_s = 2.0, ev_n = 2.0, ev_t = 0.5;
  eave_cmd->add_option("--s", ev_s, "Sally-Tom cosh parameter (>= 1)")->capture_default_str();
  eave_cmd->add_option("--n", ev_n, "Eve cosh parameter (>= 1)")->capture_default_str();
  eave_cmd->add_option("--t", ev_t, "beam-splitter transmittivity in [0, 1]")
      ->capture_default_str();

  // geof
  auto* geof_cmd = app.add_subcommand("geof", "Gaussian entanglement of formation of a CM file");
  std::string geof_path;
  geof_cmd->add_option("cm", geof_path, "covariance matrix file (2 or 3 modes)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*report_cmd) {
      const gqc::CovarianceMatrix cm = gqc::cm_from_file(report_path);
      const gqc::CorrelationReport rep = gqc::full_report(cm);
      json j = gqc::report_to_json(rep);
      if (direction == "left") {
        j = json{{"mutual_information", rep.mutual_information}, {"j_left", rep.j_left},
                 {"d_left", rep.d_left}, {"emin_left", rep.emin_left},
                 {"meas_left", gqc::measurement_to_json(rep.meas_left)}};
      } else if (direction == "right") {
        j = json{{"mutual_information", rep.mutual_information}, {"j_right", rep.j_right},
                 {"d_right", rep.d_right}, {"emin_right", rep.emin_right},
                 {"meas_right", gqc::measurement_to_json(rep.meas_right)}};
      }
      target.stream() << j.dump(2) << '\n';
      return kExitOk;
    }

    if (*family_cmd) {
      const auto params = parse_params(family_params);
      gqc::CovarianceMatrix cm = gqc::CovarianceMatrix::vacuum(2);
      if (family_name == "tms") {
        cm = gqc::two_mode_squeezed(need(params, "s"));
      } else if (family_name == "squeezed_thermal") {
        cm = gqc::squeezed_thermal(need(params, "r"), need(params, "s"));
      } else if (family_name == "eq5") {
        cm = gqc::family_eq5(need(params, "a"), need(params, "b"));
      } else if (family_name == "separable_extremal") {
        cm = gqc::separable_extremal(need(params, "a"), need(params, "b"));
      } else if (family_name == "product_thermal") {
        cm = gqc::product_thermal(need(params, "n1"), need(params, "n2"));
      } else {
        throw std::runtime_error("unknown family " + family_name);
      }
      target.stream() << gqc::cm_to_json(cm).dump(2) << '\n';
      return kExitOk;
    }

    if (*sample_cmd) {
      if (class_name == "separable") sampler_cfg.filter = gqc::StateClass::separable;
      else if (class_name == "entangled") sampler_cfg.filter = gqc::StateClass::entangled;
      else if (class_name == "product") sampler_cfg.filter = gqc::StateClass::product;
      gqc::StateSampler sampler(sampler_cfg);
      json arr = json::array();
      for (int i = 0; i < sampler_cfg.count; ++i) {
        const gqc::TwoModeStandardForm sf = sampler.sample();
        arr.push_back(json{{"a", sf.a}, {"b", sf.b}, {"c", sf.c}, {"d", sf.d}});
      }
      json out{{"states", std::move(arr)},
               {"rejections", sampler.rejections()},
               {"draws", sampler.draws()}};
      target.stream() << out.dump(2) << '\n';
      return kExitOk;
    }

    if (*verify_cmd) {
      gqc::BoundReport rep;
      if (suite == "asymmetry") rep = gqc::verify_asymmetry(verify_n, verify_cfg);
      else if (suite == "separable") rep = gqc::verify_separable_bound(verify_n, verify_cfg);
      else if (suite == "entangled") rep = gqc::verify_entangled_bounds(verify_n, verify_cfg);
      else if (suite == "oracle") rep = gqc::verify_oracle(verify_n, verify_cfg);
      else throw std::runtime_error("unknown suite " + suite);
      target.stream() << bound_report_to_json(rep).dump(2) << '\n';
      return rep.passed() ? kExitOk : kExitViolations;
    }

    if (*figure_cmd) {
      gqc::figure_data(panel == "left" ? gqc::FigurePanel::left : gqc::FigurePanel::right,
                       figure_n, target.stream(), figure_cfg);
      return kExitOk;
    }

    if (*eave_cmd) {
      const gqc::ScenarioResult res = gqc::eavesdrop_scenario(ev_s, ev_n, ev_t);
      json j{{"s", res.s},
             {"n", res.n},
             {"t", res.t},
             {"geof_a_st", res.geof_a_st},
             {"discord_ab_left", res.discord_ab_left},
             {"sigma_abst", gqc::cm_to_json(gqc::CovarianceMatrix(res.sigma_abst))},
             {"sigma_ast", gqc::cm_to_json(gqc::CovarianceMatrix(res.sigma_ast))},
             {"sigma_ab", gqc::cm_to_json(gqc::CovarianceMatrix(res.sigma_ab))}};
      target.stream() << j.dump(2) << '\n';
      return kExitOk;
    }

    if (*geof_cmd) {
      const gqc::CovarianceMatrix cm = gqc::cm_from_file(geof_path);
      gqc::GeofResult res;
      if (cm.modes() == 2) res = gqc::geof_two_mode_numeric(cm);
      else if (cm.modes() == 3) res = gqc::geof_three_mode_duality(cm);
      else throw std::runtime_error("geof expects a 2- or 3-mode CM");
      target.stream() << gqc::geof_to_json(res).dump(2) << '\n';
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
