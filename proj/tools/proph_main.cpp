#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "proph/errors.hpp"
#include "proph/json_io.hpp"
#include "proph/scenario.hpp"

namespace {

using nlohmann::json;

struct EmitTarget {
  std::string out;
  std::string format = "json";
};

void emit(const json& doc, const std::string& csv, const EmitTarget& target) {
  if (target.out.empty()) {
    if (target.format == "csv") {
      std::cout << csv;
    } else {
      std::cout << doc.dump(2) << '\n';
    }
    return;
  }
  if (target.format == "csv") {
    proph::write_text_file(target.out, csv);
  } else {
    proph::write_text_file(target.out, doc.dump(2) + "\n");
  }
}

json load_config(const std::string& path) {
  if (path.empty()) {
    throw proph::ConfigError("--config is required for this subcommand");
  }
  return proph::load_json_file(path);
}

std::string checks_csv(const proph::ReproReport& report) {
  std::string csv = "# schema_version=1\ncheck,pass,detail\n";
  for (const proph::CheckLine& check : report.checks) {
    csv += '"' + check.name + "\"," + (check.pass ? "true" : "false") +
           ",\"" + check.detail + "\"\n";
  }
  return csv;
}

std::vector<int> parse_k_range(const json& doc) {
  if (!doc.contains("k_range")) {
    return {1, 2, 3, 4};
  }
  const json& range = doc["k_range"];
  if (!range.is_array() || range.empty()) {
    throw proph::ConfigError("\"k_range\" must be a non-empty array");
  }
  std::vector<int> ks;
  for (const json& entry : range) {
    if (!entry.is_number_integer()) {
      throw proph::ConfigError("\"k_range\" entries must be integers");
    }
    ks.push_back(entry.get<int>());
  }
  return ks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-agent prophet game engine"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  long samples = 100000;

  const auto add_io = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config) {
      cmd->add_option("--config", config_path, "path to a JSON config file");
    }
    cmd->add_option("--out", out_path, "write the report to this path");
    cmd->add_option("--format", format, "report format for --out and stdout")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* thresholds = app.add_subcommand(
      "thresholds", "print the guarantee threshold menu for an instance");
  add_io(thresholds, true);

  CLI::App* simulate =
      app.add_subcommand("simulate", "evaluate a scenario config");
  add_io(simulate, true);
  simulate->add_option("--seed", seed, "Monte Carlo seed override");
  simulate->add_option("--samples", samples,
                       "sample count; forces Monte Carlo evaluation");

  CLI::App* spe = app.add_subcommand(
      "spe", "solve the selection value function and dump its thresholds");
  add_io(spe, true);

  CLI::App* certify = app.add_subcommand(
      "certify", "exact worst-case certificates for the guarantee thresholds");
  add_io(certify, true);

  CLI::App* verify_eq = app.add_subcommand(
      "verify-eq", "check a scenario profile for Nash equilibrium");
  add_io(verify_eq, true);

  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "rebuild a tight instance and check its bounds");
  reproduce->require_subcommand(1);

  int p4_k = 2;
  double p4_eps = 0.5;
  int p4_n = 3;
  CLI::App* prop4 = reproduce->add_subcommand(
      "prop4", "tight instance for the random tie rule");
  prop4->add_option("--k", p4_k, "number of agents");
  prop4->add_option("--eps", p4_eps, "long-shot probability");
  prop4->add_option("--n", p4_n, "horizon");
  add_io(prop4, false);

  int p6_i = 2;
  int p6_k = 2;
  double p6_eps = 0.5;
  int p6_n = 3;
  CLI::App* prop6 = reproduce->add_subcommand(
      "prop6", "tight instance for the ranked tie rule");
  prop6->add_option("--i", p6_i, "rank of the agent under study");
  prop6->add_option("--k", p6_k, "number of agents");
  prop6->add_option("--eps", p6_eps, "long-shot probability");
  prop6->add_option("--n", p6_n, "horizon");
  add_io(prop6, false);

  CLI::App* sweep = app.add_subcommand(
      "welfare-sweep", "equilibrium vs optimal welfare across agent counts");
  add_io(sweep, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const EmitTarget target{out_path, format};
    if (thresholds->parsed()) {
      const proph::Instance inst =
          proph::instance_from_config(load_config(config_path));
      const proph::ThresholdsReport report = proph::thresholds_report(inst);
      emit(report.document, report.csv, target);
      return 0;
    }
    if (simulate->parsed()) {
      proph::ScenarioConfig config =
          proph::scenario_from_json(load_config(config_path));
      if (simulate->count("--samples") > 0) {
        config.evaluation.method = proph::EstimateMethod::monte_carlo;
        config.evaluation.num_samples = samples;
      }
      if (simulate->count("--seed") > 0) {
        config.evaluation.seed = seed;
      }
      const proph::ScenarioResult result = proph::run_scenario(config);
      if (!out_path.empty()) {
        emit(result.document, result.csv, target);
      } else {
        proph::emit_outputs(result.document, result.csv, config.outputs);
      }
      return 0;
    }
    if (spe->parsed()) {
      const proph::Instance inst =
          proph::instance_from_config(load_config(config_path));
      const proph::SpeReport report = proph::spe_report(inst);
      emit(report.document, report.csv, target);
      return 0;
    }
    if (certify->parsed()) {
      const proph::Instance inst =
          proph::instance_from_config(load_config(config_path));
      const proph::CertifyReport report = proph::certify_instance(inst);
      emit(report.document, report.csv, target);
      return report.all_pass ? 0 : 4;
    }
    if (verify_eq->parsed()) {
      const proph::ScenarioConfig config =
          proph::scenario_from_json(load_config(config_path));
      const proph::VerifyEqReport report = proph::verify_eq_report(config);
      emit(report.document, report.csv, target);
      return report.nash.is_nash ? 0 : 4;
    }
    if (prop4->parsed() || prop6->parsed()) {
      const proph::ReproReport report =
          prop4->parsed() ? proph::reproduce_prop4(p4_k, p4_eps, p4_n)
                          : proph::reproduce_prop6(p6_i, p6_k, p6_eps, p6_n);
      std::cout << proph::repro_report_text(report);
      if (!out_path.empty()) {
        emit(report.document, checks_csv(report), target);
      }
      return report.all_pass ? 0 : 4;
    }
    if (sweep->parsed()) {
      const json doc = load_config(config_path);
      const proph::SweepFamily family = proph::sweep_family_from_json(doc);
      const proph::WelfareSweepReport report =
          proph::welfare_sweep(family, parse_k_range(doc));
      emit(report.document, report.csv, target);
      return 0;
    }
  } catch (const proph::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == proph::ErrorKind::config ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
