#include "proph/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "proph/errors.hpp"
#include "proph/json_io.hpp"

namespace proph {

using nlohmann::json;

namespace {

const json& require_field(const json& doc, const char* name,
                          const char* context) {
  const auto it = doc.find(name);
  if (it == doc.end()) {
    throw ConfigError(std::string(context) + " requires a \"" + name +
                      "\" field");
  }
  return *it;
}

int int_field(const json& doc, const char* name, const char* context) {
  const json& value = require_field(doc, name, context);
  if (!value.is_number_integer()) {
    throw ConfigError(std::string(context) + " field \"" + name +
                      "\" must be an integer");
  }
  return value.get<int>();
}

Instance parse_instance_field(const json& value) {
  if (value.is_string()) {
    return instance_from_json(load_json_file(value.get<std::string>()));
  }
  return instance_from_json(value);
}

EvaluationSpec parse_evaluation(const json& doc) {
  EvaluationSpec eval;
  const auto it = doc.find("evaluation");
  if (it == doc.end()) return eval;
  if (!it->is_object()) {
    throw ConfigError("\"evaluation\" must be an object");
  }
  const json& method = require_field(*it, "method", "evaluation");
  if (!method.is_string()) {
    throw ConfigError("evaluation \"method\" must be a string");
  }
  const std::string name = method.get<std::string>();
  if (name == "exact") {
    eval.method = EstimateMethod::exact;
  } else if (name == "monte_carlo") {
    eval.method = EstimateMethod::monte_carlo;
    if (it->contains("num_samples")) {
      eval.num_samples = (*it)["num_samples"].get<long>();
    }
    if (it->contains("seed")) {
      eval.seed = (*it)["seed"].get<std::uint64_t>();
    }
  } else {
    throw ConfigError("evaluation method must be \"exact\" or \"monte_carlo\"");
  }
  return eval;
}

std::vector<OutputSpec> parse_outputs(const json& doc) {
  std::vector<OutputSpec> outputs;
  const auto it = doc.find("outputs");
  if (it == doc.end()) {
    outputs.push_back(OutputSpec{});
    return outputs;
  }
  if (!it->is_array()) {
    throw ConfigError("\"outputs\" must be an array");
  }
  for (const json& entry : *it) {
    if (!entry.is_object()) {
      throw ConfigError("output entries must be objects");
    }
    const json& kind = require_field(entry, "kind", "output");
    const std::string name = kind.get<std::string>();
    OutputSpec spec;
    if (name == "stdout") {
      spec.sink = OutputSpec::Sink::stdout_stream;
    } else if (name == "csv" || name == "json") {
      spec.sink = name == "csv" ? OutputSpec::Sink::csv_file
                                : OutputSpec::Sink::json_file;
      const json& path = require_field(entry, "path", "file output");
      if (!path.is_string()) {
        throw ConfigError("output \"path\" must be a string");
      }
      spec.path = path.get<std::string>();
    } else {
      throw ConfigError("output kind must be \"stdout\", \"csv\" or \"json\"");
    }
    outputs.push_back(std::move(spec));
  }
  if (outputs.empty()) {
    throw ConfigError("\"outputs\" must list at least one sink");
  }
  return outputs;
}

json check_to_json(const CheckLine& check) {
  return json{{"name", check.name}, {"pass", check.pass},
              {"detail", check.detail}};
}

double max_abs_deviation(const std::vector<double>& values, double target) {
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v - target));
  return worst;
}

double top_k_sum(const OrderStatReport& stats, int k) {
  double sum = 0.0;
  for (int j = 1; j <= k; ++j) sum += stats.expectations[j - 1];
  return sum;
}

}  // namespace

Instance instance_from_config(const json& doc) {
  if (doc.is_object() && doc.contains("instance")) {
    return parse_instance_field(doc["instance"]);
  }
  return parse_instance_field(doc);
}

ScenarioConfig scenario_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw ConfigError("scenario config must be an object");
  }
  Instance inst = parse_instance_field(require_field(doc, "instance", "config"));

  const json& profile_doc = require_field(doc, "profile", "config");
  if (!profile_doc.is_array()) {
    throw ConfigError("config \"profile\" must be an array");
  }
  if (static_cast<int>(profile_doc.size()) != inst.num_agents()) {
    throw ConfigError("profile lists " + std::to_string(profile_doc.size()) +
                      " strategies for " + std::to_string(inst.num_agents()) +
                      " agents");
  }

  // Directive resolution shares one order-stat pass and one table solve.
  std::optional<OrderStatReport> stats;
  const auto order_stats = [&]() -> const OrderStatReport& {
    if (!stats) stats = expected_order_stats_exact(inst);
    return *stats;
  };
  std::shared_ptr<const ThresholdTable> table;
  const auto shared_table = [&]() {
    if (!table) {
      table = std::make_shared<const ThresholdTable>(solve_k_select(inst));
    }
    return table;
  };

  StrategyProfile profile;
  json resolved_agents = json::array();
  for (int j = 0; j < inst.num_agents(); ++j) {
    const std::string context = "profile[" + std::to_string(j + 1) + "]";
    const json& entry = profile_doc[j];
    if (!entry.is_object()) {
      throw ConfigError(context + " must be an object");
    }
    const json& kind_field = require_field(entry, "kind", context.c_str());
    if (!kind_field.is_string()) {
      throw ConfigError(context + " \"kind\" must be a string");
    }
    const std::string kind = kind_field.get<std::string>();
    json resolved;
    if (kind == "single_threshold") {
      const double t =
          real_from_json(require_field(entry, "T", context.c_str()),
                         context + " \"T\"");
      profile.agents.push_back(Strategy::single_threshold(t));
      resolved = {{"kind", "single_threshold"}, {"T", real_to_json(t)}};
    } else if (kind == "per_time_threshold") {
      const json& list = require_field(entry, "thresholds", context.c_str());
      if (!list.is_array() ||
          static_cast<int>(list.size()) != inst.horizon()) {
        throw ConfigError(context + " \"thresholds\" must list one value per "
                          "time step");
      }
      std::vector<double> thresholds;
      json resolved_list = json::array();
      for (const json& v : list) {
        const double t = real_from_json(v, context + " threshold");
        thresholds.push_back(t);
        resolved_list.push_back(real_to_json(t));
      }
      profile.agents.push_back(Strategy::per_time_threshold(thresholds));
      resolved = {{"kind", "per_time_threshold"},
                  {"thresholds", std::move(resolved_list)}};
    } else if (kind == "paper_threshold") {
      int ell;
      double t;
      if (inst.tie_rule() == TieRule::random) {
        if (entry.contains("ell")) {
          ell = int_field(entry, "ell", context.c_str());
          t = random_tie_threshold(order_stats(), inst.num_agents(), ell);
        } else {
          const BestEll best =
              best_ell_random(order_stats(), inst.num_agents());
          ell = best.ell;
          t = best.threshold;
        }
        resolved = {{"kind", "paper_threshold"}, {"ell", ell},
                    {"resolved_T", t}};
      } else {
        const int rank = j + 1;
        if (entry.contains("ell")) {
          ell = int_field(entry, "ell", context.c_str());
          t = ranked_tie_threshold(order_stats(), rank, ell);
        } else {
          const BestEll best = best_ell_ranked(order_stats(), rank);
          ell = best.ell;
          t = best.threshold;
        }
        resolved = {{"kind", "paper_threshold"}, {"rank", rank}, {"ell", ell},
                    {"resolved_T", t}};
      }
      profile.agents.push_back(Strategy::single_threshold(t));
    } else if (kind == "spe_table") {
      if (inst.tie_rule() != TieRule::ranked) {
        throw RuleMismatchError(context +
                                ": spe_table requires the ranked tie rule");
      }
      profile.agents.push_back(Strategy::rank_table(shared_table()));
      resolved = {{"kind", "spe_table"}};
    } else {
      throw ConfigError(context + ": unknown strategy kind \"" + kind + "\"");
    }
    resolved_agents.push_back(std::move(resolved));
  }

  json resolved_profile;
  resolved_profile["agents"] = std::move(resolved_agents);
  if (table) {
    resolved_profile["spe_table"] = threshold_table_to_json(*table);
  }

  return ScenarioConfig{std::move(inst), std::move(profile),
                        std::move(resolved_profile), parse_evaluation(doc),
                        parse_outputs(doc)};
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  GameReport report;
  if (config.evaluation.method == EstimateMethod::exact) {
    report = expected_utilities_exact(config.instance, config.profile);
  } else {
    report = expected_utilities_mc(config.instance, config.profile,
                                   config.evaluation.num_samples,
                                   config.evaluation.seed);
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["instance"] = instance_to_json(config.instance);
  doc["profile"] = config.resolved_profile;
  doc["report"] = game_report_to_json(report);
  std::string csv = game_report_to_csv(report);
  return ScenarioResult{std::move(report), std::move(doc), std::move(csv)};
}

void emit_outputs(const json& document, const std::string& csv,
                  const std::vector<OutputSpec>& outputs) {
  for (const OutputSpec& spec : outputs) {
    switch (spec.sink) {
      case OutputSpec::Sink::stdout_stream:
        std::cout << document.dump(2) << '\n';
        break;
      case OutputSpec::Sink::csv_file:
        write_text_file(spec.path, csv);
        break;
      case OutputSpec::Sink::json_file:
        write_text_file(spec.path, document.dump(2) + "\n");
        break;
    }
  }
}

ThresholdsReport thresholds_report(const Instance& inst) {
  OrderStatReport stats = expected_order_stats_exact(inst);
  const int n = inst.horizon();
  const int k = inst.num_agents();

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tie_rule"] = to_string(inst.tie_rule());
  doc["num_agents"] = k;
  doc["expected_order_stats"] = stats.expectations;

  std::string csv = "# schema_version=1\n";
  json rows = json::array();
  if (inst.tie_rule() == TieRule::random) {
    csv += "ell,T\n";
    for (int ell = 1; ell <= n; ++ell) {
      const double t = random_tie_threshold(stats, k, ell);
      rows.push_back({{"ell", ell}, {"T", t}});
      csv += std::to_string(ell) + ',' + format_double(t) + '\n';
    }
    const BestEll best = best_ell_random(stats, k);
    doc["best"] = {{"ell", best.ell}, {"T", best.threshold}};
  } else {
    csv += "rank,ell,T\n";
    json bests = json::array();
    for (int rank = 1; rank <= std::min(k, n); ++rank) {
      for (int ell = 0; ell <= n - rank; ++ell) {
        const double t = ranked_tie_threshold(stats, rank, ell);
        rows.push_back({{"rank", rank}, {"ell", ell}, {"T", t}});
        csv += std::to_string(rank) + ',' + std::to_string(ell) + ',' +
               format_double(t) + '\n';
      }
      const BestEll best = best_ell_ranked(stats, rank);
      bests.push_back(
          {{"rank", rank}, {"ell", best.ell}, {"T", best.threshold}});
    }
    doc["best"] = std::move(bests);
  }
  doc["thresholds"] = std::move(rows);
  return ThresholdsReport{std::move(stats), std::move(doc), std::move(csv)};
}

SpeReport spe_report(const Instance& inst) {
  ThresholdTable table = solve_k_select(inst);
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tie_rule"] = to_string(inst.tie_rule());
  doc["num_agents"] = inst.num_agents();
  doc["table"] = threshold_table_to_json(table);
  std::string csv = threshold_table_to_csv(table);
  return SpeReport{std::move(table), std::move(doc), std::move(csv)};
}

CertifyReport certify_instance(const Instance& inst) {
  const OrderStatReport stats = expected_order_stats_exact(inst);
  const int n = inst.horizon();
  const int k = inst.num_agents();

  CertifyReport report;
  report.all_pass = true;
  if (inst.tie_rule() == TieRule::random) {
    for (int ell = 1; ell <= n; ++ell) {
      const double t = random_tie_threshold(stats, k, ell);
      LabeledCertificate lc{0, ell, worst_case_utility_random(inst, k, t)};
      report.all_pass = report.all_pass && lc.cert.pass;
      report.certificates.push_back(std::move(lc));
    }
  } else {
    for (int rank = 1; rank <= std::min(k, n); ++rank) {
      for (int ell = 0; ell <= n - rank; ++ell) {
        const double t = ranked_tie_threshold(stats, rank, ell);
        LabeledCertificate lc{rank, ell,
                              worst_case_utility_ranked(inst, k, rank, t)};
        report.all_pass = report.all_pass && lc.cert.pass;
        report.certificates.push_back(std::move(lc));
      }
    }
  }

  std::string csv = "# schema_version=1\nrank,ell,threshold,guarantee,worst_case,pass\n";
  json certs = json::array();
  for (const LabeledCertificate& lc : report.certificates) {
    csv += std::to_string(lc.rank) + ',' + std::to_string(lc.ell) + ',' +
           format_double(lc.cert.strategy_threshold) + ',' +
           format_double(lc.cert.guarantee_claimed) + ',' +
           format_double(lc.cert.worst_case_utility) + ',' +
           (lc.cert.pass ? "true" : "false") + '\n';
    certs.push_back({{"rank", lc.rank},
                     {"ell", lc.ell},
                     {"threshold", lc.cert.strategy_threshold},
                     {"guarantee", lc.cert.guarantee_claimed},
                     {"worst_case", lc.cert.worst_case_utility},
                     {"pass", lc.cert.pass},
                     {"adversary_policy", lc.cert.adversary_policy_digest}});
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tie_rule"] = to_string(inst.tie_rule());
  doc["num_agents"] = k;
  doc["certificates"] = std::move(certs);
  doc["all_pass"] = report.all_pass;
  report.document = std::move(doc);
  report.csv = std::move(csv);
  return report;
}

VerifyEqReport verify_eq_report(const ScenarioConfig& config) {
  NashReport nash = verify_nash(config.instance, config.profile);

  std::string csv =
      "# schema_version=1\nagent,utility,best_response,is_best_response\n";
  json agents = json::array();
  for (const AgentEquilibriumCheck& check : nash.agents) {
    csv += std::to_string(check.agent + 1) + ',' +
           format_double(check.utility) + ',' +
           format_double(check.best_response) + ',' +
           (check.is_best_response ? "true" : "false") + '\n';
    agents.push_back({{"agent", check.agent + 1},
                      {"utility", check.utility},
                      {"best_response", check.best_response},
                      {"is_best_response", check.is_best_response}});
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["instance"] = instance_to_json(config.instance);
  doc["profile"] = config.resolved_profile;
  doc["agents"] = std::move(agents);
  doc["is_nash"] = nash.is_nash;
  return VerifyEqReport{std::move(nash), std::move(doc), std::move(csv)};
}

std::string repro_report_text(const ReproReport& report) {
  std::string out = report.title + '\n';
  for (const CheckLine& check : report.checks) {
    out += check.pass ? "PASS " : "FAIL ";
    out += check.name;
    if (!check.detail.empty()) {
      out += " (" + check.detail + ")";
    }
    out += '\n';
  }
  out += report.all_pass ? "RESULT PASS\n" : "RESULT FAIL\n";
  return out;
}

ReproReport reproduce_prop4(int num_agents, double eps, int horizon) {
  if (num_agents < 1 || num_agents > kDefaultBestResponseAgentCap) {
    throw ConfigError("num_agents must lie in 1.." +
                      std::to_string(kDefaultBestResponseAgentCap) +
                      " (the equilibrium check runs the best-response DP)");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ConfigError("eps must lie in (0, 1)");
  }
  if (horizon < 2) {
    throw ConfigError("horizon must be at least 2");
  }

  const double jackpot = (num_agents + eps) / eps;
  std::vector<Distribution> dists(horizon - 1, Distribution::point(1.0));
  dists.push_back(
      Distribution::discrete({{0.0, 1.0 - eps}, {jackpot, eps}}));
  const Instance inst(std::move(dists), num_agents, TieRule::random);

  StrategyProfile all_wait;
  all_wait.agents.assign(num_agents, Strategy::single_threshold(jackpot));

  const GameReport report = expected_utilities_exact(inst, all_wait);
  const OrderStatReport stats = expected_order_stats_exact(inst);
  const double target = 1.0 + eps / num_agents;

  ReproReport repro;
  repro.title = "tight instance, random tie-breaking: k=" +
                std::to_string(num_agents) + " eps=" + format_double(eps) +
                " n=" + std::to_string(horizon);
  repro.all_pass = true;
  const auto add_check = [&repro](std::string name, bool pass,
                                  std::string detail) {
    repro.all_pass = repro.all_pass && pass;
    repro.checks.push_back(
        CheckLine{std::move(name), pass, std::move(detail)});
  };

  const NashReport nash = verify_nash(inst, all_wait);
  double worst_gain = 0.0;
  for (const AgentEquilibriumCheck& check : nash.agents) {
    worst_gain = std::max(worst_gain, check.best_response - check.utility);
  }
  add_check("all-wait profile is a Nash equilibrium", nash.is_nash,
            "max deviation gain " + format_double(worst_gain));

  const double deviation = max_abs_deviation(report.per_agent_utility, target);
  add_check("per-agent utility equals 1 + eps/k",
            deviation <= kSolverTolerance,
            "target " + format_double(target) + ", max deviation " +
                format_double(deviation));

  double u_max = 0.0;
  for (double u : report.per_agent_utility) u_max = std::max(u_max, u);
  // The threshold bound applies where the guarantee is flat in ell; the
  // final ell folds in the long shot itself, which the bound is not about.
  for (int ell = 1; ell <= horizon - 1; ++ell) {
    const double t = random_tie_threshold(stats, num_agents, ell);
    const double margin = t + eps - u_max;
    add_check("utility at most T^" + std::to_string(ell) + " + eps",
              margin >= -kSolverTolerance,
              "T=" + format_double(t) + ", margin " + format_double(margin));
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["params"] = {{"k", num_agents}, {"eps", eps}, {"n", horizon}};
  doc["instance"] = instance_to_json(inst);
  doc["per_agent_utility"] = report.per_agent_utility;
  doc["welfare"] = report.welfare;
  doc["expected_order_stats"] = stats.expectations;

  if (horizon > num_agents) {
    const double optimal = top_k_sum(stats, num_agents);
    const double ratio = report.welfare / optimal;
    add_check("equilibrium welfare at most (1/2 + eps) of optimal",
              ratio <= 0.5 + eps + kSolverTolerance,
              "ratio " + format_double(ratio) + ", bound " +
                  format_double(0.5 + eps));
    doc["optimal_welfare"] = optimal;
    doc["welfare_ratio"] = ratio;
  }

  json checks = json::array();
  for (const CheckLine& check : repro.checks) {
    checks.push_back(check_to_json(check));
  }
  doc["checks"] = std::move(checks);
  doc["all_pass"] = repro.all_pass;
  repro.document = std::move(doc);
  return repro;
}

ReproReport reproduce_prop6(int rank, int num_agents, double eps,
                            int horizon) {
  if (num_agents < 1 || num_agents > kDefaultBestResponseAgentCap) {
    throw ConfigError("num_agents must lie in 1.." +
                      std::to_string(kDefaultBestResponseAgentCap) +
                      " (the equilibrium check runs the best-response DP)");
  }
  if (rank < 1 || rank > num_agents) {
    throw RankOutOfRangeError("rank must lie in 1.." +
                              std::to_string(num_agents) + ", got " +
                              std::to_string(rank));
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ConfigError("eps must lie in (0, 1)");
  }
  if (horizon < 2 || horizon < rank) {
    throw ConfigError("horizon must be at least max(2, rank)");
  }

  const double long_shot = (1.0 + eps) / eps;
  const double surrogate_base =
      10.0 * (static_cast<double>(horizon - rank) + long_shot);

  const auto build = [&](double huge) {
    std::vector<Distribution> dists;
    dists.reserve(horizon);
    for (int t = 0; t < rank - 1; ++t) {
      dists.push_back(Distribution::point(huge));
    }
    for (int t = rank - 1; t < horizon - 1; ++t) {
      dists.push_back(Distribution::point(1.0));
    }
    dists.push_back(
        Distribution::discrete({{0.0, 1.0 - eps}, {long_shot, eps}}));
    return Instance(std::move(dists), num_agents, TieRule::ranked);
  };
  const auto spe_utility = [](const Instance& inst, int agent) {
    const auto table =
        std::make_shared<const ThresholdTable>(solve_k_select(inst));
    const StrategyProfile profile = spe_profile(inst, table);
    return expected_utilities_exact(inst, profile).per_agent_utility[agent];
  };

  const Instance inst = build(surrogate_base);
  const auto table =
      std::make_shared<const ThresholdTable>(solve_k_select(inst));
  const StrategyProfile profile = spe_profile(inst, table);
  const GameReport report = expected_utilities_exact(inst, profile);
  const OrderStatReport stats = expected_order_stats_exact(inst);
  const double u_rank = report.per_agent_utility[rank - 1];

  ReproReport repro;
  repro.title = "tight instance, ranked tie-breaking: i=" +
                std::to_string(rank) + " k=" + std::to_string(num_agents) +
                " eps=" + format_double(eps) + " n=" + std::to_string(horizon);
  repro.all_pass = true;
  const auto add_check = [&repro](std::string name, bool pass,
                                  std::string detail) {
    repro.all_pass = repro.all_pass && pass;
    repro.checks.push_back(
        CheckLine{std::move(name), pass, std::move(detail)});
  };

  add_check("rank-" + std::to_string(rank) + " SPE utility equals 1 + eps",
            std::abs(u_rank - (1.0 + eps)) <= kSolverTolerance,
            "utility " + format_double(u_rank));

  // As with the random-rule instance, the bound is flat in ell only while
  // the window stays clear of the long shot.
  for (int ell = 0; ell <= horizon - rank - 1; ++ell) {
    const double t = ranked_tie_threshold(stats, rank, ell);
    const double margin = t + eps - u_rank;
    add_check("utility at most T-hat_" + std::to_string(rank) + "^" +
                  std::to_string(ell) + " + eps",
              margin >= -kSolverTolerance,
              "T=" + format_double(t) + ", margin " + format_double(margin));
  }

  const NashReport nash = verify_nash(inst, profile);
  add_check("SPE profile is a Nash equilibrium", nash.is_nash, "");

  if (rank >= 2) {
    const double shifted = spe_utility(build(2.0 * surrogate_base), rank - 1);
    const double shift = std::abs(shifted - u_rank);
    add_check("doubling the surrogate scale leaves the utility unchanged",
              shift <= kSolverTolerance, "shift " + format_double(shift));
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["params"] = {{"i", rank},
                   {"k", num_agents},
                   {"eps", eps},
                   {"n", horizon},
                   {"surrogate", surrogate_base}};
  doc["instance"] = instance_to_json(inst);
  doc["per_agent_utility"] = report.per_agent_utility;
  doc["welfare"] = report.welfare;
  doc["expected_order_stats"] = stats.expectations;
  json checks = json::array();
  for (const CheckLine& check : repro.checks) {
    checks.push_back(check_to_json(check));
  }
  doc["checks"] = std::move(checks);
  doc["all_pass"] = repro.all_pass;
  repro.document = std::move(doc);
  return repro;
}

SweepFamily sweep_family_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw ConfigError("sweep family must be an object");
  }
  const json& family = require_field(doc, "family", "sweep");
  if (!family.is_string()) {
    throw ConfigError("sweep \"family\" must be a string");
  }
  const std::string name = family.get<std::string>();
  SweepFamily spec;
  if (name == "iid") {
    spec.kind = SweepFamily::Kind::iid;
    spec.marginal = distribution_from_json(require_field(doc, "marginal", "iid sweep"));
    if (!spec.marginal.is_discrete()) {
      throw NotDiscreteError("welfare sweep requires a discrete marginal");
    }
    spec.horizon = int_field(doc, "n", "iid sweep");
    if (spec.horizon < 1) {
      throw ConfigError("iid sweep \"n\" must be at least 1");
    }
  } else if (name == "tight_random") {
    spec.kind = SweepFamily::Kind::tight_random;
    const json& eps = require_field(doc, "eps", "tight_random sweep");
    if (!eps.is_number()) {
      throw ConfigError("tight_random sweep \"eps\" must be a number");
    }
    spec.eps = eps.get<double>();
    if (!(spec.eps > 0.0 && spec.eps < 1.0)) {
      throw ConfigError("eps must lie in (0, 1)");
    }
  } else {
    throw ConfigError("sweep family must be \"iid\" or \"tight_random\"");
  }
  return spec;
}

WelfareSweepReport welfare_sweep(const SweepFamily& family,
                                 const std::vector<int>& k_range) {
  if (k_range.empty()) {
    throw ConfigError("k_range must be non-empty");
  }
  std::vector<int> ks = k_range;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.front() < 1) {
    throw ConfigError("k_range entries must be at least 1");
  }

  WelfareSweepReport report;
  if (family.kind == SweepFamily::Kind::iid) {
    report.rule = TieRule::ranked;
    if (ks.back() > family.horizon) {
      throw ConfigError("k_range exceeds the sweep horizon n=" +
                        std::to_string(family.horizon));
    }
    const Instance base(
        std::vector<Distribution>(family.horizon, family.marginal), 1,
        TieRule::ranked);
    const OrderStatReport stats = expected_order_stats_exact(base);
    for (int k : ks) {
      // Under the SPE the agents jointly realize the k-select optimum, so
      // V_1(k) is the equilibrium welfare.
      const ThresholdTable table = solve_k_select(base.with_num_agents(k));
      WelfareSweepRow row;
      row.num_agents = k;
      row.eq_welfare = table.value(0, k);
      row.optimal_welfare = top_k_sum(stats, k);
      row.ratio = row.optimal_welfare > 0.0
                      ? row.eq_welfare / row.optimal_welfare
                      : 1.0;
      report.rows.push_back(row);
    }
  } else {
    report.rule = TieRule::random;
    for (int k : ks) {
      const int n = k + 1;
      const double jackpot = (k + family.eps) / family.eps;
      std::vector<Distribution> dists(n - 1, Distribution::point(1.0));
      dists.push_back(Distribution::discrete(
          {{0.0, 1.0 - family.eps}, {jackpot, family.eps}}));
      const Instance inst(std::move(dists), k, TieRule::random);
      StrategyProfile all_wait;
      all_wait.agents.assign(k, Strategy::single_threshold(jackpot));
      const GameReport game = expected_utilities_exact(inst, all_wait);
      const OrderStatReport stats = expected_order_stats_exact(inst);
      WelfareSweepRow row;
      row.num_agents = k;
      row.eq_welfare = game.welfare;
      row.optimal_welfare = top_k_sum(stats, k);
      row.ratio = row.optimal_welfare > 0.0
                      ? row.eq_welfare / row.optimal_welfare
                      : 1.0;
      report.rows.push_back(row);
    }
  }

  double xx = 0.0;
  double xy = 0.0;
  for (const WelfareSweepRow& row : report.rows) {
    const double x = 1.0 / std::sqrt(static_cast<double>(row.num_agents));
    xx += x * x;
    xy += x * (1.0 - row.ratio);
  }
  report.fit_c = xx > 0.0 ? xy / xx : 0.0;
  double residual = 0.0;
  for (const WelfareSweepRow& row : report.rows) {
    const double x = 1.0 / std::sqrt(static_cast<double>(row.num_agents));
    const double r = (1.0 - row.ratio) - report.fit_c * x;
    residual += r * r;
  }
  report.fit_rmse =
      std::sqrt(residual / static_cast<double>(report.rows.size()));

  std::string csv = "# schema_version=1\nk,spe_welfare,optimal_welfare,ratio\n";
  json rows = json::array();
  for (const WelfareSweepRow& row : report.rows) {
    csv += std::to_string(row.num_agents) + ',' +
           format_double(row.eq_welfare) + ',' +
           format_double(row.optimal_welfare) + ',' +
           format_double(row.ratio) + '\n';
    rows.push_back({{"k", row.num_agents},
                    {"spe_welfare", row.eq_welfare},
                    {"optimal_welfare", row.optimal_welfare},
                    {"ratio", row.ratio}});
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["rule"] = to_string(report.rule);
  doc["family"] =
      family.kind == SweepFamily::Kind::iid ? "iid" : "tight_random";
  doc["rows"] = std::move(rows);
  doc["fit"] = {{"c", report.fit_c}, {"rmse", report.fit_rmse}};
  report.document = std::move(doc);
  report.csv = std::move(csv);
  return report;
}

}  // namespace proph
