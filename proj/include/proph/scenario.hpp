#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "proph/engine.hpp"
#include "proph/instance.hpp"
#include "proph/order_stats.hpp"
#include "proph/solvers.hpp"
#include "proph/strategy.hpp"

namespace proph {

struct EvaluationSpec {
  EstimateMethod method = EstimateMethod::exact;
  long num_samples = 100000;
  std::uint64_t seed = 0;
};

struct OutputSpec {
  enum class Sink { stdout_stream, csv_file, json_file };
  Sink sink = Sink::stdout_stream;
  std::string path;
};

/// A scenario: an instance, one strategy per agent, and how to evaluate.
///
/// Profile entries are either literal strategies ("single_threshold",
/// "per_time_threshold") or directives resolved against the instance at load
/// time ("paper_threshold" with an ell, "spe_table"). The resolved numeric
/// thresholds are kept in `resolved_profile` so reports show what was played.
struct ScenarioConfig {
  Instance instance;
  StrategyProfile profile;
  nlohmann::json resolved_profile;
  EvaluationSpec evaluation;
  std::vector<OutputSpec> outputs;
};

ScenarioConfig scenario_from_json(const nlohmann::json& doc);

/// Accepts either a bare instance document or a config object carrying an
/// "instance" field (inline document, or a string path to one).
Instance instance_from_config(const nlohmann::json& doc);

struct ScenarioResult {
  GameReport report;
  nlohmann::json document;
  std::string csv;
};

/// Evaluates the profile; writes nothing. Callers emit outputs afterwards so
/// a failed run leaves no partial files.
ScenarioResult run_scenario(const ScenarioConfig& config);

void emit_outputs(const nlohmann::json& document, const std::string& csv,
                  const std::vector<OutputSpec>& outputs);

// --- Subcommand reports -----------------------------------------------------

struct ThresholdsReport {
  OrderStatReport stats;
  nlohmann::json document;
  std::string csv;
};

/// Threshold menu for the instance's tie rule: T^ell for ell = 1..n under
/// random tie-breaking, the full (i, ell) grid under ranked.
ThresholdsReport thresholds_report(const Instance& inst);

struct SpeReport {
  ThresholdTable table;
  nlohmann::json document;
  std::string csv;
};

SpeReport spe_report(const Instance& inst);

struct LabeledCertificate {
  int rank = 0;  // 0 under the random rule (thresholds are rank-free there)
  int ell = 0;
  WorstCaseCertificate cert;
};

struct CertifyReport {
  std::vector<LabeledCertificate> certificates;
  bool all_pass = false;
  nlohmann::json document;
  std::string csv;
};

/// Certifies every guarantee the instance's rule offers: each ell under the
/// random rule, each (rank, ell) pair under ranked.
CertifyReport certify_instance(const Instance& inst);

struct VerifyEqReport {
  NashReport nash;
  nlohmann::json document;
  std::string csv;
};

VerifyEqReport verify_eq_report(const ScenarioConfig& config);

// --- Reproductions ----------------------------------------------------------

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproReport {
  std::string title;
  std::vector<CheckLine> checks;
  bool all_pass = false;
  nlohmann::json document;
};

std::string repro_report_text(const ReproReport& report);

/// The random-rule tight instance: n-1 certain unit rewards, then a long
/// shot worth (k+eps)/eps with probability eps. Evaluates the profile where
/// everyone waits for the long shot, checks it is a Nash equilibrium, that
/// each agent earns exactly 1 + eps/k, that this stays within eps of every
/// usable T^ell, and that equilibrium welfare is at most (0.5 + eps) of
/// optimal once n > k.
ReproReport reproduce_prop4(int num_agents, double eps, int horizon);

/// The ranked-rule tight instance for the agent ranked `rank`: rank-1 huge
/// early rewards (finite surrogate), then unit rewards, then a (1+eps)/eps
/// long shot. Checks u_rank = 1 + eps under the SPE, the T-hat bounds, and
/// that doubling the surrogate scale moves nothing by more than 1e-9.
ReproReport reproduce_prop6(int rank, int num_agents, double eps, int horizon);

// --- Welfare sweep ----------------------------------------------------------

struct SweepFamily {
  enum class Kind { iid, tight_random };
  Kind kind = Kind::iid;
  // iid: `horizon` draws from `marginal`, ranked rule, SPE welfare per k.
  Distribution marginal = Distribution::point(1.0);
  int horizon = 0;
  // tight_random: the reproduce_prop4 instance per k, random rule,
  // equilibrium welfare from the all-wait profile.
  double eps = 0.5;
};

SweepFamily sweep_family_from_json(const nlohmann::json& doc);

struct WelfareSweepRow {
  int num_agents = 0;
  double eq_welfare = 0.0;
  double optimal_welfare = 0.0;
  double ratio = 0.0;
};

struct WelfareSweepReport {
  TieRule rule = TieRule::ranked;
  std::vector<WelfareSweepRow> rows;
  // Least-squares c in ratio ~ 1 - c/sqrt(k), with its residual RMSE.
  // Reported for trend inspection, never asserted.
  double fit_c = 0.0;
  double fit_rmse = 0.0;
  nlohmann::json document;
  std::string csv;
};

WelfareSweepReport welfare_sweep(const SweepFamily& family,
                                 const std::vector<int>& k_range);

}  // namespace proph
