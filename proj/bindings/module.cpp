#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <utility>
#include <vector>

#include <json.hpp>

#include "proph/engine.hpp"
#include "proph/errors.hpp"
#include "proph/instance.hpp"
#include "proph/json_io.hpp"
#include "proph/order_stats.hpp"
#include "proph/scenario.hpp"
#include "proph/solvers.hpp"
#include "proph/strategy.hpp"

namespace py = pybind11;

namespace {

using proph::Distribution;
using proph::Instance;
using proph::Strategy;
using proph::StrategyProfile;

StrategyProfile to_profile(const std::vector<Strategy>& strategies) {
  StrategyProfile profile;
  profile.agents = strategies;
  return profile;
}

py::object json_to_py(const nlohmann::json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

std::string method_name(proph::EstimateMethod method) {
  return method == proph::EstimateMethod::exact ? "exact" : "monte_carlo";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "multi-agent prophet game engine";

  py::register_exception<proph::Error>(m, "ProphError", PyExc_RuntimeError);
  py::register_exception<proph::ConfigError>(m, "ConfigError",
                                             PyExc_ValueError);

  py::enum_<proph::TieRule>(m, "TieRule")
      .value("random", proph::TieRule::random)
      .value("ranked", proph::TieRule::ranked);

  py::class_<Distribution>(m, "Distribution")
      .def_static("discrete",
                  [](const std::vector<std::pair<double, double>>& support) {
                    std::vector<Distribution::Atom> atoms;
                    atoms.reserve(support.size());
                    for (const auto& [v, p] : support) atoms.push_back({v, p});
                    return Distribution::discrete(std::move(atoms));
                  },
                  py::arg("support"),
                  "Finite law from [(value, probability), ...] pairs.")
      .def_static("point", &Distribution::point, py::arg("value"))
      .def_static("uniform", &Distribution::uniform, py::arg("lo"),
                  py::arg("hi"))
      .def_static("exponential", &Distribution::exponential, py::arg("rate"))
      .def_property_readonly("is_discrete", &Distribution::is_discrete)
      .def_property_readonly("support",
                             [](const Distribution& d) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& atom : d.support()) {
                                 out.emplace_back(atom.value,
                                                  atom.probability);
                               }
                               return out;
                             })
      .def("mean", &Distribution::mean);

  py::class_<Instance>(m, "Instance")
      .def(py::init<std::vector<Distribution>, int, proph::TieRule>(),
           py::arg("distributions"), py::arg("num_agents"),
           py::arg("tie_rule"))
      .def_property_readonly("horizon", &Instance::horizon)
      .def_property_readonly("num_agents", &Instance::num_agents)
      .def_property_readonly("tie_rule", &Instance::tie_rule)
      .def_property_readonly("fully_discrete", &Instance::fully_discrete)
      .def("to_json", [](const Instance& inst) {
        return json_to_py(proph::instance_to_json(inst));
      });

  m.def("instance_from_json", [](const py::object& doc) {
    const std::string dumped =
        py::module_::import("json").attr("dumps")(doc).cast<std::string>();
    return proph::instance_from_json(nlohmann::json::parse(dumped));
  });

  py::class_<proph::OrderStatReport>(m, "OrderStatReport")
      .def_readonly("expectations", &proph::OrderStatReport::expectations)
      .def_readonly("num_samples", &proph::OrderStatReport::num_samples)
      .def_readonly("std_errors", &proph::OrderStatReport::std_errors)
      .def_property_readonly("method",
                             [](const proph::OrderStatReport& r) {
                               return method_name(r.method);
                             });

  m.def("expected_order_stats_exact", &proph::expected_order_stats_exact,
        py::arg("instance"), py::arg("cap") = proph::kDefaultEnumerationCap);
  m.def("expected_order_stats_mc", &proph::expected_order_stats_mc,
        py::arg("instance"), py::arg("num_samples"), py::arg("seed"));

  m.def("random_tie_threshold", &proph::random_tie_threshold,
        py::arg("stats"), py::arg("num_agents"), py::arg("ell"));
  m.def("ranked_tie_threshold", &proph::ranked_tie_threshold,
        py::arg("stats"), py::arg("rank"), py::arg("ell"));
  m.def("best_ell_random",
        [](const proph::OrderStatReport& stats, int num_agents) {
          const proph::BestEll best = proph::best_ell_random(stats, num_agents);
          return std::make_pair(best.ell, best.threshold);
        },
        py::arg("stats"), py::arg("num_agents"));
  m.def("best_ell_ranked",
        [](const proph::OrderStatReport& stats, int rank) {
          const proph::BestEll best = proph::best_ell_ranked(stats, rank);
          return std::make_pair(best.ell, best.threshold);
        },
        py::arg("stats"), py::arg("rank"));

  py::class_<Strategy>(m, "Strategy")
      .def_static("single_threshold", &Strategy::single_threshold,
                  py::arg("threshold"))
      .def_static("per_time_threshold", &Strategy::per_time_threshold,
                  py::arg("thresholds"))
      .def("selects", &Strategy::selects, py::arg("t"), py::arg("value"),
           py::arg("active_mask"), py::arg("self_index"));

  py::class_<proph::ThresholdTable,
             std::shared_ptr<proph::ThresholdTable>>(m, "ThresholdTable")
      .def_property_readonly("horizon", &proph::ThresholdTable::horizon)
      .def_property_readonly("num_slots", &proph::ThresholdTable::num_slots)
      .def("value", &proph::ThresholdTable::value, py::arg("t"),
           py::arg("slots_left"))
      .def("threshold", &proph::ThresholdTable::threshold, py::arg("t"),
           py::arg("slots_left"));

  m.def("solve_k_select",
        [](const Instance& inst, std::optional<int> num_slots) {
          return std::make_shared<proph::ThresholdTable>(
              num_slots ? proph::solve_k_select(inst, *num_slots)
                        : proph::solve_k_select(inst));
        },
        py::arg("instance"), py::arg("num_slots") = std::nullopt);

  m.def("spe_profile",
        [](const Instance& inst,
           const std::shared_ptr<proph::ThresholdTable>& table) {
          return proph::spe_profile(inst, table).agents;
        },
        py::arg("instance"), py::arg("table"));

  py::class_<proph::GameReport>(m, "GameReport")
      .def_readonly("per_agent_utility", &proph::GameReport::per_agent_utility)
      .def_readonly("welfare", &proph::GameReport::welfare)
      .def_readonly("num_samples", &proph::GameReport::num_samples)
      .def_readonly("std_errors", &proph::GameReport::std_errors)
      .def_property_readonly("method", [](const proph::GameReport& r) {
        return method_name(r.method);
      });

  m.def("expected_utilities_exact",
        [](const Instance& inst, const std::vector<Strategy>& strategies,
           std::uint64_t cap) {
          return proph::expected_utilities_exact(inst, to_profile(strategies),
                                                 cap);
        },
        py::arg("instance"), py::arg("profile"),
        py::arg("cap") = proph::kDefaultEnumerationCap);
  m.def("expected_utilities_mc",
        [](const Instance& inst, const std::vector<Strategy>& strategies,
           std::int64_t num_samples, std::uint64_t seed) {
          return proph::expected_utilities_mc(inst, to_profile(strategies),
                                              num_samples, seed);
        },
        py::arg("instance"), py::arg("profile"), py::arg("num_samples"),
        py::arg("seed"));

  py::class_<proph::WorstCaseCertificate>(m, "WorstCaseCertificate")
      .def_readonly("strategy_threshold",
                    &proph::WorstCaseCertificate::strategy_threshold)
      .def_readonly("guarantee_claimed",
                    &proph::WorstCaseCertificate::guarantee_claimed)
      .def_readonly("worst_case_utility",
                    &proph::WorstCaseCertificate::worst_case_utility)
      .def_readonly("passed", &proph::WorstCaseCertificate::pass)
      .def_readonly("adversary_policy_digest",
                    &proph::WorstCaseCertificate::adversary_policy_digest);

  m.def("worst_case_utility_random",
        [](const Instance& inst, int num_agents, double my_threshold,
           std::optional<double> guarantee) {
          return guarantee ? proph::worst_case_utility_random(
                                 inst, num_agents, my_threshold, *guarantee)
                           : proph::worst_case_utility_random(inst, num_agents,
                                                              my_threshold);
        },
        py::arg("instance"), py::arg("num_agents"), py::arg("my_threshold"),
        py::arg("guarantee_claimed") = std::nullopt);
  m.def("worst_case_utility_ranked",
        [](const Instance& inst, int num_agents, int my_rank,
           double my_threshold, std::optional<double> guarantee) {
          return guarantee
                     ? proph::worst_case_utility_ranked(
                           inst, num_agents, my_rank, my_threshold, *guarantee)
                     : proph::worst_case_utility_ranked(inst, num_agents,
                                                        my_rank, my_threshold);
        },
        py::arg("instance"), py::arg("num_agents"), py::arg("my_rank"),
        py::arg("my_threshold"), py::arg("guarantee_claimed") = std::nullopt);

  m.def("best_response_value",
        [](const Instance& inst, const std::vector<Strategy>& strategies,
           int agent, int max_agents) {
          const proph::BestResponse br = proph::best_response_value(
              inst, to_profile(strategies), agent, max_agents);
          return std::make_pair(br.value, br.policy);
        },
        py::arg("instance"), py::arg("profile"), py::arg("agent"),
        py::arg("max_agents") = proph::kDefaultBestResponseAgentCap);

  py::class_<proph::AgentEquilibriumCheck>(m, "AgentEquilibriumCheck")
      .def_readonly("agent", &proph::AgentEquilibriumCheck::agent)
      .def_readonly("utility", &proph::AgentEquilibriumCheck::utility)
      .def_readonly("best_response",
                    &proph::AgentEquilibriumCheck::best_response)
      .def_readonly("is_best_response",
                    &proph::AgentEquilibriumCheck::is_best_response);

  py::class_<proph::NashReport>(m, "NashReport")
      .def_readonly("agents", &proph::NashReport::agents)
      .def_readonly("is_nash", &proph::NashReport::is_nash);

  m.def("verify_nash",
        [](const Instance& inst, const std::vector<Strategy>& strategies,
           int max_agents, std::uint64_t cap) {
          return proph::verify_nash(inst, to_profile(strategies), max_agents,
                                    cap);
        },
        py::arg("instance"), py::arg("profile"),
        py::arg("max_agents") = proph::kDefaultBestResponseAgentCap,
        py::arg("cap") = proph::kDefaultEnumerationCap);

  m.def("reproduce_prop4",
        [](int num_agents, double eps, int horizon) {
          return json_to_py(
              proph::reproduce_prop4(num_agents, eps, horizon).document);
        },
        py::arg("num_agents"), py::arg("eps"), py::arg("horizon"));
  m.def("reproduce_prop6",
        [](int rank, int num_agents, double eps, int horizon) {
          return json_to_py(
              proph::reproduce_prop6(rank, num_agents, eps, horizon).document);
        },
        py::arg("rank"), py::arg("num_agents"), py::arg("eps"),
        py::arg("horizon"));
}
