#include "mink/reports.hpp"

#include <cmath>
#include <cstdio>

namespace mink {

nlohmann::json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trace_csv(std::ostream& out, const std::vector<std::pair<double, double>>& rows) {
  out << "eps,value\n";
  for (const auto& [e, v] : rows) out << format_double(e) << ',' << format_double(v) << '\n';
}

namespace {

nlohmann::json pairs_json(const std::vector<std::pair<double, double>>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& [a, b] : rows) arr.push_back({json_number(a), json_number(b)});
  return arr;
}

nlohmann::json numbers(const std::vector<double>& v) {
  auto arr = nlohmann::json::array();
  for (double x : v) arr.push_back(json_number(x));
  return arr;
}

}  // namespace

nlohmann::json to_json(const DimensionFit& fit, bool with_trace) {
  nlohmann::json j{{"fitted_d", json_number(fit.fitted_d)},
                   {"ci_halfwidth", json_number(fit.ci_halfwidth)},
                   {"residual", json_number(fit.residual)},
                   {"slope", json_number(fit.slope)}};
  if (with_trace) j["trace"] = pairs_json(fit.trace);
  return j;
}

nlohmann::json to_json(const ContentEstimate& est, bool with_trace) {
  nlohmann::json j{{"s", est.s},
                   {"ambient_n", est.ambient_n},
                   {"lower", json_number(est.lower)},
                   {"upper", json_number(est.upper)},
                   {"gamma_norm", json_number(est.gamma_norm)},
                   {"normalized_lower", json_number(est.normalized_lower)},
                   {"normalized_upper", json_number(est.normalized_upper)},
                   {"backend_rel_error", json_number(est.backend_rel_error)},
                   {"rel_tol", est.rel_tol},
                   {"verdict", std::string(to_string(est.verdict))},
                   {"lower_at_window_edge", est.lower_at_window_edge},
                   {"upper_at_window_edge", est.upper_at_window_edge}};
  if (with_trace) j["window_trace"] = pairs_json(est.window_trace);
  return j;
}

nlohmann::json to_json(const EpsSchedule& sched) {
  return {{"eps_max", sched.eps_max()},
          {"eps_min", sched.eps_min()},
          {"points_per_decade", sched.points_per_decade()},
          {"points", sched.values().size()}};
}

nlohmann::json to_json(const ChainCheck& chain) {
  return {{"labels", chain.labels},
          {"values", numbers(chain.values)},
          {"error_bars", numbers(chain.error_bars)},
          {"slacks", numbers(chain.slacks)},
          {"violations", chain.violations},
          {"holds", chain.holds}};
}

nlohmann::json to_json(const GammaRatio& g) {
  return {{"ambient_n", g.ambient_n}, {"s", g.s}, {"value", json_number(g.value)}};
}

nlohmann::json to_json(const EmbeddingReport& rep) {
  return {{"spec", to_json(rep.spec)},
          {"s", rep.s},
          {"base_ambient", rep.base_ambient},
          {"est_n", to_json(rep.est_n)},
          {"est_n1", to_json(rep.est_n1)},
          {"normalized_ratio", json_number(rep.normalized_ratio)},
          {"gamma_ratio_used", to_json(rep.gamma_ratio_used)},
          {"tol", rep.tol},
          {"pass", rep.pass}};
}

nlohmann::json to_json(const SandwichReport& rep) {
  return {{"spec", to_json(rep.spec)},
          {"s", rep.s},
          {"base_ambient", rep.base_ambient},
          {"est_n", to_json(rep.pair.base, false)},
          {"est_n1", to_json(rep.pair.lifted, false)},
          {"chain", to_json(rep.chain)},
          {"open_question_probe",
           {{"normalized_lower_gap", json_number(rep.probe_lower_gap)},
            {"normalized_upper_gap", json_number(rep.probe_upper_gap)},
            {"verdict_n", std::string(to_string(rep.pair.base.verdict))},
            {"verdict_n1", std::string(to_string(rep.pair.lifted.verdict))}}}};
}

nlohmann::json to_json(const AmbientBoundsReport& rep) {
  return {{"spec", to_json(rep.spec)},
          {"s", rep.s},
          {"base_ambient", rep.base_ambient},
          {"chain", to_json(rep.chain)},
          {"lower_constant", rep.lower_constant},
          {"upper_constant", rep.upper_constant},
          {"gamma_ratio", rep.gamma_ratio},
          {"lower_constant_slack", rep.lower_constant_slack},
          {"upper_constant_slack", rep.upper_constant_slack}};
}

nlohmann::json to_json(const ProductReport& rep) {
  return {{"spec_a", to_json(rep.spec_a)},
          {"spec_b", to_json(rep.spec_b)},
          {"s", rep.s},
          {"r", rep.r},
          {"dim_a", rep.dim_a},
          {"dim_b", rep.dim_b},
          {"product_backend", rep.product_backend},
          {"est_a", to_json(rep.est_a, false)},
          {"est_b", to_json(rep.est_b, false)},
          {"est_ab", to_json(rep.est_ab, false)},
          {"lower_constant", rep.lower_constant},
          {"chain", to_json(rep.chain)}};
}

nlohmann::json to_json(const ExtremalityReport& rep) {
  auto members = nlohmann::json::array();
  for (const auto& m : rep.members) {
    members.push_back({{"spec", to_json(m.spec)},
                       {"fitted_d", json_number(m.fitted_d)},
                       {"eligible", m.eligible},
                       {"lower_n", json_number(m.pair.base.lower)},
                       {"upper_n", json_number(m.pair.base.upper)},
                       {"lower_n1", json_number(m.pair.lifted.lower)},
                       {"upper_n1", json_number(m.pair.lifted.upper)},
                       {"ratio_lower", json_number(m.ratio_lower)},
                       {"ratio_upper", json_number(m.ratio_upper)},
                       {"lower_ok", m.lower_ok},
                       {"upper_ok", m.upper_ok},
                       {"measurable", m.measurable},
                       {"attains", m.attains}});
  }
  return {{"s", rep.s},
          {"gamma_ratio", to_json(rep.gamma)},
          {"tol", rep.tol},
          {"members", members},
          {"holds", rep.holds}};
}

}  // namespace mink
