#include "mink/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "mink/config.hpp"
#include "mink/errors.hpp"
#include "mink/gamma.hpp"
#include "mink/reports.hpp"

namespace mink {

namespace {

using nlohmann::json;

struct Context {
  const CommandArgs& args;
  ExperimentConfig config;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::pair<std::string, std::string>> files;  // name, contents

  HarnessOptions options() const { return config.harness_options(); }

  const std::string& only_set(const char* command) const {
    if (args.sets.size() != 1) {
      throw ConfigError(std::string(command) + " needs exactly one --set");
    }
    return args.sets.front();
  }

  void add_csv(const std::string& name, const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream text;
    write_trace_csv(text, rows);
    files.emplace_back(name, text.str());
  }
};

std::vector<std::pair<double, double>> normalized_trace(const ContentEstimate& est) {
  std::vector<std::pair<double, double>> rows;
  rows.reserve(est.full_trace.size());
  for (const auto& [e, q] : est.full_trace) rows.emplace_back(e, q / est.gamma_norm);
  return rows;
}

struct Realized {
  const NamedSet& named;
  RealizedSet set;
  EpsSchedule schedule;
};

Realized realize_named(const Context& ctx, const std::string& name) {
  const NamedSet& named = ctx.config.find_set(name);
  RealizedSet set = realize(named.spec, ctx.config.quad_tol);
  EpsSchedule sched = ctx.config.schedule_for(named, set);
  return {named, std::move(set), std::move(sched)};
}

TubeFunction lifted_times(TubeFunction f, int times, double tol) {
  for (int i = 0; i < times; ++i) f = lift_tube(f, tol);
  return f;
}

int cmd_dim(Context& ctx, json& report) {
  const std::string& name = ctx.only_set("dim");
  const Realized r = realize_named(ctx, name);
  const TubeFunction base = lifted_times(r.set.tube, ctx.args.lifts, ctx.config.quad_tol);
  const TubeFunction up = lift_tube(base, ctx.config.quad_tol);
  const DimensionFit fit_n = box_dimension_fit(base, r.schedule);
  const DimensionFit fit_n1 = box_dimension_fit(up, r.schedule);
  const double gap = std::abs(fit_n.fitted_d - fit_n1.fitted_d);
  const double allowed = fit_n.ci_halfwidth + fit_n1.ci_halfwidth;
  report["set"] = name;
  report["schedule"] = to_json(r.schedule);
  report["ambient_n"] = base.ambient_n();
  report["fit_n"] = to_json(fit_n);
  report["fit_n1"] = to_json(fit_n1);
  report["difference"] = gap;
  report["allowed"] = allowed;
  report["pass"] = gap <= allowed;
  std::vector<std::pair<double, double>> rows;
  for (const auto& [lx, ly] : fit_n.trace) rows.emplace_back(std::exp(lx), std::exp(ly));
  ctx.add_csv("dim_" + name + "_base.csv", rows);
  rows.clear();
  for (const auto& [lx, ly] : fit_n1.trace) rows.emplace_back(std::exp(lx), std::exp(ly));
  ctx.add_csv("dim_" + name + "_lifted.csv", rows);
  return gap <= allowed ? kExitPass : kExitAssertion;
}

int cmd_content(Context& ctx, json& report) {
  const std::string& name = ctx.only_set("content");
  if (!ctx.args.s) throw ConfigError("content needs --s");
  const Realized r = realize_named(ctx, name);
  const TubeFunction tube = lifted_times(r.set.tube, ctx.args.lifts, ctx.config.quad_tol);
  const ContentEstimate est = content_estimate(tube, *ctx.args.s, r.schedule, ctx.options().content);
  report["set"] = name;
  report["schedule"] = to_json(r.schedule);
  report["estimate"] = to_json(est);
  ctx.add_csv("content_" + name + ".csv", normalized_trace(est));
  switch (est.verdict) {
    case Verdict::measurable:
    case Verdict::nondegenerate: return kExitPass;
    default: return kExitAssertion;
  }
}

double exponent_or_fit(const Context& ctx, const Realized& r) {
  if (ctx.args.s) return *ctx.args.s;
  return box_dimension_fit(r.set.tube, r.schedule).fitted_d;
}

int cmd_invariance(Context& ctx, json& report) {
  const std::string& name = ctx.only_set("invariance");
  const Realized r = realize_named(ctx, name);
  const double s = exponent_or_fit(ctx, r);
  const HarnessOptions opts = ctx.options();
  const EmbeddingReport emb = embedding_report(r.set, s, r.schedule, opts);
  const SandwichReport sw = sandwich_check(r.set, s, r.schedule, opts);
  report["set"] = name;
  report["schedule"] = to_json(r.schedule);
  report["embedding"] = to_json(emb);
  report["sandwich"] = to_json(sw);
  ctx.add_csv("invariance_" + name + "_n.csv", normalized_trace(emb.est_n));
  ctx.add_csv("invariance_" + name + "_n1.csv", normalized_trace(emb.est_n1));
  return emb.pass && sw.chain.holds ? kExitPass : kExitAssertion;
}

int cmd_sandwich(Context& ctx, json& report) {
  const std::string& name = ctx.only_set("sandwich");
  const Realized r = realize_named(ctx, name);
  const double s = exponent_or_fit(ctx, r);
  const HarnessOptions opts = ctx.options();
  const SandwichReport sw = sandwich_check(r.set, s, r.schedule, opts);
  const AmbientBoundsReport crude = ambient_bounds_check(r.set, s, r.schedule, opts);
  report["set"] = name;
  report["schedule"] = to_json(r.schedule);
  report["sandwich"] = to_json(sw);
  report["ambient_bounds"] = to_json(crude);
  return sw.chain.holds && crude.chain.holds ? kExitPass : kExitAssertion;
}

int cmd_product(Context& ctx, json& report) {
  if (ctx.args.sets.size() != 2) throw ConfigError("product needs two --set options (A then B)");
  if (!ctx.args.s || !ctx.args.r) throw ConfigError("product needs --s and --r");
  const NamedSet& a = ctx.config.find_set(ctx.args.sets[0]);
  const NamedSet& b = ctx.config.find_set(ctx.args.sets[1]);
  const RealizedSet ra = realize(a.spec, ctx.config.quad_tol);
  const EpsSchedule sched = ctx.config.schedule_for(a, ra);
  const ProductReport rep =
      product_inequality_check(a.spec, b.spec, *ctx.args.s, *ctx.args.r, sched, ctx.options());
  report["sets"] = ctx.args.sets;
  report["schedule"] = to_json(sched);
  report["product"] = to_json(rep);
  return rep.chain.holds ? kExitPass : kExitAssertion;
}

int cmd_extremality(Context& ctx, json& report) {
  if (!ctx.args.s) throw ConfigError("extremality needs --s");
  std::vector<std::string> names = ctx.args.sets;
  if (names.empty()) {
    for (const auto& ns : ctx.config.sets) names.push_back(ns.name);
  }
  std::vector<ExtremalityInput> family;
  for (const auto& name : names) {
    Realized r = realize_named(ctx, name);
    family.push_back({std::move(r.set), std::move(r.schedule)});
  }
  const ExtremalityReport rep = extremality_check(family, *ctx.args.s, ctx.options());
  report["sets"] = names;
  report["extremality"] = to_json(rep);
  return rep.holds ? kExitPass : kExitAssertion;
}

// Closed forms of tubes of a point and the unit segment in R^2.
struct ProductCase {
  const char* name;
  IntervalUnion set;
  double (*closed)(double);
};

int cmd_selftest(Context& ctx, json& report) {
  constexpr double kQuadTol = 1e-12;
  constexpr double kAgreement = 1e-10;
  std::ostream& out = ctx.out;
  json rows = json::array();
  std::size_t failures = 0;
  double max_error = 0.0;

  out << "power-lift quadrature vs closed form\n";
  out << "  N     s       eps             numeric              closed      abs_err  status\n";
  for (int n = 1; n <= 3; ++n) {
    for (int step = 0; step <= 4 * n; ++step) {
      const double s = 0.25 * step;
      for (double eps : {1.0, 0.1, 0.01}) {
        const double numeric = power_lift_integral(n, s, eps, kQuadTol);
        const double closed = gamma_ratio(n, s).value * std::pow(eps, n + 1 - s);
        const double error = std::abs(numeric - closed);
        const bool ok = error <= kAgreement * std::max(1.0, closed);
        max_error = std::max(max_error, error);
        if (!ok) ++failures;
        char line[160];
        std::snprintf(line, sizeof line, "  %d  %5.2f  %8.2g  %.15f  %.15f  %9.2e  %s\n", n, s, eps,
                      numeric, closed, error, ok ? "PASS" : "FAIL");
        out << line;
        rows.push_back({{"check", "power_lift"}, {"N", n}, {"s", s}, {"eps", eps},
                        {"numeric", numeric}, {"closed", closed}, {"abs_error", error}, {"pass", ok}});
      }
    }
  }

  out << "unit-ball constants\n";
  const std::vector<std::tuple<std::string, double, double>> constants = {
      {"gamma_fn(1)", gamma_fn(1.0), 1.0},
      {"gamma_fn(0.5)", gamma_fn(0.5), std::sqrt(std::numbers::pi)},
      {"gamma_fn(5)", gamma_fn(5.0), 24.0},
      {"gamma_ball(0)", gamma_ball(0.0), 1.0},
      {"gamma_ball(1)", gamma_ball(1.0), 2.0},
      {"gamma_ball(2)", gamma_ball(2.0), std::numbers::pi},
      {"gamma_ball(3)", gamma_ball(3.0), 4.0 * std::numbers::pi / 3.0},
      {"gamma_ratio(1,0)", gamma_ratio(1, 0.0).value, std::numbers::pi / 2.0},
      {"gamma_ratio(1,1)", gamma_ratio(1, 1.0).value, 2.0},
  };
  for (const auto& [label, got, want] : constants) {
    const double rel = std::abs(got - want) / want;
    const bool ok = rel <= 1e-13;
    if (!ok) ++failures;
    char line[160];
    std::snprintf(line, sizeof line, "  %-18s %.17g  %.17g  %9.2e  %s\n", label.c_str(), got, want,
                  rel, ok ? "PASS" : "FAIL");
    out << line;
    rows.push_back({{"check", "constant"}, {"label", label}, {"value", got}, {"expected", want},
                    {"rel_error", rel}, {"pass", ok}});
  }

  out << "product with the unit interval\n";
  const std::vector<ProductCase> cases = {
      {"point", make_points(std::vector<double>{0.0}),
       [](double e) { return 2.0 * e + std::numbers::pi * e * e; }},
      {"segment", IntervalUnion::from_intervals({{0.0, 1.0}}),
       [](double e) { return 1.0 + 4.0 * e + std::numbers::pi * e * e; }},
  };
  for (const auto& c : cases) {
    const TubeFunction base = exact_tube(c.set);
    const TubeFunction product = product_with_unit_interval(base, ctx.config.quad_tol);
    const TubeFunction lifted = lift_tube(base, ctx.config.quad_tol);
    for (double eps : {1.0, 0.1, 0.01}) {
      const double p = product(eps);
      const double closed = c.closed(eps);
      const double identity = std::abs(p - base(eps) - lifted(eps));
      const double rel = std::abs(p - closed) / closed;
      const bool ok = rel <= 10.0 * ctx.config.quad_tol && identity <= 10.0 * ctx.config.quad_tol * p;
      if (!ok) ++failures;
      char line[160];
      std::snprintf(line, sizeof line, "  %-8s eps=%-5g product=%.15f closed=%.15f rel=%9.2e  %s\n",
                    c.name, eps, p, closed, rel, ok ? "PASS" : "FAIL");
      out << line;
      rows.push_back({{"check", "product_identity"}, {"set", c.name}, {"eps", eps}, {"product", p},
                      {"closed", closed}, {"rel_error", rel}, {"identity_residual", identity},
                      {"pass", ok}});
    }
  }
  out << (failures == 0 ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
  report["checks"] = rows;
  report["failures"] = failures;
  report["max_power_lift_error"] = max_error;
  report["pass"] = failures == 0;
  return failures == 0 ? kExitPass : kExitAssertion;
}

using Handler = std::function<int(Context&, json&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"dim", cmd_dim},         {"content", cmd_content},         {"invariance", cmd_invariance},
      {"sandwich", cmd_sandwich}, {"product", cmd_product},       {"extremality", cmd_extremality},
      {"selftest", cmd_selftest},
  };
  return table;
}

std::string output_stem(const std::string& command, const CommandArgs& args) {
  std::string stem = command;
  for (const auto& s : args.sets) stem += "_" + s;
  return stem;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"dim",     "content",     "invariance", "sandwich",
                                                 "product", "extremality", "selftest"};
  return names;
}

int run_command(const std::string& command, const CommandArgs& args, std::ostream& out,
                std::ostream& err) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) {
    err << "error: unknown command '" << command << "'\n";
    return kExitError;
  }
  try {
    Context ctx{args, args.config_path ? load_config(*args.config_path) : default_library(), out, err,
                {}};
    if (args.tol) {
      if (!(*args.tol > 0.0)) throw ConfigError("--tol must be positive");
      ctx.config.invariance_tol = *args.tol;
    }
    if (args.seed) ctx.config.seed = *args.seed;
    if (args.out_dir) ctx.config.output = *args.out_dir;
    if (args.lifts < 0) throw ConfigError("--lift must be >= 0");

    json report;
    report["command"] = command;
    report["config"] = to_json(ctx.config);
    report["arguments"] = {{"sets", args.sets},
                           {"s", args.s ? json(*args.s) : json(nullptr)},
                           {"r", args.r ? json(*args.r) : json(nullptr)},
                           {"lifts", args.lifts}};
    const int code = it->second(ctx, report);
    report["exit_code"] = code;
    const std::string text = report.dump(2) + "\n";
    if (command != "selftest") out << text;
    if (!ctx.config.output.empty()) {
      const std::filesystem::path dir(ctx.config.output);
      std::filesystem::create_directories(dir);
      const std::string stem = output_stem(command, args);
      std::ofstream(dir / (stem + ".json"), std::ios::binary) << text;
      for (const auto& [name, contents] : ctx.files) {
        std::ofstream(dir / name, std::ios::binary) << contents;
      }
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace mink
