// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <boost/math/special_functions/gamma.hpp>

#include "mink/config.hpp"
#include "mink/estimate.hpp"
#include "mink/gamma.hpp"
#include "mink/invariance.hpp"
#include "mink/point_cloud.hpp"
#include "mink/tube.hpp"
#include "oracles/oracles.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Unit-ball volume straight from Boost's gamma, independent of the library.
double ball(double k) {
  return std::pow(std::numbers::pi, k / 2.0) / boost::math::tgamma(k / 2.0 + 1.0);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const double kCantorDim = std::log(2.0) / std::log(3.0);

// Contents of 1D sets are limits as eps -> 0; sets without truncation can be
// sampled arbitrarily close to 0.
const mink::EpsSchedule kFine(1e-8, 1e-12);

Outcome point_contents() {
  const auto base = mink::exact_tube(mink::make_points(std::vector<double>{0.0}));
  const auto lifted = mink::lift_tube(base, 1e-10);
  const auto e1 = mink::content_estimate(base, 0.0, kFine);
  const auto e2 = mink::content_estimate(lifted, 0.0, kFine);
  const double worst = std::max({rel(e1.lower, 2.0), rel(e1.upper, 2.0), rel(e2.lower, std::numbers::pi),
                                 rel(e2.upper, std::numbers::pi), rel(e1.normalized_lower, 1.0),
                                 rel(e1.normalized_upper, 1.0), rel(e2.normalized_lower, 1.0),
                                 rel(e2.normalized_upper, 1.0)});
  return {worst <= 1e-8, fmt("M_R=%.12f M_R2=%.12f normalized %.12f / %.12f, worst rel %.1e",
                             e1.midpoint(), e2.midpoint(), e1.normalized_midpoint(),
                             e2.normalized_midpoint(), worst)};
}

Outcome segment_contents() {
  const auto base = mink::exact_tube(mink::IntervalUnion::from_intervals({{0.0, 1.0}}));
  const auto lifted = mink::lift_tube(base, 1e-10);
  const auto e1 = mink::content_estimate(base, 1.0, kFine);
  const auto e2 = mink::content_estimate(lifted, 1.0, kFine);
  const double worst = std::max({rel(e1.lower, 1.0), rel(e1.upper, 1.0), rel(e2.lower, 2.0),
                                 rel(e2.upper, 2.0), rel(e1.normalized_lower, 1.0),
                                 rel(e1.normalized_upper, 1.0), rel(e2.normalized_lower, 1.0),
                                 rel(e2.normalized_upper, 1.0)});
  return {worst <= 1e-8, fmt("M_R=%.12f M_R2=%.12f normalized %.12f / %.12f, worst rel %.1e",
                             e1.midpoint(), e2.midpoint(), e1.normalized_midpoint(),
                             e2.normalized_midpoint(), worst)};
}

Outcome power_lift_grid() {
  double worst = 0.0;
  int rows = 0, failures = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i <= 4 * n; ++i) {
      const double s = 0.25 * i;
      for (double eps : {1.0, 0.1, 0.01}) {
        const double closed = ball(n + 1 - s) / ball(n - s) * std::pow(eps, n + 1 - s);
        const double numeric = mink::power_lift_integral(n, s, eps, 1e-12);
        const double err = std::abs(numeric - closed) / std::max(1.0, closed);
        worst = std::max(worst, err);
        ++rows;
        if (err > 1e-10) ++failures;
      }
    }
  }
  return {failures == 0, fmt("%d rows, %d over tolerance, max scaled error %.2e", rows, failures, worst)};
}

Outcome a_string_embedding() {
  const mink::SetSpec spec{mink::AStringSpec{1.0, 1000000}};
  const auto r = mink::embedding_report(spec, 0.5, mink::EpsSchedule(1e-3, 1e-7));
  const bool ok = std::abs(r.normalized_ratio - 1.0) <= 0.02 &&
                  r.est_n.verdict == mink::Verdict::measurable &&
                  r.est_n1.verdict == mink::Verdict::measurable;
  return {ok, fmt("ratio %.6f, verdicts %s / %s", r.normalized_ratio,
                  std::string(mink::to_string(r.est_n.verdict)).c_str(),
                  std::string(mink::to_string(r.est_n1.verdict)).c_str())};
}

Outcome library_ordering() {
  const auto lib = mink::default_library();
  const auto opts = lib.harness_options();
  std::size_t violations = 0;
  std::string detail;
  for (const auto& ns : lib.sets) {
    const auto set = mink::realize(ns.spec, lib.quad_tol);
    const auto sched = lib.schedule_for(ns, set);
    const double d = mink::box_dimension_fit(set.tube, sched).fitted_d;
    const auto r = mink::sandwich_check(set, d, sched, opts);
    violations += r.chain.violations;
    detail += fmt("%s(d=%.4f,%zu) ", ns.name.c_str(), d, r.chain.violations);
  }
  return {violations == 0, fmt("%zu violations: ", violations) + detail};
}

Outcome cantor_oscillation() {
  const auto tube = mink::cantor_tube();
  const std::array<mink::EpsSchedule, 3> windows = {
      mink::EpsSchedule(1e-2, 1e-4), mink::EpsSchedule(1e-4, 1e-6), mink::EpsSchedule(1e-6, 1e-8)};
  bool ok = true;
  std::string detail;
  for (const auto& w : windows) {
    const auto e = mink::content_estimate(tube, kCantorDim, w);
    const double ratio = e.upper / e.lower;
    ok = ok && ratio >= 1.01 && e.verdict != mink::Verdict::measurable;
    detail += fmt("[%.0e,%.0e] upper/lower=%.4f %s; ", w.eps_min(), w.eps_max(), ratio,
                  std::string(mink::to_string(e.verdict)).c_str());
  }
  const double d = mink::box_dimension_fit(tube, mink::EpsSchedule(1e-2, 1e-8)).fitted_d;
  ok = ok && std::abs(d - 0.6309) <= 0.01;
  return {ok, detail + fmt("fit %.4f", d)};
}

Outcome product_identity() {
  const auto built = mink::a_string(1.0, 1000000);
  const auto base = mink::exact_tube(built.set);
  const auto lifted = mink::lift_tube(base, 1e-10);
  const auto product = mink::product_with_unit_interval(base, 1e-10);
  oracle::Segments segs;
  for (const auto& iv : built.set.intervals()) segs.push_back({iv.lo, iv.hi});
  const mink::EpsSchedule sched(1e-3, 1e-7);
  double worst_identity = 0.0, worst_oracle = 0.0;
  for (double eps : sched.values()) {
    const double p = product(eps);
    worst_identity = std::max(worst_identity, std::abs(p - base(eps) - lifted(eps)) / p);
    const double independent = oracle::tube_1d(segs, eps) + oracle::tube_2d_of_segments(segs, eps);
    worst_oracle = std::max(worst_oracle, rel(p, independent));
  }
  return {worst_identity <= 1e-8 && worst_oracle <= 1e-8,
          fmt("max |P-B-L|/P = %.1e, max rel vs closed-form product = %.1e", worst_identity,
              worst_oracle)};
}

Outcome constant_ordering() {
  int points = 0, bad = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i <= 20 * n; ++i) {
      const double s = std::min(0.05 * i, static_cast<double>(n));
      const double lo = std::pow(2.0, -(n - 1 - s) / 2.0);
      const double g = mink::gamma_ratio(n, s).value;
      const double independent = ball(n + 1 - s) / ball(n - s);
      const bool interior = i > 0 && i < 20 * n;
      ++points;
      const bool ordered = interior ? (lo < g && g < 2.0) : (lo <= g && g <= 2.0 * (1 + 1e-15));
      if (!ordered || rel(g, independent) > 1e-13) ++bad;
    }
  }
  return {bad == 0, fmt("%d grid points, %d out of order", points, bad)};
}

Outcome backend_agreement() {
  const auto pts = oracle::scatter_2d(20, 20240601);
  std::vector<std::vector<double>> rows;
  for (const auto& p : pts) rows.push_back({p[0], p[1]});
  const mink::PointCloud cloud(2, rows);
  bool ok = true;
  std::string detail;
  for (double eps : {0.05, 0.1}) {
    const auto mc = mink::mc_tube_measure(cloud, eps, 1000000, 20240601);
    const auto grid = mink::grid_tube_measure(cloud, eps, eps / 16.0);
    const double diff = std::abs(mc.estimate - grid.estimate);
    const double allowed = 3.0 * mc.std_error + grid.bound;
    ok = ok && diff <= allowed;
    detail += fmt("eps=%.2f mc=%.6f grid=%.6f |diff|=%.2e allowed=%.2e exact=%.6f; ", eps,
                  mc.estimate, grid.estimate, diff, allowed, oracle::union_of_discs_area(pts, eps));
  }
  return {ok, detail};
}

struct Captured {
  int code = -1;
  std::string out;
};

Captured capture(const std::string& args) {
  const std::string cmd = std::string(MINKCLI_PATH) + " " + args + " 2>/dev/null";
  Captured c;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  const int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

std::string directory_digest(const std::filesystem::path& dir) {
  std::string all;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    all += f.filename().string() + "\n" + ss.str();
  }
  return all;
}

Outcome determinism() {
  const auto tmp = std::filesystem::temp_directory_path() / "mink_acceptance_determinism";
  std::filesystem::remove_all(tmp);
  const std::string cfg = std::string(MINK_CONFIG_DIR) + "/acceptance.yaml";
  bool ok = true;
  std::string detail;
  for (const std::string cmd : {"selftest", "invariance --set a_string_1 --s 0.5"}) {
    std::array<Captured, 2> runs;
    std::array<std::string, 2> files;
    // Same output path both times: the path is part of the embedded config.
    for (int i = 0; i < 2; ++i) {
      std::filesystem::remove_all(tmp);
      runs[i] = capture(cmd + " --config " + cfg + " --seed 99 --out " + tmp.string());
      files[i] = directory_digest(tmp);
    }
    const bool same = runs[0].code == runs[1].code && runs[0].out == runs[1].out && files[0] == files[1] &&
                      !runs[0].out.empty();
    ok = ok && same;
    detail += fmt("%s: exit %d, %zu stdout bytes, %zu file bytes, %s; ", cmd.c_str(), runs[0].code,
                  runs[0].out.size(), files[0].size(), same ? "identical" : "DIFFERENT");
    std::filesystem::remove_all(tmp);
  }
  return {ok, detail};
}

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> run;
};

}  // namespace

// With an argument, runs only the criterion with that number.
int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::vector<Criterion> criteria = {
      {1, "point: contents 2 in R and pi in R^2, normalized 1", 1.0, point_contents},
      {2, "unit segment: contents 1 in R and 2 in R^2, normalized 1", 1.0, segment_contents},
      {3, "power-law lift quadrature vs closed form", 10.0, power_lift_grid},
      {4, "a-string normalized content invariant under embedding", 60.0, a_string_embedding},
      {5, "four-term content ordering across the default library", 0.0, library_ordering},
      {6, "cantor set not measurable, dimension log2/log3", 0.0, cantor_oscillation},
      {7, "product with [0,1] equals base plus lifted tube", 0.0, product_identity},
      {8, "crude constants bracket the gamma ratio", 1.0, constant_ordering},
      {9, "monte carlo and grid backends agree", 0.0, backend_agreement},
      {10, "selftest and invariance outputs byte-identical", 0.0, determinism},
  };
  int failed = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += fmt(" [over time limit %.0fs]", c.time_limit);
    }
    if (!o.pass) ++failed;
    std::printf("%s [%2d] %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 1;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
