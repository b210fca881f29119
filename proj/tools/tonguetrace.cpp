#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tonguetrace/chart_io.hpp"
#include "tonguetrace/floquet.hpp"
#include "tonguetrace/galerkin.hpp"
#include "tonguetrace/ham.hpp"
#include "tonguetrace/solver.hpp"
#include "tonguetrace/verify.hpp"

namespace {

using nlohmann::json;

struct Range {
  double lo = 0.0, hi = 0.0;
};

Range parse_range(const std::string& s) {
  const auto pos = s.find(':');
  if (pos == std::string::npos)
    throw tt::ConfigError("range must be lo:hi, got '" + s + "'");
  try {
    Range r{std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
    if (!(r.lo < r.hi)) throw tt::ConfigError("empty range '" + s + "'");
    return r;
  } catch (const std::invalid_argument&) {
    throw tt::ConfigError("bad range '" + s + "'");
  }
}

std::pair<int, int> parse_res(const std::string& s) {
  const auto pos = s.find('x');
  if (pos == std::string::npos)
    throw tt::ConfigError("resolution must be NXxNY, got '" + s + "'");
  try {
    const int nx = std::stoi(s.substr(0, pos));
    const int ny = std::stoi(s.substr(pos + 1));
    if (nx < 1 || ny < 1) throw tt::ConfigError("resolution must be >= 1");
    return {nx, ny};
  } catch (const std::invalid_argument&) {
    throw tt::ConfigError("bad resolution '" + s + "'");
  }
}

const tt::BranchDef& resolve_branch(tt::Variant variant, const std::string& name) {
  for (const auto& b : tt::branch_catalog())
    if (b.id == name && b.variant == variant) return b;
  const char* prefix = variant == tt::Variant::Classical  ? "c-"
                       : variant == tt::Variant::Damped   ? "d-"
                                                          : "i-";
  return tt::branch_by_id(prefix + name);
}

int lambda1_from_period(const std::string& period) {
  if (period == "2pi") return 1;
  if (period == "4pi") return 2;
  throw tt::ConfigError("period must be 2pi or 4pi, got '" + period + "'");
}

struct Options {
  std::string variant = "classical";
  std::string branch;
  std::string eps_range = "0:4.5";
  std::string delta_range = "-0.5:2.1";
  std::string res = "78x135";
  std::string period = "4pi";
  std::string out;
  std::vector<std::string> overlays;
  double eps = 0.0;
  double damping = 0.1;
  double step = 0.1;
  double tol = 1e-9;
  int order = 3;
  int workers = 0;
  bool fast = false;
  bool flip = false;
};

int cmd_chart(const Options& o) {
  tt::ChartSpec cs;
  cs.variant = tt::variant_from_string(o.variant);
  const Range dr = parse_range(o.delta_range);
  const Range er = parse_range(o.eps_range);
  cs.delta_min = dr.lo;
  cs.delta_max = dr.hi;
  cs.eps_min = er.lo;
  cs.eps_max = er.hi;
  std::tie(cs.nx, cs.ny) = parse_res(o.res);
  cs.damping = cs.variant == tt::Variant::Damped ? o.damping : 0.0;
  const tt::StabilityChart chart = tt::grid_scan(cs, o.workers);
  std::vector<tt::TransitionCurve> overlay;
  for (const auto& path : o.overlays) overlay.push_back(tt::read_curve_csv(path));
  tt::write_pgm(o.out, cs.nx, cs.ny, tt::render_chart(chart, overlay));
  std::cout << "wrote " << o.out << " (" << cs.nx << "x" << cs.ny << ")\n";
  return 0;
}

int cmd_trace(const Options& o) {
  const tt::Variant variant = tt::variant_from_string(o.variant);
  const tt::BranchDef& b = resolve_branch(variant, o.branch);
  const Range er = parse_range(o.eps_range);
  tt::NewtonOptions nopt;
  nopt.tol = o.tol;
  const tt::TransitionCurve curve =
      tt::trace_curve(b, o.order, o.damping, er.lo, er.hi, o.step, nopt);
  tt::write_curve_csv(o.out, curve, o.order);
  std::cout << "wrote " << o.out << " (" << curve.points.size() << " points)\n";
  return 0;
}

int cmd_solve_point(const Options& o) {
  const tt::Variant variant = tt::variant_from_string(o.variant);
  const int lambda1 = lambda1_from_period(o.period);
  std::string name = o.branch;
  if (name.empty()) {
    // default: the curved (non-straight) branch of that variant and period
    if (variant == tt::Variant::Impulsive)
      name = lambda1 == 1 ? "i-p2-left" : "i-p4-left";
    else if (variant == tt::Variant::Classical)
      name = lambda1 == 2 ? "c-4pi-left" : "c-2pi-one-left";
    else
      name = "d-one-minus";
  }
  const tt::BranchDef& b = resolve_branch(variant, name);
  if (b.lambda1 != lambda1)
    throw tt::ConfigError("branch " + b.id + " does not have period " + o.period);
  tt::NewtonOptions nopt;
  nopt.tol = o.tol;
  const tt::CurvePoint pt = tt::solve_point(b, o.order, o.damping, o.eps, nopt);

  tt::ProblemSpec spec = tt::branch_spec(b, o.order, o.damping);
  spec.epsilon = pt.epsilon;
  spec.delta = pt.delta;
  tt::UnknownVector u;
  u.delta = pt.delta;
  u.h = pt.h;
  const tt::HamSolution<double> sol = tt::run_expansion<double>(spec, u);

  const double T = 2 * M_PI * b.lambda1;
  const int nsamples = 401;
  const double x0 = tt::eval(sol.xN, 0.0);
  const tt::Signal<double> xdot = tt::differentiate(sol.xN);
  const double v0 = tt::eval(xdot.without_impulses(), 0.0);
  const std::vector<double> rk = tt::integrate_samples(
      variant, pt.delta, pt.epsilon, spec.damping, T, nsamples, x0, v0);
  json samples = json::array();
  double rms = 0.0;
  for (int k = 0; k < nsamples; ++k) {
    const double t = T * k / (nsamples - 1);
    const double xh = tt::eval(sol.xN, t);
    samples.push_back({{"t", t}, {"x_ham", xh}, {"x_rk", rk[k]}});
    rms += (xh - rk[k]) * (xh - rk[k]);
  }
  rms = std::sqrt(rms / nsamples);

  json j;
  j["branch"] = b.id;
  j["variant"] = tt::to_string(variant);
  j["order"] = o.order;
  j["epsilon"] = pt.epsilon;
  j["delta"] = pt.delta;
  j["h"] = pt.h;
  if (pt.zeta0) j["zeta0"] = *pt.zeta0;
  j["newton_iters"] = pt.newton_iters;
  j["residual_norm"] = pt.residual_norm;
  j["floquet_check"] = pt.floquet_check;
  j["rms_vs_rk"] = rms;
  j["samples"] = samples;
  std::ofstream f(o.out);
  if (!f) throw tt::IoError("cannot open for writing: " + o.out);
  f << j.dump(2) << "\n";
  std::cout << "wrote " << o.out << " (delta = " << tt::format_double(pt.delta)
            << ", rms vs RK = " << rms << ")\n";
  return 0;
}

int cmd_verify(const Options& o) {
  tt::VerifyOptions vopt;
  vopt.fast = o.fast;
  vopt.flip_impulse_jump = o.flip;
  const std::vector<tt::CheckResult> results = tt::run_verification(vopt);
  bool all = true;
  json rows = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("%-45s %s  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    rows.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  if (!o.out.empty()) {
    json j;
    j["pass"] = all;
    j["checks"] = rows;
    std::ofstream f(o.out);
    if (!f) throw tt::IoError("cannot open for writing: " + o.out);
    f << j.dump(2) << "\n";
  }
  std::printf("verify: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transition curves of Mathieu-type oscillators: homotopy + "
               "Galerkin solver with a Floquet oracle"};
  app.set_config("--config", "", "key=value config file; flags take precedence");
  app.require_subcommand(1);
  Options o;

  CLI::App* chart = app.add_subcommand("chart", "scan a stability chart to PGM");
  chart->add_option("--variant", o.variant, "classical|damped|impulsive");
  chart->add_option("--delta", o.delta_range, "delta range lo:hi");
  chart->add_option("--eps", o.eps_range, "epsilon range lo:hi");
  chart->add_option("--res", o.res, "grid resolution NXxNY");
  chart->add_option("--c", o.damping, "damping coefficient (damped variant)");
  chart->add_option("--workers", o.workers, "worker threads (0 = auto)");
  chart->add_option("--overlay", o.overlays, "curve CSV(s) to overlay in white");
  chart->add_option("--out", o.out, "output PGM path")->required();

  CLI::App* trace = app.add_subcommand("trace", "trace a transition curve to CSV");
  trace->add_option("--variant", o.variant, "classical|damped|impulsive");
  trace->add_option("--branch", o.branch, "branch id (catalog id, or without variant prefix)")->required();
  trace->add_option("--order", o.order, "truncation order N");
  trace->add_option("--eps", o.eps_range, "epsilon range lo:hi");
  trace->add_option("--step", o.step, "continuation step in epsilon");
  trace->add_option("--c", o.damping, "damping coefficient (damped variant)");
  trace->add_option("--tol", o.tol, "Newton tolerance");
  trace->add_option("--out", o.out, "output CSV path")->required();

  CLI::App* sp = app.add_subcommand("solve-point", "solve one fixed-epsilon point to JSON");
  sp->add_option("--variant", o.variant, "classical|damped|impulsive");
  sp->add_option("--branch", o.branch, "branch id (default: curved branch of the period)");
  sp->add_option("--eps", o.eps, "epsilon value")->required();
  sp->add_option("--order", o.order, "truncation order N");
  sp->add_option("--period", o.period, "solution period: 2pi or 4pi");
  sp->add_option("--c", o.damping, "damping coefficient (damped variant)");
  sp->add_option("--tol", o.tol, "Newton tolerance");
  sp->add_option("--out", o.out, "output JSON path")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_flag("--fast", o.fast, "reduced sample counts");
  verify->add_option("--out", o.out, "optional JSON report path");
  verify->add_flag("--debug-flip-impulse-jump", o.flip)->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (chart->parsed()) return cmd_chart(o);
    if (trace->parsed()) return cmd_trace(o);
    if (sp->parsed()) return cmd_solve_point(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const tt::BranchLost& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const tt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
