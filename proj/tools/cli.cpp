#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lorlab/causal.hpp"
#include "lorlab/discrete.hpp"
#include "lorlab/error.hpp"
#include "lorlab/geodesic.hpp"
#include "lorlab/probes.hpp"
#include "lorlab/profile.hpp"
#include "lorlab/profile_io.hpp"

namespace lorlab::cli {
namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, fmt::format("--{}: '{}' is not a number", what, item));
    }
  }
  return out;
}

std::vector<double> parse_fixed(const std::string& s, std::size_t n, const std::string& what) {
  auto v = parse_list(s, what);
  if (v.size() != n) {
    throw Error(ErrorKind::Usage, fmt::format("--{} expects {} comma-separated numbers", what, n));
  }
  return v;
}

SpacetimePoint parse_point(const std::string& s, const std::string& what) {
  const auto v = parse_fixed(s, 2, what);
  return {v[0], v[1]};
}

TangentVector parse_vector(const std::string& s, const std::string& what) {
  const auto v = parse_fixed(s, 2, what);
  return {v[0], v[1]};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Usage, fmt::format("cannot write '{}'", path));
  f << text;
}

constexpr const char* kPathHeader = "s,t,x,dtds,dxds,kappa,eps\n";

std::string path_csv(const MetricProfile& profile, const GeodesicPath& path) {
  std::string out = kPathHeader;
  for (const auto& s : path.samples) {
    const auto m = profile.eval_unchecked(s.t);
    const double kappa = m.b * s.dxds;
    const double eps = -m.a * s.dtds * s.dtds + m.b * s.dxds * s.dxds;
    out += fmt::format("{},{},{},{},{},{},{}\n", num(s.s), num(s.t), num(s.x), num(s.dtds),
                       num(s.dxds), num(kappa), num(eps));
  }
  return out;
}

struct Common {
  std::string profile = "minkowski";
  std::string profile_file;
  std::string out;
  std::string witness = "witness.txt";
  std::optional<double> eps_null, drift_tol, cross_tol;

  Tolerances tolerances() const {
    Tolerances t;
    auto set = [](double& dst, const std::optional<double>& v, const char* name) {
      if (!v) return;
      if (!(*v > 0.0) || !std::isfinite(*v)) {
        throw Error(ErrorKind::Usage, fmt::format("--{} must be positive", name));
      }
      dst = *v;
    };
    set(t.eps_null, eps_null, "eps-null");
    set(t.drift_tol, drift_tol, "drift-tol");
    set(t.cross_tol, cross_tol, "cross-tol");
    return t;
  }

  MetricProfile resolve() const {
    if (profile_file.empty()) return builtin_profile(profile);
    const auto list = load_profiles(profile_file);
    for (const auto& p : list) {
      if (p.name() == profile) return p;
    }
    if (list.size() == 1) return list.front();
    throw Error(ErrorKind::UnknownProfile,
                fmt::format("'{}' not found in {}", profile, profile_file));
  }
};

struct Outcome {
  std::string text;
  int code = kOk;
  std::string witness{};  // written when code == kWitness
};

Outcome cmd_catalog(const Common& c) {
  if (c.profile_file.empty()) return {format_profiles(builtin_catalog())};
  return {format_profiles(load_profiles(c.profile_file))};
}

struct GeodesicArgs {
  std::string p = "0,0", v = "1,0", method = "ode";
  double smax = 1.0, step = 1e-3;
};

Outcome cmd_geodesic(const Common& c, const GeodesicArgs& a) {
  const auto profile = c.resolve();
  const auto tol = c.tolerances();
  const auto p = parse_point(a.p, "p");
  const auto v = parse_vector(a.v, "v");
  if (!(a.smax > 0.0) || !(a.step > 0.0)) {
    throw Error(ErrorKind::Usage, "--smax and --step must be positive");
  }
  IntegrateOptions opts;
  opts.tol = tol;
  std::string ode, quad;
  if (a.method == "ode" || a.method == "both") {
    ode = path_csv(profile, integrate_geodesic(profile, p, v, a.smax, a.step, opts));
  }
  if (a.method == "quadrature" || a.method == "both") {
    const int n = std::max(1, static_cast<int>(std::lround(a.smax / a.step)));
    quad = path_csv(profile, quadrature_path(profile, p, v, a.smax, n, tol));
  }
  if (a.method != "both") return {ode + quad};
  if (!c.out.empty()) {
    write_file(c.out + ".quadrature.csv", quad);
    return {ode};
  }
  return {ode + "\n" + quad};
}

struct DistanceArgs {
  std::string p = "0,0", q = "1,0", method = "auto";
  int samples = 64;
};

Outcome cmd_distance(const Common& c, const DistanceArgs& a) {
  const auto profile = c.resolve();
  DistanceOptions opts;
  opts.tol = c.tolerances();
  opts.maximizer_samples = a.samples;
  if (a.method == "auto") opts.method = DistanceMethod::Auto;
  else if (a.method == "reduction") opts.method = DistanceMethod::Reduction;
  else opts.method = DistanceMethod::Shooting;
  const auto r = lorentzian_distance(profile, parse_point(a.p, "p"), parse_point(a.q, "q"), opts);
  std::string out = fmt::format("value: {}\nmethod: {}\nrelation: {}\nmargin: {}\n", num(r.value),
                                to_string(r.method), to_string(r.verdict.relation),
                                num(r.verdict.margin));
  if (r.initial_velocity) {
    out += fmt::format("tau0: {}\nxi0: {}\n", num(r.initial_velocity->tau0),
                       num(r.initial_velocity->xi0));
  }
  if (r.maximizer) out += "\n" + path_csv(profile, *r.maximizer);
  return {out};
}

struct ConeArgs {
  std::string p = "0,0";
  double tmax = 1.0;
  int n = 10;
};

Outcome cmd_cone(const Common& c, const ConeArgs& a) {
  const auto profile = c.resolve();
  const auto p = parse_point(a.p, "p");
  if (a.n < 1) throw Error(ErrorKind::Usage, "--n must be at least 1");
  std::vector<double> grid;
  for (int k = 0; k <= a.n; ++k) grid.push_back(p.t + (a.tmax - p.t) * k / a.n);
  std::string out = "t,x_left,x_right\n";
  for (const auto& s : cone_boundary(profile, p, grid)) {
    out += fmt::format("{},{},{}\n", num(s.t), num(s.x_left), num(s.x_right));
  }
  return {out};
}

struct AxiomArgs {
  std::string region = "0,1,0,1";
  std::size_t n = 200;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  std::string dump;
};

std::string matrix_csv(const RelationMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + std::to_string(int(row[j]));
    out += "\n";
  }
  return out;
}

std::string matrix_csv(const RealMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + num(row[j]);
    out += "\n";
  }
  return out;
}

Outcome cmd_axioms(const Common& c, const AxiomArgs& a) {
  const auto profile = c.resolve();
  const auto r = parse_fixed(a.region, 4, "region");
  const auto space = sample_space(profile, {r[0], r[1], r[2], r[3]}, a.n, a.seed, c.tolerances());
  auto checks = check_axioms(space, a.tol).checks;
  checks.push_back(check_pushup(space));
  checks.push_back(check_causality(space));

  Outcome o;
  o.text = fmt::format("profile: {}\npoints: {}\nseed: {}\n", profile.name(), a.n, a.seed);
  for (const auto& ch : checks) {
    o.text += fmt::format("{}: {} residual={}", ch.name, to_string(ch.status), num(ch.residual));
    if (ch.status == CheckStatus::Fail) {
      o.code = kWitness;
      o.witness += fmt::format("check: {}\nresidual: {}\n", ch.name, num(ch.residual));
      for (int k = 0; k < ch.arity; ++k) {
        const auto& pt = space.points[ch.witness[k]];
        o.text += (k ? "," : " witness=") + std::to_string(ch.witness[k]);
        o.witness += fmt::format("point[{}]: {}, {}, {}\n", k, ch.witness[k], num(pt.t), num(pt.x));
      }
    }
    o.text += "\n";
  }
  if (!a.dump.empty()) {
    std::string pts = "t,x\n";
    for (const auto& p : space.points) pts += fmt::format("{},{}\n", num(p.t), num(p.x));
    write_file(a.dump + "points.csv", pts);
    write_file(a.dump + "chron.csv", matrix_csv(space.chron));
    write_file(a.dump + "causal.csv", matrix_csv(space.causal));
    write_file(a.dump + "d.csv", matrix_csv(space.dmat));
    write_file(a.dump + "tau.csv", matrix_csv(space.taumat));
  }
  return o;
}

struct ProbeArgs {
  std::string kind = "all", p, q, bounds, config;
  std::vector<std::string> directions;
};

std::string describe(const ProbeReport& r) {
  std::string out = fmt::format("{}: {} ({})\n", to_string(r.condition), to_string(r.verdict), r.reason);
  return out;
}

Outcome cmd_probe(const Common& c, const ProbeArgs& a) {
  const auto profile = c.resolve();
  auto cfg = default_implication_config(profile);
  if (!a.config.empty()) cfg = load_probe_config(a.config, cfg);
  cfg.options.tol = c.tolerances();
  if (!a.p.empty()) cfg.p = parse_point(a.p, "p");
  if (!a.q.empty()) cfg.q = parse_point(a.q, "q");
  if (!a.bounds.empty()) {
    cfg.ca_bounds = parse_list(a.bounds, "B");
    if (cfg.ca_bounds.empty()) throw Error(ErrorKind::Usage, "--B needs at least one value");
    cfg.fc_bound = cfg.ca_bounds.front();
  }
  if (!a.directions.empty()) {
    cfg.directions.clear();
    for (const auto& d : a.directions) cfg.directions.push_back(parse_vector(d, "v"));
  }

  std::vector<ProbeReport> reports;
  std::string header = fmt::format("profile: {}\np: {}, {}\nq: {}, {}\n", profile.name(),
                                   num(cfg.p.t), num(cfg.p.x), num(cfg.q.t), num(cfg.q.x));
  std::string footer;
  if (a.kind == "fc") {
    reports.push_back(probe_finite_compactness(profile, cfg.p, cfg.q, cfg.fc_bound, cfg.options).report);
  } else if (a.kind == "tcc") {
    auto seq = cfg.cauchy_sequence;
    auto bounds = cfg.cauchy_bounds;
    if (seq.empty()) {
      std::tie(seq, bounds) = geodesic_cauchy_sequence(profile, cfg.q, cfg.cauchy_terms, cfg.options.tol);
    }
    reports.push_back(probe_timelike_cauchy(profile, seq, bounds, cfg.options).report);
  } else if (a.kind == "ca") {
    auto dirs = cfg.directions;
    if (dirs.empty()) dirs = {{1.0 / std::sqrt(profile.eval(cfg.q.t).a), 0.0}};
    for (const auto& v : dirs) {
      reports.push_back(probe_condition_a(profile, cfg.p, cfg.q, v, cfg.ca_bounds, cfg.options).report);
    }
  } else {
    const auto rep = implication_report(profile, cfg);
    reports.push_back(rep.finite_compactness.report);
    reports.push_back(rep.timelike_cauchy.report);
    reports.push_back(rep.condition_a_summary);
    footer = fmt::format("consistent: {}\nnote: {}\n", rep.consistent ? "true" : "false", rep.note);
  }

  Outcome o;
  o.text = header;
  for (const auto& r : reports) o.text += describe(r);
  o.text += footer + "\n";
  for (const auto& r : reports) {
    o.text += to_record(r) + "\n";
    if (!r.holds()) {
      o.code = kWitness;
      o.witness += to_record(r) + "\n";
    }
  }
  return o;
}

struct ReduceArgs {
  std::string p = "0,0";
};

Outcome cmd_reduce(const Common& c, const ReduceArgs& a) {
  const auto profile = c.resolve();
  const auto r = minkowski_reduce(profile, parse_point(a.p, "p"));
  return {fmt::format("origin: {}\ntau: {}\nx: {}\n", num(reduction_origin(profile)), num(r.t),
                      num(r.x))};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Warped-product Lorentzian geometry toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--profile", common.profile, "Profile name (built-in or from --profile-file)");
  app.add_option("--profile-file", common.profile_file, "Profile catalog file");
  app.add_option("--out", common.out, "Output path (default: standard output)");
  app.add_option("--witness", common.witness, "Witness file written on exit code 2");
  app.add_option("--eps-null", common.eps_null, "Null classification band");
  app.add_option("--drift-tol", common.drift_tol, "Conserved-quantity drift tolerance");
  app.add_option("--cross-tol", common.cross_tol, "ODE vs quadrature tolerance");

  auto* catalog = app.add_subcommand("catalog", "List profiles");

  GeodesicArgs ga;
  auto* geodesic = app.add_subcommand("geodesic", "Trace a geodesic (CSV)");
  geodesic->add_option("--p", ga.p, "Start point t,x");
  geodesic->add_option("--v", ga.v, "Initial velocity tau,xi");
  geodesic->add_option("--smax", ga.smax, "Final affine parameter");
  geodesic->add_option("--step", ga.step, "RK4 step / sampling interval");
  geodesic->add_option("--method", ga.method)->check(CLI::IsMember({"ode", "quadrature", "both"}));

  DistanceArgs da;
  auto* distance = app.add_subcommand("distance", "Time separation and maximizer");
  distance->add_option("--p", da.p);
  distance->add_option("--q", da.q);
  distance->add_option("--method", da.method)->check(CLI::IsMember({"auto", "reduction", "shooting"}));
  distance->add_option("--samples", da.samples, "Maximizer samples");

  ConeArgs ca;
  auto* cone = app.add_subcommand("cone", "Future light-cone boundary (CSV)");
  cone->add_option("--p", ca.p);
  cone->add_option("--tmax", ca.tmax);
  cone->add_option("--n", ca.n);

  AxiomArgs aa;
  auto* axioms = app.add_subcommand("axioms", "Sample a discrete space and check the axioms");
  axioms->add_option("--region", aa.region, "t0,t1,x0,x1");
  axioms->add_option("--n", aa.n);
  axioms->add_option("--seed", aa.seed);
  axioms->add_option("--tol", aa.tol);
  axioms->add_option("--dump", aa.dump, "Prefix for matrix CSV files");

  ProbeArgs pa;
  auto* probe = app.add_subcommand("probe", "Completeness probes");
  probe->add_option("--kind", pa.kind)->check(CLI::IsMember({"fc", "tcc", "ca", "all"}));
  probe->add_option("--p", pa.p);
  probe->add_option("--q", pa.q);
  probe->add_option("--B", pa.bounds, "Bound(s), comma-separated");
  probe->add_option("--v", pa.directions, "Condition A direction tau,xi (repeatable)");
  probe->add_option("--config", pa.config, "Probe config file");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "Minkowski reduction of a point (b == 1)");
  reduce->add_option("--p", ra.p);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Outcome o;
    if (catalog->parsed()) o = cmd_catalog(common);
    else if (geodesic->parsed()) o = cmd_geodesic(common, ga);
    else if (distance->parsed()) o = cmd_distance(common, da);
    else if (cone->parsed()) o = cmd_cone(common, ca);
    else if (axioms->parsed()) o = cmd_axioms(common, aa);
    else if (probe->parsed()) o = cmd_probe(common, pa);
    else o = cmd_reduce(common, ra);
    (void)reduce;

    if (common.out.empty()) out << o.text;
    else write_file(common.out, o.text);
    if (o.code == kWitness) {
      write_file(common.witness, o.witness);
      err << "witness written to " << common.witness << "\n";
    }
    return o.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace lorlab::cli
