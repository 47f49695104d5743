#include "pdspace/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pdspace/diagram.hpp"
#include "pdspace/geometry.hpp"
#include "pdspace/matching.hpp"
#include "pdspace/probes.hpp"
#include "pdspace/sampling.hpp"

namespace pdspace::cli {

namespace {

const std::vector<std::string> kProbes = {"isolated-bound", "vanishing-pair", "cauchy-chain", "eps-net",
                                          "dense-family",   "adversary",      "c0-gap"};

struct Config {
  std::string space;
  std::string norm;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::size_t jobs = 1;
};

struct ProbeFlags {
  std::string name;
  std::vector<std::string> files;
  std::string trace;
  std::optional<double> epsilon, delta, outer;
  std::size_t m = 3;
  std::size_t n_max = 50;
  std::size_t n = 10;
  std::size_t count = 100;
  std::size_t candidates = 10;
  std::size_t length = 31;
  std::size_t samples_per_unit = 100;
  std::string sequence = "converging";
  std::vector<double> extents = {4, 8, 16, 32};
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionViolated("cannot write '" + path + "'");
  f << text;
}

nlohmann::json with_norm(nlohmann::json j, const std::string& norm) {
  if (j.contains("inner")) {
    j["inner"] = with_norm(j["inner"], norm);
    return j;
  }
  const auto kind = j.value("kind", std::string{});
  if (kind != "EuclideanPlaneDiagonal" && kind != "plane" && kind != "HalfPlane2nDiagonal" && kind != "half-plane-2n") {
    throw PreconditionViolated("--norm applies to plane spaces only");
  }
  j["norm"] = norm;
  return j;
}

MetricPair resolve_space(const Config& cfg) {
  nlohmann::json j = MetricPair::plane(Norm::Sup).to_json();
  if (!cfg.space.empty()) {
    std::string text = cfg.space;
    if (text.front() != '{') {
      if (std::ifstream(text)) {
        text = read_file(text);
      } else {
        text = nlohmann::json{{"kind", text}}.dump();
      }
    }
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("space descriptor: ") + e.what(), 1, e.byte);
    }
  }
  if (!cfg.norm.empty()) j = with_norm(std::move(j), cfg.norm);
  return MetricPair::from_json(j);
}

Diagram load_diagram(const std::string& path, const MetricPair& pair) {
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return parse_diagram(read_file(path), csv ? DiagramFormat::Csv : DiagramFormat::Json, pair);
}

Exponent parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return Exponent::infinity();
  double p = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !(p >= 1.0) || !std::isfinite(p)) {
    throw PreconditionViolated("--p must be 'inf' or a real number >= 1");
  }
  return Exponent(p);
}

std::string dump(const nlohmann::json& j) { return round_numbers(j).dump(2) + "\n"; }

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Witnessed: return kWitnessed;
    case Verdict::Refuted: return kRefuted;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

std::string trace_csv(const ProbeReport& report) {
  std::string out = "param,value\n";
  for (const auto& [param, value] : report.trace) out += format_number(param) + "," + format_number(value) + "\n";
  return out;
}

// ---- dist ----------------------------------------------------------------

int cmd_dist(const Config& cfg, const std::vector<std::string>& files, const std::string& p_text,
             const std::string& matching_out, std::ostream& out) {
  const Exponent p = parse_exponent(p_text);
  const MetricPair pair = resolve_space(cfg);
  std::vector<Diagram> ds;
  for (const auto& f : files) ds.push_back(load_diagram(f, pair));

  if (ds.size() == 2) {
    DistanceResult res = distance(ds[0], ds[1], p, pair);
    out << format_number(res.value) << "\n";
    if (!matching_out.empty()) write_file(matching_out, dump(matching_to_json(res.matching)));
    return 0;
  }
  if (!matching_out.empty()) throw PreconditionViolated("--matching needs exactly two diagrams");

  const std::size_t n = ds.size();
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) tasks.emplace_back(i, j);
  }
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      auto [i, j] = tasks[t];
      try {
        matrix[i][j] = matrix[j][i] = distance(ds[i], ds[j], p, pair).value;
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t workers = std::clamp<std::size_t>(cfg.jobs, 1, std::max<std::size_t>(tasks.size(), 1));
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (cfg.format == "csv") {
    for (const auto& row : matrix) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_number(row[j]);
      out << "\n";
    }
  } else {
    nlohmann::json j = {{"files", files},
                        {"p", p.is_infinite() ? nlohmann::json("inf") : nlohmann::json(p.value())},
                        {"matrix", matrix}};
    out << dump(j);
  }
  return 0;
}

// ---- geodesic ------------------------------------------------------------

int cmd_geodesic(const Config& cfg, const std::vector<std::string>& files, std::size_t steps, std::ostream& out) {
  const MetricPair pair = resolve_space(cfg);
  const Diagram sigma = load_diagram(files[0], pair);
  const Diagram tau = load_diagram(files[1], pair);
  const DiagramPath path = geodesic_between(sigma, tau, pair);
  const ProbeReport check = midpoint_check(sigma, tau, pair, steps + 1, cfg.tolerance);

  std::vector<std::pair<double, Diagram>> frames;
  for (std::size_t k = 0; k <= steps; ++k) {
    double t = static_cast<double>(k) / static_cast<double>(steps);
    frames.emplace_back(t, path.at(t));
  }
  if (cfg.format == "csv") {
    out << "t";
    for (std::size_t i = 0; i < pair.dim(); ++i) out << ",x" << i;
    out << ",mult\n";
    for (const auto& [t, rho] : frames) {
      for (const auto& x : rho.points()) {
        out << format_number(t);
        for (double c : x.point.coords) out << "," << format_number(c);
        out << "," << x.mult << "\n";
      }
    }
    out << "# midpoint-check " << to_string(check.verdict) << "\n";
  } else {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& [t, rho] : frames) fs.push_back({{"t", t}, {"diagram", diagram_to_json(rho, pair)}});
    out << dump({{"length", path.length()}, {"frames", fs}, {"midpoint_check", report_to_json(check)}});
  }
  return exit_code(check.verdict);
}

// ---- probes --------------------------------------------------------------

Point retag(const MetricPair& pair, const Point& x) { return pair.point(x.coords); }

// Limit point and approach sequence for the vanishing-pair probe.
std::pair<Point, PointSequence> vanishing_inputs(const MetricPair& pair) {
  if (pair.kind() == SpaceKind::QuotientOf) {
    auto [x, seq] = vanishing_inputs(*pair.inner());
    return {retag(pair, x), [pair, seq](std::size_t n) -> std::optional<Point> {
              auto y = seq(n);
              if (!y) return std::nullopt;
              return retag(pair, *y);
            }};
  }
  const std::size_t dim = pair.dim();
  std::vector<double> base(dim, 0.0);
  std::vector<double> step(dim, 0.0);
  switch (pair.kind()) {
    case SpaceKind::EuclideanPlaneDiagonal:
    case SpaceKind::HalfPlane2nDiagonal:
      base[1] = 4.0;
      step[0] = step[1] = 1.0;
      break;
    case SpaceKind::HalfLineOrigin:
    case SpaceKind::SupCubeTruncatedC0:
      base[0] = 1.0;
      step[0] = 1.0;
      break;
    default: throw PreconditionViolated("vanishing pairs need a non-discrete space");
  }
  return {pair.point(base), [pair, base, step](std::size_t n) -> std::optional<Point> {
            std::vector<double> c = base;
            for (std::size_t i = 0; i < c.size(); ++i) c[i] += step[i] / static_cast<double>(n);
            return pair.point(std::move(c));
          }};
}

std::vector<Diagram> cauchy_preset(const MetricPair& pair, const std::string& which, std::size_t length) {
  const SpaceKind kind = pair.kind();
  if (kind != SpaceKind::EuclideanPlaneDiagonal && kind != SpaceKind::HalfLineOrigin) {
    throw PreconditionViolated("cauchy-chain presets exist for the plane and the half-line");
  }
  const bool plane = kind == SpaceKind::EuclideanPlaneDiagonal;
  std::vector<Diagram> seq;
  for (std::size_t j = 0; j < length; ++j) {
    const double h = std::ldexp(1.0, -static_cast<int>(j));
    std::vector<Point> pts;
    if (which == "constant") {
      if (plane) {
        pts = {pair.point({0.0, 4.0}), pair.point({1.0, 3.0})};
      } else {
        pts = {pair.point({1.0}), pair.point({2.0})};
      }
    } else if (which == "converging") {
      pts = {plane ? pair.point({0.0, 4.0 + h}) : pair.point({1.0 + h})};
    } else {
      pts = {plane ? pair.point({h, 2.0 * h}) : pair.point({h})};
    }
    seq.push_back(Diagram::canonicalize(pair, pts));
  }
  return seq;
}

std::vector<Point> adversary_points(const MetricPair& pair, double delta, double D, double eps, std::size_t k) {
  std::vector<Point> pts;
  switch (pair.kind()) {
    case SpaceKind::EuclideanPlaneDiagonal: {
      const double r = (delta + D) / 2.0;
      const double gap = pair.norm() == Norm::Sup ? 2.0 * r : std::sqrt(2.0) * r;
      for (std::size_t i = 0; i < k; ++i) {
        const double b = 2.0 * static_cast<double>(i) * eps;
        pts.push_back(pair.point({b, b + gap}));
      }
      break;
    }
    case SpaceKind::HalfLineOrigin:
      for (std::size_t i = 0; i < k; ++i) pts.push_back(pair.point({delta + static_cast<double>(i) * eps}));
      break;
    default: throw PreconditionViolated("adversary points are generated for the plane and the half-line");
  }
  return pts;
}

ProbeReport dense_family_probe(const MetricPair& pair, std::size_t n, std::size_t count, Rng& rng) {
  if (pair.kind() != SpaceKind::HalfLineOrigin) throw PreconditionViolated("dense-family runs on the half-line");
  const double r = 1.0 / static_cast<double>(n);
  const EpsNet net = half_line_net(n);
  const std::vector<Point> samples = sample_annulus(pair, r, static_cast<double>(n), 0.0, 1000, rng);
  const DenseFamily family = dense_family(pair, n, net, samples);
  DiagramShape shape;
  shape.max_height = static_cast<double>(n) / 2.0;

  ProbeReport report;
  report.probe = "dense-family";
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const Diagram sigma = random_diagram(pair, rng, shape);
    const Approximation a = approximate_from_family(sigma, family, pair);
    if (a.distance > r) ++failures;
    worst = std::max(worst, a.distance);
    report.trace.emplace_back(static_cast<double>(i), a.distance);
  }
  report.verdict = failures == 0 ? Verdict::Witnessed : Verdict::Refuted;
  report.witnesses = {{"n", n},       {"bound", r},       {"centers", family.centers.size()},
                      {"diagrams", count}, {"max_error", worst}, {"failures", failures}};
  return report;
}

int cmd_probe(const Config& cfg, const ProbeFlags& f, std::ostream& out) {
  Rng rng(cfg.seed);
  ProbeReport report;
  const std::string& name = f.name;
  if (name == "c0-gap") {
    report = c0_truncation_gap(f.m);
  } else if (name == "isolated-bound") {
    MetricPair pair = cfg.space.empty() ? random_finite_space(rng, 6, 1) : resolve_space(cfg);
    if (f.files.size() == 2) {
      report = isolated_point_bound(pair, load_diagram(f.files[0], pair), load_diagram(f.files[1], pair));
    } else if (f.files.empty()) {
      Diagram sigma = random_diagram(pair, rng);
      Diagram tau = random_diagram(pair, rng);
      for (int tries = 0; sigma == tau && tries < 1000; ++tries) tau = random_diagram(pair, rng);
      report = isolated_point_bound(pair, sigma, tau);
    } else {
      throw PreconditionViolated("isolated-bound takes two diagram files or none");
    }
  } else if (name == "vanishing-pair") {
    const MetricPair pair = resolve_space(cfg);
    auto [x, seq] = vanishing_inputs(pair);
    report = vanishing_pair_demo(pair, x, seq, f.n_max, f.epsilon.value_or(0.05));
  } else if (name == "cauchy-chain") {
    const MetricPair pair = resolve_space(cfg);
    std::vector<Diagram> seq;
    if (f.files.empty()) {
      seq = cauchy_preset(pair, f.sequence, f.length);
    } else {
      for (const auto& path : f.files) seq.push_back(load_diagram(path, pair));
    }
    report = cauchy_chain_limit(seq, pair).report;
  } else if (name == "eps-net") {
    const MetricPair pair = resolve_space(cfg);
    report = net_growth_probe(pair, f.delta.value_or(1.0), f.outer.value_or(2.0), f.epsilon.value_or(0.25), cfg.seed,
                              f.extents, f.samples_per_unit);
  } else if (name == "dense-family") {
    const MetricPair pair = cfg.space.empty() ? MetricPair::half_line() : resolve_space(cfg);
    if (f.n == 0) throw PreconditionViolated("--n must be positive");
    report = dense_family_probe(pair, f.n, f.count, rng);
  } else if (name == "adversary") {
    const MetricPair pair = resolve_space(cfg);
    const double eps = f.epsilon.value_or(1.0);
    const double delta = f.delta.value_or(1.0);
    const double D = f.outer.value_or(2.0);
    const std::vector<Point> pts = adversary_points(pair, delta, D, eps, f.candidates);
    std::vector<Diagram> cands;
    for (std::size_t i = 0; i < f.candidates; ++i) cands.push_back(random_diagram(pair, rng));
    report = separability_adversary(pair, cands, delta, D, eps, pts).report;
  }
  if (!f.trace.empty()) write_file(f.trace, trace_csv(report));
  out << (cfg.format == "csv" ? trace_csv(report) : dump(report_to_json(report)));
  return exit_code(report.verdict);
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), value);
  std::string s(buf, r.ptr);
  int digits = 0;
  bool leading = true;
  for (char c : s) {
    if (c == 'e') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++digits;
  }
  if (digits <= 12) return s;
  r = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return std::string(buf, r.ptr);
}

nlohmann::json round_numbers(const nlohmann::json& j) {
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) return j;
    return std::strtod(format_number(v).c_str(), nullptr);
  }
  if (j.is_array() || j.is_object()) {
    nlohmann::json out = j;
    for (auto& v : out) v = round_numbers(v);
    return out;
  }
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distances, geodesics and probes for persistence diagrams over metric pairs", "pdspace"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--space", cfg.space, "Metric pair: descriptor file, inline JSON, or kind name");
  app.add_option("--norm", cfg.norm, "Norm override for plane spaces")->check(CLI::IsMember({"sup", "euclidean"}));
  app.add_option("--tolerance", cfg.tolerance, "Tolerance for approximate checks")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized probes");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads for pairwise distances")->check(CLI::PositiveNumber);

  std::vector<std::string> dist_files;
  std::string p_text = "inf";
  std::string matching_out;
  auto* dist = app.add_subcommand("dist", "Distance between diagrams, or a pairwise matrix for more than two");
  dist->add_option("files", dist_files, "Diagram files (.json or .csv)")->required()->expected(2, -1);
  dist->add_option("--p", p_text, "Exponent: inf or a real number >= 1");
  dist->add_option("--matching", matching_out, "Write the optimal matching as JSON");

  std::vector<std::string> geo_files;
  std::size_t steps = 10;
  auto* geo = app.add_subcommand("geodesic", "Frames along a geodesic between two diagrams");
  geo->add_option("files", geo_files, "Source and target diagrams")->required()->expected(2);
  geo->add_option("--steps", steps, "Number of intervals")->check(CLI::Range(std::size_t{1}, std::size_t{100000}));

  ProbeFlags pf;
  auto* probe = app.add_subcommand("probe", "Run a probe and print its report");
  probe->add_option("name", pf.name, "Probe name")->required()->check(CLI::IsMember(kProbes));
  probe->add_option("files", pf.files, "Diagram inputs for probes that take them");
  probe->add_option("--trace", pf.trace, "Also write the trace as CSV");
  probe->add_option("--epsilon", pf.epsilon, "Radius or target bound");
  probe->add_option("--delta", pf.delta, "Inner annulus radius");
  probe->add_option("--D", pf.outer, "Outer annulus radius");
  probe->add_option("--m", pf.m, "c0 truncation dimension");
  probe->add_option("--n-max", pf.n_max, "Longest vanishing-pair diagram");
  probe->add_option("--n", pf.n, "Dense-family level");
  probe->add_option("--count", pf.count, "Random diagrams for dense-family");
  probe->add_option("--candidates", pf.candidates, "Adversary candidate count");
  probe->add_option("--sequence", pf.sequence, "Cauchy-chain preset")
      ->check(CLI::IsMember({"converging", "constant", "absorbing"}));
  probe->add_option("--length", pf.length, "Cauchy-chain preset length");
  probe->add_option("--extents", pf.extents, "eps-net sample extents")->delimiter(',');
  probe->add_option("--samples-per-unit", pf.samples_per_unit, "eps-net samples per unit of extent");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kBadInput;
  }

  try {
    if (dist->parsed()) return cmd_dist(cfg, dist_files, p_text, matching_out, out);
    if (geo->parsed()) return cmd_geodesic(cfg, geo_files, steps, out);
    return cmd_probe(cfg, pf, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const SpaceMismatch& e) {
    err << "space mismatch: " << e.what() << "\n";
    return kSpaceMismatch;
  } catch (const TooLarge& e) {
    err << "too large: " << e.what() << "\n";
    return kTooLarge;
  } catch (const NoGeodesicOracle& e) {
    err << "no geodesic: " << e.what() << "\n";
    return kNoGeodesic;
  } catch (const NotProper& e) {
    err << "not proper: " << e.what() << "\n";
    return kNoGeodesic;
  } catch (const NoProjection& e) {
    err << "no projection: " << e.what() << "\n";
    return kNoGeodesic;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace pdspace::cli
