#include "pdspace/metric_pair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pdspace {

namespace detail {

struct SpaceData {
  SpaceKind kind = SpaceKind::EuclideanPlaneDiagonal;
  Norm norm = Norm::Sup;
  std::size_t dim = 2;
  std::vector<std::vector<double>> matrix;
  std::vector<std::size_t> a_points;
  std::vector<std::string> labels;
  std::unique_ptr<MetricPair> inner;
  SpaceId id = 0;
};

}  // namespace detail

namespace {

constexpr double kTriangleTolerance = 1e-9;

SpaceId fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
}

// Distance from a vector of (birth, death) pairs to the diagonal in the chosen norm.
double half_plane_dist_to_diagonal(const std::vector<double>& c, Norm norm) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); i += 2) {
    double gap = std::abs(c[i + 1] - c[i]);
    if (norm == Norm::Sup) {
      acc = std::max(acc, gap / 2.0);
    } else {
      acc += gap * gap / 2.0;
    }
  }
  return norm == Norm::Sup ? acc : std::sqrt(acc);
}

double norm_dist(const std::vector<double>& a, const std::vector<double>& b, Norm norm) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double diff = std::abs(a[i] - b[i]);
    if (norm == Norm::Sup) {
      acc = std::max(acc, diff);
    } else {
      acc += diff * diff;
    }
  }
  return norm == Norm::Sup ? acc : std::sqrt(acc);
}

double sup_norm(const std::vector<double>& a) {
  double acc = 0.0;
  for (double c : a) acc = std::max(acc, std::abs(c));
  return acc;
}

std::vector<double> lerp(const std::vector<double>& a, const std::vector<double>& b, double t) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - t) * a[i] + t * b[i];
  return out;
}

Norm parse_norm(const nlohmann::json& j) {
  if (!j.contains("norm") || j["norm"].is_null()) return Norm::Sup;
  auto s = j["norm"].get<std::string>();
  if (s == "sup" || s == "SUP") return Norm::Sup;
  if (s == "euclidean" || s == "EUCLIDEAN") return Norm::Euclidean;
  throw InvalidSpace("unknown norm '" + s + "'");
}

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::EuclideanPlaneDiagonal: return "EuclideanPlaneDiagonal";
    case SpaceKind::HalfPlane2nDiagonal: return "HalfPlane2nDiagonal";
    case SpaceKind::HalfLineOrigin: return "HalfLineOrigin";
    case SpaceKind::FiniteExplicit: return "FiniteExplicit";
    case SpaceKind::SupCubeTruncatedC0: return "SupCubeTruncatedC0";
    case SpaceKind::QuotientOf: return "QuotientOf";
  }
  return "unknown";
}

std::string to_string(Norm norm) { return norm == Norm::Sup ? "sup" : "euclidean"; }

MetricPair::MetricPair(std::shared_ptr<const detail::SpaceData> data) : data_(std::move(data)) {}

MetricPair MetricPair::seal(std::shared_ptr<detail::SpaceData> data) {
  // ids come from the canonical descriptor, so they are stable across runs and processes
  MetricPair pair(data);
  data->id = fnv1a(pair.to_json().dump());
  return pair;
}

MetricPair MetricPair::plane(Norm norm) {
  auto data = std::make_shared<detail::SpaceData>();
  data->kind = SpaceKind::EuclideanPlaneDiagonal;
  data->norm = norm;
  data->dim = 2;
  return seal(std::move(data));
}

MetricPair MetricPair::half_plane_2n(std::size_t n, Norm norm) {
  if (n == 0) throw InvalidSpace("HalfPlane2nDiagonal requires n >= 1");
  auto data = std::make_shared<detail::SpaceData>();
  data->kind = SpaceKind::HalfPlane2nDiagonal;
  data->norm = norm;
  data->dim = 2 * n;
  return seal(std::move(data));
}

MetricPair MetricPair::half_line() {
  auto data = std::make_shared<detail::SpaceData>();
  data->kind = SpaceKind::HalfLineOrigin;
  data->dim = 1;
  return seal(std::move(data));
}

MetricPair MetricPair::finite(std::vector<std::vector<double>> matrix, std::vector<std::size_t> a_points,
                              std::vector<std::string> labels) {
  const std::size_t n = matrix.size();
  if (n == 0) throw InvalidSpace("FiniteExplicit requires at least one point");
  for (const auto& row : matrix) {
    if (row.size() != n) throw InvalidSpace("distance matrix must be square");
    if (!all_finite(row)) throw InvalidSpace("distance matrix entries must be finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i] != 0.0) throw InvalidSpace("distance matrix must have a zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) throw InvalidSpace("distance matrix must be symmetric");
      if (i != j && !(matrix[i][j] > 0.0)) throw InvalidSpace("distinct points must have positive distance");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (matrix[i][k] > matrix[i][j] + matrix[j][k] + kTriangleTolerance) {
          throw InvalidSpace("triangle inequality fails at (" + std::to_string(i) + ", " + std::to_string(j) +
                             ", " + std::to_string(k) + ")");
        }
      }
    }
  }
  std::sort(a_points.begin(), a_points.end());
  a_points.erase(std::unique(a_points.begin(), a_points.end()), a_points.end());
  if (a_points.empty()) throw InvalidSpace("A must be non-empty");
  if (a_points.back() >= n) throw InvalidSpace("A index out of range");
  if (!labels.empty() && labels.size() != n) throw InvalidSpace("label count must match matrix size");

  auto data = std::make_shared<detail::SpaceData>();
  data->kind = SpaceKind::FiniteExplicit;
  data->dim = 1;
  data->matrix = std::move(matrix);
  data->a_points = std::move(a_points);
  data->labels = std::move(labels);
  return seal(std::move(data));
}

MetricPair MetricPair::c0_truncation(std::size_t m) {
  if (m == 0) throw InvalidSpace("SupCubeTruncatedC0 requires m >= 1");
  auto data = std::make_shared<detail::SpaceData>();
  data->kind = SpaceKind::SupCubeTruncatedC0;
  data->dim = m;
  return seal(std::move(data));
}

MetricPair MetricPair::quotient_of(const MetricPair& inner) {
  auto data = std::make_shared<detail::SpaceData>();
  data->kind = SpaceKind::QuotientOf;
  data->norm = inner.norm();
  data->dim = inner.dim();
  data->inner = std::make_unique<MetricPair>(inner);
  return seal(std::move(data));
}

SpaceKind MetricPair::kind() const { return data_->kind; }
Norm MetricPair::norm() const { return data_->norm; }
std::size_t MetricPair::dim() const { return data_->dim; }
SpaceId MetricPair::id() const { return data_->id; }
const MetricPair* MetricPair::inner() const { return data_->inner.get(); }

bool MetricPair::is_proper() const {
  // every model space is proper: finite-dimensional closed subsets and finite spaces
  if (kind() == SpaceKind::QuotientOf) return inner()->is_proper();
  return true;
}

bool MetricPair::has_projection() const {
  if (kind() == SpaceKind::QuotientOf) return inner()->has_projection();
  return true;
}

bool MetricPair::has_geodesic() const {
  switch (kind()) {
    case SpaceKind::FiniteExplicit: return false;
    case SpaceKind::QuotientOf:
      return inner()->has_geodesic() && inner()->has_projection() && inner()->is_proper();
    default: return true;
  }
}

bool MetricPair::contains(const Point& x) const {
  if (x.space_id != id() || x.coords.size() != dim() || !all_finite(x.coords)) return false;
  const auto& c = x.coords;
  switch (kind()) {
    case SpaceKind::EuclideanPlaneDiagonal:
    case SpaceKind::HalfPlane2nDiagonal:
      for (std::size_t i = 0; i + 1 < c.size(); i += 2) {
        if (c[i] < 0.0 || c[i] > c[i + 1]) return false;
      }
      return true;
    case SpaceKind::HalfLineOrigin: return c[0] >= 0.0;
    case SpaceKind::FiniteExplicit:
      return c[0] >= 0.0 && c[0] == std::floor(c[0]) && c[0] < static_cast<double>(finite_size());
    case SpaceKind::SupCubeTruncatedC0: return true;
    case SpaceKind::QuotientOf: return inner()->contains(Point{inner()->id(), c});
  }
  return false;
}

Point MetricPair::point(std::vector<double> coords) const {
  Point p{id(), std::move(coords)};
  if (!contains(p)) {
    std::string text;
    for (double c : p.coords) text += (text.empty() ? "" : ", ") + std::to_string(c);
    throw InvalidSpace("(" + text + ") is not a point of " + to_string(kind()));
  }
  return p;
}

void MetricPair::check(const Point& x) const {
  if (x.space_id != id()) throw SpaceMismatch("point belongs to a different metric pair");
  if (x.coords.size() != dim()) throw SpaceMismatch("point dimension does not match its space");
}

double MetricPair::dist(const Point& x, const Point& y) const {
  check(x);
  check(y);
  switch (kind()) {
    case SpaceKind::EuclideanPlaneDiagonal:
    case SpaceKind::HalfPlane2nDiagonal: return norm_dist(x.coords, y.coords, norm());
    case SpaceKind::HalfLineOrigin: return std::abs(x.coords[0] - y.coords[0]);
    case SpaceKind::FiniteExplicit:
      return data_->matrix[static_cast<std::size_t>(x.coords[0])][static_cast<std::size_t>(y.coords[0])];
    case SpaceKind::SupCubeTruncatedC0: return norm_dist(x.coords, y.coords, Norm::Sup);
    case SpaceKind::QuotientOf: {
      const MetricPair& in = *inner();
      return quotient_distance(in, Point{in.id(), x.coords}, Point{in.id(), y.coords});
    }
  }
  return 0.0;
}

double MetricPair::dist_to_A(const Point& x) const {
  check(x);
  switch (kind()) {
    case SpaceKind::EuclideanPlaneDiagonal:
    case SpaceKind::HalfPlane2nDiagonal: return half_plane_dist_to_diagonal(x.coords, norm());
    case SpaceKind::HalfLineOrigin: return std::abs(x.coords[0]);
    case SpaceKind::FiniteExplicit: {
      const auto& row = data_->matrix[static_cast<std::size_t>(x.coords[0])];
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t a : data_->a_points) best = std::min(best, row[a]);
      return best;
    }
    case SpaceKind::SupCubeTruncatedC0: return sup_norm(x.coords);
    case SpaceKind::QuotientOf: return inner()->dist_to_A(Point{inner()->id(), x.coords});
  }
  return 0.0;
}

Point MetricPair::project_to_A(const Point& x) const {
  check(x);
  switch (kind()) {
    case SpaceKind::EuclideanPlaneDiagonal:
    case SpaceKind::HalfPlane2nDiagonal: {
      std::vector<double> c = x.coords;
      for (std::size_t i = 0; i + 1 < c.size(); i += 2) {
        double mid = (c[i] + c[i + 1]) / 2.0;
        c[i] = mid;
        c[i + 1] = mid;
      }
      return Point{id(), std::move(c)};
    }
    case SpaceKind::HalfLineOrigin: return Point{id(), {0.0}};
    case SpaceKind::FiniteExplicit: {
      const auto& row = data_->matrix[static_cast<std::size_t>(x.coords[0])];
      std::size_t best = data_->a_points.front();
      for (std::size_t a : data_->a_points) {
        if (row[a] < row[best]) best = a;
      }
      return Point{id(), {static_cast<double>(best)}};
    }
    case SpaceKind::SupCubeTruncatedC0: return Point{id(), std::vector<double>(dim(), 0.0)};
    case SpaceKind::QuotientOf: {
      if (!inner()->has_projection()) throw NoProjection("inner space has no projection onto A");
      Point p = inner()->project_to_A(Point{inner()->id(), x.coords});
      return Point{id(), std::move(p.coords)};
    }
  }
  throw NoProjection("no projection oracle for " + to_string(kind()));
}

Point MetricPair::geodesic(const Point& x, const Point& y, double t) const {
  check(x);
  check(y);
  if (!has_geodesic()) throw NoGeodesicOracle("no geodesic oracle for " + to_string(kind()));
  if (t == 0.0) return x;
  if (t == 1.0) return y;
  if (kind() == SpaceKind::QuotientOf) {
    const MetricPair& in = *inner();
    Point ix{in.id(), x.coords};
    Point iy{in.id(), y.coords};
    QuotientPoint q = quotient_geodesic(in, ix, iy, t);
    if (const auto* p = std::get_if<Point>(&q)) return Point{id(), p->coords};
    // the basepoint is represented by the A-point nearest to the path's entry into A
    Point a = (t * (in.dist_to_A(ix) + in.dist_to_A(iy)) <= in.dist_to_A(ix)) ? in.project_to_A(ix)
                                                                                 : in.project_to_A(iy);
    return Point{id(), std::move(a.coords)};
  }
  // all remaining geodesic model spaces are convex subsets of normed spaces
  return Point{id(), lerp(x.coords, y.coords, t)};
}

std::size_t MetricPair::finite_size() const { return data_->matrix.size(); }
const std::vector<std::size_t>& MetricPair::finite_a_points() const { return data_->a_points; }

nlohmann::json MetricPair::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind());
  switch (kind()) {
    case SpaceKind::EuclideanPlaneDiagonal:
    case SpaceKind::HalfPlane2nDiagonal:
      j["norm"] = to_string(norm());
      j["dim"] = dim();
      break;
    case SpaceKind::HalfLineOrigin: j["dim"] = 1; break;
    case SpaceKind::FiniteExplicit:
      j["dim"] = 1;
      if (!data_->labels.empty()) j["points"] = data_->labels;
      j["matrix"] = data_->matrix;
      j["A"] = data_->a_points;
      break;
    case SpaceKind::SupCubeTruncatedC0:
      j["norm"] = "sup";
      j["dim"] = dim();
      break;
    case SpaceKind::QuotientOf: j["inner"] = inner()->to_json(); break;
  }
  return j;
}

MetricPair MetricPair::from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("kind")) throw InvalidSpace("space descriptor needs a \"kind\"");
    auto kind = j["kind"].get<std::string>();
    if (kind == "EuclideanPlaneDiagonal" || kind == "plane") return plane(parse_norm(j));
    if (kind == "HalfPlane2nDiagonal" || kind == "half-plane-2n") {
      std::size_t n = j.contains("n") ? j["n"].get<std::size_t>() : j.value("dim", std::size_t{2}) / 2;
      if (j.contains("dim") && j["dim"].get<std::size_t>() % 2 != 0) throw InvalidSpace("dim must be even");
      return half_plane_2n(n, parse_norm(j));
    }
    if (kind == "HalfLineOrigin" || kind == "half-line") return half_line();
    if (kind == "FiniteExplicit" || kind == "finite") {
      std::vector<std::string> labels;
      if (j.contains("points")) labels = j["points"].get<std::vector<std::string>>();
      return finite(j.at("matrix").get<std::vector<std::vector<double>>>(),
                    j.at("A").get<std::vector<std::size_t>>(), std::move(labels));
    }
    if (kind == "SupCubeTruncatedC0" || kind == "c0") {
      std::size_t m = j.contains("m") ? j["m"].get<std::size_t>() : j.at("dim").get<std::size_t>();
      return c0_truncation(m);
    }
    if (kind == "QuotientOf" || kind == "quotient") return quotient_of(from_json(j.at("inner")));
    throw InvalidSpace("unknown space kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpace(std::string("malformed space descriptor: ") + e.what());
  }
}

double quotient_distance(const MetricPair& pair, const Point& x, const Point& y) {
  double direct = pair.dist(x, y);
  double via_a = pair.dist_to_A(x) + pair.dist_to_A(y);
  return std::min(direct, via_a);
}

double quotient_distance(const MetricPair& pair, const QuotientPoint& x, const QuotientPoint& y) {
  const auto* px = std::get_if<Point>(&x);
  const auto* py = std::get_if<Point>(&y);
  if (px && py) return quotient_distance(pair, *px, *py);
  if (px) return pair.dist_to_A(*px);
  if (py) return pair.dist_to_A(*py);
  return 0.0;
}

QuotientPoint quotient_geodesic(const MetricPair& pair, const Point& x, const Point& y, double t) {
  pair.check(x);
  pair.check(y);
  if (!pair.has_geodesic()) throw NoGeodesicOracle("no geodesic oracle for " + to_string(pair.kind()));
  if (!pair.has_projection()) throw NoGeodesicOracle("no projection onto A for " + to_string(pair.kind()));
  if (!pair.is_proper()) throw NotProper("quotient geodesics need a proper space");
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("geodesic parameter must lie in [0, 1]");

  auto tag = [&](Point p) -> QuotientPoint {
    if (pair.dist_to_A(p) == 0.0) return Basepoint{};
    return p;
  };

  const double ax = pair.dist_to_A(x);
  const double ay = pair.dist_to_A(y);
  if (pair.dist(x, y) <= ax + ay) return tag(pair.geodesic(x, y, t));

  // concatenation x -> A -> y, parametrised by quotient arclength
  const double s = t * (ax + ay);
  if (s <= ax) {
    if (ax == 0.0) return tag(x);
    return tag(pair.geodesic(x, pair.project_to_A(x), s / ax));
  }
  return tag(pair.geodesic(pair.project_to_A(y), y, (s - ax) / ay));
}

}  // namespace pdspace
