#include "auxetica/planar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "auxetica/tangent.hpp"

namespace auxetica {

namespace {

using Eigen::Vector2d;
using std::numbers::pi;

constexpr double kAngleTol = 1e-9;

void require_planar(const PeriodicFramework& f) {
  if (f.dim() != 2) throw DimensionError("planar operations need a 2-dimensional framework");
}

double angle_of(const Vector2d& v) {
  double a = std::atan2(v.y(), v.x());
  if (a < 0) a += 2 * pi;
  return a;
}

struct Endpoint {
  int vertex;
  IntVector gamma;
  bool operator==(const Endpoint& o) const { return vertex == o.vertex && gamma == o.gamma; }
};

struct Segment {
  Vector2d a, b;
  Endpoint ia, ib;
};

Segment edge_segment(const PeriodicFramework& f, const EdgeOrbit& e, const IntVector& shift) {
  return {f.point(e.u, shift), f.point(e.v, IntVector(e.gamma + shift)), {e.u, shift}, {e.v, IntVector(e.gamma + shift)}};
}

double cross(const Vector2d& a, const Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

int orient(const Vector2d& a, const Vector2d& b, const Vector2d& c, double eps) {
  const double x = cross(b - a, c - a);
  if (std::abs(x) <= eps) return 0;
  return x > 0 ? 1 : -1;
}

bool on_segment(const Vector2d& a, const Vector2d& b, const Vector2d& p, double eps) {
  return p.x() >= std::min(a.x(), b.x()) - eps && p.x() <= std::max(a.x(), b.x()) + eps &&
         p.y() >= std::min(a.y(), b.y()) - eps && p.y() <= std::max(a.y(), b.y()) + eps;
}

// Whether two segments meet anywhere other than a shared endpoint.
bool segments_conflict(const Segment& s, const Segment& t) {
  const double scale = std::max({(s.b - s.a).norm(), (t.b - t.a).norm(), 1e-300});
  const double eps = 1e-12 * scale * scale;
  const double lin = 1e-12 * scale;
  const bool aa = s.ia == t.ia, ab = s.ia == t.ib, ba = s.ib == t.ia, bb = s.ib == t.ib;
  const int shared = aa + ab + ba + bb;
  if (shared >= 2) return true;
  if (shared == 1) {
    const Vector2d x = (aa || ab) ? s.a : s.b;
    const Vector2d y1 = (aa || ab) ? s.b : s.a;
    const Vector2d y2 = (aa || ba) ? t.b : t.a;
    // Touching at the shared endpoint is fine unless the segments overlap.
    return std::abs(cross(y1 - x, y2 - x)) <= eps && (y1 - x).dot(y2 - x) > 0;
  }
  const int o1 = orient(s.a, s.b, t.a, eps), o2 = orient(s.a, s.b, t.b, eps);
  const int o3 = orient(t.a, t.b, s.a, eps), o4 = orient(t.a, t.b, s.b, eps);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(s.a, s.b, t.a, lin)) return true;
  if (o2 == 0 && on_segment(s.a, s.b, t.b, lin)) return true;
  if (o3 == 0 && on_segment(t.a, t.b, s.a, lin)) return true;
  if (o4 == 0 && on_segment(t.a, t.b, s.b, lin)) return true;
  return false;
}

// Translates delta for which edge `e2 + delta` can meet edge `e1`, found from
// the bounding boxes of both segments in lattice coordinates.
std::vector<IntVector> candidate_shifts(const PeriodicFramework& f, const Eigen::Matrix2d& inv, const EdgeOrbit& e1,
                                        const EdgeOrbit& e2, int radius) {
  const IntVector zero = IntVector::Zero(2);
  const Segment s1 = edge_segment(f, e1, zero), s2 = edge_segment(f, e2, zero);
  const Vector2d a1 = inv * s1.a, b1 = inv * s1.b, a2 = inv * s2.a, b2 = inv * s2.b;
  int lo[2], hi[2];
  for (int i = 0; i < 2; ++i) {
    lo[i] = std::min(-radius, static_cast<int>(std::floor(std::min(a1(i), b1(i)) - std::max(a2(i), b2(i)) - 1e-9)));
    hi[i] = std::max(radius, static_cast<int>(std::ceil(std::max(a1(i), b1(i)) - std::min(a2(i), b2(i)) + 1e-9)));
  }
  std::vector<IntVector> out;
  for (int x = lo[0]; x <= hi[0]; ++x)
    for (int y = lo[1]; y <= hi[1]; ++y) {
      IntVector d(2);
      d << x, y;
      out.push_back(d);
    }
  return out;
}

bool edges_conflict(const PeriodicFramework& f, const Eigen::Matrix2d& inv, const EdgeOrbit& e1, const EdgeOrbit& e2,
                    bool same_edge, int radius) {
  const IntVector zero = IntVector::Zero(2);
  const Segment s1 = edge_segment(f, e1, zero);
  for (const IntVector& d : candidate_shifts(f, inv, e1, e2, radius)) {
    if (same_edge && !d.any()) continue;
    if (segments_conflict(s1, edge_segment(f, e2, d))) return true;
  }
  return false;
}

bool directions_pointed(std::vector<double> angles) {
  if (angles.size() < 2) return true;
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 2 * pi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  return gap > pi + kAngleTol;
}

std::vector<double> star_angles(const PeriodicFramework& f, int v) {
  std::vector<double> out;
  for (const Vector2d& d : vertex_star(f, v).directions) out.push_back(angle_of(d));
  return out;
}

struct HalfEdge {
  int from, to;
  IntVector gamma;  // translate of `to` relative to `from`
  double angle;
  int twin;
};

}  // namespace

VertexStar vertex_star(const PeriodicFramework& f, int v) {
  require_planar(f);
  VertexStar star;
  for (const EdgeOrbit& e : f.graph.edges) {
    const Vector2d w = f.edge_vector(e);
    if (e.u == v) star.directions.push_back(w.normalized());
    if (e.v == v) star.directions.push_back(-w.normalized());
  }
  return star;
}

bool is_pointed(const VertexStar& star) {
  std::vector<double> angles;
  for (const Vector2d& d : star.directions) angles.push_back(angle_of(d));
  return directions_pointed(angles);
}

bool is_pointed(const PeriodicFramework& f) {
  require_planar(f);
  for (int v = 0; v < f.n(); ++v)
    if (!directions_pointed(star_angles(f, v))) return false;
  return true;
}

bool is_noncrossing(const PeriodicFramework& f, int radius) {
  require_planar(f);
  if (radius < 1) throw InvalidInput("is_noncrossing: radius must be at least 1");
  const Eigen::Matrix2d inv = f.lattice.inverse();
  for (int i = 0; i < f.m(); ++i)
    for (int j = i; j < f.m(); ++j)
      if (edges_conflict(f, inv, f.graph.edges[i], f.graph.edges[j], i == j, radius)) return false;
  return true;
}

bool is_insertable(const PeriodicFramework& f, const EdgeOrbit& e) {
  require_planar(f);
  const EdgeOrbit c = canonical(e);
  if (c.u == c.v && !c.gamma.any()) return false;
  for (const EdgeOrbit& old : f.graph.edges)
    if (same_orbit(old, c)) return false;
  const PeriodicFramework g = with_edges(f, {c});
  if (!directions_pointed(star_angles(g, c.u)) || !directions_pointed(star_angles(g, c.v))) return false;
  const Eigen::Matrix2d inv = f.lattice.inverse();
  const EdgeOrbit& added = g.graph.edges.back();
  if (edges_conflict(g, inv, added, added, true, 1)) return false;
  for (const EdgeOrbit& old : f.graph.edges)
    if (edges_conflict(g, inv, old, added, false, 1)) return false;
  return true;
}

std::vector<FaceWalk> classify_faces(const PeriodicFramework& f) {
  require_planar(f);
  if (!is_noncrossing(f)) throw InvalidInput("classify_faces: framework has crossing edges");

  std::vector<HalfEdge> half;
  for (const EdgeOrbit& e : f.graph.edges) {
    const Vector2d w = f.edge_vector(e);
    const int k = static_cast<int>(half.size());
    half.push_back({e.u, e.v, e.gamma, angle_of(w), k + 1});
    half.push_back({e.v, e.u, IntVector(-e.gamma), angle_of(-w), k});
  }
  // Outgoing half-edges per vertex in counterclockwise order.
  std::vector<std::vector<int>> out(f.n());
  for (int h = 0; h < static_cast<int>(half.size()); ++h) out[half[h].from].push_back(h);
  std::vector<int> position(half.size());
  for (auto& list : out) {
    std::sort(list.begin(), list.end(), [&](int x, int y) { return half[x].angle < half[y].angle; });
    for (std::size_t i = 0; i < list.size(); ++i) position[list[i]] = static_cast<int>(i);
  }
  // next(h): the outgoing half-edge immediately clockwise from twin(h).
  auto next = [&](int h) {
    const int t = half[h].twin;
    const auto& list = out[half[t].from];
    const int i = position[t];
    return list[(i + static_cast<int>(list.size()) - 1) % list.size()];
  };

  std::vector<FaceWalk> faces;
  std::vector<bool> used(half.size(), false);
  for (int start = 0; start < static_cast<int>(half.size()); ++start) {
    if (used[start]) continue;
    FaceWalk face;
    IntVector offset = IntVector::Zero(2);
    int h = start;
    do {
      used[h] = true;
      offset += half[h].gamma;
      const int nx = next(h);
      double angle = half[half[h].twin].angle - half[nx].angle;
      if (angle <= 0) angle += 2 * pi;
      face.corners.push_back({half[h].to, offset, angle});
      if (angle < pi - kAngleTol) ++face.convex_corners;
      h = nx;
    } while (h != start);
    face.closed = !offset.any();
    // Report corners relative to the first corner's translate.
    const IntVector base = face.corners.back().gamma;
    for (auto& c : face.corners) c.gamma -= base;
    std::rotate(face.corners.begin(), face.corners.end() - 1, face.corners.end());
    face.pseudo_triangle = face.closed && face.convex_corners == 3;
    faces.push_back(std::move(face));
  }
  return faces;
}

bool is_ppt(const PeriodicFramework& f) {
  if (f.dim() != 2) return false;
  if (f.m() != 2 * f.n()) return false;
  if (!validate(f).empty()) return false;
  if (!is_pointed(f) || !is_noncrossing(f)) return false;
  const std::vector<FaceWalk> faces = classify_faces(f);
  if (f.n() - f.m() + static_cast<int>(faces.size()) != 0) return false;
  return std::all_of(faces.begin(), faces.end(), [](const FaceWalk& w) { return w.pseudo_triangle; });
}

std::vector<EdgeOrbit> candidate_edges(int n, int radius) {
  std::vector<EdgeOrbit> out;
  const std::vector<IntVector> box = integer_box(2, radius);
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v)
      for (const IntVector& g : box) {
        const EdgeOrbit e{u, v, g, 0.0};
        if (u == v && (!g.any() || !(canonical(e).gamma == g))) continue;
        out.push_back(e);
      }
  return out;
}

std::vector<EdgeOrbit> canonical_edge_set(const PeriodicFramework& f) {
  std::vector<EdgeOrbit> edges;
  for (const EdgeOrbit& e : f.graph.edges) edges.push_back(canonical(e));
  std::sort(edges.begin(), edges.end(), [](const EdgeOrbit& a, const EdgeOrbit& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return lex_less(a.gamma, b.gamma);
  });
  return edges;
}

PeriodicFramework generate_ppt(const LinearMapd& lattice, const Eigen::MatrixXd& points, std::uint64_t seed,
                               const GeneratorOptions& options) {
  if (lattice.rows() != 2 || lattice.cols() != 2 || points.rows() != 2)
    throw DimensionError("generate_ppt works in the plane");
  if (points.cols() < 1) throw InvalidInput("generate_ppt: need at least one point");
  if (options.candidate_radius < 1 || options.max_radius < options.candidate_radius)
    throw InvalidInput("generate_ppt: bad candidate radius");
  PeriodicFramework f = make_framework(lattice, points, options.initial_edges);
  require_valid(f);
  {
    // Points must be distinct modulo the lattice.
    const Eigen::Matrix2d inv = lattice.inverse();
    for (int i = 0; i < f.n(); ++i)
      for (int j = i + 1; j < f.n(); ++j) {
        const Vector2d c = inv * (f.positions.col(j) - f.positions.col(i));
        if ((c.array() - c.array().round()).abs().maxCoeff() < 1e-12)
          throw InvalidInput("generate_ppt: points coincide modulo the lattice");
      }
  }

  const int target = 2 * f.n();
  int radius = options.candidate_radius;
  std::vector<EdgeOrbit> pool = candidate_edges(f.n(), radius);
  std::seed_seq base{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 master(base);
  while (true) {
    std::mt19937_64 step_rng(master());
    std::vector<EdgeOrbit> order = pool;
    std::shuffle(order.begin(), order.end(), step_rng);
    bool inserted = false;
    for (const EdgeOrbit& c : order) {
      if (is_insertable(f, c)) {
        f = with_edges(f, {c});
        inserted = true;
        break;
      }
    }
    if (inserted) {
      if (f.m() > target) throw std::logic_error("generate_ppt: inserted more than 2n edge orbits");
      continue;
    }
    if (f.m() == target) return f;
    if (radius < options.max_radius) {
      pool = candidate_edges(f.n(), ++radius);
      continue;
    }
    throw GeneratorStalled("generate_ppt: no insertable edge orbit with |gamma| <= " + std::to_string(radius) +
                           " after " + std::to_string(f.m()) + " of " + std::to_string(target) + " edge orbits");
  }
}

std::vector<PeriodicFramework> enumerate_refinements(const PeriodicFramework& f, int candidate_radius) {
  require_planar(f);
  require_valid(f);
  if (candidate_radius < 1) throw InvalidInput("enumerate_refinements: radius must be at least 1");
  const int target = 2 * f.n();
  std::vector<PeriodicFramework> found;
  if (f.m() > target) return found;
  const std::vector<EdgeOrbit> pool = candidate_edges(f.n(), candidate_radius);
  std::set<std::vector<std::tuple<int, int, std::vector<int>>>> seen;

  auto key = [](const PeriodicFramework& g) {
    std::vector<std::tuple<int, int, std::vector<int>>> k;
    for (const EdgeOrbit& e : canonical_edge_set(g))
      k.emplace_back(e.u, e.v, std::vector<int>(e.gamma.data(), e.gamma.data() + e.gamma.size()));
    return k;
  };

  auto search = [&](auto&& self, const PeriodicFramework& g, std::size_t first) -> void {
    if (g.m() == target) {
      if (is_ppt(g) && seen.insert(key(g)).second) found.push_back(g);
      return;
    }
    for (std::size_t i = first; i < pool.size(); ++i)
      if (is_insertable(g, pool[i])) self(self, with_edges(g, {pool[i]}), i + 1);
  };
  search(search, f, 0);
  std::sort(found.begin(), found.end(), [&](const PeriodicFramework& a, const PeriodicFramework& b) {
    return key(a) < key(b);
  });
  return found;
}

double honeycomb_surface(double a11, double a12, double a22, double s) {
  const double det = a11 * a22 - a12 * a12;
  if (!(det > 0) || !(a11 > 0)) throw InvalidInput("honeycomb_surface: degenerate Gram matrix");
  return a11 * a22 * (a11 + a22 - 2 * a12) - 4 * s * det;
}

HoneycombPoint honeycomb_point(double a11, double a12, double a22) {
  const double det = a11 * a22 - a12 * a12;
  if (!(det > 0) || !(a11 > 0)) throw InvalidInput("honeycomb_point: degenerate Gram matrix");
  return {a11, a12, a22, a11 * a22 * (a11 + a22 - 2 * a12) / (4 * det)};
}

const char* to_string(HoneycombVerdict v) {
  switch (v) {
    case HoneycombVerdict::Nontrivial: return "Nontrivial";
    case HoneycombVerdict::TrivialOnly: return "TrivialOnly";
    case HoneycombVerdict::Boundary: return "Boundary";
  }
  return "Unknown";
}

HoneycombTest honeycomb_auxetic_test(const HoneycombPoint& pt, double tol) {
  const double residual = honeycomb_surface(pt.a11, pt.a12, pt.a22, pt.s);
  const double size = std::max({1.0, std::abs(pt.a11), std::abs(pt.a22), std::abs(pt.a12), std::abs(pt.s)});
  if (std::abs(residual) > 1e-9 * size * size * size) throw InvalidInput("honeycomb_auxetic_test: point is off the surface");
  HoneycombTest t;
  t.f11 = pt.a22 * (2 * pt.a11 + pt.a22 - 2 * pt.a12 - 4 * pt.s);
  t.f12 = 8 * pt.s * pt.a12 - 2 * pt.a11 * pt.a22;
  t.f22 = pt.a11 * (pt.a11 + 2 * pt.a22 - 2 * pt.a12 - 4 * pt.s);
  const double p = 2 * t.f11 * t.f22 - t.f12 * t.f12;
  t.discriminant = p * p - 4 * t.f11 * t.f11 * t.f22 * t.f22;
  const double scale = std::pow(std::max({std::abs(t.f11), std::abs(t.f12), std::abs(t.f22), 1e-300}), 4);
  if (t.discriminant > tol * scale) {
    t.verdict = HoneycombVerdict::Nontrivial;
  } else if (t.discriminant < -tol * scale) {
    t.verdict = HoneycombVerdict::TrivialOnly;
  } else {
    t.verdict = HoneycombVerdict::Boundary;
  }
  return t;
}

TriangleShape period_triangle_shape(double a11, double a12, double a22, double tol) {
  // Dot products of the two sides at each corner of (0, lambda_1, lambda_2).
  const double corners[] = {a12, a11 - a12, a22 - a12};
  const double size = std::max({a11, a22, std::abs(a12)});
  TriangleShape shape = TriangleShape::Acute;
  for (double c : corners) {
    if (c < -tol * size) return TriangleShape::Obtuse;
    if (c <= tol * size) shape = TriangleShape::Right;
  }
  return shape;
}

}  // namespace auxetica
