#include "auxetica/render.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>

namespace auxetica {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fx(double x) {
  std::string s = fmt::format("{:.6f}", x);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

std::vector<IntVector> translates(int dim, int copies) {
  std::vector<IntVector> out;
  for (const IntVector& g : integer_box(dim, copies)) {
    if ((g.array() >= 0).all() && (g.array() < copies).all()) out.push_back(g);
  }
  return out;
}

}  // namespace

std::string render_svg(const PeriodicFramework& f, int copies) {
  if (f.dim() != 2) throw DimensionError("render_svg needs a planar framework");
  if (copies < 1) throw InvalidInput("render_svg: copies must be at least 1");
  const std::vector<IntVector> ts = translates(2, copies);

  // World-space extent of everything drawn.
  std::vector<Eigen::Vector2d> pts;
  const Eigen::Vector2d l1 = f.lattice.col(0), l2 = f.lattice.col(1);
  for (const Eigen::Vector2d& c : {Eigen::Vector2d::Zero().eval(), l1, (l1 + l2).eval(), l2}) pts.push_back(c);
  for (const IntVector& t : ts) {
    for (int v = 0; v < f.n(); ++v) pts.push_back(f.point(v, t));
    for (const EdgeOrbit& e : f.graph.edges) pts.push_back(f.point(e.v, t + e.gamma));
  }
  Eigen::Vector2d lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double extent = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});
  const double size = 480.0, margin = 16.0;
  const double scale = size / extent;
  const double width = (hi.x() - lo.x()) * scale + 2 * margin;
  const double height = (hi.y() - lo.y()) * scale + 2 * margin;
  auto X = [&](const Eigen::Vector2d& p) { return fx(margin + (p.x() - lo.x()) * scale); };
  auto Y = [&](const Eigen::Vector2d& p) { return fx(margin + (hi.y() - p.y()) * scale); };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
      fx(width), fx(height));
  out += fmt::format("<rect x=\"0.000000\" y=\"0.000000\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", fx(width),
                     fx(height));
  out += "<polygon class=\"cell\" points=\"";
  {
    const std::array<Eigen::Vector2d, 4> cell = {Eigen::Vector2d::Zero(), l1, l1 + l2, l2};
    for (std::size_t i = 0; i < cell.size(); ++i) out += fmt::format("{}{},{}", i ? " " : "", X(cell[i]), Y(cell[i]));
  }
  out += "\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
  const double radius = 4.0;
  for (const IntVector& t : ts) {
    out += fmt::format("<g id=\"t{}_{}\">\n", t(0), t(1));
    for (const EdgeOrbit& e : f.graph.edges) {
      const Eigen::Vector2d a = f.point(e.u, t), b = f.point(e.v, t + e.gamma);
      out += fmt::format(
          "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"1.500000\"/>\n", X(a), Y(a),
          X(b), Y(b));
    }
    for (int v = 0; v < f.n(); ++v) {
      const Eigen::Vector2d p = f.point(v, t);
      out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n", X(p), Y(p), fx(radius),
                         kPalette[v % kPalette.size()]);
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_obj(const PeriodicFramework& f, int copies) {
  if (f.dim() != 2 && f.dim() != 3) throw DimensionError("render_obj needs d = 2 or d = 3");
  if (copies < 1) throw InvalidInput("render_obj: copies must be at least 1");
  auto vertex = [&](const Eigen::VectorXd& p) {
    return fmt::format("v {} {} {}\n", fx(p(0)), fx(p(1)), f.dim() == 3 ? fx(p(2)) : fx(0.0));
  };
  std::string out = fmt::format("# periodic framework: d={} n={} m={} copies={}\n", f.dim(), f.n(), f.m(), copies);
  int next = 1;
  for (const IntVector& t : translates(f.dim(), copies)) {
    for (int v = 0; v < f.n(); ++v) {
      out += vertex(f.point(v, t));
      ++next;
    }
    for (const EdgeOrbit& e : f.graph.edges) {
      out += vertex(f.point(e.u, t));
      out += vertex(f.point(e.v, t + e.gamma));
      out += fmt::format("l {} {}\n", next, next + 1);
      next += 2;
    }
  }
  return out;
}

}  // namespace auxetica
