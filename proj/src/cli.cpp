#include "auxetica/cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "auxetica/catalog.hpp"
#include "auxetica/cone.hpp"
#include "auxetica/integrate.hpp"
#include "auxetica/io.hpp"
#include "auxetica/planar.hpp"
#include "auxetica/render.hpp"
#include "auxetica/study3d.hpp"

namespace auxetica {

namespace {

// Negative analysis answer under --strict.
struct NegativeVerdict {};

std::string fixed(double x) {
  std::string s = fmt::format("{:.12f}", x);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

std::string sci(double x) { return fmt::format("{:.6e}", x); }

template <typename Vec>
std::string tuple(const Vec& v, const char* sep = ", ") {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += fixed(v(i));
  }
  return out + ")";
}

std::vector<double> parse_reals(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0' || !std::isfinite(x)) throw InvalidInput(what + ": bad number '" + item + "'");
    out.push_back(x);
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (double x : parse_reals(s, what)) {
    if (x != std::floor(x)) throw InvalidInput(what + ": expected integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

// "u,v,g1,...,gd"
EdgeOrbit parse_edge(const std::string& s, int d) {
  const std::vector<int> x = parse_ints(s, "edge");
  if (static_cast<int>(x.size()) != d + 2) throw InvalidInput(fmt::format("edge '{}': expected u,v and {} period entries", s, d));
  EdgeOrbit e;
  e.u = x[0];
  e.v = x[1];
  e.gamma = Eigen::Map<const IntVector>(x.data() + 2, d);
  return e;
}

std::vector<EdgeOrbit> parse_edge_list(const std::string& s, int d) {
  std::vector<EdgeOrbit> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(parse_edge(item, d));
  return out;
}

std::string edge_text(const EdgeOrbit& e) {
  std::string g;
  for (Eigen::Index i = 0; i < e.gamma.size(); ++i) g += (i ? "," : "") + std::to_string(e.gamma(i));
  return fmt::format("{} -> {} + ({})", e.u, e.v, g);
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("AUXETICA_SEED");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw InvalidInput(fmt::format("AUXETICA_SEED is not an integer: '{}'", s));
  return v;
}

std::uint64_t seed_or(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (auto e = env_seed()) return *e;
  return fallback;
}

void emit(std::ostream& out, const std::string& file, const std::string& text) {
  if (file.empty() || file == "-")
    out << text;
  else
    write_text_file(file, text);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

FrameworkFile load_reporting(const std::string& path, bool strict, std::ostream& err) {
  std::vector<std::string> warnings;
  FrameworkFile f = load_framework(path, LoadOptions{strict}, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return f;
}

DeformationPath load_path_reporting(const std::string& path, bool strict, std::ostream& err) {
  std::vector<std::string> warnings;
  DeformationPath p = load_path(path, LoadOptions{strict}, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return p;
}

}  // namespace

std::string study3d_report(const std::vector<double>& a, double r2, int samples, unsigned long long seed) {
  if (a.size() != 5) throw InvalidInput("study3d: expected five coordinates a11,a22,a33,a13,a23");
  StudyPoint p;
  p.a = Eigen::Map<const Vector5d>(a.data());
  p.r2 = r2;
  std::string out;
  out += fmt::format("point a = {}\n", tuple(p.a));
  out += fmt::format("r2 = {}\n", fixed(r2));
  out += fmt::format("f(a) = {}\n", fixed(quartic_f(p)));
  const Vector5d g = quartic_gradient(p);
  out += fmt::format("gradient = {}\n", tuple(g));
  int lead = 0;
  while (lead < 5 && std::abs(g(lead)) < 1e-14) ++lead;
  if (lead < 5) out += fmt::format("gradient ratio = {}\n", tuple(Vector5d(g / std::abs(g(lead))), " : "));
  const auto nodes = cayley_nodes(p);
  for (int i = 0; i < 4; ++i) out += fmt::format("node {} = {}\n", i + 1, tuple(nodes[i].v, " : "));
  const auto rays = expansive_rays(p);
  for (int i = 0; i < 4; ++i) out += fmt::format("ray {} = {}\n", i + 1, tuple(rays[i].v, " : "));
  try {
    const InclusionReport r = cone_inclusion_check(p, 10, samples, seed);
    out += fmt::format("inclusion grid: {} points PSD, min eigenvalue {}\n", r.grid_points, fixed(r.grid_min_eigenvalue));
    out += fmt::format("inclusion nodes: max |min eigenvalue| {}\n", fixed(r.node_max_abs_min_eigenvalue));
    out += fmt::format("inclusion outside: {}/{} directions NotPSD\n", r.outside_not_psd, r.outside_samples);
    out += "inclusion check: pass\n";
  } catch (const InclusionViolation& e) {
    out += fmt::format("inclusion check: FAIL ({}) witness {}\n", e.what(), tuple(e.witness()));
  }
  return out;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Auxetic periodic frameworks: rigidity, auxetic cones, pseudo-triangulations"};
  app.name(args.empty() ? "auxetica" : args[0]);
  app.require_subcommand(1);
  bool strict = false;
  app.add_flag("--strict", strict, "strict file parsing; exit 1 on negative verdicts");

  int result = kExitOk;
  std::function<void()> action;

  // info
  std::string info_file;
  auto* info = app.add_subcommand("info", "vertex/edge counts, degrees of freedom, validation");
  info->add_option("file", info_file, "framework file")->required();
  info->callback([&] {
    action = [&] {
      const FrameworkFile file = load_reporting(info_file, strict, err);
      const PeriodicFramework& f = file.framework;
      out << fmt::format("dim: {}\nn: {}\nm: {}\ndof: {}\nvalid: yes\n", f.dim(), f.n(), f.m(), dof(f));
      if (f.dim() == 2) {
        const bool crossing_free = is_noncrossing(f);
        out << fmt::format("pointed: {}\nnoncrossing: {}\nppt: {}\n", is_pointed(f) ? "yes" : "no",
                           crossing_free ? "yes" : "no", is_ppt(f) ? "yes" : "no");
      }
      for (const auto& [k, v] : file.metadata) out << fmt::format("metadata {}: {}\n", k, v);
    };
  });

  // catalog
  std::string cat_id, cat_out;
  std::vector<std::string> cat_params;
  bool cat_list = false;
  auto* cat = app.add_subcommand("catalog", "write a catalog framework");
  cat->add_option("id", cat_id, "catalog tag");
  cat->add_option("--param", cat_params, "parameter k=v (repeatable)");
  cat->add_option("--out,-o", cat_out, "output file (default stdout)");
  cat->add_flag("--list", cat_list, "list catalog tags and parameters");
  cat->callback([&] {
    action = [&] {
      if (cat_list) {
        for (CatalogTag t : all_catalog_tags()) {
          out << to_string(t);
          for (const auto& [k, v] : default_params(t)) out << fmt::format(" {}={:.17g}", k, v);
          out << "\n";
        }
        return;
      }
      if (cat_id.empty()) throw InvalidInput("catalog: missing id (see --list)");
      CatalogId id{parse_catalog_tag(cat_id), {}};
      for (const std::string& kv : cat_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidInput("catalog: --param expects k=v, got '" + kv + "'");
        const std::vector<double> v = parse_reals(kv.substr(eq + 1), "--param " + kv.substr(0, eq));
        if (v.size() != 1) throw InvalidInput("catalog: --param expects one number");
        id.params[kv.substr(0, eq)] = v[0];
      }
      FrameworkFile file{catalog(id), {{"catalog", to_string(id.tag)}}};
      for (const auto& [k, v] : id.params) file.metadata["param." + k] = fmt::format("{:.17g}", v);
      emit(out, cat_out, format_framework(file));
    };
  });

  // catalog-path
  std::string cp_which, cp_out;
  double cp_from = std::numbers::pi / 3, cp_to = 0.05;
  int cp_samples = 200;
  auto* cpath = app.add_subcommand("catalog-path", "write a sampled tilt path of quartz or cristobalite");
  cpath->add_option("mineral", cp_which, "quartz or cristobalite")->required();
  cpath->add_option("--from", cp_from, "initial tilt angle");
  cpath->add_option("--to", cp_to, "final tilt angle");
  cpath->add_option("--samples", cp_samples, "number of samples")->check(CLI::Range(2, 100000));
  cpath->add_option("--out,-o", cp_out, "output file (default stdout)");
  cpath->callback([&] {
    action = [&] {
      PathGenerator gen;
      if (cp_which == "quartz")
        gen = quartz_path(cp_from, cp_to);
      else if (cp_which == "cristobalite")
        gen = cristobalite_path(cp_from, cp_to);
      else
        throw InvalidInput("catalog-path: expected quartz or cristobalite, got '" + cp_which + "'");
      emit(out, cp_out, format_path(sample_path(gen, cp_samples)));
    };
  });

  // auxetic-cone
  std::string cone_file;
  std::optional<std::uint64_t> cone_seed;
  int cone_budget = 20000;
  double cone_tol = kDefaultConeTol;
  auto* cone = app.add_subcommand("auxetic-cone", "infinitesimal auxetic cone at the current placement");
  cone->add_option("file", cone_file, "framework file")->required();
  cone->add_option("--seed", cone_seed, "seed of the multi-start search");
  cone->add_option("--budget", cone_budget, "ascent iterations")->check(CLI::PositiveNumber);
  cone->add_option("--tol", cone_tol, "eigenvalue tolerance")->check(CLI::NonNegativeNumber);
  cone->callback([&] {
    action = [&] {
      const PeriodicFramework f = load_reporting(cone_file, strict, err).framework;
      ConeOptions opts;
      opts.seed = seed_or(cone_seed, opts.seed);
      opts.budget = cone_budget;
      opts.tol = cone_tol;
      const ConeReport r = auxetic_cone(f, opts);
      out << fmt::format("verdict: {}\n", to_string(r.verdict));
      out << fmt::format("tangent_dim: {}\nimage_dim: {}\n", r.tangent_dim, r.image_dim);
      out << fmt::format("primal_value: {}\ndual_value: {}\n", sci(r.primal_value), sci(r.dual_value));
      out << fmt::format("singular_point: {}\n", r.singular_point ? "yes" : "no");
      if (r.witness_gram_velocity) {
        out << fmt::format("witness_gram_velocity_eigenvalues: {}\n", tuple(eig_sym(*r.witness_gram_velocity)));
        out << fmt::format("witness_lattice_velocity: {}\n", tuple(r.witness->lattice_vel.reshaped()));
      }
      if (r.verdict == ConeVerdict::TrivialOnly && strict) throw NegativeVerdict{};
    };
  });

  // check-path
  std::vector<std::string> cpk_files;
  std::string cpk_mode = "psd";
  int cpk_radius = 2;
  double cpk_tol = kDefaultConeTol;
  auto* cpk = app.add_subcommand("check-path", "auxeticity and related predicates along sampled paths");
  cpk->add_option("files", cpk_files, "path files (.json) or Gram traces (.csv, psd mode)")->required();
  cpk->add_option("--mode", cpk_mode, "psd|contraction|expansive|volume")
      ->check(CLI::IsMember({"psd", "contraction", "expansive", "volume"}));
  cpk->add_option("--radius", cpk_radius, "pair radius for expansive mode")->check(CLI::PositiveNumber);
  cpk->add_option("--tol", cpk_tol, "tolerance")->check(CLI::NonNegativeNumber);
  cpk->callback([&] {
    action = [&] {
      bool negative = false;
      for (const std::string& file : cpk_files) {
        if (ends_with(file, ".csv")) {
          if (cpk_mode != "psd") throw InvalidInput("check-path: Gram traces support --mode psd only");
          const PsdCheck c = check_trace_psd(parse_gram_trace_csv(read_text_file(file)), cpk_tol);
          out << fmt::format("{}: {} (min eigenvalue {})\n", file, to_string(c.verdict), sci(c.min_eigenvalue));
          negative |= c.verdict == PathVerdict::NotAuxetic;
          continue;
        }
        const DeformationPath p = load_path_reporting(file, strict, err);
        if (cpk_mode == "psd") {
          const PsdCheck c = check_path_psd(p, cpk_tol);
          out << fmt::format("{}: {} (min eigenvalue {}", file, to_string(c.verdict), sci(c.min_eigenvalue));
          if (c.verdict == PathVerdict::NotAuxetic) out << fmt::format(", first failure at tau {}", fixed(c.tau_star));
          out << ")\n";
          negative |= c.verdict == PathVerdict::NotAuxetic;
        } else if (cpk_mode == "contraction") {
          const ContractionCheck c = check_path_contraction(p, cpk_tol);
          out << fmt::format("{}: {} (operator norm {}", file, c.auxetic ? "Auxetic" : "NotAuxetic", fixed(c.norm));
          if (!c.auxetic) out << fmt::format(" at tau {} -> {}", fixed(c.tau1), fixed(c.tau2));
          out << ")\n";
          negative |= !c.auxetic;
        } else if (cpk_mode == "expansive") {
          const ExpansiveCheck c = check_expansive(p, cpk_radius);
          out << fmt::format("{}: {}", file, c.expansive ? "Expansive" : "NotExpansive");
          if (!c.expansive)
            out << fmt::format(" (pair {} shrinks at tau {})",
                               edge_text(EdgeOrbit{c.pair.u, c.pair.v, c.pair.gamma, 0.0}), fixed(c.tau_star));
          out << "\n";
          negative |= !c.expansive;
        } else {
          const VolumeCheck c = check_volume(p);
          out << fmt::format("{}: {}", file, c.non_decreasing ? "NonDecreasing" : "Decreasing");
          if (!c.non_decreasing) out << fmt::format(" (at tau {})", fixed(c.tau_star));
          out << "\n";
          negative |= !c.non_decreasing;
        }
      }
      if (negative && strict) throw NegativeVerdict{};
    };
  });

  // integrate
  std::string int_file, int_out, int_selector = "witness", int_pair;
  int int_steps = 50;
  double int_h = 1e-2, int_tol = 1e-10;
  std::vector<std::string> int_rays;
  std::vector<double> int_weights;
  std::optional<std::uint64_t> int_seed;
  auto* integ = app.add_subcommand("integrate", "integrate a deformation trajectory");
  integ->set_help_flag("--help", "print this help message and exit");
  integ->add_option("file", int_file, "framework file")->required();
  integ->add_option("--selector", int_selector, "witness|convex|kernel")
      ->check(CLI::IsMember({"witness", "convex", "kernel"}));
  integ->add_option("--steps", int_steps, "number of steps")->check(CLI::PositiveNumber);
  integ->add_option("--h", int_h, "step size")->check(CLI::PositiveNumber);
  integ->add_option("--tol", int_tol, "relative projection tolerance")->check(CLI::PositiveNumber);
  integ->add_option("--ray", int_rays, "convex: extra bars 'u,v,g..;u,v,g..' of one mechanism (repeatable)");
  integ->add_option("--weight", int_weights, "convex: weight per ray (default equal)");
  integ->add_option("--pair", int_pair, "kernel: pair 'u,v,g..' whose distance grows");
  integ->add_option("--seed", int_seed, "seed of the cone search");
  integ->add_option("--out,-o", int_out, "path file to write");
  integ->callback([&] {
    action = [&] {
      const PeriodicFramework f = load_reporting(int_file, strict, err).framework;
      DirectionSelector sel;
      if (int_selector == "convex") {
        std::vector<std::vector<EdgeOrbit>> rays;
        for (const auto& r : int_rays) rays.push_back(parse_edge_list(r, f.dim()));
        if (rays.empty()) throw InvalidInput("integrate: convex selector needs --ray");
        std::vector<double> w = int_weights;
        if (w.empty()) w.assign(rays.size(), 1.0 / static_cast<double>(rays.size()));
        sel = DirectionSelector::convex_combination(rays, w);
      } else if (int_selector == "kernel") {
        std::optional<VertexPair> pair;
        if (!int_pair.empty()) {
          const EdgeOrbit e = parse_edge(int_pair, f.dim());
          pair = VertexPair{e.u, e.v, e.gamma};
        }
        sel = DirectionSelector::kernel_one_dof(pair);
      }
      IntegrateOptions opts;
      opts.steps = int_steps;
      opts.h = int_h;
      opts.projection_tol = int_tol;
      opts.cone.seed = seed_or(int_seed, opts.cone.seed);
      const DeformationPath p = integrate_trajectory(f, sel, opts);
      const PsdCheck psd = check_path_psd(p);
      const VolumeCheck vol = check_volume(p);
      out << fmt::format("samples: {}\ntau_end: {}\n", p.samples.size(), fixed(p.samples.back().tau));
      out << fmt::format("psd: {} (min eigenvalue {})\n", to_string(psd.verdict), sci(psd.min_eigenvalue));
      out << fmt::format("volume: {}\n", vol.non_decreasing ? "NonDecreasing" : "Decreasing");
      if (!int_out.empty()) write_text_file(int_out, format_path(p));
      if (psd.verdict == PathVerdict::NotAuxetic && strict) throw NegativeVerdict{};
    };
  });

  // gen-ppt
  std::string gen_lattice, gen_out, gen_initial;
  int gen_n = 0, gen_radius = 2, gen_max_radius = 4;
  std::optional<std::uint64_t> gen_seed;
  auto* gen = app.add_subcommand("gen-ppt", "random periodic pointed pseudo-triangulation");
  gen->add_option("--lattice", gen_lattice, "lattice columns l11,l21,l12,l22 (default unit square)");
  gen->add_option("--n", gen_n, "number of vertex orbits")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "seed (falls back to AUXETICA_SEED)");
  gen->add_option("--radius", gen_radius, "initial candidate radius")->check(CLI::PositiveNumber);
  gen->add_option("--max-radius", gen_max_radius, "largest candidate radius")->check(CLI::PositiveNumber);
  gen->add_option("--edges", gen_initial, "pre-seeded edges 'u,v,g..;...'");
  gen->add_option("--out,-o", gen_out, "output file (default stdout)");
  gen->callback([&] {
    action = [&] {
      std::uint64_t seed = 0;
      if (gen_seed)
        seed = *gen_seed;
      else if (auto e = env_seed())
        seed = *e;
      else
        throw InvalidInput("gen-ppt: --seed is required (or set AUXETICA_SEED)");
      LinearMapd lattice = LinearMapd::Identity(2, 2);
      if (!gen_lattice.empty()) {
        const std::vector<double> l = parse_reals(gen_lattice, "--lattice");
        if (l.size() != 4) throw InvalidInput("gen-ppt: --lattice expects four numbers");
        lattice = Eigen::Map<const Eigen::Matrix2d>(l.data());
      }
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x706f696eu};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      Eigen::MatrixXd points(2, gen_n);
      for (int v = 0; v < gen_n; ++v) {
        Eigen::Vector2d frac(unit(rng), unit(rng));
        points.col(v) = lattice * frac;
      }
      GeneratorOptions opts;
      opts.candidate_radius = gen_radius;
      opts.max_radius = std::max(gen_max_radius, gen_radius);
      if (!gen_initial.empty()) opts.initial_edges = parse_edge_list(gen_initial, 2);
      const PeriodicFramework f = generate_ppt(lattice, points, seed, opts);
      FrameworkFile file{f, {{"generator", "gen-ppt"}, {"seed", std::to_string(seed)}}};
      emit(out, gen_out, format_framework(file));
      if (!gen_out.empty())
        out << fmt::format("n: {}\nm: {}\nppt: {}\ndof: {}\n", f.n(), f.m(), is_ppt(f) ? "yes" : "no", dof(f));
    };
  });

  // refinements
  std::string ref_file, ref_dir;
  int ref_radius = 2;
  auto* ref = app.add_subcommand("refinements", "completions to a periodic pseudo-triangulation");
  ref->add_option("file", ref_file, "planar framework file")->required();
  ref->add_option("--radius", ref_radius, "candidate radius")->check(CLI::PositiveNumber);
  ref->add_option("--out-dir", ref_dir, "write each completion as refinement_<k>.json");
  ref->callback([&] {
    action = [&] {
      const PeriodicFramework f = load_reporting(ref_file, strict, err).framework;
      const auto found = enumerate_refinements(f, ref_radius);
      out << fmt::format("refinements: {} (complete up to radius {})\n", found.size(), ref_radius);
      for (std::size_t k = 0; k < found.size(); ++k) {
        std::string added;
        for (int e = f.m(); e < found[k].m(); ++e) added += (added.empty() ? "" : "; ") + edge_text(found[k].graph.edges[e]);
        out << fmt::format("  {}: {}\n", k + 1, added);
        if (!ref_dir.empty()) {
          std::filesystem::create_directories(ref_dir);
          write_text_file((std::filesystem::path(ref_dir) / fmt::format("refinement_{}.json", k + 1)).string(),
                          format_framework(found[k]));
        }
      }
    };
  });

  // study3d
  std::string s3_at;
  double s3_r2 = 9.0 / 5.0;
  int s3_samples = 1000;
  std::optional<std::uint64_t> s3_seed;
  auto* s3 = app.add_subcommand("study3d", "quartic, gradient, nodes, rays and inclusion check of the pyramid study");
  s3->add_option("--at", s3_at, "a11,a22,a33,a13,a23 (default a(0))");
  s3->add_option("--r2", s3_r2, "squared length of the fifth bar");
  s3->add_option("--samples", s3_samples, "outside directions to test")->check(CLI::NonNegativeNumber);
  s3->add_option("--seed", s3_seed, "seed of the outside sampling");
  s3->callback([&] {
    action = [&] {
      const Vector5d a0 = initial_study_point().a;
      std::vector<double> a(a0.data(), a0.data() + 5);
      if (!s3_at.empty()) a = parse_reals(s3_at, "--at");
      out << study3d_report(a, s3_r2, s3_samples, seed_or(s3_seed, 1));
    };
  });

  // render
  std::string rd_file, rd_svg, rd_obj;
  int rd_copies = 2;
  auto* rd = app.add_subcommand("render", "SVG (d=2) or OBJ line set (d=2,3)");
  rd->add_option("file", rd_file, "framework file")->required();
  rd->add_option("--svg", rd_svg, "SVG output file ('-' for stdout)");
  rd->add_option("--obj", rd_obj, "OBJ output file ('-' for stdout)");
  rd->add_option("--copies", rd_copies, "translates per lattice direction")->check(CLI::PositiveNumber);
  rd->callback([&] {
    action = [&] {
      const PeriodicFramework f = load_reporting(rd_file, strict, err).framework;
      if (rd_svg.empty() && rd_obj.empty()) throw InvalidInput("render: give --svg or --obj");
      if (!rd_svg.empty()) emit(out, rd_svg, render_svg(f, rd_copies));
      if (!rd_obj.empty()) emit(out, rd_obj, render_obj(f, rd_copies));
    };
  });

  // gram-trace
  std::string gt_file, gt_csv;
  auto* gt = app.add_subcommand("gram-trace", "CSV of the Gram curve along a path");
  gt->add_option("file", gt_file, "path file")->required();
  gt->add_option("--csv", gt_csv, "CSV output file (default stdout)");
  gt->callback([&] {
    action = [&] {
      const DeformationPath p = load_path_reporting(gt_file, strict, err);
      emit(out, gt_csv, format_gram_trace_csv(gram_trace(p)));
    };
  });

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (action) action();
  } catch (const NegativeVerdict&) {
    result = kExitNegative;
  } catch (const Undecided& e) {
    err << "undecided: " << e.what() << "\n";
    result = kExitUndecided;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    result = kExitError;
  }
  return result;
}

}  // namespace auxetica
