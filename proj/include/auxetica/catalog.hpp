#pragma once

#include <map>
#include <string>
#include <vector>

#include "auxetica/framework.hpp"
#include "auxetica/path.hpp"

namespace auxetica {

enum class CatalogTag {
  QuartzBeta,
  CristobaliteBeta,
  HoneycombEqualEdge,
  ReentrantHoneycomb,
  ReentrantHoneycombRelaxed,
  MissingRibEquivalent,
  Pyramid3D,
  Tetra3D,
  Prism3D,
  Cube3D,
  DoubledPyramid3D,
  DoubledTetra3D,
};

struct CatalogId {
  CatalogTag tag;
  std::map<std::string, double> params;
};

std::vector<CatalogTag> all_catalog_tags();
std::string to_string(CatalogTag tag);
/// Accepts the exact tag name, case-insensitively.
CatalogTag parse_catalog_tag(const std::string& name);

/// Parameters and their default values; anything not listed is rejected.
std::map<std::string, double> default_params(CatalogTag tag);

PeriodicFramework catalog(const CatalogId& id);
inline PeriodicFramework catalog(CatalogTag tag) { return catalog(CatalogId{tag, {}}); }

// Closed-form lattice Gram matrices of the silica tilt models, as functions of
// the tilt angle theta, and their theta-derivatives.
SymMatrixd quartz_gram(double theta);
SymMatrixd quartz_gram_derivative(double theta);
SymMatrixd cristobalite_gram(double theta);
SymMatrixd cristobalite_gram_derivative(double theta);

/// Tilt path theta(tau) = theta_from + (theta_to - theta_from) tau, tau in [0, 1].
PathGenerator quartz_path(double theta_from, double theta_to);
PathGenerator cristobalite_path(double theta_from, double theta_to);

/// The bars joining the Pyramid3D white vertex to the translates S + OP,
/// S - OP, S + OR, S - OR of the apex S (in that order).
std::vector<EdgeOrbit> pyramid_extra_edges();

/// Pyramid3D plus three of the four extra bars; `omitted` in [0, 4) indexes
/// pyramid_extra_edges().
PeriodicFramework pyramid_mechanism(int omitted);

}  // namespace auxetica
