#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qclab/series.hpp"
#include "qclab/transforms.hpp"

namespace qclab {

struct KappaInfo {
  enum class Flag { Unknown, EqualToK, StrictlyLess };
  Flag flag = Flag::Unknown;
  std::optional<double> value;
};

// Reference map with known norms.  taylor is empty for grid-only models;
// extension, when present, is a full-plane quasiconformal representative and
// extension_mu its dilatation, with |extension_mu| equal to known_k.
struct ModelMap {
  std::string name;
  double parameter = 0.0;
  std::function<cplx(const cplx&)> eval;
  std::function<TaylorMap(std::size_t)> taylor;
  std::optional<double> known_k;
  std::function<KappaInfo(int)> known_kappa_p;
  std::function<cplx(const cplx&)> extension;
  std::function<cplx(const cplx&)> extension_mu;
};

ModelMap koebe_map(double t);          // z/(1+tz)^2
ModelMap mobius_map(double t);         // z/(1-tz)
ModelMap exterior_diag_map(double t);  // disk form z/(1+tz^2) of z + t/z
ModelMap radial_stretch_map(double alpha);  // annulus power stretch, no Taylor data

// Reference instances at t = 0.5, alpha = 1.  Deliberately not included: the
// classical translated-slit example whose order-2 transform pushes the matrix
// norm above the original extension bound; realizing its extremal coefficient
// needs pole-type densities outside this tool's scope.
std::vector<ModelMap> catalog();

// Unbounded rectilinear boundary data: one entry of alphas/prevertices per
// finite vertex, the remaining vertex at infinity.  Exterior angle at vertex j
// is pi*alphas[j] with alphas[j] in (1,2).
struct PolygonSpec {
  std::vector<double> alphas;
  std::vector<double> prevertices;
  cplx d0{0.0}, d1{1.0};

  std::size_t vertex_count() const { return alphas.size() + 1; }
};

PolygonSpec polygon_from_json(const std::string& text);
std::string polygon_to_json(const PolygonSpec& P);

// t weights the derivative term of the field: t*b' - b^2/2 with b = f''/f'
// of the boundary map.  t = 1 is the true Schwarzian.
SchwarzianField polygon_schwarzian(const PolygonSpec& P, double t = 1.0);

// d1 * integral from 0 to z of prod (xi - a_j)^(alpha_j - 1) dxi + d0, along
// the straight segment, with the power branch continuous from below the real
// axis.  alpha_j = 1 factors are allowed here as degenerate oracle cases.
cplx sc_map_eval(const PolygonSpec& P, const cplx& z);

// Positive root of (1/2)[sum e_j^2 + (sum e_j)^2] r^2 - (sum e_j) r - 2 = 0
// with e_j = alpha_j - 1.
double r0_root(const PolygonSpec& P);

std::vector<PolygonSpec> polygon_catalog();

}  // namespace qclab
