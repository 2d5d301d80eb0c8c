#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qclab/series.hpp"

namespace qclab {

// Square sample grid over [-R,R]^2, M x M cells, values taken at cell
// centers, row-major with the imaginary axis as the slow index.
struct GridField {
  double extent = 4.0;
  int resolution = 0;
  std::vector<cplx> samples;

  double step() const { return 2.0 * extent / resolution; }
  cplx node(int i, int j) const {
    const double h = step();
    return cplx(-extent + (j + 0.5) * h, -extent + (i + 0.5) * h);
  }
  cplx& at(int i, int j) { return samples[std::size_t(i) * resolution + j]; }
  const cplx& at(int i, int j) const { return samples[std::size_t(i) * resolution + j]; }
};

// Coefficient field of the stretching equation.  support marks the cells the
// field lives on; sup over support must stay below 1 for the solver.
struct BeltramiGrid : GridField {
  std::vector<unsigned char> support;
};

GridField sample_field(double R, int M, const std::function<cplx(const cplx&)>& f);
BeltramiGrid sample_beltrami(double R, int M, const std::function<cplx(const cplx&)>& mu);

enum class Normalization { Hydrodynamic, ZeroFixed };

// Node images of the solved map.  rho keeps the solver's density so the map
// can be re-evaluated off the grid; shift is the constant removed by the
// ZeroFixed normalization.
struct MappedGrid {
  double extent = 4.0;
  int resolution = 0;
  std::vector<cplx> w;
  Normalization tag = Normalization::Hydrodynamic;
  std::vector<cplx> rho;
  std::vector<unsigned char> support;
  cplx shift{0.0};

  double step() const { return 2.0 * extent / resolution; }
  cplx node(int i, int j) const {
    const double h = step();
    return cplx(-extent + (j + 0.5) * h, -extent + (i + 0.5) * h);
  }
};

// -(1/pi) integral of rho(zeta)/(zeta - z) over the plane, sampled at the
// nodes.  Cell-averaged kernel near the diagonal, midpoint elsewhere, applied
// by fast convolution on a zero-padded grid.
GridField cauchy_transform(const GridField& rho);

// Derivative of the above in z, applied as a fast-transform multiplier
// (symbol conj(xi)/xi, zero at the mean).  L2 norm is preserved up to the
// mean bin.
GridField beurling_transform(const GridField& rho);

// Single-point evaluation of the same cell-averaged convolution; exact
// enough off the grid for boundary coefficient work.
cplx cauchy_point(const GridField& rho, const cplx& z);

// Geometric iteration rho <- mu(1 + Pi rho), then w = z + T rho.  ZeroFixed
// subtracts the value at the origin.
MappedGrid solve_beltrami(const BeltramiGrid& mu, Normalization norm);

// Map evaluator keeping only the term linear in mu:
// z - (1/pi) iint mu(zeta) (1/(zeta-z) - 1/zeta).  Error is quadratic in the
// sup of mu.
std::function<cplx(const cplx&)> first_variation(const BeltramiGrid& mu);

double dilatation(const BeltramiGrid& mu);

// Laurent data of a map on |z| = R0: linear * z + constant + sum b[k-1] z^-k.
struct LaurentCoeffs {
  cplx linear{0.0};
  cplx constant{0.0};
  std::vector<cplx> b;
};

LaurentCoeffs conformal_coeffs(const std::function<cplx(const cplx&)>& w, double R0, int N);
LaurentCoeffs conformal_coeffs(const MappedGrid& w, double R0, int N);

// Normalized exterior map built from circle data; the linear part is divided
// out, which leaves the matrix norms unchanged.
TaylorMap sigma_map(const LaurentCoeffs& c);

// stem.json sidecar plus stem.raw interleaved little-endian doubles.
void save_grid(const std::string& stem, const BeltramiGrid& g);
void save_grid(const std::string& stem, const MappedGrid& g);
BeltramiGrid load_beltrami_grid(const std::string& stem);
MappedGrid load_mapped_grid(const std::string& stem);

}  // namespace qclab
