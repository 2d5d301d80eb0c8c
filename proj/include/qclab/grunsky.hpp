#pragma once

#include <string>
#include <vector>

#include "qclab/series.hpp"

namespace qclab {

// Weighted coefficient matrix beta_{mn} = sqrt(mn) * (coefficient of z^m w^n in
// the log difference quotient of the map), 1-based indices stored row-major.
// Complex symmetry is enforced on construction.
struct GrunskyMatrix {
  int n = 0;
  std::vector<cplx> beta;  // n*n, beta[(m-1)*n + (n-1)]

  GrunskyMatrix() = default;
  GrunskyMatrix(int size, std::vector<cplx> entries);  // validates symmetry

  cplx at(int m, int k) const { return beta[std::size_t(m - 1) * n + (k - 1)]; }
  cplx& at(int m, int k) { return beta[std::size_t(m - 1) * n + (k - 1)]; }
};

// Leading N x N block of the weighted coefficients of f.  Disk-class maps use
// the log of (f(z)-f(w))/(z-w) around 0; exterior maps use the 1/z variables
// with the sign convention that the diagonal example z + t/z yields +t^m/m.
GrunskyMatrix grunsky_matrix(const TaylorMap& f, int N);

// Largest singular value by power iteration on (conj G) G, tolerance 1e-12,
// deterministic start plus one seeded random restart.
double grunsky_norm(const GrunskyMatrix& G);

// Norm of the matrix rescaled entrywise by r^-(m+n) (maps univalent on |z|<r).
double weighted_grunsky_norm(const GrunskyMatrix& G, double r);

struct UnitL2Vector {
  std::vector<cplx> x;
  explicit UnitL2Vector(std::vector<cplx> entries);  // requires unit l2 norm
};

cplx bilinear_functional(const GrunskyMatrix& G, const UnitL2Vector& x);

std::string grunsky_to_json(const GrunskyMatrix& G);
GrunskyMatrix grunsky_from_json(const std::string& text);

}  // namespace qclab
