#pragma once

#include <string>
#include <vector>

#include "qclab/grunsky.hpp"
#include "qclab/series.hpp"

namespace qclab {

// Truncated coefficient point c_{mn}, 1-based square storage.  Unlike
// GrunskyMatrix the entries carry no sqrt(mn) weight, and symmetry is
// checked by the operations rather than at construction, so intermediate
// edits stay cheap.
struct GrunskyPoint {
  int n = 0;
  std::vector<cplx> c;  // n*n row-major, c[(m-1)*n + (k-1)]

  cplx at(int m, int k) const { return c[std::size_t(m - 1) * n + (k - 1)]; }
  cplx& at(int m, int k) { return c[std::size_t(m - 1) * n + (k - 1)]; }
};

// Divides the sqrt(mn) weights out of a coefficient matrix.
GrunskyPoint point_from_matrix(const GrunskyMatrix& G);

// sup_{m,n} sqrt(mn)|c_{mn}| plus the operator norm of (sqrt(mn) c_{mn}).
double lnorm(const GrunskyPoint& c);

struct MembershipReport {
  double kappa = 0.0;  // operator-norm part
  bool inside = true;  // kappa < 1 at this truncation
};
MembershipReport membership_probe(const GrunskyPoint& c);

struct ScanRow {
  double t = 0.0;
  double kappa = 0.0;
  double lnorm = 0.0;
  bool inside = true;
};

// Evaluates the ray {t c : t in [0,1]} at `steps` equispaced points.  The
// kappa membership criterion is homogeneous, so the inside flags must form
// a prefix of the table; a broken prefix is a numerical fault.
std::vector<ScanRow> segment_scan(const GrunskyPoint& c, int steps);

std::string scan_to_csv(const std::vector<ScanRow>& rows);

std::string point_to_json(const GrunskyPoint& c);
GrunskyPoint point_from_json(const std::string& text);

}  // namespace qclab
