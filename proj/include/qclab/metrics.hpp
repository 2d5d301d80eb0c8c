#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qclab/grunsky.hpp"
#include "qclab/models.hpp"
#include "qclab/series.hpp"
#include "qclab/transforms.hpp"

namespace qclab {

// Hyperbolic distance from the identity at extremal dilatation k: arctanh k.
double teich_distance(double k);

// One matrix-norm measurement: p-th root transform at truncation n.
struct NormRow {
  int p = 1;
  std::size_t n = 0;
  double kappa = 0.0;
};

struct NormReport {
  std::vector<NormRow> rows;          // sorted by p, then by n
  std::vector<int> unsettled_p;       // p whose two truncation levels disagree
  double kappa_hat_estimate = 0.0;    // max over even p at the largest n
  std::optional<double> k_reference;  // caller-supplied comparison value
};

// Matrix norms of root_transform(f, p) for p = 1..p_max, each measured at
// truncations n/2 and n; the estimate takes the even-p values at n.
// p_max must be even and >= 2; truncation shortfalls in f propagate.
NormReport limit_grunsky_estimate(const TaylorMap& f, int p_max, std::size_t n);

// Columns p,N,kappa with a kappa_hat / k_reference footer.
std::string norm_report_to_csv(const NormReport& rep);
std::string norm_report_to_json(const NormReport& rep);
NormReport norm_report_from_json(const std::string& text);

// Reflection coefficient of the image curve of a map with limit norm
// kappa_hat, and the associated reflection dilatation.
struct ReflectionCoefficient {
  double q = 0.0;      // 2 kappa_hat / (1 + kappa_hat^2)
  double big_q = 1.0;  // (1 + q) / (1 - q)
};
ReflectionCoefficient reflection_coefficient(double kappa_hat);

// log kappa_hat; the pole at kappa_hat = 0 is reported as -infinity.
double green_function(double kappa_hat);

// Lower bound of sup |iint mu psi dxdy| over unit-norm densities psi built
// from coefficient vectors x (QuadraticDifferential family).  Search: the
// provided samples, canonical basis vectors, and 64 seeded random starts,
// each refined by coordinate ascent on the unit sphere for at most
// refine_budget sweeps.  mu must be supported in {|z| > 1}; the result is
// clamped to mu.sup_bound and exceeding it beyond quadrature tolerance is an
// error.
double alpha_functional(const BeltramiField& mu,
                        const std::vector<UnitL2Vector>& x_samples,
                        int refine_budget);

// Norm bound (k^2 + alpha)/(1 + alpha), the Teichmueller-norm estimate with
// the pairing value normalized by k; equals k at alpha = k and k^2 at
// alpha = 0.  Requires 0 <= k < 1 and 0 <= alpha <= k.
double grunsky_bound_check(double k, double alpha);

// Max of the pairing search over pullback(truncate_beltrami(mu, rho), p) for
// rho in rho_grid, p in p_grid; x_budget random starts per pair.  Pairs run
// concurrently; the reduction order is fixed for reproducibility.
double outer_limit_estimate(const BeltramiField& mu,
                            const std::vector<double>& rho_grid,
                            const std::vector<int>& p_grid, int x_budget);

// Small-parameter norm identity check for a boundary polygon: take the
// weighted field at its critical weight r0, scale it by r = r_factor * r0,
// transplant it to the unit disk through i(w-1)/(w+1), rebuild the disk map
// from the transplanted field, and compare the measured matrix norm with
// (r/2) times the half-plane weighted sup of the unscaled field.
struct PolygonNormCheck {
  double r0 = 0.0;      // critical weight from the vertex quadratic
  double r = 0.0;       // r_factor * r0
  double b_norm = 0.0;  // half-plane weighted sup of the field at weight r0
  double target = 0.0;  // (r/2) * b_norm
  double kappa = 0.0;   // matrix norm of the reconstructed disk map
};
PolygonNormCheck polygon_norm_check(const PolygonSpec& P, double r_factor, int n);

// Taylor coefficients about 0 of scale * S(tau(w)) * tau'(w)^2 where S is
// the weighted polygon field at weight t and tau(w) = i(w-1)/(w+1); exact
// partial-fraction expansion, no numerical differentiation.
std::vector<cplx> transplanted_polygon_series(const PolygonSpec& P, double t,
                                              double scale, std::size_t len);

}  // namespace qclab
