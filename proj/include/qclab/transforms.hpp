#pragma once

#include <functional>
#include <optional>
#include <string>

#include "qclab/errors.hpp"
#include "qclab/series.hpp"

namespace qclab {

enum class Domain { UnitDisk, ExteriorDisk, LowerHalfPlane };

// Pointwise dilatation data.  sup_bound is a certified bound on |value|,
// carried along so transformed fields keep a usable L-infinity estimate.
struct BeltramiField {
  std::function<cplx(const cplx&)> value;
  double sup_bound = 1.0;
};

// Pointwise integrable-density data (second-order differential coefficient).
struct PsiField {
  std::function<cplx(const cplx&)> value;
};

// Moebius map z -> (az+b)/(cz+d).
struct Mobius {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  cplx operator()(const cplx& z) const { return (a * z + b) / (c * z + d); }
  cplx deriv(const cplx& z) const {
    const cplx q = c * z + d;
    return (a * d - b * c) / (q * q);
  }
  Mobius inverse() const { return Mobius{d, -b, -c, a}; }

  static Mobius identity() { return Mobius{}; }
  // i(z-1)/(z+1): unit disk onto the lower half plane, 0 -> -i.
  static Mobius disk_to_half() { return Mobius{cplx(0, 1), cplx(0, -1), 1.0, 1.0}; }
  // i(1-z)/(1+z): exterior of the closed disk onto the lower half plane,
  // infinity -> -i.
  static Mobius exterior_to_half() { return Mobius{cplx(0, -1), cplx(0, 1), 1.0, 1.0}; }
};

// Holomorphic field that transforms with weight (sigma')^2 under pullback.
// The optional series is a Taylor expansion about 0 (UnitDisk fields only).
struct SchwarzianField {
  Domain domain = Domain::UnitDisk;
  std::function<cplx(const cplx&)> eval;
  std::optional<Series> series;
};

// Density built from an l2 coefficient vector x:
//   omega(z) = (1/sqrt(pi)) sum_m sqrt(m) x_m z^-(m+1),  psi = omega^2,
// so the integral of |psi| over {|z|>1} equals sum |x_m|^2 exactly.
struct QuadraticDifferential {
  std::vector<cplx> x;

  explicit QuadraticDifferential(std::vector<cplx> coeffs);

  cplx omega(const cplx& z) const;
  cplx operator()(const cplx& z) const;
  double l2_norm_sq() const;  // equals the area-integral norm of psi

  PsiField field() const;
};

// f(z^p)^(1/p) for normalized disk maps; only exponents = 1 mod p survive.
// out_truncation 0 means the maximal derivable length p*(N-1)+1.
TaylorMap root_transform(const TaylorMap& f, int p, std::size_t out_truncation = 0);

BeltramiField pullback(const BeltramiField& mu, int p);  // mu(z^p) conj(z)^(p-1)/z^(p-1)
PsiField pullback(const PsiField& psi, int p);           // psi(z^p) p^2 z^(2p-2)

// mu_rho(z) = mu(rho z) where |rho z| > 1, else 0; support moves out to
// {|z| > 1/rho}.
BeltramiField truncate_beltrami(const BeltramiField& mu, double rho);

TaylorMap homotopy(const TaylorMap& f, double r);             // a_n -> a_n r^(n-1)
SchwarzianField homotopy(const SchwarzianField& phi, double r);  // r^2 phi(rz)

SchwarzianField schwarzian(const TaylorMap& f);
// Derivatives taken by a trapezoidal contour stencil of the given radius;
// the radius must stay inside the holomorphy region around probe points.
SchwarzianField schwarzian(std::function<cplx(const cplx&)> f, Domain domain,
                           double stencil_radius);

// (phi compose sigma) * (sigma')^2, where sigma maps target_domain onto
// phi.domain.
SchwarzianField schwarzian_compose(const SchwarzianField& phi, const Mobius& sigma,
                                   Domain target_domain);

// sup of the hyperbolic weight times |phi|: (1-|z|^2)^2 on the disk,
// (|z|^2-1)^2 outside, |z - conj z|^2 on the half plane.  argmax, when
// requested, is reported in the field's own domain.
double bnorm(const SchwarzianField& phi, cplx* argmax = nullptr);

struct MapEvaluator {
  Domain domain = Domain::UnitDisk;
  cplx base{0.0};
  std::function<cplx(const cplx&)> eval;
};

// Ratio of two solutions of eta'' + (phi/2) eta = 0, normalized by
// w(base) = 0, w'(base) = 1, w''(base) = 0; integration along the straight
// segment from the base point with step-doubled RK4.
MapEvaluator map_from_schwarzian(const SchwarzianField& phi);

// Same construction in the coefficient algebra: phi is a Taylor expansion
// about 0 and the result is the normalized disk map with that field.
TaylorMap map_from_schwarzian_series(const Series& phi, std::size_t out_truncation);

struct HarmonicExtension {
  std::function<cplx(const cplx&)> mu;  // defined on the upper half plane
  double phi_norm = 0.0;                // half-plane weighted sup of |phi|
  double sup_mu = 0.0;                  // certified bound, phi_norm / 2
  bool hypothesis_violated = false;     // phi_norm >= 1/2
};

// mu(z) = -2 y^2 phi(conj z) for z = x + iy, y > 0.  The evaluator is
// returned even when the smallness hypothesis fails; callers check the flag.
HarmonicExtension ahlfors_weill(const SchwarzianField& phi);

}  // namespace qclab
