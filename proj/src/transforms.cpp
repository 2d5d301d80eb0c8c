#include "qclab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace qclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

cplx ipow(cplx z, int p) {
  cplx r = 1.0;
  while (p > 0) {
    if (p & 1) r *= z;
    z *= z;
    p >>= 1;
  }
  return r;
}

}  // namespace

QuadraticDifferential::QuadraticDifferential(std::vector<cplx> coeffs) : x(std::move(coeffs)) {
  if (x.empty()) throw DimensionError("quadratic differential needs at least one coefficient");
}

cplx QuadraticDifferential::omega(const cplx& z) const {
  const cplx iz = 1.0 / z;
  cplx acc = 0.0;
  cplx zp = iz * iz;  // z^-(m+1) starting at m = 1
  for (std::size_t m = 1; m <= x.size(); ++m) {
    acc += std::sqrt(double(m)) * x[m - 1] * zp;
    zp *= iz;
  }
  return acc / std::sqrt(kPi);
}

cplx QuadraticDifferential::operator()(const cplx& z) const {
  const cplx w = omega(z);
  return w * w;
}

double QuadraticDifferential::l2_norm_sq() const {
  double s = 0.0;
  for (const cplx& c : x) s += std::norm(c);
  return s;
}

PsiField QuadraticDifferential::field() const {
  QuadraticDifferential copy = *this;
  return PsiField{[copy](const cplx& z) { return copy(z); }};
}

TaylorMap root_transform(const TaylorMap& f, int p, std::size_t out_truncation) {
  if (f.klass != MapClass::DiskS) throw DomainError("root transform expects a normalized disk map");
  if (p < 1) throw DomainError("root transform order must be positive");
  const std::size_t T = f.truncation();
  const std::size_t max_out = std::size_t(p) * (T - 1) + 1;
  if (out_truncation == 0) out_truncation = max_out;
  if (out_truncation > max_out)
    throw TruncationError("requested truncation exceeds what the input determines");

  Series u(T - 1);  // f(w)/w
  for (std::size_t k = 0; k + 1 <= T; ++k) u[k] = f.a(k + 1);
  const Series v = series_pow(u, 1.0 / double(p));

  std::vector<cplx> a(out_truncation, cplx(0.0));
  a[0] = 1.0;
  for (std::size_t k = 1; k <= v.degree_bound(); ++k) {
    const std::size_t idx = std::size_t(p) * k + 1;  // exponent of z
    if (idx <= out_truncation) a[idx - 1] = v[k];
  }
  return TaylorMap(MapClass::DiskS, std::move(a));
}

BeltramiField pullback(const BeltramiField& mu, int p) {
  if (p < 1) throw DomainError("pullback order must be positive");
  auto f = mu.value;
  auto value = [f, p](const cplx& z) -> cplx {
    if (std::abs(z) < 1e-300) return 0.0;
    const cplx phase = ipow(std::conj(z) / z, p - 1);
    return f(ipow(z, p)) * phase;
  };
  return BeltramiField{value, mu.sup_bound};
}

PsiField pullback(const PsiField& psi, int p) {
  if (p < 1) throw DomainError("pullback order must be positive");
  auto f = psi.value;
  auto value = [f, p](const cplx& z) -> cplx {
    return f(ipow(z, p)) * double(p) * double(p) * ipow(z, 2 * p - 2);
  };
  return PsiField{value};
}

BeltramiField truncate_beltrami(const BeltramiField& mu, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("truncation scale must lie in (0,1)");
  auto f = mu.value;
  auto value = [f, rho](const cplx& z) -> cplx {
    const cplx s = rho * z;
    return std::abs(s) > 1.0 ? f(s) : cplx(0.0);
  };
  return BeltramiField{value, mu.sup_bound};
}

TaylorMap homotopy(const TaylorMap& f, double r) {
  if (f.klass != MapClass::DiskS) throw DomainError("homotopy expects a normalized disk map");
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("homotopy parameter must lie in (0,1]");
  std::vector<cplx> a = f.coeffs;
  double rp = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    a[k] *= rp;  // a_(k+1) picks up r^k
    rp *= r;
  }
  return TaylorMap(MapClass::DiskS, std::move(a));
}

SchwarzianField homotopy(const SchwarzianField& phi, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("homotopy parameter must lie in (0,1]");
  SchwarzianField out;
  out.domain = phi.domain;
  auto f = phi.eval;
  out.eval = [f, r](const cplx& z) { return r * r * f(r * z); };
  if (phi.series) {
    Series s = *phi.series;
    double w = r * r;
    for (std::size_t j = 0; j <= s.degree_bound(); ++j) {
      s[j] *= w;
      w *= r;
    }
    out.series = s;
  }
  return out;
}

SchwarzianField schwarzian(const TaylorMap& f) {
  if (f.klass != MapClass::DiskS)
    throw DomainError("series-backed derivative expects a normalized disk map");
  const std::size_t T = f.truncation();
  if (T < 2) throw TruncationError("need at least two coefficients");
  const std::size_t W = std::max<std::size_t>(64, 2 * T);

  Series fp(W), fpp(W);
  for (std::size_t k = 0; k <= W; ++k) {
    fp[k] = double(k + 1) * f.a(k + 1);
    fpp[k] = double(k + 2) * double(k + 1) * f.a(k + 2);
  }
  const Series b = series_mul(fpp, series_reciprocal(fp), W);
  const Series s = series_sub(series_derivative(b).resized(W - 1),
                              series_scale(series_mul(b, b, W - 1), 0.5));

  SchwarzianField out;
  out.domain = Domain::UnitDisk;
  out.series = s;
  out.eval = [s, fp](const cplx& z) -> cplx {
    if (std::abs(series_eval(fp, z)) < 1e-12)
      throw SingularityError("derivative vanishes at the probe point");
    return series_eval(s, z);
  };
  return out;
}

SchwarzianField schwarzian(std::function<cplx(const cplx&)> f, Domain domain,
                           double stencil_radius) {
  if (!(stencil_radius > 0.0)) throw DomainError("stencil radius must be positive");
  SchwarzianField out;
  out.domain = domain;
  const double h = stencil_radius;
  out.eval = [f, h](const cplx& z) -> cplx {
    constexpr int n = 32;
    cplx d1 = 0.0, d2 = 0.0, d3 = 0.0;
    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
      const double th = 2.0 * kPi * j / n;
      const cplx e = std::polar(1.0, th);
      const cplx v = f(z + h * e);
      scale = std::max(scale, std::abs(v));
      d1 += v * std::conj(e);
      d2 += v * std::conj(e * e);
      d3 += v * std::conj(e * e * e);
    }
    d1 /= double(n) * h;
    d2 *= 2.0 / (double(n) * h * h);
    d3 *= 6.0 / (double(n) * h * h * h);
    if (std::abs(d1) < 1e-10 * std::max(1.0, scale / h))
      throw SingularityError("derivative vanishes at the probe point");
    const cplx q = d2 / d1;
    return d3 / d1 - 1.5 * q * q;
  };
  return out;
}

SchwarzianField schwarzian_compose(const SchwarzianField& phi, const Mobius& sigma,
                                   Domain target_domain) {
  SchwarzianField out;
  out.domain = target_domain;
  auto f = phi.eval;
  out.eval = [f, sigma](const cplx& z) -> cplx {
    const cplx d = sigma.deriv(z);
    return f(sigma(z)) * d * d;
  };
  return out;
}

namespace {

struct DiskProbe {
  std::function<cplx(const cplx&)> g;  // transplanted field in disk coordinates
  std::function<cplx(const cplx&)> back;
  bool include_center = true;
};

DiskProbe transplant(const SchwarzianField& phi) {
  switch (phi.domain) {
    case Domain::UnitDisk:
      return DiskProbe{phi.eval, [](const cplx& w) { return w; }, true};
    case Domain::ExteriorDisk: {
      auto f = phi.eval;
      return DiskProbe{[f](const cplx& w) -> cplx {
                         const cplx z = 1.0 / w;
                         const cplx w2 = w * w;
                         return f(z) / (w2 * w2);
                       },
                       [](const cplx& w) { return 1.0 / w; }, false};
    }
    case Domain::LowerHalfPlane: {
      const Mobius sigma = Mobius::disk_to_half();
      auto f = phi.eval;
      return DiskProbe{[f, sigma](const cplx& w) -> cplx {
                         const cplx d = sigma.deriv(w);
                         return f(sigma(w)) * d * d;
                       },
                       [sigma](const cplx& w) { return sigma(w); }, true};
    }
  }
  throw DomainError("unknown domain");
}

}  // namespace

double bnorm(const SchwarzianField& phi, cplx* argmax) {
  const DiskProbe probe = transplant(phi);

  std::vector<double> radii;
  if (probe.include_center) radii.push_back(0.0);
  for (int j = 1; j <= 96; ++j) radii.push_back(std::pow(2.0, -j / 4.0));
  for (int j = 1; j <= 96; ++j) radii.push_back(1.0 - std::pow(2.0, -j / 4.0));

  const auto weighted = [&probe](const cplx& w) -> double {
    const double q = 1.0 - std::norm(w);
    return q * q * std::abs(probe.g(w));
  };

  double best = 0.0;
  cplx best_w = 0.0;
  double prev_sup = -1.0, first_sup = -1.0;
  bool converged = false;
  std::vector<double> deep_ring(radii.size(), 0.0);
  for (int ntheta = 512; ntheta <= 16384; ntheta *= 2) {
    best = 0.0;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
      const double r = radii[ri];
      double ring = 0.0;
      const int steps = (r == 0.0) ? 1 : ntheta;
      for (int i = 0; i < steps; ++i) {
        const double th = 2.0 * kPi * (i + 0.5) / ntheta;
        const cplx w = std::polar(r, th);
        const double v = weighted(w);
        if (std::isfinite(v) && v > ring) ring = v;
        if (std::isfinite(v) && v > best) {
          best = v;
          best_w = w;
        }
      }
      deep_ring[ri] = ring;
    }
    // boundary blow-up: deepest rings all growing and carrying the sup
    const std::size_t last = radii.size() - 1;
    bool growing = true;
    for (std::size_t k = last - 11; k < last; ++k)
      if (deep_ring[k + 1] <= deep_ring[k]) growing = false;
    if (growing && deep_ring[last] > 1.05 * deep_ring[last - 11] &&
        deep_ring[last] >= best * (1.0 - 1e-12))
      throw UnboundedNormError("weighted values grow without bound toward the boundary");
    if (first_sup < 0.0) first_sup = best;
    if (prev_sup >= 0.0 && std::abs(best - prev_sup) <= 1e-4 * std::max(best, 1e-300)) {
      converged = true;
      break;
    }
    prev_sup = best;
  }
  // sup still climbing as the angular mesh refines: a boundary pole is being
  // resolved, not a finite supremum
  if (!converged && best >= 4.0 * std::max(first_sup, 1e-300) && first_sup > 0.0)
    throw UnboundedNormError("weighted sup keeps growing under mesh refinement");

  // local polish in (u, theta), r = 1 - 2^-u
  double u = (std::abs(best_w) >= 1.0 - 1e-15)
                 ? 50.0
                 : -std::log2(std::max(1.0 - std::abs(best_w), 1e-15));
  double th = std::arg(best_w);
  double du = 0.25, dth = 2.0 * kPi / 4096.0;
  for (int it = 0; it < 200 && (du > 1e-10 || dth > 1e-12); ++it) {
    bool improved = false;
    const double cand_u[4] = {u + du, u - du, u, u};
    const double cand_t[4] = {th, th, th + dth, th - dth};
    for (int c = 0; c < 4; ++c) {
      const double uu = std::max(0.0, cand_u[c]);
      const cplx w = std::polar(1.0 - std::pow(2.0, -uu), cand_t[c]);
      const double v = weighted(w);
      if (std::isfinite(v) && v > best) {
        best = v;
        best_w = w;
        u = uu;
        th = cand_t[c];
        improved = true;
      }
    }
    if (!improved) {
      du *= 0.5;
      dth *= 0.5;
    }
  }

  if (argmax) *argmax = probe.back(best_w);
  return best;
}

namespace {

struct OdePair {
  cplx e1, e1p, e2, e2p;
};

OdePair integrate_pair(const std::function<cplx(const cplx&)>& phi, const cplx& from,
                       const cplx& to, int nsteps) {
  OdePair y{0.0, 1.0, 1.0, 0.0};
  const cplx dir = to - from;
  const cplx hz = dir / double(nsteps);
  const auto rhs = [&phi](const cplx& z, const OdePair& s) -> OdePair {
    const cplx p = -0.5 * phi(z);
    return OdePair{s.e1p, p * s.e1, s.e2p, p * s.e2};
  };
  const auto axpy = [](const OdePair& a, const cplx& c, const OdePair& b) -> OdePair {
    return OdePair{a.e1 + c * b.e1, a.e1p + c * b.e1p, a.e2 + c * b.e2, a.e2p + c * b.e2p};
  };
  for (int i = 0; i < nsteps; ++i) {
    const cplx z = from + dir * (double(i) / nsteps);
    const OdePair k1 = rhs(z, y);
    const OdePair k2 = rhs(z + 0.5 * hz, axpy(y, 0.5 * hz, k1));
    const OdePair k3 = rhs(z + 0.5 * hz, axpy(y, 0.5 * hz, k2));
    const OdePair k4 = rhs(z + hz, axpy(y, hz, k3));
    y = axpy(y, hz / 6.0, axpy(axpy(axpy(k1, 1.0, k4), 2.0, k2), 2.0, k3));
  }
  return y;
}

}  // namespace

MapEvaluator map_from_schwarzian(const SchwarzianField& phi) {
  cplx base = 0.0;
  switch (phi.domain) {
    case Domain::UnitDisk: base = 0.0; break;
    case Domain::LowerHalfPlane: base = cplx(0.0, -1.0); break;
    case Domain::ExteriorDisk: base = 2.0; break;
  }
  auto f = phi.eval;
  MapEvaluator out;
  out.domain = phi.domain;
  out.base = base;
  out.eval = [f, base](const cplx& z) -> cplx {
    if (z == base) return 0.0;
    cplx w_prev = 0.0;
    for (int n = 16; n <= 65536; n *= 2) {
      const OdePair y = integrate_pair(f, base, z, n);
      if (std::abs(y.e2) < 1e-12 * (std::abs(y.e1) + 1.0)) {
        std::ostringstream msg;
        msg << "developing map has a pole near z = (" << z.real() << "," << z.imag() << ")";
        throw SingularityError(msg.str());
      }
      const cplx w = y.e1 / y.e2;
      if (n > 16 && std::abs(w - w_prev) <= 1e-10 * std::max(1.0, std::abs(w))) return w;
      w_prev = w;
    }
    throw IntegrationError("step doubling failed to converge");
  };
  return out;
}

TaylorMap map_from_schwarzian_series(const Series& phi, std::size_t out_truncation) {
  if (out_truncation < 1) throw TruncationError("output truncation must be at least 1");
  const std::size_t L = out_truncation + 2;
  std::vector<cplx> c1(L + 1, cplx(0.0)), c2(L + 1, cplx(0.0));
  c1[1] = 1.0;
  c2[0] = 1.0;
  for (std::size_t n = 0; n + 2 <= L; ++n) {
    cplx s1 = 0.0, s2 = 0.0;
    const std::size_t jmax = std::min(n, phi.degree_bound());
    for (std::size_t j = 0; j <= jmax; ++j) {
      s1 += phi[j] * c1[n - j];
      s2 += phi[j] * c2[n - j];
    }
    const double den = 2.0 * double(n + 2) * double(n + 1);
    c1[n + 2] = -s1 / den;
    c2[n + 2] = -s2 / den;
  }
  Series eta1(out_truncation), eta2(out_truncation);
  for (std::size_t k = 0; k <= out_truncation; ++k) {
    eta1[k] = c1[k];
    eta2[k] = c2[k];
  }
  const Series w = series_mul(eta1, series_reciprocal(eta2), out_truncation);
  std::vector<cplx> a(out_truncation);
  for (std::size_t k = 1; k <= out_truncation; ++k) a[k - 1] = w[k];
  return TaylorMap(MapClass::DiskS, std::move(a));
}

HarmonicExtension ahlfors_weill(const SchwarzianField& phi) {
  if (phi.domain != Domain::LowerHalfPlane)
    throw DomainError("harmonic extension data lives on the lower half plane");
  HarmonicExtension out;
  out.phi_norm = bnorm(phi);
  out.sup_mu = 0.5 * out.phi_norm;
  out.hypothesis_violated = out.phi_norm >= 0.5;
  auto f = phi.eval;
  out.mu = [f](const cplx& z) -> cplx {
    const double y = z.imag();
    if (y <= 0.0) return 0.0;
    return -2.0 * y * y * f(std::conj(z));
  };
  return out;
}

}  // namespace qclab
