#include "qclab/models.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

KappaInfo kinfo(KappaInfo::Flag f, std::optional<double> v = std::nullopt) {
  KappaInfo k;
  k.flag = f;
  k.value = v;
  return k;
}

}  // namespace

ModelMap koebe_map(double t) {
  if (std::abs(t) > 1.0) throw DomainError("slit-map parameter needs |t| <= 1");
  ModelMap m;
  m.name = "koebe_t";
  m.parameter = t;
  m.eval = [t](const cplx& z) {
    const cplx d = 1.0 + t * z;
    return z / (d * d);
  };
  m.taylor = [t](std::size_t N) {
    std::vector<cplx> a(N);
    for (std::size_t k = 1; k <= N; ++k) a[k - 1] = double(k) * std::pow(-t, double(k - 1));
    return TaylorMap(MapClass::DiskS, std::move(a));
  };
  m.known_k = std::abs(t);
  m.known_kappa_p = [t](int p) {
    if (p == 1) return kinfo(KappaInfo::Flag::StrictlyLess, t * t);
    if (p % 2 == 0) return kinfo(KappaInfo::Flag::EqualToK, std::abs(t));
    return kinfo(KappaInfo::Flag::StrictlyLess);
  };
  m.extension = [t, ev = m.eval](const cplx& z) -> cplx {
    if (std::abs(z) <= 1.0) return ev(z);
    const double r = std::abs(z);
    return r * r / (std::conj(z) + 2.0 * t * r + t * t * z);
  };
  m.extension_mu = [t](const cplx& z) -> cplx {
    if (std::abs(z) <= 1.0) return 0.0;
    const cplx p = z / std::abs(z);
    return t * p * p * p;
  };
  return m;
}

ModelMap mobius_map(double t) {
  if (!(std::abs(t) < 1.0)) throw DomainError("half-plane map parameter needs |t| < 1");
  ModelMap m;
  m.name = "mobius_t";
  m.parameter = t;
  m.eval = [t](const cplx& z) { return z / (1.0 - t * z); };
  m.taylor = [t](std::size_t N) {
    std::vector<cplx> a(N);
    for (std::size_t k = 1; k <= N; ++k) a[k - 1] = std::pow(t, double(k - 1));
    return TaylorMap(MapClass::DiskS, std::move(a));
  };
  m.known_k = 0.0;
  m.known_kappa_p = [](int p) {
    if (p == 1) return kinfo(KappaInfo::Flag::EqualToK, 0.0);
    return kinfo(KappaInfo::Flag::Unknown);  // no infinity-fixing extension survives the transform
  };
  m.extension = m.eval;  // a global homeomorphism of the sphere already
  m.extension_mu = [](const cplx&) { return cplx(0.0); };
  return m;
}

ModelMap exterior_diag_map(double t) {
  if (!(std::abs(t) < 1.0)) throw DomainError("diagonal map parameter needs |t| < 1");
  ModelMap m;
  m.name = "exterior_diag_t";
  m.parameter = t;
  m.eval = [t](const cplx& z) { return z / (1.0 + t * z * z); };
  m.taylor = [t](std::size_t N) {
    std::vector<cplx> a(N, cplx(0.0));
    for (std::size_t k = 0; 2 * k + 1 <= N; ++k) a[2 * k] = std::pow(-t, double(k));
    return TaylorMap(MapClass::DiskS, std::move(a));
  };
  m.known_k = std::abs(t);
  m.known_kappa_p = [t](int) {
    // every transform order lands on an even-order slit transform
    return kinfo(KappaInfo::Flag::EqualToK, std::abs(t));
  };
  m.extension = [t, ev = m.eval](const cplx& z) -> cplx {
    if (std::abs(z) <= 1.0) return ev(z);
    return z * std::conj(z) / (std::conj(z) + t * z);
  };
  m.extension_mu = [t](const cplx& z) -> cplx {
    if (std::abs(z) <= 1.0) return 0.0;
    const cplx q = z / std::conj(z);
    return t * q * q;
  };
  return m;
}

ModelMap radial_stretch_map(double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("stretch exponent must be nonnegative");
  ModelMap m;
  m.name = "radial_stretch_alpha";
  m.parameter = alpha;
  const double scale = std::pow(2.0, -alpha);
  m.eval = [alpha, scale](const cplx& z) -> cplx {
    const double r = std::abs(z);
    if (r <= 1.0) return scale * z;
    if (r >= 2.0) return z;
    return scale * z * std::pow(r, alpha);
  };
  m.known_k = alpha / (alpha + 2.0);
  m.known_kappa_p = [](int) { return kinfo(KappaInfo::Flag::Unknown); };
  m.extension = m.eval;
  const double k = alpha / (alpha + 2.0);
  m.extension_mu = [k](const cplx& z) -> cplx {
    const double r = std::abs(z);
    if (r <= 1.0 || r >= 2.0) return 0.0;
    return k * z / std::conj(z);
  };
  return m;
}

std::vector<ModelMap> catalog() {
  return {koebe_map(0.5), mobius_map(0.5), exterior_diag_map(0.5), radial_stretch_map(1.0)};
}

namespace {

void check_polygon(const PolygonSpec& P, double alpha_low) {
  if (P.alphas.empty()) throw DimensionError("need at least one finite vertex");
  if (P.alphas.size() != P.prevertices.size())
    throw DimensionError("one prevertex per finite vertex");
  for (double a : P.alphas)
    if (!(a >= alpha_low && a < 2.0)) throw DomainError("angle factor out of range");
  for (std::size_t j = 1; j < P.prevertices.size(); ++j)
    if (!(P.prevertices[j] > P.prevertices[j - 1]))
      throw DomainError("prevertices must increase");
}

// branch with argument continuous from the lower half plane: arg in [-pi, 0]
// on the closure, negative reals get -pi
cplx pow_lower(const cplx& w, double e) {
  const double r = std::abs(w);
  if (r == 0.0) return 0.0;
  double a = std::arg(w);
  if (a > kPi / 2.0) a -= 2.0 * kPi;
  return std::exp(e * (std::log(r) + cplx(0.0, a)));
}

}  // namespace

SchwarzianField polygon_schwarzian(const PolygonSpec& P, double t) {
  check_polygon(P, 1.0 + 1e-15);
  const std::vector<double> eps = [&P] {
    std::vector<double> e(P.alphas.size());
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = P.alphas[j] - 1.0;
    return e;
  }();
  const std::vector<double> a = P.prevertices;
  SchwarzianField out;
  out.domain = Domain::LowerHalfPlane;
  out.eval = [eps, a, t](const cplx& z) -> cplx {
    cplx b = 0.0, bp = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const cplx d = z - a[j];
      if (std::abs(d) < 1e-12 * std::max(1.0, std::abs(a[j])))
        throw SingularityError("field evaluated at a prevertex");
      b += eps[j] / d;
      bp -= eps[j] / (d * d);
    }
    return t * bp - 0.5 * b * b;
  };
  return out;
}

cplx sc_map_eval(const PolygonSpec& P, const cplx& z) {
  check_polygon(P, 1e-12);  // degenerate alpha = 1 factors allowed as oracles
  if (z.imag() > 1e-14) throw DomainError("evaluation point must not lie above the real axis");
  if (z.imag() >= -1e-14 && z.imag() <= 1e-14) {
    // real path: no prevertex strictly inside (0, z)
    const double lo = std::min(0.0, z.real()), hi = std::max(0.0, z.real());
    for (double aj : P.prevertices)
      if (aj > lo + 1e-14 && aj < hi - 1e-14)
        throw SingularityError("integration path passes through a prevertex");
  }
  if (z == cplx(0.0)) return P.d0;

  const auto integrand = [&P](const cplx& xi) -> cplx {
    cplx g = 1.0;
    for (std::size_t j = 0; j < P.alphas.size(); ++j)
      g *= pow_lower(xi - P.prevertices[j], P.alphas[j] - 1.0);
    return g;
  };

  // tanh-sinh quadrature of z * int_0^1 g(s z) ds, robust to endpoint powers
  cplx prev = 0.0;
  for (int level = 2; level <= 12; ++level) {
    const double h = 1.0 / std::pow(2.0, level);
    cplx acc = 0.0;
    const int kmax = static_cast<int>(7.0 / h) + 1;  // |u| > 7 underflows the weight
    for (int k = -kmax; k <= kmax; ++k) {
      const double u = k * h;
      const double sh = 0.5 * kPi * std::sinh(u);
      const double ch = std::cosh(sh);
      const double w = 0.5 * kPi * std::cosh(u) / (ch * ch);
      if (w < 1e-17) continue;
      const double s = 1.0 / (1.0 + std::exp(-2.0 * sh));  // = (1 + tanh sh) / 2, stable near 0
      acc += w * integrand(s * z);
    }
    acc *= 0.5 * h;  // ds = (1/2) d(tanh)
    if (level > 2 && std::abs(acc - prev) <= 1e-9 * (std::abs(acc) + 1e-30)) {
      prev = acc;
      break;
    }
    prev = acc;
    if (level == 12) throw IntegrationError("quadrature failed to settle");
  }
  return P.d1 * z * prev + P.d0;
}

double r0_root(const PolygonSpec& P) {
  check_polygon(P, 1.0);
  double B = 0.0, S2 = 0.0;
  for (double al : P.alphas) {
    const double e = al - 1.0;
    B += e;
    S2 += e * e;
  }
  const double A = 0.5 * (S2 + B * B);
  if (!(A > 0.0)) throw NoRootError("leading coefficient vanishes");
  return (B + std::sqrt(B * B + 8.0 * A)) / (2.0 * A);
}

std::vector<PolygonSpec> polygon_catalog() {
  std::vector<PolygonSpec> out;
  out.push_back(PolygonSpec{{1.5}, {0.0}, 0.0, 1.0});
  out.push_back(PolygonSpec{{1.5, 1.5}, {-1.0, 1.0}, 0.0, 1.0});
  out.push_back(PolygonSpec{{1.5, 1.5, 1.5, 1.5, 1.5}, {-2.0, -1.0, 0.0, 1.0, 2.0}, 0.0, 1.0});
  return out;
}

PolygonSpec polygon_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PolygonSpec P;
  P.alphas = j.at("alphas").get<std::vector<double>>();
  P.prevertices = j.at("prevertices").get<std::vector<double>>();
  const auto d0 = j.at("d0"), d1 = j.at("d1");
  P.d0 = cplx(d0.at(0).get<double>(), d0.at(1).get<double>());
  P.d1 = cplx(d1.at(0).get<double>(), d1.at(1).get<double>());
  if (P.alphas.size() != P.prevertices.size())
    throw DimensionError("one prevertex per finite vertex");
  return P;
}

std::string polygon_to_json(const PolygonSpec& P) {
  nlohmann::json j;
  j["alphas"] = P.alphas;
  j["prevertices"] = P.prevertices;
  j["d0"] = {P.d0.real(), P.d0.imag()};
  j["d1"] = {P.d1.real(), P.d1.imag()};
  return j.dump(2);
}

}  // namespace qclab
