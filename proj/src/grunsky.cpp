#include "qclab/grunsky.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qclab {

namespace {

double matrix_scale(const GrunskyMatrix& g) {
  double s = 0.0;
  for (const cplx& v : g.beta) s = std::max(s, std::abs(v));
  return s;
}

void require_symmetric(const GrunskyMatrix& g) {
  const double tol = 1e-12 * std::max(1.0, matrix_scale(g));
  for (int m = 1; m <= g.n; ++m)
    for (int k = m + 1; k <= g.n; ++k)
      if (std::abs(g.at(m, k) - g.at(k, m)) > tol)
        throw SymmetryError("grunsky: matrix is not complex-symmetric");
}

// y = (conj G)(G x); returns ||G x||.
double normal_apply(const GrunskyMatrix& g, const std::vector<cplx>& x, std::vector<cplx>& y,
                    std::vector<cplx>& tmp) {
  const int n = g.n;
  double nrm2 = 0.0;
  for (int m = 1; m <= n; ++m) {
    cplx acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += g.at(m, k) * x[k - 1];
    tmp[m - 1] = acc;
    nrm2 += std::norm(acc);
  }
  for (int m = 1; m <= n; ++m) {
    cplx acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += std::conj(g.at(m, k)) * tmp[k - 1];
    y[m - 1] = acc;
  }
  return std::sqrt(nrm2);
}

double power_iteration(const GrunskyMatrix& g, std::vector<cplx> v) {
  double nv = 0.0;
  for (const cplx& c : v) nv += std::norm(c);
  nv = std::sqrt(nv);
  if (nv == 0.0) return 0.0;
  for (cplx& c : v) c /= nv;

  std::vector<cplx> y(v.size()), tmp(v.size());
  double sigma = 0.0;
  for (int it = 0; it < 10000; ++it) {
    const double s = normal_apply(g, v, y, tmp);
    if (s == 0.0) return 0.0;
    if (it > 0 && std::abs(s - sigma) <= 1e-12 * std::max(1.0, s)) return s;
    sigma = s;
    double ny = 0.0;
    for (const cplx& c : y) ny += std::norm(c);
    ny = std::sqrt(ny);
    if (ny == 0.0) return s;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = y[i] / ny;
  }
  throw ConvergenceError("grunsky_norm: power iteration did not converge");
}

}  // namespace

GrunskyMatrix::GrunskyMatrix(int size, std::vector<cplx> entries) : n(size), beta(std::move(entries)) {
  if (n < 1) throw DimensionError("GrunskyMatrix: size must be positive");
  if (beta.size() != std::size_t(n) * std::size_t(n))
    throw DimensionError("GrunskyMatrix: entry count does not match size");
  require_symmetric(*this);
}

GrunskyMatrix grunsky_matrix(const TaylorMap& f, int N) {
  if (N < 1) throw DimensionError("grunsky_matrix: block size must be >= 1");
  const std::size_t need = (f.klass == MapClass::DiskS) ? std::size_t(N) + 1 : std::size_t(N);
  if (f.truncation() < need)
    throw TruncationError("grunsky_matrix: map carries fewer coefficients than the block needs");

  const std::size_t D = 2 * std::size_t(N);
  BivariateSeries q(D);
  double route_sign;
  if (f.klass == MapClass::DiskS) {
    // (f(z)-f(w))/(z-w) = sum a_{i+j+1} z^i w^j
    for (std::size_t i = 0; i <= D; ++i)
      for (std::size_t j = 0; i + j <= D; ++j) q.at(i, j) = f.a(i + j + 1);
    route_sign = 1.0;
  } else {
    // in u=1/z, v=1/w: (f(z)-f(w))/(z-w) = 1 - sum b_{m+n-1} u^m v^n, and the
    // stored coefficients flip sign so that z + t/z gives +t^m/m on the diagonal
    q.at(0, 0) = 1.0;
    for (std::size_t i = 1; i <= D; ++i)
      for (std::size_t j = 1; i + j <= D; ++j) q.at(i, j) = -f.b(i + j - 1);
    route_sign = -1.0;
  }

  const BivariateSeries L = series_log(q);
  GrunskyMatrix out;
  out.n = N;
  out.beta.assign(std::size_t(N) * N, cplx(0.0));
  for (int m = 1; m <= N; ++m)
    for (int k = m; k <= N; ++k) {
      const cplx v = 0.5 * (L.at(m, k) + L.at(k, m)) * route_sign * std::sqrt(double(m) * k);
      out.at(m, k) = v;
      out.at(k, m) = v;
    }
  return out;
}

double grunsky_norm(const GrunskyMatrix& G) {
  if (G.n < 1) throw DimensionError("grunsky_norm: empty matrix");
  require_symmetric(G);
  if (matrix_scale(G) == 0.0) return 0.0;

  std::vector<cplx> e1(G.n, cplx(0.0));
  e1[0] = 1.0;
  double best = power_iteration(G, std::move(e1));

  std::mt19937 rng(0x5eed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<cplx> r(G.n);
  for (cplx& c : r) c = cplx(nd(rng), nd(rng));
  best = std::max(best, power_iteration(G, std::move(r)));
  return best;
}

double weighted_grunsky_norm(const GrunskyMatrix& G, double r) {
  if (!(r > 0.0)) throw DomainError("weighted_grunsky_norm: radius must be positive");
  GrunskyMatrix scaled = G;
  for (int m = 1; m <= G.n; ++m)
    for (int k = 1; k <= G.n; ++k) scaled.at(m, k) *= std::pow(r, -double(m + k));
  return grunsky_norm(scaled);
}

UnitL2Vector::UnitL2Vector(std::vector<cplx> entries) : x(std::move(entries)) {
  double s = 0.0;
  for (const cplx& c : x) s += std::norm(c);
  if (std::abs(s - 1.0) > 1e-12)
    throw NormalizationError("UnitL2Vector: l2 norm must be 1 within 1e-12");
}

cplx bilinear_functional(const GrunskyMatrix& G, const UnitL2Vector& x) {
  if (x.x.size() != std::size_t(G.n))
    throw DimensionError("bilinear_functional: vector length does not match matrix size");
  cplx acc = 0.0;
  for (int m = 1; m <= G.n; ++m)
    for (int k = 1; k <= G.n; ++k) acc += G.at(m, k) * x.x[m - 1] * x.x[k - 1];
  return acc;
}

std::string grunsky_to_json(const GrunskyMatrix& G) {
  nlohmann::json j;
  j["n"] = G.n;
  nlohmann::json entries = nlohmann::json::array();
  for (const cplx& v : G.beta) entries.push_back({v.real(), v.imag()});
  j["entries"] = std::move(entries);
  return j.dump(2);
}

GrunskyMatrix grunsky_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const int n = j.at("n").get<int>();
  std::vector<cplx> entries;
  for (const auto& e : j.at("entries")) entries.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return GrunskyMatrix(n, std::move(entries));
}

}  // namespace qclab
