#include "qclab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qclab/errors.hpp"

namespace qclab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

constexpr int kRadialSteps = 512;
constexpr int kAngularSteps = 512;
constexpr int kActiveCoords = 32;
constexpr int kRandomStarts = 64;
constexpr double kPairingSlack = 1e-3;  // quadrature allowance over sup_bound

GrunskyMatrix leading_block(const GrunskyMatrix& G, int n) {
  std::vector<cplx> e(std::size_t(n) * n);
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= n; ++k) e[std::size_t(m - 1) * n + (k - 1)] = G.at(m, k);
  return GrunskyMatrix(n, std::move(e));
}

// Disk-side moments of the pairing integral after z -> 1/w: the Jacobian
// |w|^-4 against z^-(m+n+2) leaves the unimodular (w/|w|)^4 and w^(m+n-2),
//   I_s = iint_D mu(1/w) (w/|w|)^4 w^s dA,  s = 0..count-1.
// Polar midpoint nodes stay strictly inside the disk, so mu is only ever
// evaluated at |z| > 1.
std::vector<cplx> pairing_moments(const BeltramiField& mu, int count) {
  std::vector<cplx> mom(count, cplx(0.0));
  const double dr = 1.0 / kRadialSteps;
  const double dth = 2.0 * kPi / kAngularSteps;
  for (int i = 0; i < kRadialSteps; ++i) {
    const double r = (i + 0.5) * dr;
    const double wgt = r * dr * dth;
    for (int j = 0; j < kAngularSteps; ++j) {
      const double th = (j + 0.5) * dth;
      const cplx w = std::polar(r, th);
      const cplx g = mu.value(1.0 / w);
      if (g == cplx(0.0)) continue;
      cplx term = wgt * g * std::polar(1.0, 4.0 * th);
      for (int s = 0; s < count; ++s) {
        mom[s] += term;
        term *= w;
      }
    }
  }
  return mom;
}

// Q[m][k] = sqrt((m+1)(k+1)) I_{m+k} / pi (0-based); the pairing against the
// density built from x is the bilinear form x^T Q x, no conjugations.
std::vector<cplx> moment_matrix(const std::vector<cplx>& mom, int M) {
  std::vector<cplx> Q(std::size_t(M) * M);
  for (int m = 0; m < M; ++m)
    for (int k = 0; k < M; ++k)
      Q[std::size_t(m) * M + k] =
          std::sqrt(double(m + 1) * double(k + 1)) * mom[m + k] / kPi;
  return Q;
}

struct AscentState {
  std::vector<cplx> x;  // unit vector
  std::vector<cplx> y;  // Q x
  cplx q;               // x^T Q x
};

void refresh(const std::vector<cplx>& Q, AscentState& st) {
  const int M = int(st.x.size());
  st.y.assign(st.x.size(), cplx(0.0));
  for (int m = 0; m < M; ++m) {
    cplx acc = 0.0;
    const cplx* row = &Q[std::size_t(m) * M];
    for (int k = 0; k < M; ++k) acc += row[k] * st.x[k];
    st.y[std::size_t(m)] = acc;
  }
  st.q = 0.0;
  for (int m = 0; m < M; ++m) st.q += st.x[std::size_t(m)] * st.y[std::size_t(m)];
}

// Objective along the circle through x and e_m:
//   x' = cos(t) x + sin(t) e^{i phi} e_m,
// |x'^T Q x'| / ||x'||^2 with everything reduced to three scalars.
double circle_value(const cplx& A, const cplx& B, const cplx& C, const cplx& xm,
                    double t, double phi) {
  const double c = std::cos(t), s = std::sin(t);
  const cplx e = std::polar(1.0, phi);
  const cplx num = A * (c * c) + B * (2.0 * c * s) * e + C * (s * s) * e * e;
  const double den = 1.0 + 2.0 * c * s * (xm * std::conj(e)).real();
  if (den < 1e-12) return 0.0;
  return std::abs(num) / den;
}

// One coordinate update: maximize over the (t, phi) circle by a coarse grid
// followed by compass refinement; returns true if x moved.
bool coordinate_step(const std::vector<cplx>& Q, AscentState& st, int m) {
  const int M = int(st.x.size());
  const cplx A = st.q;
  const cplx B = st.y[std::size_t(m)];
  const cplx C = Q[std::size_t(m) * M + m];
  const cplx xm = st.x[std::size_t(m)];

  double best = std::abs(A);  // t = 0 keeps x
  double bt = 0.0, bphi = 0.0;
  const int grid = 24;
  for (int i = 0; i < grid; ++i) {
    const double t = kPi * (i + 0.5) / grid;
    for (int j = 0; j < grid; ++j) {
      const double phi = 2.0 * kPi * j / grid;
      const double v = circle_value(A, B, C, xm, t, phi);
      if (v > best) {
        best = v;
        bt = t;
        bphi = phi;
      }
    }
  }
  double dt = kPi / grid, dphi = 2.0 * kPi / grid;
  while (dt > 1e-9 || dphi > 1e-9) {
    bool moved = false;
    const double cand_t[2] = {bt + dt, bt - dt};
    for (double t : cand_t) {
      const double v = circle_value(A, B, C, xm, t, bphi);
      if (v > best) {
        best = v;
        bt = t;
        moved = true;
      }
    }
    const double cand_p[2] = {bphi + dphi, bphi - dphi};
    for (double phi : cand_p) {
      const double v = circle_value(A, B, C, xm, bt, phi);
      if (v > best) {
        best = v;
        bphi = phi;
        moved = true;
      }
    }
    if (!moved) {
      dt *= 0.5;
      dphi *= 0.5;
    }
  }

  if (best <= std::abs(A) * (1.0 + 1e-15) + 1e-18) return false;
  const double c = std::cos(bt), s = std::sin(bt);
  const cplx e = std::polar(1.0, bphi);
  for (int k = 0; k < M; ++k) st.x[std::size_t(k)] *= c;
  st.x[std::size_t(m)] += s * e;
  double nrm = 0.0;
  for (const cplx& v : st.x) nrm += std::norm(v);
  nrm = std::sqrt(nrm);
  for (cplx& v : st.x) v /= nrm;
  refresh(Q, st);
  return true;
}

double run_ascent(const std::vector<cplx>& Q, AscentState& st, int max_sweeps) {
  const int M = int(st.x.size());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = std::abs(st.q);
    bool moved = false;
    for (int m = 0; m < M; ++m) moved = coordinate_step(Q, st, m) || moved;
    if (!moved || std::abs(st.q) - before < 1e-14) break;
  }
  return std::abs(st.q);
}

double pairing_search(const BeltramiField& mu,
                      const std::vector<UnitL2Vector>& samples,
                      int random_starts, int sweeps) {
  int M = kActiveCoords;
  for (const UnitL2Vector& s : samples) M = std::max(M, int(s.x.size()));
  const std::vector<cplx> mom = pairing_moments(mu, 2 * M - 1);
  const std::vector<cplx> Q = moment_matrix(mom, M);

  double qmax = 0.0;
  for (const cplx& v : Q) qmax = std::max(qmax, std::abs(v));
  if (qmax == 0.0) return 0.0;

  std::vector<std::vector<cplx>> starts;
  for (const UnitL2Vector& s : samples) {
    std::vector<cplx> x(std::size_t(M), cplx(0.0));
    std::copy(s.x.begin(), s.x.end(), x.begin());
    starts.push_back(std::move(x));
  }
  for (int m = 0; m < std::min(M, 8); ++m) {
    std::vector<cplx> x(std::size_t(M), cplx(0.0));
    x[std::size_t(m)] = 1.0;
    starts.push_back(std::move(x));
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);  // fixed: reproducible searches
  std::normal_distribution<double> gauss;
  for (int r = 0; r < random_starts; ++r) {
    std::vector<cplx> x(static_cast<std::size_t>(M));
    double nrm = 0.0;
    for (cplx& v : x) {
      v = cplx(gauss(rng), gauss(rng));
      nrm += std::norm(v);
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    for (cplx& v : x) v /= nrm;
    starts.push_back(std::move(x));
  }

  double best = 0.0;
  for (std::vector<cplx>& x0 : starts) {
    AscentState st;
    st.x = std::move(x0);
    double nrm = 0.0;
    for (const cplx& v : st.x) nrm += std::norm(v);
    if (nrm <= 0.0) throw NormalizationError("density coefficient vector has zero norm");
    nrm = std::sqrt(nrm);
    for (cplx& v : st.x) v /= nrm;
    refresh(Q, st);
    best = std::max(best, run_ascent(Q, st, sweeps));
  }
  return best;
}

// The search maximizes a lower-bound functional; values above the dilatation
// bound can only be quadrature error, and past the slack they mean the input
// sup_bound was wrong.
double enforce_bound(const BeltramiField& mu, double value) {
  if (value > mu.sup_bound + kPairingSlack)
    throw ConvergenceError("pairing value exceeds the field's dilatation bound");
  return std::min(value, mu.sup_bound);
}

}  // namespace

double teich_distance(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("dilatation must lie in [0,1)");
  return std::atanh(k);
}

NormReport limit_grunsky_estimate(const TaylorMap& f, int p_max, std::size_t n) {
  if (p_max < 2 || p_max % 2 != 0)
    throw DomainError("transform order cap must be even and at least 2");
  if (n < 2) throw DimensionError("need truncation at least 2");
  const int half = int(n / 2);

  struct PerP {
    double k_half = 0.0;
    double k_full = 0.0;
  };
  std::vector<std::future<PerP>> jobs;
  jobs.reserve(std::size_t(p_max));
  for (int p = 1; p <= p_max; ++p) {
    jobs.push_back(std::async(std::launch::async, [&f, n, half, p]() -> PerP {
      const TaylorMap g = root_transform(f, p, n + 1);
      const GrunskyMatrix G = grunsky_matrix(g, int(n));
      const GrunskyMatrix H = leading_block(G, half);
      return PerP{grunsky_norm(H), grunsky_norm(G)};
    }));
  }

  NormReport rep;
  for (int p = 1; p <= p_max; ++p) {
    const PerP v = jobs[std::size_t(p - 1)].get();
    rep.rows.push_back(NormRow{p, std::size_t(half), v.k_half});
    rep.rows.push_back(NormRow{p, n, v.k_full});
    if (std::abs(v.k_full - v.k_half) > 2e-3) rep.unsettled_p.push_back(p);
    if (p % 2 == 0)
      rep.kappa_hat_estimate = std::max(rep.kappa_hat_estimate, v.k_full);
  }
  return rep;
}

std::string norm_report_to_csv(const NormReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "p,N,kappa\n";
  for (const NormRow& r : rep.rows) os << r.p << ',' << r.n << ',' << r.kappa << '\n';
  os << "kappa_hat," << rep.kappa_hat_estimate << '\n';
  os << "k_reference,";
  if (rep.k_reference) os << *rep.k_reference;
  os << '\n';
  return os.str();
}

std::string norm_report_to_json(const NormReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const NormRow& r : rep.rows)
    rows.push_back({{"p", r.p}, {"n", r.n}, {"kappa", r.kappa}});
  nlohmann::json j{{"rows", std::move(rows)},
                   {"unsettled_p", rep.unsettled_p},
                   {"kappa_hat", rep.kappa_hat_estimate}};
  if (rep.k_reference)
    j["k_reference"] = *rep.k_reference;
  else
    j["k_reference"] = nullptr;
  return j.dump(2);
}

NormReport norm_report_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  NormReport rep;
  for (const nlohmann::json& r : j.at("rows"))
    rep.rows.push_back(NormRow{r.at("p").get<int>(), r.at("n").get<std::size_t>(),
                               r.at("kappa").get<double>()});
  rep.unsettled_p = j.at("unsettled_p").get<std::vector<int>>();
  rep.kappa_hat_estimate = j.at("kappa_hat").get<double>();
  if (!j.at("k_reference").is_null())
    rep.k_reference = j.at("k_reference").get<double>();
  return rep;
}

ReflectionCoefficient reflection_coefficient(double kappa_hat) {
  if (!(kappa_hat >= 0.0 && kappa_hat < 1.0))
    throw DomainError("limit norm must lie in [0,1)");
  ReflectionCoefficient rc;
  rc.q = 2.0 * kappa_hat / (1.0 + kappa_hat * kappa_hat);
  rc.big_q = (1.0 + rc.q) / (1.0 - rc.q);
  return rc;
}

double green_function(double kappa_hat) {
  if (!(kappa_hat >= 0.0 && kappa_hat < 1.0))
    throw DomainError("limit norm must lie in [0,1)");
  if (kappa_hat == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(kappa_hat);
}

double alpha_functional(const BeltramiField& mu,
                        const std::vector<UnitL2Vector>& x_samples,
                        int refine_budget) {
  if (refine_budget < 0) throw DomainError("refine budget must be nonnegative");
  return enforce_bound(mu, pairing_search(mu, x_samples, kRandomStarts, refine_budget));
}

double grunsky_bound_check(double k, double alpha) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("dilatation must lie in [0,1)");
  if (!(alpha >= 0.0)) throw DomainError("pairing value must be nonnegative");
  if (alpha > k) throw DomainError("pairing value cannot exceed the dilatation");
  return (k * k + alpha) / (1.0 + alpha);
}

double outer_limit_estimate(const BeltramiField& mu,
                            const std::vector<double>& rho_grid,
                            const std::vector<int>& p_grid, int x_budget) {
  if (x_budget < 0) throw DomainError("start budget must be nonnegative");
  for (double rho : rho_grid)
    if (!(rho > 0.0 && rho < 1.0))
      throw DomainError("truncation scales must lie in (0,1)");
  for (int p : p_grid)
    if (p < 1) throw DomainError("transform orders must be positive");

  std::vector<std::future<double>> jobs;
  jobs.reserve(rho_grid.size() * p_grid.size());
  for (double rho : rho_grid)
    for (int p : p_grid)
      jobs.push_back(std::async(std::launch::async, [&mu, rho, p, x_budget]() {
        const BeltramiField field = pullback(truncate_beltrami(mu, rho), p);
        return enforce_bound(field, pairing_search(field, {}, x_budget, 40));
      }));

  double best = 0.0;
  for (std::future<double>& job : jobs) best = std::max(best, job.get());
  return best;
}

namespace {

// Truncated Cauchy product; result has exactly len coefficients.
std::vector<cplx> conv(const std::vector<cplx>& u, const std::vector<cplx>& v,
                       std::size_t len) {
  std::vector<cplx> out(len, cplx(0.0));
  for (std::size_t i = 0; i < u.size() && i < len; ++i) {
    if (u[i] == cplx(0.0)) continue;
    const std::size_t cap = std::min(len - i, v.size());
    for (std::size_t k = 0; k < cap; ++k) out[i + k] += u[i] * v[k];
  }
  return out;
}

}  // namespace

std::vector<cplx> transplanted_polygon_series(const PolygonSpec& P, double t,
                                              double scale, std::size_t len) {
  if (P.alphas.empty() || P.alphas.size() != P.prevertices.size())
    throw DimensionError("polygon needs matching interior angles and prevertices");
  if (len == 0) throw DimensionError("series length must be positive");

  const cplx I(0.0, 1.0);
  std::vector<cplx> B(len, cplx(0.0));   // sum of e_j / (tau(w) - a_j)
  std::vector<cplx> A2(len, cplx(0.0));  // sum of e_j / (tau(w) - a_j)^2
  for (std::size_t j = 0; j < P.alphas.size(); ++j) {
    const double ej = P.alphas[j] - 1.0;
    const cplx den = I + P.prevertices[j];
    const cplx q = (I - P.prevertices[j]) / den;
    // 1 / (tau(w) - a) = (w + 1) * g(w), g geometric in q
    std::vector<cplx> g(len);
    cplx gk = -1.0 / den;
    for (std::size_t k = 0; k < len; ++k) {
      g[k] = gk;
      gk *= q;
    }
    std::vector<cplx> A(len);
    for (std::size_t k = 0; k < len; ++k)
      A[k] = g[k] + (k > 0 ? g[k - 1] : cplx(0.0));
    const std::vector<cplx> AA = conv(A, A, len);
    for (std::size_t k = 0; k < len; ++k) {
      B[k] += ej * A[k];
      A2[k] += ej * AA[k];
    }
  }

  const std::vector<cplx> BB = conv(B, B, len);
  std::vector<cplx> s(len);
  for (std::size_t k = 0; k < len; ++k) s[k] = -t * A2[k] - 0.5 * BB[k];

  // tau'(w)^2 = -4 / (w + 1)^4
  std::vector<cplx> w4(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double kk = static_cast<double>(k);
    const double binom = (kk + 1.0) * (kk + 2.0) * (kk + 3.0) / 6.0;
    w4[k] = (k % 2 == 0 ? binom : -binom);
  }
  std::vector<cplx> phi = conv(s, w4, len);
  for (cplx& c : phi) c *= -4.0 * scale;
  return phi;
}

PolygonNormCheck polygon_norm_check(const PolygonSpec& P, double r_factor,
                                    int n) {
  if (!(r_factor > 0.0)) throw DomainError("weight factor must be positive");
  if (n < 2) throw DimensionError("matrix order must be at least 2");

  PolygonNormCheck out;
  out.r0 = r0_root(P);
  out.r = r_factor * out.r0;
  const SchwarzianField S = polygon_schwarzian(P, out.r0);
  out.b_norm = bnorm(S);
  out.target = 0.5 * out.r * out.b_norm;

  const std::size_t trunc = 2 * static_cast<std::size_t>(n) + 1;
  const Series phi(transplanted_polygon_series(P, out.r0, out.r, trunc + 1));
  const TaylorMap h = map_from_schwarzian_series(phi, trunc);
  out.kappa = grunsky_norm(grunsky_matrix(h, n));
  return out;
}

}  // namespace qclab
