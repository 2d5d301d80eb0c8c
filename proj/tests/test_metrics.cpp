#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "qclab/errors.hpp"
#include "qclab/grunsky.hpp"
#include "qclab/metrics.hpp"
#include "qclab/models.hpp"
#include "qclab/series.hpp"
#include "qclab/transforms.hpp"

using qclab::cplx;

namespace {

qclab::TaylorMap padded_identity(std::size_t truncation) {
  std::vector<cplx> c(truncation, cplx(0.0));
  c[0] = 1.0;
  return qclab::TaylorMap(qclab::MapClass::DiskS, std::move(c));
}

// phase of the z^-4 direction: mu = k (z/|z|)^4 on |z| > 1
qclab::BeltramiField quartic_phase_field(double k) {
  auto value = [k](const cplx& z) -> cplx {
    if (std::abs(z) <= 1.0) return 0.0;
    const cplx u = z / std::abs(z);
    const cplx u2 = u * u;
    return k * u2 * u2;
  };
  return qclab::BeltramiField{value, k};
}

qclab::BeltramiField annulus_swirl_field(double k) {
  auto value = [k](const cplx& z) -> cplx {
    const double r = std::abs(z);
    if (r <= 1.0 || r >= 2.0) return 0.0;
    return k * std::conj(z) / z;
  };
  return qclab::BeltramiField{value, k};
}

double measured_kappa(const qclab::ModelMap& m, int N) {
  const qclab::TaylorMap f = m.taylor(std::size_t(N) + 1);
  return qclab::grunsky_norm(qclab::grunsky_matrix(f, N));
}

}  // namespace

TEST_CASE("teich_distance values and validation") {
  CHECK(qclab::teich_distance(0.0) == 0.0);
  CHECK(qclab::teich_distance(0.5) == doctest::Approx(0.5493061443340548).epsilon(1e-12));
  CHECK(qclab::teich_distance(0.3) < qclab::teich_distance(0.5));
  for (double k : {0.0, 0.1, 0.5, 0.9, 0.99}) {
    CHECK(std::abs(std::tanh(qclab::teich_distance(k)) - k) <= 1e-15);
  }
  CHECK_THROWS_AS(qclab::teich_distance(-0.1), qclab::DomainError);
  CHECK_THROWS_AS(qclab::teich_distance(1.0), qclab::DomainError);
  CHECK_THROWS_AS(qclab::teich_distance(1.5), qclab::DomainError);
}

TEST_CASE("limit report on the identity map is all zeros") {
  const qclab::NormReport rep = qclab::limit_grunsky_estimate(padded_identity(65), 4, 32);
  REQUIRE(rep.rows.size() == 8);
  for (const qclab::NormRow& r : rep.rows) {
    CHECK(r.kappa <= 1e-12);
    CHECK(r.kappa >= 0.0);
  }
  CHECK(rep.kappa_hat_estimate <= 1e-12);
  CHECK(rep.unsettled_p.empty());
  CHECK_FALSE(rep.k_reference.has_value());
}

TEST_CASE("limit report validation and truncation propagation") {
  CHECK_THROWS_AS(qclab::limit_grunsky_estimate(padded_identity(65), 3, 32),
                  qclab::DomainError);
  CHECK_THROWS_AS(qclab::limit_grunsky_estimate(padded_identity(65), 0, 32),
                  qclab::DomainError);
  CHECK_THROWS_AS(qclab::limit_grunsky_estimate(padded_identity(65), 2, 1),
                  qclab::DimensionError);
  CHECK_THROWS_AS(qclab::limit_grunsky_estimate(padded_identity(5), 2, 32),
                  qclab::TruncationError);
}

TEST_CASE("koebe map limit estimate reaches the dilatation at p = 2") {
  const qclab::ModelMap m = qclab::koebe_map(0.5);
  const qclab::NormReport rep = qclab::limit_grunsky_estimate(m.taylor(257), 4, 64);
  REQUIRE(rep.rows.size() == 8);

  double k1 = -1.0, k2 = -1.0, k3 = -1.0;
  for (const qclab::NormRow& r : rep.rows) {
    CHECK(r.kappa >= 0.0);
    CHECK(r.kappa <= 0.5 + 1e-8);
    if (r.n == 64 && r.p == 1) k1 = r.kappa;
    if (r.n == 64 && r.p == 2) k2 = r.kappa;
    if (r.n == 64 && r.p == 3) k3 = r.kappa;
  }
  CHECK(k1 == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(k2 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(k3 < 0.5 - 1e-3);
  CHECK(k3 > 0.25);
  CHECK(rep.kappa_hat_estimate == doctest::Approx(0.5).epsilon(1e-9));

  // distance computed from the estimate agrees with the closed form
  CHECK(std::abs(qclab::teich_distance(rep.kappa_hat_estimate) -
                 qclab::teich_distance(0.5)) <= 1e-6);
}

TEST_CASE("diagonal exterior map already attains the norm at p = 1") {
  const qclab::ModelMap m = qclab::exterior_diag_map(0.5);
  const qclab::NormReport rep = qclab::limit_grunsky_estimate(m.taylor(257), 2, 64);
  double k1 = -1.0;
  for (const qclab::NormRow& r : rep.rows)
    if (r.n == 64 && r.p == 1) k1 = r.kappa;
  CHECK(k1 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rep.kappa_hat_estimate == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("norm report serialization round trip") {
  qclab::NormReport rep = qclab::limit_grunsky_estimate(padded_identity(17), 2, 8);
  rep.k_reference = 0.5;

  const std::string csv = qclab::norm_report_to_csv(rep);
  CHECK(csv.rfind("p,N,kappa\n", 0) == 0);
  CHECK(csv.find("\nkappa_hat,") != std::string::npos);
  CHECK(csv.find("\nk_reference,0.5") != std::string::npos);

  const std::string js = qclab::norm_report_to_json(rep);
  const qclab::NormReport back = qclab::norm_report_from_json(js);
  REQUIRE(back.rows.size() == rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(back.rows[i].p == rep.rows[i].p);
    CHECK(back.rows[i].n == rep.rows[i].n);
    CHECK(back.rows[i].kappa == rep.rows[i].kappa);
  }
  CHECK(back.kappa_hat_estimate == rep.kappa_hat_estimate);
  REQUIRE(back.k_reference.has_value());
  CHECK(*back.k_reference == 0.5);

  rep.k_reference.reset();
  const std::string bare = qclab::norm_report_to_csv(rep);
  CHECK(bare.find("\nk_reference,\n") != std::string::npos);
  const qclab::NormReport back2 =
      qclab::norm_report_from_json(qclab::norm_report_to_json(rep));
  CHECK_FALSE(back2.k_reference.has_value());
}

TEST_CASE("reflection coefficient arithmetic") {
  const qclab::ReflectionCoefficient zero = qclab::reflection_coefficient(0.0);
  CHECK(zero.q == 0.0);
  CHECK(zero.big_q == 1.0);

  const qclab::ReflectionCoefficient half = qclab::reflection_coefficient(0.5);
  CHECK(std::abs(half.q - 0.8) <= 1e-12);
  CHECK(std::abs(half.big_q - 9.0) <= 1e-12);

  double prev = -1.0;
  for (double kh : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    const qclab::ReflectionCoefficient rc = qclab::reflection_coefficient(kh);
    CHECK(rc.q > prev);
    prev = rc.q;
    const double ratio = (1.0 + kh) / (1.0 - kh);
    CHECK(std::abs(rc.big_q - ratio * ratio) / (ratio * ratio) <= 1e-12);
    CHECK(std::abs(rc.big_q - (1.0 + rc.q) / (1.0 - rc.q)) <= 1e-12 * rc.big_q);
  }

  CHECK_THROWS_AS(qclab::reflection_coefficient(1.0), qclab::DomainError);
  CHECK_THROWS_AS(qclab::reflection_coefficient(-0.1), qclab::DomainError);
}

TEST_CASE("green function values and pole") {
  CHECK(std::abs(qclab::green_function(1.0 / std::exp(1.0)) + 1.0) <= 1e-12);
  CHECK(std::abs(qclab::green_function(0.5) - std::log(0.5)) <= 1e-12);
  CHECK(qclab::green_function(0.999999) < 0.0);
  const double pole = qclab::green_function(0.0);
  CHECK(std::isinf(pole));
  CHECK(pole < 0.0);
  CHECK_THROWS_AS(qclab::green_function(1.0), qclab::DomainError);
  CHECK_THROWS_AS(qclab::green_function(-0.1), qclab::DomainError);
}

TEST_CASE("pairing functional saturates on its defining direction") {
  const qclab::BeltramiField mu = quartic_phase_field(0.3);
  const std::vector<qclab::UnitL2Vector> samples{qclab::UnitL2Vector({cplx(1.0)})};
  const double a = qclab::alpha_functional(mu, samples, 25);
  CHECK(a == doctest::Approx(0.3).epsilon(5e-3));
  CHECK(a <= 0.3);

  // the basis starts find the same maximum without the supplied sample
  const double b = qclab::alpha_functional(mu, {}, 25);
  CHECK(b == doctest::Approx(0.3).epsilon(5e-3));
}

TEST_CASE("pairing functional edge cases") {
  const qclab::BeltramiField zero{[](const cplx&) { return cplx(0.0); }, 0.0};
  CHECK(qclab::alpha_functional(zero, {}, 10) == 0.0);

  CHECK_THROWS_AS(qclab::alpha_functional(quartic_phase_field(0.3), {}, -1),
                  qclab::DomainError);

  // a field whose declared bound is below its actual pairing value is rejected
  qclab::BeltramiField lied = quartic_phase_field(0.3);
  lied.sup_bound = 0.1;
  CHECK_THROWS_AS(qclab::alpha_functional(lied, {}, 10), qclab::ConvergenceError);
}

TEST_CASE("swirl annulus field pairs to zero against every density") {
  const qclab::BeltramiField mu = annulus_swirl_field(0.3);
  const double a = qclab::alpha_functional(mu, {}, 15);
  CHECK(a <= 1e-9);
  CHECK(mu.sup_bound - a > 0.29);  // strict gap below the dilatation
}

TEST_CASE("norm bound formula") {
  CHECK(std::abs(qclab::grunsky_bound_check(0.5, 0.5) - 0.5) <= 1e-15);
  CHECK(std::abs(qclab::grunsky_bound_check(0.5, 0.0) - 0.25) <= 1e-15);
  CHECK(qclab::grunsky_bound_check(0.0, 0.0) == 0.0);

  // same value as k(k+a)/(1+ak) with the pairing value normalized by k
  for (double k : {0.2, 0.5, 0.8}) {
    for (double al : {0.0, k / 3.0, k}) {
      const double a = al / k;
      const double expect = k * (k + a) / (1.0 + a * k);
      CHECK(std::abs(qclab::grunsky_bound_check(k, al) - expect) <= 1e-15);
    }
  }

  CHECK_THROWS_AS(qclab::grunsky_bound_check(0.3, 0.31), qclab::DomainError);
  CHECK_THROWS_AS(qclab::grunsky_bound_check(1.0, 0.5), qclab::DomainError);
  CHECK_THROWS_AS(qclab::grunsky_bound_check(0.5, -0.1), qclab::DomainError);
}

TEST_CASE("catalog maps satisfy the norm bound with their pairing values") {
  for (const qclab::ModelMap& m : qclab::catalog()) {
    REQUIRE(m.known_k.has_value());
    const double k = *m.known_k;
    const qclab::BeltramiField mu{m.extension_mu, k};
    const double a = qclab::alpha_functional(mu, {}, 12);
    CHECK(a <= k + 1e-9);
    if (!m.taylor) continue;  // grid-only model: no matrix norm to compare
    const double kappa = measured_kappa(m, 64);
    const double bound = qclab::grunsky_bound_check(k, a);
    CHECK(kappa <= bound + 2e-3);
  }
}

TEST_CASE("outer limit estimate of the saturating field approaches its dilatation") {
  const qclab::BeltramiField mu = quartic_phase_field(0.3);

  // a single far-from-1 scale keeps only rho^2 of the pairing mass
  const double coarse = qclab::outer_limit_estimate(mu, {0.9}, {1}, 6);
  CHECK(coarse == doctest::Approx(0.3 * 0.81).epsilon(1e-2));

  const double fine = qclab::outer_limit_estimate(mu, {0.9, 0.99, 0.9995}, {1, 2}, 6);
  CHECK(fine >= 0.298);
  CHECK(fine <= 0.3);
  CHECK(coarse <= fine);

  // sandwich against the untruncated pairing value
  const double a = qclab::alpha_functional(mu, {}, 15);
  CHECK(fine >= a - 2e-3);
  CHECK(fine <= mu.sup_bound);
}

TEST_CASE("outer limit estimate edge cases") {
  const qclab::BeltramiField zero{[](const cplx&) { return cplx(0.0); }, 0.0};
  CHECK(qclab::outer_limit_estimate(zero, {0.5}, {1}, 4) == 0.0);

  const qclab::BeltramiField mu = quartic_phase_field(0.3);
  CHECK_THROWS_AS(qclab::outer_limit_estimate(mu, {1.0}, {1}, 4), qclab::DomainError);
  CHECK_THROWS_AS(qclab::outer_limit_estimate(mu, {0.9}, {0}, 4), qclab::DomainError);
  CHECK_THROWS_AS(qclab::outer_limit_estimate(mu, {0.9}, {1}, -1), qclab::DomainError);

  // widening search grids can only raise the estimate
  const qclab::BeltramiField swirl = annulus_swirl_field(0.3);
  const double e1 = qclab::outer_limit_estimate(swirl, {0.9}, {1}, 4);
  const double e2 = qclab::outer_limit_estimate(swirl, {0.9, 0.95}, {1, 2}, 4);
  const double e3 = qclab::outer_limit_estimate(swirl, {0.9, 0.95, 0.99}, {1, 2, 3}, 4);
  CHECK(e1 <= e2 + 1e-12);
  CHECK(e2 <= e3 + 1e-12);
}

TEST_CASE("catalog sandwich for the outer limit") {
  for (const qclab::ModelMap& m : qclab::catalog()) {
    const double k = *m.known_k;
    const qclab::BeltramiField mu{m.extension_mu, k};
    const double outer = qclab::outer_limit_estimate(mu, {0.9995}, {1, 2}, 6);
    CHECK(outer <= k + 1e-9);
    if (!m.taylor) continue;
    const double kappa = measured_kappa(m, 64);
    CHECK(outer >= kappa - 2e-3);
  }
}

static cplx horner(const std::vector<cplx>& c, cplx w) {
  cplx v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * w + c[k];
  return v;
}

TEST_CASE("transplanted polygon series matches direct evaluation") {
  const cplx I(0.0, 1.0);
  for (const qclab::PolygonSpec& P : qclab::polygon_catalog()) {
    const double r0 = qclab::r0_root(P);
    const double r = 0.1 * r0;
    const qclab::SchwarzianField S = qclab::polygon_schwarzian(P, r0);
    const std::vector<cplx> phi = qclab::transplanted_polygon_series(P, r0, r, 200);
    for (cplx w : {cplx(0.3, 0.1), cplx(-0.2, 0.25), cplx(0.1, -0.4), cplx(0.0, 0.0)}) {
      const cplx tau = I * (w - 1.0) / (w + 1.0);
      const cplx dtau2 = -4.0 / std::pow(w + 1.0, 4);
      const cplx direct = r * S.eval(tau) * dtau2;
      CHECK(std::abs(horner(phi, w) - direct) <= 1e-10 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("single vertex reconstruction reproduces the power map") {
  qclab::PolygonSpec P;
  P.alphas = {1.5};
  P.prevertices = {0.0};

  // r0 solves (1/4)r^2 - (1/2)r - 2 = 0
  const qclab::PolygonNormCheck c = qclab::polygon_norm_check(P, 0.025, 128);
  CHECK(c.r0 == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(c.r == doctest::Approx(0.1).epsilon(1e-12));
  // field is -2.125/z^2; half-plane weighted sup 4 * 2.125
  CHECK(c.b_norm == doctest::Approx(8.5).epsilon(1e-6));
  CHECK(c.target == doctest::Approx(0.425).epsilon(1e-6));

  // the transplanted field is 4rC/(1-w^2)^2, the Schwarzian of
  // ((1+w)/(1-w))^a with 2(1-a^2) = 4rC; compare matrix norms
  const double a = std::sqrt(1.0 + 4.25 * 0.1);
  const std::size_t T = 257;
  qclab::Series L(T);
  for (std::size_t k = 1; k <= T; k += 2) L[k] = 2.0 / static_cast<double>(k);
  const qclab::Series g = qclab::series_exp(qclab::series_scale(L, a));
  std::vector<cplx> coeffs(T);
  for (std::size_t k = 1; k <= T; ++k) coeffs[k - 1] = g[k] / (2.0 * a);
  const qclab::TaylorMap wedge(qclab::MapClass::DiskS, coeffs);
  const double wedge_kappa = qclab::grunsky_norm(qclab::grunsky_matrix(wedge, 128));
  CHECK(c.kappa == doctest::Approx(wedge_kappa).epsilon(1e-4));
}

TEST_CASE("polygon norm check validation and scale behavior") {
  const qclab::PolygonSpec P = qclab::polygon_catalog().front();
  CHECK_THROWS_AS(qclab::polygon_norm_check(P, 0.0, 16), qclab::DomainError);
  CHECK_THROWS_AS(qclab::polygon_norm_check(P, -0.5, 16), qclab::DomainError);
  CHECK_THROWS_AS(qclab::polygon_norm_check(P, 0.1, 1), qclab::DimensionError);
  CHECK_THROWS_AS(qclab::transplanted_polygon_series(P, 1.0, 1.0, 0),
                  qclab::DimensionError);

  // target scales linearly in the weight factor, b_norm does not move
  const qclab::PolygonNormCheck c1 = qclab::polygon_norm_check(P, 0.01, 16);
  const qclab::PolygonNormCheck c2 = qclab::polygon_norm_check(P, 0.02, 16);
  CHECK(c1.b_norm == doctest::Approx(c2.b_norm).epsilon(1e-12));
  CHECK(c2.target == doctest::Approx(2.0 * c1.target).epsilon(1e-12));
  CHECK(c2.kappa > c1.kappa);
}

TEST_CASE("five vertex polygon at the benchmark weight") {
  // measured matrix norm stays a genuine dilatation while the weighted-sup
  // target exceeds one; the two sides of the identity separate at this scale
  const qclab::PolygonSpec P = qclab::polygon_catalog().back();
  const qclab::PolygonNormCheck c = qclab::polygon_norm_check(P, 0.1, 96);
  CHECK(c.r0 == doctest::Approx(1.1361).epsilon(1e-4));
  CHECK(c.b_norm == doctest::Approx(23.861).epsilon(1e-3));
  CHECK(c.target > 1.0);
  CHECK(c.kappa > 0.4);
  CHECK(c.kappa < 1.0);
}
