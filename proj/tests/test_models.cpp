#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qclab/grunsky.hpp"
#include "qclab/models.hpp"
#include "qclab/transforms.hpp"

using namespace qclab;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Wirtinger quotient d/dzbar F over d/dz F by central differences
cplx fd_dilatation(const std::function<cplx(const cplx&)>& F, cplx z, double h) {
  const cplx fx = (F(z + h) - F(z - h)) / (2.0 * h);
  const cplx fy = (F(z + cplx(0.0, h)) - F(z - cplx(0.0, h))) / (2.0 * h);
  const cplx dz = 0.5 * (fx - cplx(0.0, 1.0) * fy);
  const cplx dzb = 0.5 * (fx + cplx(0.0, 1.0) * fy);
  return dzb / dz;
}

const ModelMap& by_name(const std::vector<ModelMap>& cat, const std::string& n) {
  for (const auto& m : cat)
    if (m.name == n) return m;
  throw std::runtime_error("missing catalog entry " + n);
}

}  // namespace

TEST_CASE("catalog carries the reference maps with their stated norms") {
  const auto cat = catalog();
  REQUIRE(cat.size() == 4);

  const auto& ko = by_name(cat, "koebe_t");
  const auto& mo = by_name(cat, "mobius_t");
  const auto& ex = by_name(cat, "exterior_diag_t");
  const auto& rs = by_name(cat, "radial_stretch_alpha");

  CHECK(ko.parameter == doctest::Approx(0.5));
  CHECK(ko.known_k.value() == doctest::Approx(0.5));
  CHECK(mo.known_k.value() == doctest::Approx(0.0));
  CHECK(ex.known_k.value() == doctest::Approx(0.5));
  CHECK(rs.known_k.value() == doctest::Approx(1.0 / 3.0));

  // slit map: order 1 strictly below with value t^2, even orders saturate
  auto k1 = ko.known_kappa_p(1);
  CHECK(k1.flag == KappaInfo::Flag::StrictlyLess);
  CHECK(k1.value.value() == doctest::Approx(0.25).epsilon(1e-12));
  auto k2 = ko.known_kappa_p(2);
  CHECK(k2.flag == KappaInfo::Flag::EqualToK);
  CHECK(k2.value.value() == doctest::Approx(0.5).epsilon(1e-12));
  auto k3 = ko.known_kappa_p(3);
  CHECK(k3.flag == KappaInfo::Flag::StrictlyLess);
  CHECK(!k3.value.has_value());
  CHECK(ko.known_kappa_p(4).flag == KappaInfo::Flag::EqualToK);

  // mobius: conformal, but transforms of order >= 2 are no longer conformal
  auto m1 = mo.known_kappa_p(1);
  CHECK(m1.flag == KappaInfo::Flag::EqualToK);
  CHECK(m1.value.value() == doctest::Approx(0.0));
  CHECK(mo.known_kappa_p(2).flag == KappaInfo::Flag::Unknown);

  // diagonal map saturates at every order
  for (int p = 1; p <= 4; ++p) {
    auto ki = ex.known_kappa_p(p);
    CHECK(ki.flag == KappaInfo::Flag::EqualToK);
    CHECK(ki.value.value() == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK(rs.known_kappa_p(2).flag == KappaInfo::Flag::Unknown);
  CHECK(!rs.taylor);
}

TEST_CASE("factory parameter validation") {
  CHECK_THROWS_AS(koebe_map(1.2), DomainError);
  CHECK_NOTHROW(koebe_map(1.0));
  CHECK_THROWS_AS(mobius_map(1.0), DomainError);
  CHECK_THROWS_AS(exterior_diag_map(-1.0), DomainError);
  CHECK_THROWS_AS(radial_stretch_map(-0.1), DomainError);
  CHECK_NOTHROW(radial_stretch_map(0.0));
}

TEST_CASE("taylor data reproduces the evaluator inside the disk") {
  const auto cat = catalog();
  for (const auto& m : cat) {
    if (!m.taylor) continue;
    const TaylorMap f = m.taylor(40);
    for (int j = 0; j < 8; ++j) {
      const cplx z = 0.5 * std::exp(cplx(0.0, 2.0 * kPi * j / 8.0 + 0.3));
      CHECK(std::abs(taylor_eval(f, z) - m.eval(z)) < 1e-8);
    }
  }
}

TEST_CASE("extensions are continuous across the unit circle") {
  const auto cat = catalog();
  for (const auto& m : cat) {
    for (int j = 0; j < 12; ++j) {
      const cplx u = std::exp(cplx(0.0, 2.0 * kPi * j / 12.0 + 0.1));
      const cplx in = m.extension(u * (1.0 - 1e-8));
      const cplx out = m.extension(u * (1.0 + 1e-8));
      CHECK(std::abs(in - out) < 1e-6);
    }
  }
  // power stretch also glues to the identity at radius 2
  const auto& rs = by_name(cat, "radial_stretch_alpha");
  for (int j = 0; j < 6; ++j) {
    const cplx u = std::exp(cplx(0.0, 1.1 * j));
    CHECK(std::abs(rs.extension(2.0 * u * (1.0 - 1e-8)) - rs.extension(2.0 * u * (1.0 + 1e-8))) <
          1e-6);
    CHECK(std::abs(rs.extension(3.0 * u) - 3.0 * u) == 0.0);
  }
}

TEST_CASE("stated dilatations match finite differences of the extensions") {
  const auto cat = catalog();
  struct Probe {
    const char* name;
    cplx z;
  };
  const Probe probes[] = {
      {"koebe_t", cplx(1.4, 0.7)},          {"koebe_t", cplx(-0.9, 1.6)},
      {"exterior_diag_t", cplx(1.3, -0.9)}, {"exterior_diag_t", cplx(-2.0, 0.4)},
      {"radial_stretch_alpha", cplx(1.1, 0.6)}, {"radial_stretch_alpha", cplx(-0.4, 1.5)},
  };
  for (const auto& pr : probes) {
    const auto& m = by_name(cat, pr.name);
    const cplx mu = m.extension_mu(pr.z);
    CHECK(std::abs(mu) == doctest::Approx(m.known_k.value()).epsilon(1e-12));
    CHECK(std::abs(fd_dilatation(m.extension, pr.z, 1e-5) - mu) < 2e-5);
  }
  // conformal reference and the domains where the others are conformal
  const auto& mo = by_name(cat, "mobius_t");
  CHECK(std::abs(mo.extension_mu(cplx(5.0, 3.0))) == 0.0);
  CHECK(std::abs(fd_dilatation(mo.extension, cplx(0.3, 2.0), 1e-5)) < 1e-8);
  CHECK(std::abs(by_name(cat, "koebe_t").extension_mu(cplx(0.3, 0.2))) == 0.0);
  CHECK(std::abs(by_name(cat, "radial_stretch_alpha").extension_mu(cplx(2.5, 0.0))) == 0.0);
}

TEST_CASE("matrix norms of the slit map transforms hit their stated values") {
  const auto ko = koebe_map(0.5);
  const TaylorMap f = ko.taylor(80);

  const double kappa1 = grunsky_norm(grunsky_matrix(f, 24));
  CHECK(kappa1 == doctest::Approx(0.25).epsilon(1e-10));

  const TaylorMap f2 = root_transform(f, 2);
  const double kappa2 = grunsky_norm(grunsky_matrix(f2, 24));
  CHECK(kappa2 == doctest::Approx(0.5).epsilon(1e-10));

  const TaylorMap f3 = root_transform(f, 3);
  const double kappa3 = grunsky_norm(grunsky_matrix(f3, 24));
  CHECK(kappa3 < 0.5 - 1e-3);
  CHECK(kappa3 > 0.25);

  // diagonal model: transforms keep the norm pinned at |t|
  const auto ex = exterior_diag_map(0.5);
  const TaylorMap g = ex.taylor(81);
  CHECK(grunsky_norm(grunsky_matrix(g, 24)) == doctest::Approx(0.5).epsilon(1e-10));
  const TaylorMap g2 = root_transform(g, 2);
  CHECK(grunsky_norm(grunsky_matrix(g2, 24)) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("boundary field of a single right-angle fan") {
  PolygonSpec P;
  P.alphas = {1.5};
  P.prevertices = {0.0};
  const auto S = polygon_schwarzian(P);
  CHECK(S.domain == Domain::LowerHalfPlane);
  const cplx z(2.0, -1.0);
  CHECK(std::abs(S.eval(z) - cplx(-0.625) / (z * z)) < 1e-14);

  // general angle: coefficient of 1/z^2 is (1 - alpha^2)/2
  for (double al : {1.2, 1.5, 1.7, 1.99}) {
    PolygonSpec Q;
    Q.alphas = {al};
    Q.prevertices = {0.0};
    const cplx w(0.4, -1.3);
    const cplx coeff = polygon_schwarzian(Q).eval(w) * w * w;
    CHECK(std::abs(coeff - cplx(0.5 * (1.0 - al * al))) < 1e-10);
  }

  // derivative-weighted family: only the b' term scales
  const auto St = polygon_schwarzian(P, 0.3);
  const cplx w(0.0, -1.0);
  CHECK(std::abs(St.eval(w) * w * w - cplx(-(0.3 * 0.5 + 0.125))) < 1e-13);

  // near-flat angle degenerates to an almost vanishing field
  PolygonSpec F;
  F.alphas = {1.0 + 1e-8};
  F.prevertices = {0.0};
  CHECK(std::abs(polygon_schwarzian(F).eval(cplx(0.0, -1.0))) < 2e-8);
}

TEST_CASE("boundary field with several vertices matches the hand sum") {
  PolygonSpec P;
  P.alphas = {1.5, 1.25};
  P.prevertices = {-1.0, 2.0};
  const cplx z(0.5, -0.8);
  const cplx b = 0.5 / (z + 1.0) + 0.25 / (z - 2.0);
  const cplx bp = -0.5 / ((z + 1.0) * (z + 1.0)) - 0.25 / ((z - 2.0) * (z - 2.0));
  CHECK(std::abs(polygon_schwarzian(P).eval(z) - (bp - 0.5 * b * b)) < 1e-14);
  CHECK_THROWS_AS(polygon_schwarzian(P).eval(cplx(-1.0, 0.0)), SingularityError);
}

TEST_CASE("polygon validation") {
  PolygonSpec bad;
  CHECK_THROWS_AS(polygon_schwarzian(bad), DimensionError);
  bad.alphas = {1.5, 1.5};
  bad.prevertices = {0.0};
  CHECK_THROWS_AS(polygon_schwarzian(bad), DimensionError);
  bad.prevertices = {1.0, -1.0};
  CHECK_THROWS_AS(polygon_schwarzian(bad), DomainError);  // unsorted
  bad.prevertices = {-1.0, 1.0};
  CHECK_NOTHROW(polygon_schwarzian(bad));
  bad.alphas = {1.0, 1.5};
  CHECK_THROWS_AS(polygon_schwarzian(bad), DomainError);  // flat angle excluded here
  bad.alphas = {1.5, 2.0};
  CHECK_THROWS_AS(polygon_schwarzian(bad), DomainError);
}

TEST_CASE("vertex map evaluation against closed forms") {
  // degenerate single flat vertex: affine map
  PolygonSpec A;
  A.alphas = {1.0};
  A.prevertices = {0.0};
  A.d0 = cplx(2.0, 1.0);
  A.d1 = cplx(3.0, 0.0);
  const cplx z(-1.0, -2.0);
  CHECK(std::abs(sc_map_eval(A, z) - (A.d1 * z + A.d0)) < 1e-9);
  CHECK(std::abs(sc_map_eval(A, cplx(0.0)) - A.d0) == 0.0);

  // right-angle fan: (2/3) z^(3/2) with the branch from below
  PolygonSpec B;
  B.alphas = {1.5};
  B.prevertices = {0.0};
  const cplx got = sc_map_eval(B, cplx(0.0, -1.0));
  const cplx want = (2.0 / 3.0) * std::exp(cplx(0.0, -0.75 * kPi));
  CHECK(std::abs(got - want) < 1e-8);

  // negative real axis stays on the chosen branch: (-1)^(1/2) -> -i
  const cplx got_neg = sc_map_eval(B, cplx(-1.0, 0.0));
  const cplx want_neg = (2.0 / 3.0) * std::exp(cplx(0.0, -1.5 * kPi));
  CHECK(std::abs(got_neg - want_neg) < 1e-8);
}

TEST_CASE("vertex map derivative matches the defining product") {
  PolygonSpec P;
  P.alphas = {1.5, 1.5};
  P.prevertices = {-1.0, 1.0};
  const cplx z(0.0, -2.0);
  const double h = 1e-4;
  const cplx fd = (sc_map_eval(P, z + h) - sc_map_eval(P, z - h)) / (2.0 * h);
  // integrand at z, assembled with the same lower-branch convention
  const auto pw = [](cplx w, double e) {
    double a = std::arg(w);
    if (a > kPi / 2.0) a -= 2.0 * kPi;
    return std::exp(e * (std::log(std::abs(w)) + cplx(0.0, a)));
  };
  const cplx g = pw(z + 1.0, 0.5) * pw(z - 1.0, 0.5);
  CHECK(std::abs(fd - g) < 1e-4 * std::abs(g));
}

TEST_CASE("vertex map guards its path") {
  PolygonSpec P;
  P.alphas = {1.5};
  P.prevertices = {0.5};
  CHECK_THROWS_AS(sc_map_eval(P, cplx(1.0, 0.0)), SingularityError);
  CHECK_THROWS_AS(sc_map_eval(P, cplx(0.0, 0.1)), DomainError);
  CHECK_NOTHROW(sc_map_eval(P, cplx(0.4, 0.0)));   // stops short of the prevertex
  CHECK_NOTHROW(sc_map_eval(P, cplx(1.0, -0.5)));  // path dips under it
}

TEST_CASE("field of the two-vertex channel agrees with stencil derivatives of its map") {
  PolygonSpec P;
  P.alphas = {1.5, 1.5};
  P.prevertices = {-1.0, 1.0};
  const auto S = polygon_schwarzian(P);
  const auto F = [&P](const cplx& w) { return sc_map_eval(P, w); };
  const auto S_fd = schwarzian(F, Domain::LowerHalfPlane, 0.15);
  int checked = 0;
  for (double x : {-1.7, -0.6, 0.4, 1.3, 2.1}) {
    for (double y : {-0.7, -1.6}) {
      const cplx z(x, y);
      const cplx a = S.eval(z), b = S_fd.eval(z);
      CHECK(std::abs(a - b) <= 1e-4 * std::abs(a));
      ++checked;
    }
  }
  CHECK(checked == 10);
}

TEST_CASE("interpolation root of the vertex data") {
  PolygonSpec one;
  one.alphas = {1.5};
  one.prevertices = {0.0};
  CHECK(r0_root(one) == doctest::Approx(4.0).epsilon(1e-12));

  PolygonSpec two;
  two.alphas = {1.5, 1.5};
  two.prevertices = {-1.0, 1.0};
  const double r2 = r0_root(two);
  CHECK(r2 == doctest::Approx((1.0 + std::sqrt(7.0)) / 1.5).epsilon(1e-12));

  // independent bisection of (1/2)(S2 + B^2) r^2 - B r - 2
  const double A = 0.5 * (0.5 + 1.0), B = 1.0;
  double lo = 0.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (A * mid * mid - B * mid - 2.0 > 0.0 ? hi : lo) = mid;
  }
  CHECK(r2 == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));

  PolygonSpec flat;
  flat.alphas = {1.0, 1.0};
  flat.prevertices = {-1.0, 1.0};
  CHECK_THROWS_AS(r0_root(flat), NoRootError);
}

TEST_CASE("bundled vertex configurations") {
  const auto cat = polygon_catalog();
  REQUIRE(cat.size() == 3);
  CHECK(cat[0].vertex_count() == 2);
  CHECK(cat[1].vertex_count() == 3);
  CHECK(cat[2].vertex_count() == 6);
  for (const auto& P : cat) {
    for (double a : P.alphas) CHECK(a == doctest::Approx(1.5));
    CHECK_NOTHROW(r0_root(P));
  }
  // five-vertex root from the closed form with all factors equal
  const double m = 5.0;
  const double want = 2.0 * (m + std::sqrt(5.0 * m * m + 4.0 * m)) / (m * (m + 1.0));
  CHECK(r0_root(cat[2]) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("vertex data round trips through json") {
  PolygonSpec P;
  P.alphas = {1.5, 1.25, 1.75};
  P.prevertices = {-2.0, 0.5, 3.0};
  P.d0 = cplx(0.25, -1.0);
  P.d1 = cplx(2.0, 0.125);
  const auto Q = polygon_from_json(polygon_to_json(P));
  REQUIRE(Q.alphas.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(Q.alphas[j] == doctest::Approx(P.alphas[j]).epsilon(1e-15));
    CHECK(Q.prevertices[j] == doctest::Approx(P.prevertices[j]).epsilon(1e-15));
  }
  CHECK(std::abs(Q.d0 - P.d0) == 0.0);
  CHECK(std::abs(Q.d1 - P.d1) == 0.0);

  CHECK_THROWS_AS(
      polygon_from_json(R"({"alphas":[1.5],"prevertices":[0,1],"d0":[0,0],"d1":[1,0]})"),
      DimensionError);
}
