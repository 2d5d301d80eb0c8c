#include "qclab/lspace.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "qclab/errors.hpp"

namespace qclab {

namespace {

void check_point(const GrunskyPoint& c) {
  if (c.n < 1) throw DimensionError("coefficient point is empty");
  if (c.c.size() != std::size_t(c.n) * std::size_t(c.n))
    throw DimensionError("coefficient storage does not match the truncation");
  double scale = 0.0;
  for (const cplx& v : c.c) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 * std::max(1.0, scale);
  for (int m = 1; m <= c.n; ++m)
    for (int k = m + 1; k <= c.n; ++k)
      if (std::abs(c.at(m, k) - c.at(k, m)) > tol)
        throw SymmetryError("coefficient point is not complex-symmetric");
}

// the sqrt(mn)-weighted matrix the norm and membership criteria act on
GrunskyMatrix weighted(const GrunskyPoint& c, double t) {
  std::vector<cplx> e(c.c.size());
  for (int m = 1; m <= c.n; ++m)
    for (int k = 1; k <= c.n; ++k)
      e[std::size_t(m - 1) * c.n + (k - 1)] =
          t * std::sqrt(double(m) * double(k)) * c.at(m, k);
  return GrunskyMatrix(c.n, std::move(e));
}

double sup_entry(const GrunskyMatrix& G) {
  double s = 0.0;
  for (const cplx& v : G.beta) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

GrunskyPoint point_from_matrix(const GrunskyMatrix& G) {
  GrunskyPoint p;
  p.n = G.n;
  p.c.resize(std::size_t(G.n) * std::size_t(G.n));
  for (int m = 1; m <= G.n; ++m)
    for (int k = 1; k <= G.n; ++k)
      p.at(m, k) = G.at(m, k) / std::sqrt(double(m) * double(k));
  return p;
}

double lnorm(const GrunskyPoint& c) {
  check_point(c);
  const GrunskyMatrix G = weighted(c, 1.0);
  return sup_entry(G) + grunsky_norm(G);
}

MembershipReport membership_probe(const GrunskyPoint& c) {
  check_point(c);
  MembershipReport rep;
  rep.kappa = grunsky_norm(weighted(c, 1.0));
  rep.inside = rep.kappa < 1.0;
  return rep;
}

std::vector<ScanRow> segment_scan(const GrunskyPoint& c, int steps) {
  if (steps < 2) throw DomainError("segment scan needs at least two points");
  check_point(c);

  std::vector<std::future<ScanRow>> jobs;
  jobs.reserve(std::size_t(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = double(i) / double(steps - 1);
    jobs.push_back(std::async(std::launch::async, [&c, t]() -> ScanRow {
      const GrunskyMatrix G = weighted(c, t);
      ScanRow row;
      row.t = t;
      row.kappa = grunsky_norm(G);
      row.lnorm = sup_entry(G) + row.kappa;
      row.inside = row.kappa < 1.0;
      return row;
    }));
  }

  std::vector<ScanRow> rows;
  rows.reserve(std::size_t(steps));
  for (std::future<ScanRow>& job : jobs) rows.push_back(job.get());

  bool left = false;  // membership along the ray must be an interval from 0
  for (const ScanRow& row : rows) {
    if (!row.inside) left = true;
    else if (left)
      throw ConvergenceError("membership returned after leaving the segment");
  }
  return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "t,kappa,lnorm,inside\n";
  for (const ScanRow& r : rows)
    os << r.t << ',' << r.kappa << ',' << r.lnorm << ',' << (r.inside ? 1 : 0)
       << '\n';
  return os.str();
}

std::string point_to_json(const GrunskyPoint& c) {
  nlohmann::json entries = nlohmann::json::array();
  for (const cplx& v : c.c) entries.push_back({v.real(), v.imag()});
  nlohmann::json j{{"n", c.n}, {"entries", std::move(entries)}};
  return j.dump(2);
}

GrunskyPoint point_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  GrunskyPoint p;
  p.n = j.at("n").get<int>();
  for (const auto& e : j.at("entries"))
    p.c.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  if (p.n < 1 || p.c.size() != std::size_t(p.n) * std::size_t(p.n))
    throw DimensionError("coefficient storage does not match the truncation");
  return p;
}

}  // namespace qclab
