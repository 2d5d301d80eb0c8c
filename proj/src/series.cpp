#include "qclab/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qclab {

namespace {

constexpr double kUnitTol = 1e-12;

void require_unit_constant(cplx c0, const char* what) {
  if (std::abs(c0 - 1.0) > kUnitTol) {
    std::ostringstream msg;
    msg << what << ": constant term must be 1, got " << c0.real() << "+" << c0.imag() << "i";
    throw NormalizationError(msg.str());
  }
}

}  // namespace

Series::Series(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.assign(1, cplx(0.0));
}

Series Series::resized(std::size_t degree_bound) const {
  Series out(degree_bound);
  const std::size_t n = std::min(degree_bound + 1, c_.size());
  std::copy(c_.begin(), c_.begin() + n, &out[0]);
  return out;
}

Series series_add(const Series& a, const Series& b) {
  const std::size_t d = std::min(a.degree_bound(), b.degree_bound());
  Series out(d);
  for (std::size_t k = 0; k <= d; ++k) out[k] = a[k] + b[k];
  return out;
}

Series series_sub(const Series& a, const Series& b) {
  const std::size_t d = std::min(a.degree_bound(), b.degree_bound());
  Series out(d);
  for (std::size_t k = 0; k <= d; ++k) out[k] = a[k] - b[k];
  return out;
}

Series series_scale(const Series& a, cplx s) {
  Series out(a.degree_bound());
  for (std::size_t k = 0; k <= a.degree_bound(); ++k) out[k] = s * a[k];
  return out;
}

Series series_mul(const Series& a, const Series& b, std::size_t degree_bound) {
  Series out(degree_bound);
  const std::size_t da = std::min(a.degree_bound(), degree_bound);
  for (std::size_t i = 0; i <= da; ++i) {
    if (a[i] == cplx(0.0)) continue;
    const std::size_t jmax = std::min(b.degree_bound(), degree_bound - i);
    for (std::size_t j = 0; j <= jmax; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series series_mul(const Series& a, const Series& b) {
  return series_mul(a, b, std::min(a.degree_bound(), b.degree_bound()));
}

Series series_reciprocal(const Series& s) {
  if (std::abs(s[0]) < 1e-300) throw NormalizationError("series_reciprocal: zero constant term");
  const std::size_t d = s.degree_bound();
  Series out(d);
  out[0] = 1.0 / s[0];
  for (std::size_t n = 1; n <= d; ++n) {
    cplx acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += (k <= s.degree_bound() ? s[k] : cplx(0.0)) * out[n - k];
    out[n] = -acc / s[0];
  }
  return out;
}

Series series_log(const Series& s) {
  require_unit_constant(s[0], "series_log");
  // n l_n = n s_n - sum_{k=1..n-1} k l_k s_{n-k}
  const std::size_t d = s.degree_bound();
  Series out(d);
  for (std::size_t n = 1; n <= d; ++n) {
    cplx acc = double(n) * s[n];
    for (std::size_t k = 1; k < n; ++k) acc -= double(k) * out[k] * s[n - k];
    out[n] = acc / double(n);
  }
  return out;
}

Series series_exp(const Series& s) {
  if (std::abs(s[0]) > kUnitTol) throw NormalizationError("series_exp: constant term must be 0");
  const std::size_t d = s.degree_bound();
  Series out(d);
  out[0] = 1.0;
  for (std::size_t n = 1; n <= d; ++n) {
    cplx acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += double(k) * s[k] * out[n - k];
    out[n] = acc / double(n);
  }
  return out;
}

Series series_pow(const Series& s, double exponent) {
  require_unit_constant(s[0], "series_pow");
  // J.C.P. Miller: n p_n = sum_{k=1..n} ((e+1)k - n) s_k p_{n-k}
  const std::size_t d = s.degree_bound();
  Series out(d);
  out[0] = 1.0;
  for (std::size_t n = 1; n <= d; ++n) {
    cplx acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
      acc += ((exponent + 1.0) * double(k) - double(n)) * s[k] * out[n - k];
    out[n] = acc / double(n);
  }
  return out;
}

Series series_derivative(const Series& s) {
  const std::size_t d = s.degree_bound();
  Series out(d == 0 ? 0 : d - 1);
  for (std::size_t k = 1; k <= d; ++k) out[k - 1] = double(k) * s[k];
  return out;
}

Series series_antiderivative(const Series& s) {
  Series out(s.degree_bound() + 1);
  for (std::size_t k = 0; k <= s.degree_bound(); ++k) out[k + 1] = s[k] / double(k + 1);
  return out;
}

Series compose_power(const Series& s, int p) {
  if (p < 1) throw DomainError("compose_power: p must be >= 1");
  Series out(s.degree_bound() * std::size_t(p));
  for (std::size_t k = 0; k <= s.degree_bound(); ++k) out[k * std::size_t(p)] = s[k];
  return out;
}

cplx series_eval(const Series& s, cplx z) {
  cplx acc = 0.0;
  for (std::size_t k = s.degree_bound() + 1; k-- > 0;) acc = acc * z + s[k];
  return acc;
}

BivariateSeries series_mul(const BivariateSeries& a, const BivariateSeries& b) {
  const std::size_t d = std::min(a.total_degree(), b.total_degree());
  BivariateSeries out(d);
  for (std::size_t ja = 0; ja <= d; ++ja)
    for (std::size_t ka = 0; ka + ja <= d; ++ka) {
      const cplx va = a.at(ja, ka);
      if (va == cplx(0.0)) continue;
      for (std::size_t jb = 0; jb + ja <= d; ++jb)
        for (std::size_t kb = 0; jb + kb + ja + ka <= d; ++kb)
          out.at(ja + jb, ka + kb) += va * b.at(jb, kb);
    }
  return out;
}

BivariateSeries series_reciprocal(const BivariateSeries& s) {
  if (std::abs(s.at(0, 0)) < 1e-300)
    throw NormalizationError("series_reciprocal: zero constant term");
  const std::size_t d = s.total_degree();
  BivariateSeries out(d);
  const cplx inv0 = 1.0 / s.at(0, 0);
  for (std::size_t j = 0; j <= d; ++j)
    for (std::size_t k = 0; j + k <= d; ++k) {
      if (j == 0 && k == 0) {
        out.at(0, 0) = inv0;
        continue;
      }
      cplx acc = 0.0;
      for (std::size_t a = 0; a <= j; ++a)
        for (std::size_t b = 0; b <= k; ++b) {
          if (a == 0 && b == 0) continue;
          acc += s.at(a, b) * out.at(j - a, k - b);
        }
      out.at(j, k) = -acc * inv0;
    }
  return out;
}

BivariateSeries series_log(const BivariateSeries& s) {
  require_unit_constant(s.at(0, 0), "series_log");
  const std::size_t d = s.total_degree();
  // d/dz log s = (d/dz s) / s recovers rows j >= 1; row 0 is the univariate
  // log of s(0,w).
  BivariateSeries sz(d);
  for (std::size_t j = 0; j + 1 <= d; ++j)
    for (std::size_t k = 0; j + 1 + k <= d; ++k) sz.at(j, k) = double(j + 1) * s.at(j + 1, k);
  const BivariateSeries ratio = series_mul(sz, series_reciprocal(s));

  BivariateSeries out(d);
  Series row0(d);
  for (std::size_t k = 0; k <= d; ++k) row0[k] = s.at(0, k);
  const Series lrow0 = series_log(row0);
  for (std::size_t k = 0; k <= d; ++k) out.at(0, k) = lrow0[k];
  for (std::size_t j = 1; j <= d; ++j)
    for (std::size_t k = 0; j + k <= d; ++k) out.at(j, k) = ratio.at(j - 1, k) / double(j);
  return out;
}

BivariateSeries series_exp(const BivariateSeries& s) {
  if (std::abs(s.at(0, 0)) > kUnitTol)
    throw NormalizationError("series_exp: constant term must be 0");
  const std::size_t d = s.total_degree();
  BivariateSeries out(d);
  Series row0(d);
  for (std::size_t k = 0; k <= d; ++k) row0[k] = s.at(0, k);
  const Series erow0 = series_exp(row0);
  for (std::size_t k = 0; k <= d; ++k) out.at(0, k) = erow0[k];
  // row-by-row from dE/dz = (ds/dz) E
  for (std::size_t j = 1; j <= d; ++j)
    for (std::size_t k = 0; j + k <= d; ++k) {
      cplx acc = 0.0;
      for (std::size_t a = 0; a + 1 <= j; ++a)
        for (std::size_t b = 0; b <= k; ++b)
          acc += double(a + 1) * s.at(a + 1, b) * out.at(j - 1 - a, k - b);
      out.at(j, k) = acc / double(j);
    }
  return out;
}

TaylorMap::TaylorMap(MapClass k, std::vector<cplx> c) : klass(k), coeffs(std::move(c)) {
  if (klass == MapClass::DiskS) {
    if (coeffs.empty()) throw TruncationError("TaylorMap: disk-class map needs a_1");
    if (std::abs(coeffs[0] - 1.0) > kUnitTol)
      throw NormalizationError("TaylorMap: disk-class map must have a_1 = 1");
  } else if (coeffs.empty()) {
    throw TruncationError("TaylorMap: exterior map needs b_0");
  }
}

cplx TaylorMap::a(std::size_t k) const {
  if (klass != MapClass::DiskS || k == 0) return 0.0;
  return k <= coeffs.size() ? coeffs[k - 1] : cplx(0.0);
}

cplx TaylorMap::b(std::size_t k) const {
  if (klass != MapClass::ExteriorSigma) return 0.0;
  return k < coeffs.size() ? coeffs[k] : cplx(0.0);
}

cplx taylor_eval(const TaylorMap& f, cplx z) {
  if (f.klass == MapClass::DiskS) {
    cplx acc = 0.0;
    for (std::size_t k = f.coeffs.size(); k-- > 0;) acc = acc * z + f.coeffs[k];
    return acc * z;
  }
  cplx acc = 0.0;
  const cplx w = 1.0 / z;
  for (std::size_t k = f.coeffs.size(); k-- > 0;) acc = acc * w + f.coeffs[k];
  return z + acc;
}

TaylorMap invert_to_sigma(const TaylorMap& f, std::size_t out_truncation) {
  if (f.klass != MapClass::DiskS) throw DomainError("invert_to_sigma: disk-class input required");
  // 1/f(1/z) = z / u(1/z) with u(w) = f(w)/w; so b_{k-1} = [w^k] 1/u(w).
  Series u(out_truncation + 1);
  for (std::size_t k = 0; k <= out_truncation + 1; ++k) u[k] = f.a(k + 1);
  const Series r = series_reciprocal(u);
  std::vector<cplx> b(out_truncation + 1);
  for (std::size_t k = 0; k <= out_truncation; ++k) b[k] = r[k + 1];
  return TaylorMap(MapClass::ExteriorSigma, std::move(b));
}

TaylorMap invert_to_sigma(const TaylorMap& f) {
  const std::size_t n = f.truncation();
  return invert_to_sigma(f, n == 0 ? 0 : n - 1);
}

Series compose_power(const TaylorMap& f, int p) {
  return compose_power(taylor_series(f, f.truncation()), p);
}

Series taylor_series(const TaylorMap& f, std::size_t degree_bound) {
  Series out(degree_bound);
  if (f.klass != MapClass::DiskS)
    throw DomainError("taylor_series: disk-class input required");
  for (std::size_t k = 1; k <= degree_bound; ++k) out[k] = f.a(k);
  return out;
}

}  // namespace qclab
