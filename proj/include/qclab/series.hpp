#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qclab/errors.hpp"

namespace qclab {

using cplx = std::complex<double>;

// Truncated power series s(z) = sum_{k=0..degree_bound} c[k] z^k.
// Arithmetic is exact modulo z^(D+1); the bound travels with the value.
class Series {
 public:
  Series() : c_(1, cplx(0.0)) {}
  explicit Series(std::size_t degree_bound) : c_(degree_bound + 1, cplx(0.0)) {}
  explicit Series(std::vector<cplx> coeffs);

  std::size_t degree_bound() const { return c_.size() - 1; }
  cplx& operator[](std::size_t k) { return c_[k]; }
  const cplx& operator[](std::size_t k) const { return c_[k]; }
  const std::vector<cplx>& coeffs() const { return c_; }

  Series resized(std::size_t degree_bound) const;  // truncate or zero-extend

 private:
  std::vector<cplx> c_;
};

Series series_add(const Series& a, const Series& b);
Series series_sub(const Series& a, const Series& b);
Series series_scale(const Series& a, cplx s);
Series series_mul(const Series& a, const Series& b, std::size_t degree_bound);
Series series_mul(const Series& a, const Series& b);  // bound = min of bounds

// Constant term must be 1 for log/pow/reciprocal (tol 1e-12).
Series series_log(const Series& s);
Series series_exp(const Series& s);                    // requires s(0) = 0
Series series_pow(const Series& s, double exponent);   // s(0) = 1, real exponent
Series series_reciprocal(const Series& s);             // s(0) != 0

Series series_derivative(const Series& s);
Series series_antiderivative(const Series& s);         // constant term 0
Series compose_power(const Series& s, int p);          // s(z^p), bound p*D
cplx series_eval(const Series& s, cplx z);

// Bivariate truncated series q(z,w) = sum_{j+k<=D} q(j,k) z^j w^k.
// Entries beyond the total-degree triangle are identically zero.
class BivariateSeries {
 public:
  explicit BivariateSeries(std::size_t total_degree)
      : d_(total_degree), q_((total_degree + 1) * (total_degree + 1), cplx(0.0)) {}

  std::size_t total_degree() const { return d_; }
  cplx& at(std::size_t j, std::size_t k) { return q_[j * (d_ + 1) + k]; }
  const cplx& at(std::size_t j, std::size_t k) const { return q_[j * (d_ + 1) + k]; }

 private:
  std::size_t d_;
  std::vector<cplx> q_;
};

BivariateSeries series_mul(const BivariateSeries& a, const BivariateSeries& b);
BivariateSeries series_reciprocal(const BivariateSeries& s);  // s(0,0) != 0
BivariateSeries series_log(const BivariateSeries& s);         // s(0,0) = 1
BivariateSeries series_exp(const BivariateSeries& s);         // s(0,0) = 0

// Univalent-map Taylor data.  DiskS stores a_1..a_N of f(z) = z + a_2 z^2 + ...
// with a_1 = 1 enforced; ExteriorSigma stores b_0..b_N of F(z) = z + b_0 +
// b_1/z + ....  Truncation N is the highest stored index.
enum class MapClass { DiskS, ExteriorSigma };

struct TaylorMap {
  MapClass klass = MapClass::DiskS;
  std::vector<cplx> coeffs;

  TaylorMap() = default;
  TaylorMap(MapClass k, std::vector<cplx> c);

  std::size_t truncation() const {
    return klass == MapClass::DiskS ? coeffs.size() : coeffs.size() - 1;
  }
  // a(k): coefficient of z^k, k >= 1 (DiskS); b(k): coefficient of z^-k
  // (ExteriorSigma, b(0) is the constant).  Out-of-range reads give 0.
  cplx a(std::size_t k) const;
  cplx b(std::size_t k) const;
};

cplx taylor_eval(const TaylorMap& f, cplx z);

// F(z) = 1/f(1/z) for f in the disk class; exact for polynomial data.
TaylorMap invert_to_sigma(const TaylorMap& f, std::size_t out_truncation);
TaylorMap invert_to_sigma(const TaylorMap& f);

Series compose_power(const TaylorMap& f, int p);  // f(z^p), raw series of degree p*N
Series taylor_series(const TaylorMap& f, std::size_t degree_bound);

}  // namespace qclab
