#include "qclab/beltrami.hpp"

#include <fftw3.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "qclab/errors.hpp"

namespace qclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_grid(const GridField& g) {
  if (g.resolution <= 0) throw DimensionError("grid resolution must be positive");
  if (g.samples.size() != std::size_t(g.resolution) * g.resolution)
    throw DimensionError("sample count does not match the resolution");
  if (!(g.extent > 0.0)) throw DomainError("grid extent must be positive");
}

// principal log except that points on the negative real axis take the limit
// from the chosen side
cplx side_log(const cplx& w, bool upper) {
  if (w.imag() == 0.0 && w.real() < 0.0)
    return cplx(std::log(-w.real()), upper ? kPi : -kPi);
  return std::log(w);
}

// double primitive of 1/(u+iv) in u then v
cplx prim(const cplx& w, bool upper) {
  if (w == cplx(0.0)) return 0.0;
  return cplx(0.0, -1.0) * w * (side_log(w, upper) - 1.0);
}

// integral of 1/(u+iv) over [a,b]x[c,d]; rectangles that straddle the
// negative real axis are split so each part sees one branch
cplx rect_integral(double a, double b, double c, double d) {
  if (a < 0.0 && c < 0.0 && d > 0.0)
    return rect_integral(a, b, c, 0.0) + rect_integral(a, b, 0.0, d);
  const bool upper = (c + d) >= 0.0;
  return prim(cplx(b, d), upper) - prim(cplx(a, d), upper) - prim(cplx(b, c), upper) +
         prim(cplx(a, c), upper);
}

// cell average of 1/(zeta - z) for the cell centered at offset s = center - z;
// exact close in, midpoint beyond (the kernel is harmonic there)
cplx cell_kernel(const cplx& s, double h) {
  if (std::abs(s.real()) > 6.5 * h || std::abs(s.imag()) > 6.5 * h) return h * h / s;
  return rect_integral(s.real() - 0.5 * h, s.real() + 0.5 * h, s.imag() - 0.5 * h,
                       s.imag() + 0.5 * h);
}

void fft2(std::vector<cplx>& data, int P, int sign) {
  fftw_plan pl =
      fftw_plan_dft_2d(P, P, reinterpret_cast<fftw_complex*>(data.data()),
                       reinterpret_cast<fftw_complex*>(data.data()), sign, FFTW_ESTIMATE);
  fftw_execute(pl);
  fftw_destroy_plan(pl);
}

}  // namespace

GridField sample_field(double R, int M, const std::function<cplx(const cplx&)>& f) {
  GridField g;
  g.extent = R;
  g.resolution = M;
  g.samples.resize(std::size_t(M) * M);
  check_grid(g);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) g.at(i, j) = f(g.node(i, j));
  return g;
}

BeltramiGrid sample_beltrami(double R, int M, const std::function<cplx(const cplx&)>& mu) {
  BeltramiGrid g;
  static_cast<GridField&>(g) = sample_field(R, M, mu);
  g.support.resize(g.samples.size());
  for (std::size_t c = 0; c < g.samples.size(); ++c) g.support[c] = g.samples[c] != cplx(0.0);
  return g;
}

GridField cauchy_transform(const GridField& rho) {
  check_grid(rho);
  const int M = rho.resolution, P = 2 * M;
  const double h = rho.step();
  std::vector<cplx> a(std::size_t(P) * P, cplx(0.0)), K(std::size_t(P) * P, cplx(0.0));
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) a[std::size_t(i) * P + j] = rho.at(i, j);
  // out[n] = sum_c k((c - n) h) rho[c]: convolve with the reversed kernel
  for (int dy = -(M - 1); dy <= M - 1; ++dy)
    for (int dx = -(M - 1); dx <= M - 1; ++dx) {
      const cplx s = -h * cplx(double(dx), double(dy));
      K[std::size_t((dy + P) % P) * P + (dx + P) % P] = cell_kernel(s, h);
    }
  fft2(a, P, FFTW_FORWARD);
  fft2(K, P, FFTW_FORWARD);
  const double scale = -1.0 / (kPi * P * P);
  for (std::size_t c = 0; c < a.size(); ++c) a[c] *= K[c] * scale;
  fft2(a, P, FFTW_BACKWARD);
  GridField out;
  out.extent = rho.extent;
  out.resolution = M;
  out.samples.resize(std::size_t(M) * M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) out.at(i, j) = a[std::size_t(i) * P + j];
  return out;
}

GridField beurling_transform(const GridField& rho) {
  check_grid(rho);
  const int M = rho.resolution, P = 2 * M;
  std::vector<cplx> a(std::size_t(P) * P, cplx(0.0));
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) a[std::size_t(i) * P + j] = rho.at(i, j);
  fft2(a, P, FFTW_FORWARD);
  for (int ky = 0; ky < P; ++ky) {
    const double sy = ky <= P / 2 ? ky : ky - P;
    for (int kx = 0; kx < P; ++kx) {
      const double sx = kx <= P / 2 ? kx : kx - P;
      const std::size_t c = std::size_t(ky) * P + kx;
      if (sx == 0.0 && sy == 0.0) {
        a[c] = 0.0;
        continue;
      }
      const cplx xi(sx, sy);
      a[c] *= std::conj(xi) / xi;
    }
  }
  fft2(a, P, FFTW_BACKWARD);
  const double scale = 1.0 / (double(P) * P);
  GridField out;
  out.extent = rho.extent;
  out.resolution = M;
  out.samples.resize(std::size_t(M) * M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) out.at(i, j) = a[std::size_t(i) * P + j] * scale;
  return out;
}

cplx cauchy_point(const GridField& rho, const cplx& z) {
  check_grid(rho);
  const int M = rho.resolution;
  const double h = rho.step();
  cplx acc = 0.0;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      const cplx r = rho.at(i, j);
      if (r == cplx(0.0)) continue;
      acc += r * cell_kernel(rho.node(i, j) - z, h);
    }
  return acc * (-1.0 / kPi);
}

double dilatation(const BeltramiGrid& mu) {
  double best = 0.0;
  for (const cplx& v : mu.samples) best = std::max(best, std::abs(v));
  return best;
}

MappedGrid solve_beltrami(const BeltramiGrid& mu, Normalization norm) {
  check_grid(mu);
  const double k = dilatation(mu);
  if (!(k < 1.0)) throw NotQuasiconformal("sup of the coefficient must stay below 1");
  const int M = mu.resolution;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      if (mu.at(i, j) != cplx(0.0) && std::abs(mu.node(i, j)) > 0.5 * mu.extent)
        throw DomainError("coefficient support must stay within half the extent");

  GridField rho = static_cast<const GridField&>(mu);
  const double h = mu.step();
  bool settled = false;
  double diff = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const GridField Pi = beurling_transform(rho);
    double acc = 0.0;
    for (std::size_t c = 0; c < rho.samples.size(); ++c) {
      const cplx next = mu.samples[c] * (1.0 + Pi.samples[c]);
      acc += std::norm(next - rho.samples[c]);
      rho.samples[c] = next;
    }
    diff = std::sqrt(acc) * h;
    if (diff < 1e-10) {
      settled = true;
      break;
    }
  }
  if (!settled) {
    std::ostringstream os;
    os << "density iteration stalled, step size " << diff;
    throw ConvergenceError(os.str());
  }

  const GridField T = cauchy_transform(rho);
  MappedGrid out;
  out.extent = mu.extent;
  out.resolution = M;
  out.tag = norm;
  out.rho = rho.samples;
  out.support = mu.support;
  out.shift = norm == Normalization::ZeroFixed ? cauchy_point(rho, cplx(0.0)) : cplx(0.0);
  out.w.resize(rho.samples.size());
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      out.w[std::size_t(i) * M + j] = out.node(i, j) + T.at(i, j) - out.shift;
  return out;
}

std::function<cplx(const cplx&)> first_variation(const BeltramiGrid& mu) {
  check_grid(mu);
  auto grid = std::make_shared<GridField>(static_cast<const GridField&>(mu));
  const cplx at0 = cauchy_point(*grid, cplx(0.0));
  return [grid, at0](const cplx& z) { return z + cauchy_point(*grid, z) - at0; };
}

LaurentCoeffs conformal_coeffs(const std::function<cplx(const cplx&)>& w, double R0, int N) {
  if (!(R0 > 0.0)) throw DomainError("sampling radius must be positive");
  if (N < 1) throw DimensionError("need at least one coefficient");
  const int S = 4 * N;
  std::vector<cplx> v(S);
  for (int j = 0; j < S; ++j) v[j] = w(R0 * std::exp(cplx(0.0, 2.0 * kPi * j / S)));
  const auto bin = [&](int m) {
    cplx acc = 0.0;
    for (int j = 0; j < S; ++j) acc += v[j] * std::exp(cplx(0.0, -2.0 * kPi * m * j / S));
    return acc / double(S) * std::pow(R0, double(-m));
  };
  LaurentCoeffs out;
  out.linear = bin(1);
  out.constant = bin(0);
  out.b.resize(N);
  for (int m = 1; m <= N; ++m) out.b[m - 1] = bin(-m);
  return out;
}

namespace {

cplx catmull(const cplx& p0, const cplx& p1, const cplx& p2, const cplx& p3, double t) {
  return 0.5 * (2.0 * p1 + (p2 - p0) * t + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t +
                (3.0 * p1 - p0 - 3.0 * p2 + p3) * t * t * t);
}

cplx bicubic(const MappedGrid& g, const cplx& z) {
  const int M = g.resolution;
  const double h = g.step();
  const double x = (z.real() + g.extent) / h - 0.5;
  const double y = (z.imag() + g.extent) / h - 0.5;
  const int j1 = int(std::floor(x)), i1 = int(std::floor(y));
  if (j1 < 1 || i1 < 1 || j1 + 2 >= M || i1 + 2 >= M)
    throw DomainError("interpolation stencil leaves the grid");
  const double tx = x - j1, ty = y - i1;
  cplx rows[4];
  for (int r = 0; r < 4; ++r) {
    const std::size_t base = std::size_t(i1 - 1 + r) * M + (j1 - 1);
    rows[r] = catmull(g.w[base], g.w[base + 1], g.w[base + 2], g.w[base + 3], tx);
  }
  return catmull(rows[0], rows[1], rows[2], rows[3], ty);
}

}  // namespace

LaurentCoeffs conformal_coeffs(const MappedGrid& w, double R0, int N) {
  if (w.resolution <= 0) throw DimensionError("grid resolution must be positive");
  const double h = w.step();
  if (!w.support.empty()) {
    for (int i = 0; i < w.resolution; ++i)
      for (int j = 0; j < w.resolution; ++j)
        if (w.support[std::size_t(i) * w.resolution + j] &&
            std::abs(std::abs(w.node(i, j)) - R0) <= 1.5 * h)
          throw NotConformalThere("sampling circle crosses the coefficient support");
  }
  if (!w.rho.empty()) {
    GridField rg;
    rg.extent = w.extent;
    rg.resolution = w.resolution;
    rg.samples = w.rho;
    const cplx shift = w.shift;
    return conformal_coeffs(
        [&rg, shift](const cplx& z) { return z + cauchy_point(rg, z) - shift; }, R0, N);
  }
  if (!(R0 < w.extent - 2.0 * h))
    throw DomainError("sampling circle leaves the stored grid");
  return conformal_coeffs([&w](const cplx& z) { return bicubic(w, z); }, R0, N);
}

TaylorMap sigma_map(const LaurentCoeffs& c) {
  if (std::abs(c.linear) < 0.5)
    throw NormalizationError("leading coefficient too far from one to normalize");
  std::vector<cplx> coeffs(c.b.size() + 1);
  coeffs[0] = c.constant / c.linear;
  for (std::size_t k = 0; k < c.b.size(); ++k) coeffs[k + 1] = c.b[k] / c.linear;
  return TaylorMap(MapClass::ExteriorSigma, std::move(coeffs));
}

namespace {

void write_raw(const std::string& path, const std::vector<cplx>& v) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open " + path);
  os.write(reinterpret_cast<const char*>(v.data()),
           std::streamsize(v.size() * sizeof(cplx)));
  if (!os) throw DomainError("short write to " + path);
}

std::vector<cplx> read_raw(const std::string& path, std::size_t count) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open " + path);
  std::vector<cplx> v(count);
  is.read(reinterpret_cast<char*>(v.data()), std::streamsize(count * sizeof(cplx)));
  if (std::size_t(is.gcount()) != count * sizeof(cplx))
    throw DimensionError("raw payload shorter than the sidecar promises");
  return v;
}

nlohmann::json read_sidecar(const std::string& stem) {
  std::ifstream is(stem + ".json");
  if (!is) throw DomainError("cannot open " + stem + ".json");
  nlohmann::json j;
  is >> j;
  return j;
}

}  // namespace

void save_grid(const std::string& stem, const BeltramiGrid& g) {
  nlohmann::json j;
  j["extent"] = g.extent;
  j["resolution"] = g.resolution;
  std::ofstream os(stem + ".json");
  if (!os) throw DomainError("cannot open " + stem + ".json");
  os << j.dump(2) << "\n";
  write_raw(stem + ".raw", g.samples);
}

void save_grid(const std::string& stem, const MappedGrid& g) {
  nlohmann::json j;
  j["extent"] = g.extent;
  j["resolution"] = g.resolution;
  j["normalization"] = g.tag == Normalization::ZeroFixed ? "zero_fixed" : "hydrodynamic";
  std::ofstream os(stem + ".json");
  if (!os) throw DomainError("cannot open " + stem + ".json");
  os << j.dump(2) << "\n";
  write_raw(stem + ".raw", g.w);
}

BeltramiGrid load_beltrami_grid(const std::string& stem) {
  const auto j = read_sidecar(stem);
  BeltramiGrid g;
  g.extent = j.at("extent").get<double>();
  g.resolution = j.at("resolution").get<int>();
  if (g.resolution <= 0) throw DimensionError("sidecar resolution must be positive");
  g.samples = read_raw(stem + ".raw", std::size_t(g.resolution) * g.resolution);
  g.support.resize(g.samples.size());
  for (std::size_t c = 0; c < g.samples.size(); ++c) g.support[c] = g.samples[c] != cplx(0.0);
  return g;
}

MappedGrid load_mapped_grid(const std::string& stem) {
  const auto j = read_sidecar(stem);
  MappedGrid g;
  g.extent = j.at("extent").get<double>();
  g.resolution = j.at("resolution").get<int>();
  if (g.resolution <= 0) throw DimensionError("sidecar resolution must be positive");
  if (j.contains("normalization"))
    g.tag = j["normalization"] == "zero_fixed" ? Normalization::ZeroFixed
                                               : Normalization::Hydrodynamic;
  g.w = read_raw(stem + ".raw", std::size_t(g.resolution) * g.resolution);
  return g;
}

}  // namespace qclab
