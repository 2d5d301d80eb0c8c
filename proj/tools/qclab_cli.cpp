// Command-line front end: each subcommand reads a JSON config, runs one
// experiment, and writes CSV + JSON artifacts plus a summary file into the
// output directory.  Exit codes: 0 success, 2 config violation, 3 numerical
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qclab/beltrami.hpp"
#include "qclab/errors.hpp"
#include "qclab/grunsky.hpp"
#include "qclab/lspace.hpp"
#include "qclab/metrics.hpp"
#include "qclab/models.hpp"
#include "qclab/series.hpp"
#include "qclab/transforms.hpp"

namespace {

using nlohmann::json;
using qclab::cplx;

// Config-level failure: wrong schema, unknown names, out-of-range values.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunContext {
  std::string out;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string timestamp;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(std::string("config is missing required key \"") + key + "\"");
  return j.at(key);
}

double need_num(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number()) throw ConfigError(std::string("key \"") + key + "\" must be a number");
  return v.get<double>();
}

int need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer()) throw ConfigError(std::string("key \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::string need_str(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string()) throw ConfigError(std::string("key \"") + key + "\" must be a string");
  return v.get<std::string>();
}

double opt_num(const json& j, const char* key, double fallback) {
  return j.contains(key) ? need_num(j, key) : fallback;
}

int opt_int(const json& j, const char* key, int fallback) {
  return j.contains(key) ? need_int(j, key) : fallback;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void write_summary(const RunContext& ctx, const std::string& sub, const json& params,
                   const json& results) {
  json s;
  s["subcommand"] = sub;
  s["seed"] = ctx.seed;
  s["threads"] = ctx.threads;
  s["timestamp"] = ctx.timestamp;
  s["parameters"] = params;
  s["results"] = results;
  write_file(ctx.out + "/" + sub + "_summary.json", s.dump(2) + "\n");
}

std::string csv_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string label_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// ---- map selector ----------------------------------------------------------

struct MapChoice {
  std::string label;
  std::function<qclab::TaylorMap(std::size_t)> taylor;
  std::optional<double> known_k;
  std::function<qclab::KappaInfo(int)> known_kappa_p;
};

qclab::ModelMap catalog_model(const std::string& name, double parameter) {
  try {
    if (name == "koebe_t") return qclab::koebe_map(parameter);
    if (name == "mobius_t") return qclab::mobius_map(parameter);
    if (name == "exterior_diag_t") return qclab::exterior_diag_map(parameter);
    if (name == "radial_stretch_alpha") return qclab::radial_stretch_map(parameter);
  } catch (const std::exception& e) {
    throw ConfigError("invalid parameter for \"" + name + "\": " + e.what());
  }
  throw ConfigError("unknown catalog map \"" + name + "\"");
}

MapChoice parse_map(const json& j) {
  MapChoice out;
  if (j.contains("catalog")) {
    const std::string name = need_str(j, "catalog");
    const double parameter = need_num(j, "parameter");
    const qclab::ModelMap m = catalog_model(name, parameter);
    out.label = m.name;
    out.taylor = m.taylor;
    out.known_k = m.known_k;
    out.known_kappa_p = m.known_kappa_p;
    return out;
  }
  if (j.contains("coefficients")) {
    const json& arr = need(j, "coefficients");
    if (!arr.is_array() || arr.empty())
      throw ConfigError("\"coefficients\" must be a nonempty array of [re,im] pairs");
    std::vector<cplx> coeffs;
    coeffs.reserve(arr.size());
    for (const json& e : arr) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ConfigError("coefficient entries must be [re,im] pairs");
      coeffs.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    const std::string klass = need_str(j, "class");
    qclab::MapClass mc;
    if (klass == "disk") mc = qclab::MapClass::DiskS;
    else if (klass == "exterior") mc = qclab::MapClass::ExteriorSigma;
    else throw ConfigError("\"class\" must be \"disk\" or \"exterior\"");
    try {
      qclab::TaylorMap probe(mc, coeffs);  // normalization check up front
    } catch (const std::exception& e) {
      throw ConfigError(std::string("invalid coefficient map: ") + e.what());
    }
    out.label = "coefficients[" + std::to_string(coeffs.size()) + "]";
    // a literal coefficient list defines a polynomial map; padding with
    // zeros extends it to any requested truncation
    out.taylor = [mc, coeffs](std::size_t truncation) {
      std::vector<cplx> c = coeffs;
      const std::size_t want = (mc == qclab::MapClass::DiskS) ? truncation : truncation + 1;
      if (c.size() < want) c.resize(want, cplx(0.0));
      return qclab::TaylorMap(mc, c);
    };
    return out;
  }
  throw ConfigError("map selector needs either \"catalog\" or \"coefficients\"");
}

MapChoice parse_taylor_map(const json& j) {
  MapChoice m = parse_map(j);
  if (!m.taylor)
    throw ConfigError("map \"" + m.label + "\" carries no coefficient data");
  return m;
}

// ---- dilatation field selector --------------------------------------------

struct MuChoice {
  std::string label;
  qclab::BeltramiField field;
};

MuChoice parse_mu(const json& j) {
  const std::string kind = need_str(j, "kind");
  if (kind == "uniform_disk") {
    const double k = need_num(j, "k");
    if (!(k >= 0.0 && k < 1.0)) throw ConfigError("\"k\" must lie in [0,1)");
    return {"uniform_disk(k=" + label_num(k) + ")",
            {[k](const cplx& z) { return std::abs(z) < 1.0 ? cplx(k) : cplx(0.0); }, k}};
  }
  if (kind == "quartic_phase") {
    const double k = need_num(j, "k");
    if (!(k >= 0.0 && k < 1.0)) throw ConfigError("\"k\" must lie in [0,1)");
    return {"quartic_phase(k=" + label_num(k) + ")",
            {[k](const cplx& z) {
               const double r = std::abs(z);
               if (r <= 1.0) return cplx(0.0);
               const cplx u = z / r;
               const cplx u2 = u * u;
               return k * u2 * u2;
             },
             k}};
  }
  if (kind == "annulus_swirl") {
    const double k = need_num(j, "k");
    if (!(k >= 0.0 && k < 1.0)) throw ConfigError("\"k\" must lie in [0,1)");
    return {"annulus_swirl(k=" + label_num(k) + ")",
            {[k](const cplx& z) {
               const double r = std::abs(z);
               if (r <= 1.0 || r >= 2.0) return cplx(0.0);
               return k * std::conj(z) / z;
             },
             k}};
  }
  if (kind == "catalog") {
    const qclab::ModelMap m = catalog_model(need_str(j, "name"), need_num(j, "parameter"));
    if (!m.extension_mu || !m.known_k)
      throw ConfigError("map \"" + m.name + "\" has no extension dilatation");
    return {m.name, {m.extension_mu, *m.known_k}};
  }
  throw ConfigError("unknown dilatation kind \"" + kind + "\"");
}

// ---- subcommands -----------------------------------------------------------

void run_grunsky(const json& cfg, const RunContext& ctx) {
  const MapChoice m = parse_taylor_map(need(cfg, "map"));
  const int n = need_int(cfg, "n");
  if (n < 1) throw ConfigError("\"n\" must be positive");

  const qclab::TaylorMap f = m.taylor(4 * std::size_t(n) + 1);
  const qclab::GrunskyMatrix G = qclab::grunsky_matrix(f, n);
  const double norm = qclab::grunsky_norm(G);

  write_file(ctx.out + "/grunsky_matrix.json", qclab::grunsky_to_json(G));
  write_file(ctx.out + "/grunsky_norm.csv",
             "map,n,norm\n" + m.label + "," + std::to_string(n) + "," + csv_num(norm) + "\n");
  json results;
  results["n"] = n;
  results["norm"] = norm;
  write_summary(ctx, "grunsky", cfg, results);
  std::cout << "grunsky: map=" << m.label << " n=" << n << " norm=" << norm << "\n";
}

void run_rootnorm(const json& cfg, const RunContext& ctx) {
  const MapChoice m = parse_taylor_map(need(cfg, "map"));
  const int p_max = need_int(cfg, "p_max");
  const int n = need_int(cfg, "n");
  if (p_max < 2 || p_max % 2 != 0) throw ConfigError("\"p_max\" must be even and at least 2");
  if (n < 2) throw ConfigError("\"n\" must be at least 2");

  const qclab::TaylorMap f = m.taylor(4 * std::size_t(n) + 1);
  qclab::NormReport rep = qclab::limit_grunsky_estimate(f, p_max, std::size_t(n));
  rep.k_reference = m.known_k;

  write_file(ctx.out + "/rootnorm.csv", qclab::norm_report_to_csv(rep));
  write_file(ctx.out + "/rootnorm.json", qclab::norm_report_to_json(rep));
  json results;
  results["kappa_hat"] = rep.kappa_hat_estimate;
  if (rep.k_reference) results["k_reference"] = *rep.k_reference;
  results["unsettled_p"] = rep.unsettled_p;
  write_summary(ctx, "rootnorm", cfg, results);
  std::cout << "rootnorm: map=" << m.label << " p_max=" << p_max << " n=" << n
            << " kappa_hat=" << rep.kappa_hat_estimate << "\n";
}

void run_solve(const json& cfg, const RunContext& ctx) {
  const MuChoice mu = parse_mu(need(cfg, "mu"));
  const int resolution = need_int(cfg, "resolution");
  if (resolution < 8) throw ConfigError("\"resolution\" must be at least 8");
  const double extent = opt_num(cfg, "extent", 4.0);
  if (!(extent > 0.0)) throw ConfigError("\"extent\" must be positive");
  const std::string norm_name = cfg.contains("normalization") ? need_str(cfg, "normalization")
                                                              : std::string("hydrodynamic");
  qclab::Normalization norm;
  if (norm_name == "hydrodynamic") norm = qclab::Normalization::Hydrodynamic;
  else if (norm_name == "zero_fixed") norm = qclab::Normalization::ZeroFixed;
  else throw ConfigError("\"normalization\" must be \"hydrodynamic\" or \"zero_fixed\"");
  const double coeff_radius = opt_num(cfg, "coeff_radius", 0.625 * extent);
  if (!(coeff_radius > 0.0 && coeff_radius < extent))
    throw ConfigError("\"coeff_radius\" must lie strictly between 0 and the extent");
  const int coeff_count = opt_int(cfg, "coeff_count", 8);
  if (coeff_count < 1) throw ConfigError("\"coeff_count\" must be positive");

  const qclab::BeltramiGrid grid = qclab::sample_beltrami(extent, resolution, mu.field.value);
  const double k = qclab::dilatation(grid);
  const qclab::MappedGrid w = qclab::solve_beltrami(grid, norm);
  const qclab::LaurentCoeffs lc = qclab::conformal_coeffs(w, coeff_radius, coeff_count);

  qclab::save_grid(ctx.out + "/solve_map", w);
  std::ostringstream csv;
  csv << "term,re,im\nlinear," << csv_num(lc.linear.real()) << "," << csv_num(lc.linear.imag())
      << "\nconstant," << csv_num(lc.constant.real()) << "," << csv_num(lc.constant.imag()) << "\n";
  for (std::size_t i = 0; i < lc.b.size(); ++i)
    csv << "b" << (i + 1) << "," << csv_num(lc.b[i].real()) << "," << csv_num(lc.b[i].imag())
        << "\n";
  write_file(ctx.out + "/solve_coeffs.csv", csv.str());

  json jc;
  jc["linear"] = {lc.linear.real(), lc.linear.imag()};
  jc["constant"] = {lc.constant.real(), lc.constant.imag()};
  jc["b"] = json::array();
  for (const cplx& b : lc.b) jc["b"].push_back({b.real(), b.imag()});
  write_file(ctx.out + "/solve_coeffs.json", jc.dump(2) + "\n");

  json results;
  results["dilatation"] = k;
  results["b1_modulus"] = lc.b.empty() ? 0.0 : std::abs(lc.b[0]);
  results["coeff_radius"] = coeff_radius;
  write_summary(ctx, "solve", cfg, results);
  std::cout << "solve: mu=" << mu.label << " M=" << resolution << " k=" << k
            << " |b1|=" << results["b1_modulus"].get<double>() << "\n";
}

void run_alpha(const json& cfg, const RunContext& ctx) {
  const MuChoice mu = parse_mu(need(cfg, "mu"));
  const int refine = opt_int(cfg, "refine", 20);
  if (refine < 0) throw ConfigError("\"refine\" must be nonnegative");
  std::vector<double> rho_grid;
  std::vector<int> p_grid;
  if (cfg.contains("rho_grid")) {
    for (const json& v : need(cfg, "rho_grid")) {
      if (!v.is_number()) throw ConfigError("\"rho_grid\" must hold numbers");
      rho_grid.push_back(v.get<double>());
    }
    for (const json& v : need(cfg, "p_grid")) {
      if (!v.is_number_integer()) throw ConfigError("\"p_grid\" must hold integers");
      p_grid.push_back(v.get<int>());
    }
  }
  const int x_budget = opt_int(cfg, "x_budget", 6);
  if (x_budget < 0) throw ConfigError("\"x_budget\" must be nonnegative");

  // seeded random probe directions supplement the search's own starts
  std::vector<qclab::UnitL2Vector> samples;
  std::mt19937_64 gen(ctx.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < 4; ++s) {
    std::vector<cplx> x(8);
    double nrm2 = 0.0;
    for (cplx& c : x) {
      c = cplx(gauss(gen), gauss(gen));
      nrm2 += std::norm(c);
    }
    for (cplx& c : x) c /= std::sqrt(nrm2);
    samples.emplace_back(x);
  }

  const double k = mu.field.sup_bound;
  const double a = qclab::alpha_functional(mu.field, samples, refine);
  const double bound = qclab::grunsky_bound_check(k, a);
  std::optional<double> outer;
  if (!rho_grid.empty())
    outer = qclab::outer_limit_estimate(mu.field, rho_grid, p_grid, x_budget);

  std::ostringstream csv;
  csv << "quantity,value\nk," << csv_num(k) << "\nalpha," << csv_num(a) << "\nbound,"
      << csv_num(bound) << "\n";
  if (outer) csv << "outer," << csv_num(*outer) << "\n";
  write_file(ctx.out + "/alpha.csv", csv.str());

  json results;
  results["k"] = k;
  results["alpha"] = a;
  results["bound"] = bound;
  if (outer) results["outer"] = *outer;
  else results["outer"] = nullptr;
  write_file(ctx.out + "/alpha.json", results.dump(2) + "\n");
  write_summary(ctx, "alpha", cfg, results);
  std::cout << "alpha: mu=" << mu.label << " alpha=" << a << " bound=" << bound;
  if (outer) std::cout << " outer=" << *outer;
  std::cout << "\n";
}

void run_reflect(const json& cfg, const RunContext& ctx) {
  const double kappa_hat = need_num(cfg, "kappa_hat");
  if (!(kappa_hat >= 0.0 && kappa_hat < 1.0))
    throw ConfigError("\"kappa_hat\" must lie in [0,1)");

  const qclab::ReflectionCoefficient rc = qclab::reflection_coefficient(kappa_hat);
  const double green = qclab::green_function(kappa_hat);

  std::ostringstream csv;
  csv << "quantity,value\nkappa_hat," << csv_num(kappa_hat) << "\nq," << csv_num(rc.q)
      << "\nbig_q," << csv_num(rc.big_q) << "\ngreen," << csv_num(green) << "\n";
  write_file(ctx.out + "/reflect.csv", csv.str());

  json results;
  results["kappa_hat"] = kappa_hat;
  results["q"] = rc.q;
  results["big_q"] = rc.big_q;
  results["green"] = green;
  write_file(ctx.out + "/reflect.json", results.dump(2) + "\n");
  write_summary(ctx, "reflect", cfg, results);
  std::cout << "reflect: kappa_hat=" << kappa_hat << " q=" << rc.q << " Q=" << rc.big_q
            << " green=" << green << "\n";
}

void run_polygon(const json& cfg, const RunContext& ctx) {
  qclab::PolygonSpec P;
  if (cfg.contains("catalog_index")) {
    const int idx = need_int(cfg, "catalog_index");
    const std::vector<qclab::PolygonSpec> cat = qclab::polygon_catalog();
    if (idx < 0 || std::size_t(idx) >= cat.size())
      throw ConfigError("\"catalog_index\" out of range");
    P = cat[std::size_t(idx)];
  } else if (cfg.contains("polygon")) {
    try {
      P = qclab::polygon_from_json(need(cfg, "polygon").dump());
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("invalid polygon: ") + e.what());
    }
  } else {
    throw ConfigError("polygon config needs \"polygon\" or \"catalog_index\"");
  }
  const double r_factor = opt_num(cfg, "r_factor", 0.1);
  const int n = opt_int(cfg, "n", 64);
  if (!(r_factor > 0.0)) throw ConfigError("\"r_factor\" must be positive");
  if (n < 2) throw ConfigError("\"n\" must be at least 2");

  const qclab::PolygonNormCheck c = qclab::polygon_norm_check(P, r_factor, n);
  const double ratio = c.target > 0.0 ? c.kappa / c.target : 0.0;

  std::ostringstream csv;
  csv << "quantity,value\nr0," << csv_num(c.r0) << "\nr," << csv_num(c.r) << "\nb_norm,"
      << csv_num(c.b_norm) << "\ntarget," << csv_num(c.target) << "\nkappa," << csv_num(c.kappa)
      << "\nratio," << csv_num(ratio) << "\n";
  write_file(ctx.out + "/polygon.csv", csv.str());

  json results;
  results["r0"] = c.r0;
  results["r"] = c.r;
  results["b_norm"] = c.b_norm;
  results["target"] = c.target;
  results["kappa"] = c.kappa;
  results["ratio"] = ratio;
  write_file(ctx.out + "/polygon.json", results.dump(2) + "\n");
  write_summary(ctx, "polygon", cfg, results);
  std::cout << "polygon: vertices=" << P.vertex_count() << " r0=" << c.r0 << " r=" << c.r
            << " b_norm=" << c.b_norm << " target=" << c.target << " kappa=" << c.kappa << "\n";
}

void run_lscan(const json& cfg, const RunContext& ctx) {
  qclab::GrunskyPoint point;
  std::string label;
  if (cfg.contains("point")) {
    try {
      point = qclab::point_from_json(need(cfg, "point").dump());
    } catch (const std::exception& e) {
      throw ConfigError(std::string("invalid point: ") + e.what());
    }
    label = "literal";
  } else if (cfg.contains("diagonal")) {
    const json& d = need(cfg, "diagonal");
    const double t = need_num(d, "t");
    const int n = need_int(d, "n");
    if (n < 1) throw ConfigError("\"n\" must be positive");
    point.n = n;
    point.c.assign(std::size_t(n) * n, cplx(0.0));
    double tm = 1.0;
    for (int m = 1; m <= n; ++m) {
      tm *= t;
      point.at(m, m) = tm / double(m);
    }
    label = "diagonal(t=" + label_num(t) + ")";
  } else if (cfg.contains("map")) {
    const json& ms = need(cfg, "map");
    const MapChoice m = parse_taylor_map(ms);
    const int n = need_int(ms, "n");
    if (n < 1) throw ConfigError("\"n\" must be positive");
    const qclab::TaylorMap f = m.taylor(4 * std::size_t(n) + 1);
    point = qclab::point_from_matrix(qclab::grunsky_matrix(f, n));
    label = m.label;
  } else {
    throw ConfigError("lscan config needs \"point\", \"diagonal\", or \"map\"");
  }
  const int steps = opt_int(cfg, "steps", 11);
  if (steps < 2) throw ConfigError("\"steps\" must be at least 2");

  const std::vector<qclab::ScanRow> rows = qclab::segment_scan(point, steps);
  write_file(ctx.out + "/lscan.csv", qclab::scan_to_csv(rows));

  json jrows = json::array();
  for (const qclab::ScanRow& r : rows) {
    json e;
    e["t"] = r.t;
    e["kappa"] = r.kappa;
    e["lnorm"] = r.lnorm;
    e["inside"] = r.inside;
    jrows.push_back(e);
  }
  json jdoc;
  jdoc["rows"] = jrows;
  write_file(ctx.out + "/lscan.json", jdoc.dump(2) + "\n");

  const qclab::MembershipReport end = qclab::membership_probe(point);
  json results;
  results["steps"] = steps;
  results["kappa_end"] = end.kappa;
  results["inside_end"] = end.inside;
  write_summary(ctx, "lscan", cfg, results);
  std::cout << "lscan: point=" << label << " steps=" << steps << " kappa(1)=" << end.kappa
            << (end.inside ? " inside" : " outside") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for coefficient operators of conformal maps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int threads = int(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"grunsky", "coefficient matrix and its norm for one map"},
      {"rootnorm", "matrix norms of the root transforms, with the limit estimate"},
      {"solve", "stretching-equation solver with boundary coefficient extraction"},
      {"alpha", "pairing functional and the dilatation bound it certifies"},
      {"reflect", "reflection and distortion constants from a norm value"},
      {"polygon", "boundary polygon field, critical weight, and norm comparison"},
      {"lscan", "segment scan of a coefficient point"}};
  for (const auto& [name, desc] : subs) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--config", config_path, "JSON config file")->required();
    s->add_option("--out", out_dir, "output directory (default .)");
    s->add_option("--seed", seed, "seed for the auxiliary probe directions");
    s->add_option("--threads", threads, "scheduling hint recorded in the summary");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    if (threads < 1) throw ConfigError("--threads must be at least 1");
    RunContext ctx;
    ctx.out = out_dir;
    ctx.seed = seed;
    ctx.threads = threads;
    ctx.timestamp = utc_timestamp();
    std::filesystem::create_directories(ctx.out);

    const json cfg = load_config(config_path);
    if (sub == "grunsky") run_grunsky(cfg, ctx);
    else if (sub == "rootnorm") run_rootnorm(cfg, ctx);
    else if (sub == "solve") run_solve(cfg, ctx);
    else if (sub == "alpha") run_alpha(cfg, ctx);
    else if (sub == "reflect") run_reflect(cfg, ctx);
    else if (sub == "polygon") run_polygon(cfg, ctx);
    else if (sub == "lscan") run_lscan(cfg, ctx);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
