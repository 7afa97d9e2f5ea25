// Command-line laboratory: each subcommand runs one experiment, prints one
// [PASS]/[FAIL] line per assertion, writes its artifacts atomically into
// --out, and finishes with a self-certifying summary.json embedding the
// seeds, tolerances, and truncations actually used.
//
// Exit codes: 0 all assertions pass, 1 any assertion fails, 2 config error.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "kernelab/algebra.hpp"
#include "kernelab/dual_space.hpp"
#include "kernelab/features.hpp"
#include "kernelab/fractal.hpp"
#include "kernelab/gram.hpp"
#include "kernelab/ktransform.hpp"
#include "kernelab/order_operator.hpp"
#include "kernelab/ordering.hpp"
#include "kernelab/rng.hpp"
#include "kernelab/sampling.hpp"
#include "kernelab/serialize.hpp"

namespace {

using namespace kernelab;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == delim) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_radius_token(const std::string& tok) {
  if (tok.size() < 2 || tok[0] != 'r') {
    throw UsageError("expected radius token rR, got '" + tok + "'");
  }
  return std::stod(tok.substr(1));
}

/// Series-kernel mini-grammar (diagonal power series a_k conj(x)^k y^k):
///   szego[:rR]        a_k = 1 on the disk of radius R (default 0.9)
///   bergman[:rR]      a_k = k + 1 on the disk
///   bargmann[:rR]     a_k = 1/k! on the disk (entire; R bounds truncation)
///   geometric:N[:rR]  a_k = binom(N+k-1, k) on the real interval (-R, R)
///   unit-geometric    a_k = 1 on the closed unit interval (subdivision base)
SeriesKernel parse_series(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& name = parts[0];
  auto radius_or = [&](std::size_t idx, double dflt) {
    return parts.size() > idx ? parse_radius_token(parts[idx]) : dflt;
  };
  if (name == "szego") {
    return SeriesKernel(std::make_shared<OnesRule>(), Domain::disk(radius_or(1, 0.9)));
  }
  if (name == "bergman") {
    return SeriesKernel(std::make_shared<BinomialRule>(2), Domain::disk(radius_or(1, 0.9)));
  }
  if (name == "bargmann") {
    return SeriesKernel(std::make_shared<ExpRule>(), Domain::disk(radius_or(1, 0.9)));
  }
  if (name == "geometric") {
    if (parts.size() < 2) throw UsageError("geometric needs an exponent: geometric:N[:rR]");
    return SeriesKernel(std::make_shared<BinomialRule>(std::stoi(parts[1])),
                        Domain::real_interval(radius_or(2, 0.9)));
  }
  if (name == "unit-geometric") {
    return SeriesKernel(std::make_shared<OnesRule>(), Domain::unit_interval());
  }
  throw UsageError("unknown series kernel '" + spec + "'");
}

/// Kernel expressions for sampled experiments; closed forms where they
/// exist.  Adds to the series grammar:
///   half-plane-cauchy | constant:C | szego-power:N | json:PATH
ExprPtr parse_kernel(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& name = parts[0];
  if (name == "szego") return kernels::szego();
  if (name == "bergman") return kernels::bergman();
  if (name == "bargmann") return kernels::bargmann();
  if (name == "half-plane-cauchy") return kernels::half_plane_cauchy();
  if (name == "constant") {
    if (parts.size() < 2) throw UsageError("constant needs a value: constant:C");
    return kernels::constant(std::stod(parts[1]), Domain::whole_plane());
  }
  if (name == "szego-power") {
    if (parts.size() < 2) throw UsageError("szego-power needs an exponent");
    return kernel_power(kernels::szego(), std::stoi(parts[1]));
  }
  if (name == "geometric") {
    if (parts.size() < 2) throw UsageError("geometric needs an exponent: geometric:N[:rR]");
    const double r = parts.size() > 2 ? parse_radius_token(parts[2]) : 0.9;
    return kernels::geometric_interval(std::stoi(parts[1]), r);
  }
  if (name == "unit-geometric") return kernels::series(parse_series(spec));
  if (name == "json") {
    if (parts.size() < 2) throw UsageError("json kernel needs a path: json:PATH");
    std::ifstream f(spec.substr(5));
    if (!f) throw UsageError("cannot read kernel descriptor " + spec.substr(5));
    return kernel_from_json(Json::parse(f));
  }
  throw UsageError("unknown kernel '" + spec + "'");
}

/// The closed-form expression a named series family sums to, used as the
/// independent side of feature / Monte-Carlo comparisons.
ExprPtr closed_form_of(const std::string& spec) {
  const std::string name = split(spec, ':')[0];
  if (name == "szego") return kernels::szego();
  if (name == "bergman") return kernels::bergman();
  if (name == "bargmann") return kernels::bargmann();
  if (name == "geometric" || name == "unit-geometric") return parse_kernel(spec);
  throw UsageError("no closed form registered for '" + spec + "'");
}

Json cert_to_json(const PsdCertificate& c) {
  Json j;
  j["verdict"] = c.psd() ? "psd" : "not-psd";
  j["min_eigenvalue"] = c.min_eigenvalue;
  j["spectral_radius"] = c.spectral_radius;
  j["tolerance"] = c.tolerance;
  Json w = Json::array();
  for (Eigen::Index i = 0; i < c.witness.size(); ++i) {
    w.push_back(Json::array({c.witness(i).real(), c.witness(i).imag()}));
  }
  j["witness"] = std::move(w);
  return j;
}

class Reporter {
 public:
  Reporter(std::string experiment, std::filesystem::path out_dir) : out_(std::move(out_dir)) {
    summary_["experiment"] = std::move(experiment);
    summary_["assertions"] = Json::array();
    summary_["settings"] = Json::object();
    summary_["report"] = Json::object();
  }

  Json& settings() { return summary_["settings"]; }
  Json& report() { return summary_["report"]; }

  bool require(const std::string& name, bool pass, const std::string& detail) {
    summary_["assertions"].push_back(
        Json{{"name", name}, {"pass", pass}, {"detail", detail}});
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
    all_ = all_ && pass;
    return pass;
  }

  void artifact(const std::string& filename, const std::string& contents) {
    atomic_write(out_ / filename, contents);
    files_.push_back(filename);
  }
  void artifact_json(const std::string& filename, const Json& j) {
    artifact(filename, j.dump(2) + "\n");
  }

  int finish() {
    summary_["artifacts"] = files_;
    summary_["pass"] = all_;
    atomic_write(out_ / "summary.json", summary_.dump(2) + "\n");
    std::cout << (all_ ? "all assertions passed" : "assertion failures present") << "\n";
    return all_ ? 0 : 1;
  }

 private:
  Json summary_;
  std::filesystem::path out_;
  std::vector<std::string> files_;
  bool all_ = true;
};

/// Options shared by every experiment.  A JSON config file may supply any
/// long-flag value by its flag name (sans dashes); explicit flags win.
struct CommonOpts {
  std::string out = "artifacts";
  std::uint64_t seed = 1;
  std::string config;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--out", c.out, "artifact directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "seed for stochastic steps")->capture_default_str();
  sub->add_option("--config", c.config, "JSON config file; flags override its values");
}

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file " + path);
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw UsageError("malformed config " + path + ": " + e.what());
  }
}

template <class T>
void overlay(const CLI::App* sub, const Json& cfg, const std::string& flag, T& value) {
  if (cfg.contains(flag) && sub->count("--" + flag) == 0) {
    try {
      value = cfg.at(flag).get<T>();
    } catch (const Json::exception& e) {
      throw UsageError("config key '" + flag + "': " + e.what());
    }
  }
}

// ---- gram -------------------------------------------------------------------

struct GramOpts {
  CommonOpts common;
  std::string kernel = "szego";
  std::string points = "disk:12:r0.8";
  int truncation = 0;
  double tol = 1e-9;
};

int run_gram(const GramOpts& o) {
  Reporter rep("gram", o.common.out);
  rep.settings() = {{"kernel", o.kernel}, {"points", o.points},
                    {"truncation", o.truncation}, {"psd_tol", o.tol}};

  const ExprPtr k = parse_kernel(o.kernel);
  const PointSet pts = parse_point_set(o.points);
  const GramMatrix g = gram(k, pts, o.truncation);

  rep.artifact("gram.csv", gram_to_csv(g));
  rep.artifact_json("gram.json", gram_to_json(g));

  const PsdCertificate cert = psd_check(g, o.tol);
  rep.report()["min_eigenvalue"] = cert.min_eigenvalue;
  rep.report()["spectral_radius"] = cert.spectral_radius;
  rep.require("kernel-matrix-psd", cert.psd(),
              "min eigenvalue " + fmt3(cert.min_eigenvalue) + " against tolerance " +
                  fmt3(cert.tolerance));
  return rep.finish();
}

// ---- psd --------------------------------------------------------------------

struct PsdOpts {
  CommonOpts common;
  std::string kernel = "szego";
  std::string points = "disk:12:r0.8";
  std::string expect = "psd";
  int truncation = 0;
  double tol = 1e-9;
};

int run_psd(const PsdOpts& o) {
  Reporter rep("psd", o.common.out);
  rep.settings() = {{"kernel", o.kernel}, {"points", o.points}, {"expect", o.expect},
                    {"truncation", o.truncation}, {"psd_tol", o.tol}};
  if (o.expect != "psd" && o.expect != "not-psd") {
    throw UsageError("--expect must be psd or not-psd");
  }

  const PsdCertificate cert =
      psd_check(gram(parse_kernel(o.kernel), parse_point_set(o.points), o.truncation), o.tol);
  rep.artifact_json("psd.json", cert_to_json(cert));
  const bool want_psd = o.expect == "psd";
  rep.require("verdict-matches-expectation", cert.psd() == want_psd,
              std::string("verdict ") + (cert.psd() ? "psd" : "not-psd") +
                  ", min eigenvalue " + fmt3(cert.min_eigenvalue));
  return rep.finish();
}

// ---- order-chain ------------------------------------------------------------

struct ChainOpts {
  CommonOpts common;
  std::string kernel = "szego";
  std::string points = "disk:40:r0.9";
  int nmax = 4;
  double tol = 1e-8;
};

int run_chain(const ChainOpts& o) {
  Reporter rep("order-chain", o.common.out);
  rep.settings() = {{"kernel", o.kernel}, {"points", o.points}, {"nmax", o.nmax},
                    {"psd_tol", o.tol}};

  const ChainReport r =
      verify_chain(parse_kernel(o.kernel), parse_point_set(o.points), o.nmax, o.tol);
  rep.artifact("chain.csv", chain_to_csv(r));
  if (!r.diagnostic.empty()) rep.report()["diagnostic"] = r.diagnostic;

  for (const ChainStep& s : r.steps) {
    const std::string name = s.n == 0 ? "premise-constant-below-kernel"
                                      : "chain-step-" + std::to_string(s.n);
    rep.require(name, s.verdict.holds,
                "min eigenvalue " + fmt3(s.verdict.witness.min_eigenvalue));
  }
  return rep.finish();
}

// ---- monotone-limit ---------------------------------------------------------

struct MonotoneOpts {
  CommonOpts common;
  std::string family = "partial-sums";
  std::string base = "szego:r0.7";
  std::string points = "disk:8:r0.7";
  std::string expect = "converged";
  std::string target;  // optional closed form the limit should match
  int terms = 40;
  double tol = 1e-9;
  double target_tol = 1e-10;
};

int run_monotone(const MonotoneOpts& o) {
  Reporter rep("monotone-limit", o.common.out);
  rep.settings() = {{"family", o.family}, {"base", o.base},   {"points", o.points},
                    {"expect", o.expect}, {"terms", o.terms}, {"psd_tol", o.tol}};

  const PointSet pts = parse_point_set(o.points);
  std::function<ExprPtr(int)> family;
  if (o.family == "partial-sums") {
    const SeriesKernel base = parse_series(o.base);
    family = [base](int n) {
      std::vector<double> coeffs(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) coeffs[static_cast<std::size_t>(j)] = base.rule->coeff(j);
      // Polynomial kernels are entire, so the family members accept any
      // sample the base accepts.
      return kernels::series(
          SeriesKernel(std::make_shared<FiniteListRule>(std::move(coeffs)),
                       Domain::whole_plane()));
    };
  } else if (o.family == "powers") {
    const ExprPtr base = parse_kernel(o.base);
    family = [base](int n) { return kernel_power(base, n); };
  } else {
    throw UsageError("--family must be partial-sums or powers");
  }

  const MonotoneLimitResult res = monotone_limit(family, pts, o.terms, o.tol);
  const char* status = res.status == MonotoneLimitResult::Status::Converged ? "converged"
                       : res.status == MonotoneLimitResult::Status::SupViolated
                           ? "sup-violated"
                           : "not-monotone";
  rep.report()["status"] = status;
  rep.report()["last_increment"] = res.last_increment;
  if (!res.diagnostic.empty()) rep.report()["diagnostic"] = res.diagnostic;

  Json diag = Json::array();
  for (Eigen::Index i = 0; i < res.sup_diag.size(); ++i) diag.push_back(res.sup_diag(i));
  rep.report()["sup_diag"] = std::move(diag);
  rep.artifact_json("limit.json", matrix_to_json(res.limit));

  if (o.expect != "converged" && o.expect != "sup-violated" && o.expect != "not-monotone") {
    throw UsageError("--expect must be converged, sup-violated, or not-monotone");
  }
  rep.require("status-matches-expectation", o.expect == status,
              std::string("status ") + status +
                  (res.diagnostic.empty() ? "" : " (" + res.diagnostic + ")"));

  if (!o.target.empty() && res.status == MonotoneLimitResult::Status::Converged) {
    const Eigen::MatrixXcd target = gram(parse_kernel(o.target), pts).entries;
    const double dev = (res.limit - target).cwiseAbs().maxCoeff();
    rep.settings()["target_tol"] = o.target_tol;
    rep.require("limit-matches-target", dev <= o.target_tol,
                "max deviation " + fmt3(dev) + " vs " + fmt3(o.target_tol));
  }
  return rep.finish();
}

// ---- feature-verify ---------------------------------------------------------

struct FeatureOpts {
  CommonOpts common;
  std::string feature = "onb";
  std::string base_a = "szego:r0.8";
  std::string base_b = "szego:r0.8";
  std::string points = "disk:10:r0.8";
  int truncation = 0;  // 0 = choose from the series tail bound
  double tol = 1e-10;
};

int run_feature(const FeatureOpts& o) {
  Reporter rep("feature-verify", o.common.out);
  const PointSet pts = parse_point_set(o.points);
  const double r = pts.max_abs();

  const SeriesKernel a = parse_series(o.base_a);
  const SeriesKernel b = parse_series(o.base_b);
  const int auto_a = auto_truncation(a, r);
  const int auto_b = auto_truncation(b, r);
  const int m = o.truncation > 0 ? o.truncation : std::max(auto_a, auto_b);

  // Truncating the coordinates drops a computable tail from each pairing;
  // widen the tolerance by it so the assertion stays honest.
  auto tail = [&](const SeriesKernel& k) { return truncation_bound(k, r, m); };
  // sup |K| on the sample radius, for propagating one factor's tail through
  // a product of pairings.
  auto value_bound = [&](const std::string& spec) {
    return std::abs(eval(*closed_form_of(spec), Scalar(r, 0.0), Scalar(r, 0.0))) + 1.0;
  };

  FeatureMap fm = onb_feature(a);
  ExprPtr target = closed_form_of(o.base_a);
  double slack = tail(a);
  int budget = m;
  if (o.feature == "onb") {
    // defaults above
  } else if (o.feature == "dual") {
    fm = distributional_feature(a);
  } else if (o.feature == "tensor") {
    fm = tensor_feature(onb_feature(a), onb_feature(b));
    target = combine(CombineOp::Product, {closed_form_of(o.base_a), closed_form_of(o.base_b)});
    budget = m * m;  // coordinate budget splits as floor(sqrt(n)) per factor
    slack = tail(a) * value_bound(o.base_b) + tail(b) * value_bound(o.base_a) +
            tail(a) * tail(b);
  } else if (o.feature == "direct-sum") {
    fm = direct_sum_feature({onb_feature(a), onb_feature(b)});
    target = combine(CombineOp::Sum, {closed_form_of(o.base_a), closed_form_of(o.base_b)});
    budget = 2 * m;
    slack = tail(a) + tail(b);
  } else if (o.feature == "dual-pair") {
    // Both directions of the two-kernel swap; verified symmetrically below.
  } else {
    throw UsageError("--feature must be onb, dual, tensor, direct-sum, or dual-pair");
  }

  rep.settings() = {{"feature", o.feature},       {"base_a", o.base_a},
                    {"base_b", o.base_b},         {"points", o.points},
                    {"coordinate_budget", budget}, {"tol", o.tol},
                    {"truncation_slack", slack}};

  if (o.feature == "dual-pair") {
    const auto [phi, psi] = dual_pair(a, b);
    const FeatureCheck ca = verify_feature(phi, closed_form_of(o.base_a), pts,
                                           o.tol + tail(a), m);
    const FeatureCheck cb = verify_feature(psi, closed_form_of(o.base_b), pts,
                                           o.tol + tail(b), m);
    rep.report()["deviation_first"] = ca.max_deviation;
    rep.report()["deviation_second"] = cb.max_deviation;
    rep.require("first-kernel-realized-in-second-space", ca.pass,
                "max deviation " + fmt3(ca.max_deviation));
    rep.require("second-kernel-realized-in-first-space", cb.pass,
                "max deviation " + fmt3(cb.max_deviation));
    return rep.finish();
  }

  const FeatureCheck check = verify_feature(fm, target, pts, o.tol + slack, budget);
  rep.report()["space"] = fm.space;
  rep.report()["max_deviation"] = check.max_deviation;
  rep.require("feature-pairing-matches-kernel", check.pass,
              "max deviation " + fmt3(check.max_deviation) + " vs " + fmt3(o.tol + slack));
  return rep.finish();
}

// ---- gaussian-mc ------------------------------------------------------------

struct GaussianOpts {
  CommonOpts common;
  std::string base = "szego:r0.8";
  std::string points = "disk:10:r0.8";
  long long samples = 100000;
  double margin = 5.0;
  double min_rate = 0.95;
  int truncation = 0;
};

int run_gaussian(const GaussianOpts& o) {
  Reporter rep("gaussian-mc", o.common.out);
  if (o.samples < 1) throw UsageError("--M must be >= 1");

  const SeriesKernel base = parse_series(o.base);
  const PointSet pts = parse_point_set(o.points);
  const int trunc = o.truncation > 0 ? o.truncation : auto_truncation(base, pts.max_abs());

  rep.settings() = {{"base", o.base},     {"points", o.points},   {"M", o.samples},
                    {"seed", o.common.seed}, {"margin", o.margin}, {"min_rate", o.min_rate},
                    {"truncation", trunc}};

  const EmpiricalGram emp = gaussian_feature(base, pts, o.samples, o.common.seed, trunc);
  const Eigen::MatrixXcd exact = gram(closed_form_of(o.base), pts).entries;
  rep.artifact_json("empirical.json", empirical_to_json(emp));

  const auto n = exact.rows();
  const double root_m = std::sqrt(static_cast<double>(o.samples));
  long long within = 0;
  double worst_ratio = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double band =
          o.margin * std::sqrt(exact(i, i).real() * exact(j, j).real()) / root_m;
      const double err = std::abs(emp.entries(i, j) - exact(i, j));
      if (err <= band) ++within;
      worst_ratio = std::max(worst_ratio, err / band);
    }
  }
  const double rate = static_cast<double>(within) / static_cast<double>(n * n);
  rep.report()["rate_within_band"] = rate;
  rep.report()["worst_error_over_band"] = worst_ratio;
  rep.require("empirical-entries-concentrate", rate >= o.min_rate,
              fmt(rate * 100.0) + "% of entries within the deviation band (need " +
                  fmt(o.min_rate * 100.0) + "%)");
  return rep.finish();
}

// ---- dual-pairing -----------------------------------------------------------

struct DualPairingOpts {
  CommonOpts common;
  std::string base = "szego";
  int nmax = 15;
};

int run_dual_pairing(const DualPairingOpts& o) {
  Reporter rep("dual-pairing", o.common.out);
  rep.settings() = {{"base", o.base}, {"nmax", o.nmax}};

  const SeriesKernel k = parse_series(o.base);
  bool all_exact = true;
  int bad_n = -1, bad_m = -1;
  Json table = Json::array();
  for (int n = 0; n <= o.nmax; ++n) {
    Json row = Json::array();
    for (int m = 0; m <= o.nmax; ++m) {
      const Rational v = dual_pairing_exact(k, n, m);
      row.push_back(Json::array({v.numerator(), v.denominator()}));
      const Rational want(n == m ? 1 : 0);
      if (v != want && all_exact) {
        all_exact = false;
        bad_n = n;
        bad_m = m;
      }
    }
    table.push_back(std::move(row));
  }
  rep.artifact_json("pairings.json", Json{{"base", o.base}, {"pairings", table}});
  rep.require("derivative-functionals-orthonormal", all_exact,
              all_exact ? "all pairings exactly delta(n, m) up to index " +
                              std::to_string(o.nmax)
                        : "first mismatch at (" + std::to_string(bad_n) + ", " +
                              std::to_string(bad_m) + ")");
  return rep.finish();
}

// ---- delta-expand -----------------------------------------------------------

struct DeltaOpts {
  CommonOpts common;
  int terms = 11;
  int degree = 10;
  int count = 100;
  int xcount = 20;
  double tol = 1e-12;
};

int run_delta(const DeltaOpts& o) {
  Reporter rep("delta-expand", o.common.out);
  rep.settings() = {{"terms", o.terms},   {"degree", o.degree}, {"count", o.count},
                    {"xcount", o.xcount}, {"tol", o.tol},       {"seed", o.common.seed}};
  if (o.degree >= o.terms) {
    throw UsageError("--terms must exceed --degree for the identity regime");
  }

  double worst = 0.0;
  for (int c = 0; c < o.count; ++c) {
    std::vector<Scalar> p(static_cast<std::size_t>(o.degree) + 1);
    for (int j = 0; j <= o.degree; ++j) {
      p[static_cast<std::size_t>(j)] =
          Scalar(2.0 * rng::uniform(o.common.seed, 10,
                                    static_cast<std::uint64_t>(c) * 64 + j) - 1.0, 0.0);
    }
    for (int t = 0; t < o.xcount; ++t) {
      const double x =
          2.0 * rng::uniform(o.common.seed, 11,
                             static_cast<std::uint64_t>(c) * 1024 + t) - 1.0;
      const DeltaExpansion e = delta_expand(Scalar(x, 0.0), o.terms, p);
      if (e.truncated) {
        rep.require("no-spurious-truncation", false,
                    "degree below terms yet flagged truncated");
        return rep.finish();
      }
      // Independent evaluation: plain power accumulation, a different
      // summation order than the expansion's Horner pass.
      Scalar direct(0.0, 0.0);
      Scalar pw(1.0, 0.0);
      for (int j = 0; j <= o.degree; ++j) {
        direct += p[static_cast<std::size_t>(j)] * pw;
        pw *= x;
      }
      worst = std::max(worst, std::abs(e.value - direct));
    }
  }
  rep.report()["worst_residual"] = worst;
  rep.require("expansion-reproduces-polynomials", worst <= o.tol,
              "worst residual " + fmt3(worst) + " over " + std::to_string(o.count) + "x" +
                  std::to_string(o.xcount) + " cases");

  // Degree beyond the expansion order must be flagged, with the residual
  // measuring the dropped tail.
  std::vector<Scalar> high(static_cast<std::size_t>(o.terms) + 1, Scalar(0.0, 0.0));
  high.back() = Scalar(1.0, 0.0);
  const DeltaExpansion e = delta_expand(Scalar(0.5, 0.0), o.terms, high);
  rep.report()["truncated_case_residual"] = e.residual;
  rep.require("overflowing-degree-flagged", e.truncated && e.residual > 0.0,
              "residual " + fmt3(e.residual) + " reported for degree " +
                  std::to_string(o.terms));
  return rep.finish();
}

// ---- order-operator ---------------------------------------------------------

struct OrderOpOpts {
  CommonOpts common;
  std::string kernel = "szego:r0.8";
  std::string dominating = "bergman:r0.8";
  std::string points = "circle:15:r0.8";
  int terms = 51;
  int truncation = 0;
  double tol = 1e-8;
  bool expect_contractive = true;
};

int run_order_operator(const OrderOpOpts& o) {
  Reporter rep("order-operator", o.common.out);
  rep.settings() = {{"kernel", o.kernel},       {"dominating", o.dominating},
                    {"points", o.points},       {"terms", o.terms},
                    {"spectrum_tol", o.tol},    {"truncation", o.truncation}};

  const ExprPtr k = closed_form_of(o.kernel);
  const ExprPtr l = closed_form_of(o.dominating);
  const PointSet pts = parse_point_set(o.points);

  const SampledOrderOperator op = order_operator_sampled(k, l, pts, o.truncation);
  rep.report()["pencil_eigenvalues"] = [&] {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < op.eigenvalues.size(); ++i) a.push_back(op.eigenvalues(i));
    return a;
  }();
  rep.report()["effective_rank"] = op.effective_rank;
  rep.report()["dropped_directions"] = op.dropped;
  rep.report()["solve_residual"] = op.residual;

  const double lo = op.eigenvalues.minCoeff();
  const double hi = op.eigenvalues.maxCoeff();
  rep.require("pencil-spectrum-in-unit-interval", lo >= -o.tol && hi <= 1.0 + o.tol,
              "eigenvalues in [" + fmt3(lo) + ", " + fmt3(hi) + "]");

  // Conditioning-aware residual bound for reproducing K inside the
  // dominating space.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram(l, pts, o.truncation).entries);
  const double cond = es.eigenvalues().maxCoeff() /
                      std::max(es.eigenvalues().minCoeff(), 1e-300);
  rep.report()["dominating_gram_condition"] = cond;
  rep.require("operator-reproduces-dominated-kernel", op.residual <= 1e-9 * cond,
              "solve residual " + fmt3(op.residual) + " vs 1e-9 * condition " + fmt3(cond));

  const DiagonalSpectrum spec =
      order_operator_diagonal(parse_series(o.kernel), parse_series(o.dominating), o.terms);
  rep.artifact("spectrum.csv", spectrum_to_csv(spec.lambda));
  Json lam = Json::array();
  for (const Rational& r : spec.lambda) {
    lam.push_back(Json::array({r.numerator(), r.denominator()}));
  }
  rep.artifact_json("operator.json", Json{{"lambda", lam},
                                          {"max_lambda", spec.max_lambda},
                                          {"contractive", spec.contractive},
                                          {"pencil_residual", op.residual}});

  // lambda_n rebuilt against the dominating coefficients must recover the
  // dominated ones exactly; rational arithmetic, no rounding anywhere.
  bool recovered = true;
  for (int n = 0; n < o.terms && recovered; ++n) {
    const auto ak = parse_series(o.kernel).rule->coeff_exact(n);
    const auto al = parse_series(o.dominating).rule->coeff_exact(n);
    recovered = ak && al && spec.lambda[static_cast<std::size_t>(n)] * *al == *ak;
  }
  rep.require("diagonal-route-reconstructs-kernel", recovered,
              "lambda_n * a_n(dominating) == a_n(dominated) for n < " +
                  std::to_string(o.terms));
  rep.require("diagonal-route-contractivity", spec.contractive == o.expect_contractive,
              "max lambda " + fmt(spec.max_lambda));
  return rep.finish();
}

// ---- multiplier -------------------------------------------------------------

struct MultiplierOpts {
  CommonOpts common;
  std::string phi = "z";
  std::string kernel = "szego";
  std::string points = "disk:12:r0.8";
  std::string expect = "contractive";
  double tol = 1e-9;
  int truncation = 0;
};

std::function<Scalar(Scalar)> parse_phi(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts[0] == "z") return [](Scalar z) { return z; };
  if (parts[0] == "square") return [](Scalar z) { return z * z; };
  if (parts[0] == "constant") {
    if (parts.size() < 2) throw UsageError("constant multiplier needs a value");
    const double c = std::stod(parts[1]);
    return [c](Scalar) { return Scalar(c, 0.0); };
  }
  if (parts[0] == "scale") {
    if (parts.size() < 2) throw UsageError("scale multiplier needs a factor");
    const double a = std::stod(parts[1]);
    return [a](Scalar z) { return a * z; };
  }
  throw UsageError("unknown multiplier '" + spec + "' (z, square, constant:C, scale:A)");
}

int run_multiplier(const MultiplierOpts& o) {
  Reporter rep("multiplier", o.common.out);
  rep.settings() = {{"phi", o.phi},       {"kernel", o.kernel}, {"points", o.points},
                    {"expect", o.expect}, {"psd_tol", o.tol},   {"truncation", o.truncation}};
  if (o.expect != "contractive" && o.expect != "refuted") {
    throw UsageError("--expect must be contractive or refuted");
  }

  const MultiplierReport r = multiplier_test(parse_phi(o.phi), parse_kernel(o.kernel),
                                             parse_point_set(o.points), o.tol, o.truncation);
  rep.report()["max_modulus_on_sample"] = r.max_modulus;
  rep.artifact_json("multiplier.json", Json{{"contractive", r.contractive},
                                            {"max_modulus", r.max_modulus},
                                            {"certificate", cert_to_json(r.witness)}});
  const bool want = o.expect == "contractive";
  rep.require("multiplier-verdict-matches-expectation", r.contractive == want,
              std::string(r.contractive ? "deflated kernel psd" : "refuted, min eigenvalue ") +
                  (r.contractive ? "" : fmt3(r.witness.min_eigenvalue)));
  return rep.finish();
}

// ---- ifs-figure -------------------------------------------------------------

struct IfsFigureOpts {
  CommonOpts common;
  int max_depth = 5;
  int law_depth = 8;
  int grid = 2187;
  int random_points = 10000;
};

int run_ifs_figure(const IfsFigureOpts& o) {
  Reporter rep("ifs-figure", o.common.out);
  rep.settings() = {{"max_depth", o.max_depth}, {"law_depth", o.law_depth},
                    {"grid", o.grid},           {"random_points", o.random_points},
                    {"seed", o.common.seed}};
  if (o.max_depth < 0 || o.law_depth < 0 || o.grid < 2 || o.random_points < 1) {
    throw UsageError("ifs-figure: all sizes must be positive");
  }

  const auto one = [](double) { return 1.0; };

  // Stage functions T^n 1 tabulated on a uniform grid, one file per depth.
  for (int d = 0; d <= o.max_depth; ++d) {
    std::string csv = "x,value\n";
    for (int i = 0; i <= o.grid; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(o.grid);
      csv += fmt(x) + "," + fmt(ifs_eval(one, d, x)) + "\n";
    }
    rep.artifact("stage_" + std::to_string(d) + ".csv", csv);
  }

  Json stats = Json::array();
  for (int d = 0; d <= o.law_depth; ++d) {
    const SupportIntervals s = support_intervals(d);
    const long long expect_count = 1LL << d;
    bool unit_lengths = true;
    for (const auto& [a, b] : s.nums) unit_lengths = unit_lengths && (b - a == 1);
    stats.push_back(Json{{"depth", d},
                         {"intervals", s.nums.size()},
                         {"length_num", expect_count},
                         {"length_den", s.denom}});
    rep.require("stage-count-depth-" + std::to_string(d),
                static_cast<long long>(s.nums.size()) == expect_count && unit_lengths,
                std::to_string(s.nums.size()) + " unit intervals, total measure " +
                    std::to_string(s.nums.size()) + "/" + std::to_string(s.denom));

    long long zero_violations = 0, member_violations = 0;
    for (int i = 0; i < o.random_points; ++i) {
      const double x = rng::uniform(o.common.seed, 20 + static_cast<std::uint64_t>(d), i);
      const double v = ifs_eval(one, d, x);
      if (cantor_member(x, d)) {
        if (v != 1.0) ++member_violations;
      } else {
        if (v != 0.0) ++zero_violations;
      }
    }
    rep.require("support-law-depth-" + std::to_string(d),
                zero_violations == 0 && member_violations == 0,
                std::to_string(o.random_points) + " random points; " +
                    std::to_string(zero_violations) + " nonzero off support, " +
                    std::to_string(member_violations) + " wrong on support");
  }
  rep.artifact_json("stages.json", stats);
  return rep.finish();
}

// ---- ifs-kernel -------------------------------------------------------------

struct IfsKernelOpts {
  CommonOpts common;
  std::string base = "unit-geometric";
  int depth_max = 4;
  int truncation = 64;
  int grid_level = 6;
};

int run_ifs_kernel(const IfsKernelOpts& o) {
  Reporter rep("ifs-kernel", o.common.out);
  rep.settings() = {{"base", o.base},             {"depth_max", o.depth_max},
                    {"truncation", o.truncation}, {"grid_level", o.grid_level},
                    {"invariance_tol", 1e-9}};

  const SeriesKernel base = parse_series(o.base);
  std::string csv = "depth,deviation\n";
  for (int d = 0; d <= o.depth_max; ++d) {
    const double dev = ifs_invariance_check(base, d, o.truncation, o.grid_level);
    csv += std::to_string(d) + "," + fmt(dev) + "\n";
    rep.require("transform-consistency-depth-" + std::to_string(d), dev <= 1e-9,
                "max deviation " + fmt3(dev) + " on the level-" +
                    std::to_string(o.grid_level) + " grid");
  }
  rep.artifact("invariance.csv", csv);

  // Kernel matrix of the deepest stage on the stage-set endpoints.
  const SupportIntervals s = support_intervals(o.depth_max);
  std::vector<Scalar> endpoints;
  for (const auto& [a, b] : s.nums) {
    endpoints.emplace_back(static_cast<double>(a) / static_cast<double>(s.denom), 0.0);
    endpoints.emplace_back(static_cast<double>(b) / static_cast<double>(s.denom), 0.0);
  }
  const PointSet pts(std::move(endpoints), Domain::unit_interval());
  const ExprPtr kd = ifs_kernel(base, o.depth_max, o.truncation);
  const PsdCertificate cert = psd_check(gram(kd, pts), 1e-9);
  rep.report()["endpoint_min_eigenvalue"] = cert.min_eigenvalue;
  rep.artifact_json("kernel.json", kernel_to_json(kd));
  rep.require("stage-kernel-psd-on-endpoints", cert.psd(),
              "min eigenvalue " + fmt3(cert.min_eigenvalue) + " on " +
                  std::to_string(pts.size()) + " endpoints");
  return rep.finish();
}

// ---- ktransform-roundtrip ---------------------------------------------------

struct RoundtripOpts {
  CommonOpts common;
  std::string kernel = "szego";
  int trials = 20;
  int support = 6;
  double tol = 1e-9;
};

int run_roundtrip(const RoundtripOpts& o) {
  Reporter rep("ktransform-roundtrip", o.common.out);
  rep.settings() = {{"kernel", o.kernel}, {"trials", o.trials}, {"support", o.support},
                    {"tol", o.tol},       {"seed", o.common.seed}};
  if (o.trials < 1 || o.support < 1) throw UsageError("trials and support must be >= 1");

  const ExprPtr k = parse_kernel(o.kernel);
  double worst_roundtrip = 0.0, worst_adjoint = 0.0, worst_isometry = 0.0,
         worst_idempotence = 0.0;
  bool all_in_span = true;

  for (int t = 0; t < o.trials; ++t) {
    // Full-rank support: jittered circle radii and rotation keep the kernel
    // matrix well away from singular while varying across trials.
    const double phase = rng::uniform(o.common.seed, 30, t);
    std::vector<Scalar> vals;
    for (int j = 0; j < o.support; ++j) {
      const double rho =
          0.55 + 0.2 * rng::uniform(o.common.seed, 31,
                                    static_cast<std::uint64_t>(t) * 64 + j);
      const double ang = 2.0 * M_PI * (j + phase) / o.support;
      vals.emplace_back(rho * std::cos(ang), rho * std::sin(ang));
    }
    PointSet pts(std::move(vals), Domain::disk(0.76));

    Eigen::VectorXcd w(o.support);
    for (int j = 0; j < o.support; ++j) {
      const std::uint64_t idx = static_cast<std::uint64_t>(t) * 128 + 2 * j;
      w(j) = Scalar(rng::normal(o.common.seed, 32, idx),
                    rng::normal(o.common.seed, 32, idx + 1)) /
             std::sqrt(2.0);
    }
    const DiscreteMeasure mu(pts, w);

    const SpanFunction f = tk_apply(mu, k);
    const Eigen::VectorXcd fv = f.values(pts);

    const KInverseResult inv = k_inverse(fv, pts, k);
    all_in_span = all_in_span && inv.in_span;
    worst_roundtrip =
        std::max(worst_roundtrip, (inv.measure.weights - w).cwiseAbs().maxCoeff());

    const double lhs_scale = 1.0 + std::abs(mu.weights.dot(fv));
    worst_adjoint = std::max(worst_adjoint, adjoint_residual(mu, fv, k) / lhs_scale);

    const double e = energy(mu, k);
    worst_isometry =
        std::max(worst_isometry, std::abs(e - f.norm() * f.norm()) / (1.0 + e));

    // Penrose idempotence: inverting the image of the recovered measure
    // reproduces the recovered weights.
    const Eigen::VectorXcd fv2 = tk_apply(inv.measure, k).values(pts);
    const KInverseResult inv2 = k_inverse(fv2, pts, k);
    worst_idempotence = std::max(
        worst_idempotence,
        (inv2.measure.weights - inv.measure.weights).cwiseAbs().maxCoeff());
  }

  rep.report()["worst_roundtrip_error"] = worst_roundtrip;
  rep.report()["worst_adjoint_residual"] = worst_adjoint;
  rep.report()["worst_isometry_gap"] = worst_isometry;
  rep.report()["worst_idempotence_gap"] = worst_idempotence;
  rep.artifact_json("roundtrip.json", Json{{"trials", o.trials},
                                           {"roundtrip", worst_roundtrip},
                                           {"adjoint", worst_adjoint},
                                           {"isometry", worst_isometry},
                                           {"idempotence", worst_idempotence}});

  rep.require("inverse-recovers-weights", worst_roundtrip <= o.tol && all_in_span,
              "worst weight error " + fmt3(worst_roundtrip));
  rep.require("adjoint-identity-holds", worst_adjoint <= o.tol,
              "worst scaled residual " + fmt3(worst_adjoint));
  rep.require("transform-is-isometric", worst_isometry <= 1e-12,
              "worst scaled energy gap " + fmt3(worst_isometry));
  rep.require("inverse-idempotent", worst_idempotence <= o.tol,
              "worst repeat-inverse gap " + fmt3(worst_idempotence));
  return rep.finish();
}

// ---- wiring -----------------------------------------------------------------

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const UsageError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for positive-definite kernels and their feature spaces"};
  app.require_subcommand(1);
  int rc = 0;

  auto gram_o = std::make_shared<GramOpts>();
  {
    CLI::App* sub = app.add_subcommand("gram", "kernel matrix on a point set, CSV/JSON");
    add_common(sub, gram_o->common);
    sub->add_option("--kernel", gram_o->kernel)->capture_default_str();
    sub->add_option("--points", gram_o->points)->capture_default_str();
    sub->add_option("--truncation", gram_o->truncation)->capture_default_str();
    sub->add_option("--tol", gram_o->tol)->capture_default_str();
    sub->callback([sub, gram_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(gram_o->common.config);
        overlay(sub, cfg, "kernel", gram_o->kernel);
        overlay(sub, cfg, "points", gram_o->points);
        overlay(sub, cfg, "truncation", gram_o->truncation);
        overlay(sub, cfg, "tol", gram_o->tol);
        overlay(sub, cfg, "out", gram_o->common.out);
        overlay(sub, cfg, "seed", gram_o->common.seed);
        return run_gram(*gram_o);
      });
    });
  }

  auto psd_o = std::make_shared<PsdOpts>();
  {
    CLI::App* sub = app.add_subcommand("psd", "positivity certificate for a kernel matrix");
    add_common(sub, psd_o->common);
    sub->add_option("--kernel", psd_o->kernel)->capture_default_str();
    sub->add_option("--points", psd_o->points)->capture_default_str();
    sub->add_option("--expect", psd_o->expect)->capture_default_str();
    sub->add_option("--truncation", psd_o->truncation)->capture_default_str();
    sub->add_option("--tol", psd_o->tol)->capture_default_str();
    sub->callback([sub, psd_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(psd_o->common.config);
        overlay(sub, cfg, "kernel", psd_o->kernel);
        overlay(sub, cfg, "points", psd_o->points);
        overlay(sub, cfg, "expect", psd_o->expect);
        overlay(sub, cfg, "truncation", psd_o->truncation);
        overlay(sub, cfg, "tol", psd_o->tol);
        overlay(sub, cfg, "out", psd_o->common.out);
        return run_psd(*psd_o);
      });
    });
  }

  auto chain_o = std::make_shared<ChainOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "order-chain", "tower of kernel powers, one positivity verdict per step");
    add_common(sub, chain_o->common);
    sub->add_option("--kernel", chain_o->kernel)->capture_default_str();
    sub->add_option("--points", chain_o->points)->capture_default_str();
    sub->add_option("--nmax", chain_o->nmax)->capture_default_str();
    sub->add_option("--tol", chain_o->tol)->capture_default_str();
    sub->callback([sub, chain_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(chain_o->common.config);
        overlay(sub, cfg, "kernel", chain_o->kernel);
        overlay(sub, cfg, "points", chain_o->points);
        overlay(sub, cfg, "nmax", chain_o->nmax);
        overlay(sub, cfg, "tol", chain_o->tol);
        overlay(sub, cfg, "out", chain_o->common.out);
        return run_chain(*chain_o);
      });
    });
  }

  auto mono_o = std::make_shared<MonotoneOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "monotone-limit", "increasing kernel family: limit or divergence diagnosis");
    add_common(sub, mono_o->common);
    sub->add_option("--family", mono_o->family, "partial-sums or powers")
        ->capture_default_str();
    sub->add_option("--base", mono_o->base)->capture_default_str();
    sub->add_option("--points", mono_o->points)->capture_default_str();
    sub->add_option("--expect", mono_o->expect)->capture_default_str();
    sub->add_option("--target", mono_o->target, "closed form the limit should match");
    sub->add_option("--terms", mono_o->terms)->capture_default_str();
    sub->add_option("--tol", mono_o->tol)->capture_default_str();
    sub->add_option("--target-tol", mono_o->target_tol)->capture_default_str();
    sub->callback([sub, mono_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(mono_o->common.config);
        overlay(sub, cfg, "family", mono_o->family);
        overlay(sub, cfg, "base", mono_o->base);
        overlay(sub, cfg, "points", mono_o->points);
        overlay(sub, cfg, "expect", mono_o->expect);
        overlay(sub, cfg, "target", mono_o->target);
        overlay(sub, cfg, "terms", mono_o->terms);
        overlay(sub, cfg, "tol", mono_o->tol);
        overlay(sub, cfg, "target-tol", mono_o->target_tol);
        overlay(sub, cfg, "out", mono_o->common.out);
        return run_monotone(*mono_o);
      });
    });
  }

  auto feat_o = std::make_shared<FeatureOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "feature-verify", "check a coordinate realization against its kernel");
    add_common(sub, feat_o->common);
    sub->add_option("--feature", feat_o->feature, "onb, dual, tensor, direct-sum, dual-pair")
        ->capture_default_str();
    sub->add_option("--base-a", feat_o->base_a)->capture_default_str();
    sub->add_option("--base-b", feat_o->base_b)->capture_default_str();
    sub->add_option("--points", feat_o->points)->capture_default_str();
    sub->add_option("--truncation", feat_o->truncation)->capture_default_str();
    sub->add_option("--tol", feat_o->tol)->capture_default_str();
    sub->callback([sub, feat_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(feat_o->common.config);
        overlay(sub, cfg, "feature", feat_o->feature);
        overlay(sub, cfg, "base-a", feat_o->base_a);
        overlay(sub, cfg, "base-b", feat_o->base_b);
        overlay(sub, cfg, "points", feat_o->points);
        overlay(sub, cfg, "truncation", feat_o->truncation);
        overlay(sub, cfg, "tol", feat_o->tol);
        overlay(sub, cfg, "out", feat_o->common.out);
        return run_feature(*feat_o);
      });
    });
  }

  auto gauss_o = std::make_shared<GaussianOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "gaussian-mc", "Monte-Carlo kernel estimate from the associated Gaussian process");
    add_common(sub, gauss_o->common);
    sub->add_option("--base", gauss_o->base)->capture_default_str();
    sub->add_option("--points", gauss_o->points)->capture_default_str();
    sub->add_option("--M", gauss_o->samples, "sample count (>= 1)")->capture_default_str();
    sub->add_option("--margin", gauss_o->margin)->capture_default_str();
    sub->add_option("--min-rate", gauss_o->min_rate)->capture_default_str();
    sub->add_option("--truncation", gauss_o->truncation)->capture_default_str();
    sub->callback([sub, gauss_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(gauss_o->common.config);
        overlay(sub, cfg, "base", gauss_o->base);
        overlay(sub, cfg, "points", gauss_o->points);
        overlay(sub, cfg, "M", gauss_o->samples);
        overlay(sub, cfg, "margin", gauss_o->margin);
        overlay(sub, cfg, "min-rate", gauss_o->min_rate);
        overlay(sub, cfg, "truncation", gauss_o->truncation);
        overlay(sub, cfg, "out", gauss_o->common.out);
        overlay(sub, cfg, "seed", gauss_o->common.seed);
        return run_gaussian(*gauss_o);
      });
    });
  }

  auto dualp_o = std::make_shared<DualPairingOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "dual-pairing", "orthonormality table of the derivative dual basis");
    add_common(sub, dualp_o->common);
    sub->add_option("--base", dualp_o->base)->capture_default_str();
    sub->add_option("--nmax", dualp_o->nmax)->capture_default_str();
    sub->callback([sub, dualp_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(dualp_o->common.config);
        overlay(sub, cfg, "base", dualp_o->base);
        overlay(sub, cfg, "nmax", dualp_o->nmax);
        overlay(sub, cfg, "out", dualp_o->common.out);
        return run_dual_pairing(*dualp_o);
      });
    });
  }

  auto delta_o = std::make_shared<DeltaOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "delta-expand", "truncated point-mass expansion against direct evaluation");
    add_common(sub, delta_o->common);
    sub->add_option("--terms", delta_o->terms)->capture_default_str();
    sub->add_option("--degree", delta_o->degree)->capture_default_str();
    sub->add_option("--count", delta_o->count)->capture_default_str();
    sub->add_option("--xcount", delta_o->xcount)->capture_default_str();
    sub->add_option("--tol", delta_o->tol)->capture_default_str();
    sub->callback([sub, delta_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(delta_o->common.config);
        overlay(sub, cfg, "terms", delta_o->terms);
        overlay(sub, cfg, "degree", delta_o->degree);
        overlay(sub, cfg, "count", delta_o->count);
        overlay(sub, cfg, "xcount", delta_o->xcount);
        overlay(sub, cfg, "tol", delta_o->tol);
        overlay(sub, cfg, "out", delta_o->common.out);
        overlay(sub, cfg, "seed", delta_o->common.seed);
        return run_delta(*delta_o);
      });
    });
  }

  auto orderop_o = std::make_shared<OrderOpOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "order-operator", "contraction linking an ordered kernel pair: spectra both routes");
    add_common(sub, orderop_o->common);
    sub->add_option("--kernel", orderop_o->kernel)->capture_default_str();
    sub->add_option("--dominating", orderop_o->dominating)->capture_default_str();
    sub->add_option("--points", orderop_o->points)->capture_default_str();
    sub->add_option("--terms", orderop_o->terms)->capture_default_str();
    sub->add_option("--truncation", orderop_o->truncation)->capture_default_str();
    sub->add_option("--tol", orderop_o->tol)->capture_default_str();
    sub->add_flag("--expect-contractive,!--expect-noncontractive",
                  orderop_o->expect_contractive);
    sub->callback([sub, orderop_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(orderop_o->common.config);
        overlay(sub, cfg, "kernel", orderop_o->kernel);
        overlay(sub, cfg, "dominating", orderop_o->dominating);
        overlay(sub, cfg, "points", orderop_o->points);
        overlay(sub, cfg, "terms", orderop_o->terms);
        overlay(sub, cfg, "truncation", orderop_o->truncation);
        overlay(sub, cfg, "tol", orderop_o->tol);
        overlay(sub, cfg, "out", orderop_o->common.out);
        return run_order_operator(*orderop_o);
      });
    });
  }

  auto mult_o = std::make_shared<MultiplierOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "multiplier", "contractive-multiplier certificate via the deflated kernel");
    add_common(sub, mult_o->common);
    sub->add_option("--phi", mult_o->phi, "z, square, constant:C, scale:A")
        ->capture_default_str();
    sub->add_option("--kernel", mult_o->kernel)->capture_default_str();
    sub->add_option("--points", mult_o->points)->capture_default_str();
    sub->add_option("--expect", mult_o->expect)->capture_default_str();
    sub->add_option("--tol", mult_o->tol)->capture_default_str();
    sub->add_option("--truncation", mult_o->truncation)->capture_default_str();
    sub->callback([sub, mult_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(mult_o->common.config);
        overlay(sub, cfg, "phi", mult_o->phi);
        overlay(sub, cfg, "kernel", mult_o->kernel);
        overlay(sub, cfg, "points", mult_o->points);
        overlay(sub, cfg, "expect", mult_o->expect);
        overlay(sub, cfg, "tol", mult_o->tol);
        overlay(sub, cfg, "truncation", mult_o->truncation);
        overlay(sub, cfg, "out", mult_o->common.out);
        return run_multiplier(*mult_o);
      });
    });
  }

  auto fig_o = std::make_shared<IfsFigureOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "ifs-figure", "subdivision stages: plot data plus exact support law");
    add_common(sub, fig_o->common);
    sub->add_option("--max-depth", fig_o->max_depth)->capture_default_str();
    sub->add_option("--law-depth", fig_o->law_depth)->capture_default_str();
    sub->add_option("--grid", fig_o->grid)->capture_default_str();
    sub->add_option("--random", fig_o->random_points)->capture_default_str();
    sub->callback([sub, fig_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(fig_o->common.config);
        overlay(sub, cfg, "max-depth", fig_o->max_depth);
        overlay(sub, cfg, "law-depth", fig_o->law_depth);
        overlay(sub, cfg, "grid", fig_o->grid);
        overlay(sub, cfg, "random", fig_o->random_points);
        overlay(sub, cfg, "out", fig_o->common.out);
        overlay(sub, cfg, "seed", fig_o->common.seed);
        return run_ifs_figure(*fig_o);
      });
    });
  }

  auto ifsk_o = std::make_shared<IfsKernelOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "ifs-kernel", "subdivision kernels: transform consistency and positivity");
    add_common(sub, ifsk_o->common);
    sub->add_option("--base", ifsk_o->base)->capture_default_str();
    sub->add_option("--depth-max", ifsk_o->depth_max)->capture_default_str();
    sub->add_option("--truncation", ifsk_o->truncation)->capture_default_str();
    sub->add_option("--grid-level", ifsk_o->grid_level)->capture_default_str();
    sub->callback([sub, ifsk_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(ifsk_o->common.config);
        overlay(sub, cfg, "base", ifsk_o->base);
        overlay(sub, cfg, "depth-max", ifsk_o->depth_max);
        overlay(sub, cfg, "truncation", ifsk_o->truncation);
        overlay(sub, cfg, "grid-level", ifsk_o->grid_level);
        overlay(sub, cfg, "out", ifsk_o->common.out);
        return run_ifs_kernel(*ifsk_o);
      });
    });
  }

  auto rt_o = std::make_shared<RoundtripOpts>();
  {
    CLI::App* sub = app.add_subcommand(
        "ktransform-roundtrip", "measure -> function -> measure with adjoint checks");
    add_common(sub, rt_o->common);
    sub->add_option("--kernel", rt_o->kernel)->capture_default_str();
    sub->add_option("--trials", rt_o->trials)->capture_default_str();
    sub->add_option("--support", rt_o->support)->capture_default_str();
    sub->add_option("--tol", rt_o->tol)->capture_default_str();
    sub->callback([sub, rt_o, &rc] {
      rc = guarded([&] {
        const Json cfg = load_config(rt_o->common.config);
        overlay(sub, cfg, "kernel", rt_o->kernel);
        overlay(sub, cfg, "trials", rt_o->trials);
        overlay(sub, cfg, "support", rt_o->support);
        overlay(sub, cfg, "tol", rt_o->tol);
        overlay(sub, cfg, "out", rt_o->common.out);
        overlay(sub, cfg, "seed", rt_o->common.seed);
        return run_roundtrip(*rt_o);
      });
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}
