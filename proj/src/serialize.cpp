#include "kernelab/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <variant>

namespace kernelab {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json scalar_to_json(Scalar z) { return Json::array({z.real(), z.imag()}); }

Scalar scalar_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("scalar json must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json rule_to_json(const RulePtr& rule) {
  Json j;
  j["name"] = rule->name();
  if (const auto* b = dynamic_cast<const BinomialRule*>(rule.get())) {
    j["exponent"] = b->exponent();
  } else if (const auto* e = dynamic_cast<const ExpRule*>(rule.get())) {
    j["rate_num"] = e->rate().numerator();
    j["rate_den"] = e->rate().denominator();
  } else if (const auto* f = dynamic_cast<const FiniteListRule*>(rule.get())) {
    j["coefficients"] = f->coefficients();
  } else if (const auto* c = dynamic_cast<const ConvolutionRule*>(rule.get())) {
    j["children"] = Json::array({rule_to_json(c->left()), rule_to_json(c->right())});
  } else if (dynamic_cast<const OnesRule*>(rule.get()) == nullptr) {
    throw std::invalid_argument("rule_to_json: unknown coefficient rule " + rule->name());
  }
  return j;
}

RulePtr rule_from_json(const Json& j) {
  const std::string name = j.at("name").get<std::string>();
  if (name == "geometric") return std::make_shared<OnesRule>();
  if (name == "binomial") return std::make_shared<BinomialRule>(j.at("exponent").get<int>());
  if (name == "exponential") {
    return std::make_shared<ExpRule>(j.at("rate_num").get<long long>(),
                                     j.at("rate_den").get<long long>());
  }
  if (name == "list") {
    return std::make_shared<FiniteListRule>(j.at("coefficients").get<std::vector<double>>());
  }
  if (name == "product-series") {
    const Json& ch = j.at("children");
    return std::make_shared<ConvolutionRule>(rule_from_json(ch.at(0)), rule_from_json(ch.at(1)));
  }
  throw std::invalid_argument("rule_from_json: unknown rule name " + name);
}

std::string builtin_name(BuiltinKind k) {
  switch (k) {
    case BuiltinKind::Szego: return "szego";
    case BuiltinKind::Bergman: return "bergman";
    case BuiltinKind::Bargmann: return "bargmann";
    case BuiltinKind::HalfPlaneCauchy: return "half-plane-cauchy";
    case BuiltinKind::Constant: return "constant";
  }
  return "?";
}

}  // namespace

std::string format_scalar(Scalar z) {
  if (z.imag() == 0.0) return fmt_double(z.real());
  std::string s = fmt_double(z.real());
  s += z.imag() < 0.0 ? '-' : '+';
  s += fmt_double(std::abs(z.imag()));
  s += 'i';
  return s;
}

Json domain_to_json(const Domain& d) {
  Json j;
  j["kind"] = d.name();
  if (d.kind == DomainKind::RealInterval || d.kind == DomainKind::ComplexDisk) {
    j["radius"] = d.radius;
  }
  return j;
}

Domain domain_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "interval") return Domain::real_interval(j.at("radius").get<double>());
  if (kind == "disk") return Domain::disk(j.at("radius").get<double>());
  if (kind == "half-plane") return Domain::upper_half_plane();
  if (kind == "plane") return Domain::whole_plane();
  if (kind == "unit-interval") return Domain::unit_interval();
  throw std::invalid_argument("domain_from_json: unknown kind " + kind);
}

Json point_set_to_json(const PointSet& pts) {
  Json j;
  j["domain"] = domain_to_json(pts.domain());
  Json vals = Json::array();
  for (Scalar v : pts.values()) vals.push_back(scalar_to_json(v));
  j["values"] = std::move(vals);
  return j;
}

PointSet point_set_from_json(const Json& j) {
  std::vector<Scalar> vals;
  for (const Json& v : j.at("values")) vals.push_back(scalar_from_json(v));
  return PointSet(std::move(vals), domain_from_json(j.at("domain")));
}

Json kernel_to_json(const ExprPtr& k) {
  if (!k) throw std::invalid_argument("kernel_to_json: null kernel");
  Json j;
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, BuiltinNode>) {
          j["node"] = "builtin";
          j["kind"] = builtin_name(node.kind);
          if (node.kind == BuiltinKind::Constant) {
            j["constant"] = node.constant;
            j["domain"] = domain_to_json(node.domain);
          }
        } else if constexpr (std::is_same_v<T, SeriesNode>) {
          j["node"] = "series";
          j["rule"] = rule_to_json(node.kernel.rule);
          j["domain"] = domain_to_json(node.kernel.domain);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          j["node"] = "sum";
          Json ch = Json::array();
          for (const auto& t : node.terms) ch.push_back(kernel_to_json(t));
          j["children"] = std::move(ch);
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          j["node"] = "product";
          Json ch = Json::array();
          for (const auto& f : node.factors) ch.push_back(kernel_to_json(f));
          j["children"] = std::move(ch);
        } else if constexpr (std::is_same_v<T, PowerNode>) {
          j["node"] = "power";
          j["exponent"] = node.exponent;
          j["children"] = Json::array({kernel_to_json(node.base)});
        } else if constexpr (std::is_same_v<T, RestrictionNode>) {
          j["node"] = "restriction";
          j["domain"] = domain_to_json(node.subdomain);
          j["children"] = Json::array({kernel_to_json(node.base)});
        } else if constexpr (std::is_same_v<T, FrameNode>) {
          j["node"] = "frame";
          j["domain"] = domain_to_json(node.domain);
          Json fns = Json::array();
          for (const auto& f : node.functions) {
            Json coeffs = Json::array();
            for (Scalar c : f) coeffs.push_back(scalar_to_json(c));
            fns.push_back(std::move(coeffs));
          }
          j["functions"] = std::move(fns);
        } else if constexpr (std::is_same_v<T, IfsNode>) {
          j["node"] = "subdivision";
          j["depth"] = node.depth;
          j["truncation"] = node.truncation;
          j["rule"] = rule_to_json(node.base.rule);
          j["domain"] = domain_to_json(node.base.domain);
        }
      },
      k->node);
  return j;
}

ExprPtr kernel_from_json(const Json& j) {
  const std::string node = j.at("node").get<std::string>();
  if (node == "builtin") {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "szego") return kernels::szego();
    if (kind == "bergman") return kernels::bergman();
    if (kind == "bargmann") return kernels::bargmann();
    if (kind == "half-plane-cauchy") return kernels::half_plane_cauchy();
    if (kind == "constant") {
      return kernels::constant(j.at("constant").get<double>(),
                               domain_from_json(j.at("domain")));
    }
    throw std::invalid_argument("kernel_from_json: unknown builtin " + kind);
  }
  if (node == "series") {
    return kernels::series(
        SeriesKernel(rule_from_json(j.at("rule")), domain_from_json(j.at("domain"))));
  }
  if (node == "sum" || node == "product") {
    std::vector<ExprPtr> ch;
    for (const Json& c : j.at("children")) ch.push_back(kernel_from_json(c));
    return node == "sum" ? kernels::sum(std::move(ch)) : kernels::product(std::move(ch));
  }
  if (node == "power") {
    return kernels::power(kernel_from_json(j.at("children").at(0)),
                          j.at("exponent").get<int>());
  }
  if (node == "restriction") {
    return kernels::restriction(kernel_from_json(j.at("children").at(0)),
                                domain_from_json(j.at("domain")));
  }
  if (node == "frame") {
    std::vector<std::vector<Scalar>> fns;
    for (const Json& f : j.at("functions")) {
      std::vector<Scalar> coeffs;
      for (const Json& c : f) coeffs.push_back(scalar_from_json(c));
      fns.push_back(std::move(coeffs));
    }
    return kernels::frame(std::move(fns), domain_from_json(j.at("domain")));
  }
  if (node == "subdivision") {
    return kernels::ifs(
        SeriesKernel(rule_from_json(j.at("rule")), domain_from_json(j.at("domain"))),
        j.at("depth").get<int>(), j.at("truncation").get<int>());
  }
  throw std::invalid_argument("kernel_from_json: unknown node " + node);
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  Eigen::MatrixXcd m(rows, cols);
  const Json& entries = j.at("entries");
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(i, c) = scalar_from_json(entries.at(i).at(c));
    }
  }
  return m;
}

Json gram_to_json(const GramMatrix& g) {
  Json j;
  j["points"] = point_set_to_json(g.points);
  j["matrix"] = matrix_to_json(g.entries);
  if (g.kernel) j["kernel"] = kernel_to_json(g.kernel);
  return j;
}

std::string gram_to_csv(const GramMatrix& g) {
  std::string out;
  for (std::size_t c = 0; c < g.points.size(); ++c) {
    out += (c ? "," : "") + format_scalar(g.points[c]);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < g.entries.rows(); ++i) {
    for (Eigen::Index c = 0; c < g.entries.cols(); ++c) {
      if (c) out += ',';
      out += format_scalar(g.entries(i, c));
    }
    out += '\n';
  }
  return out;
}

std::string chain_to_csv(const ChainReport& r) {
  std::string out = "n,min_eig,verdict\n";
  for (const ChainStep& s : r.steps) {
    out += std::to_string(s.n) + ',' + fmt_double(s.verdict.witness.min_eigenvalue) + ',' +
           (s.verdict.holds ? "holds" : "fails") + '\n';
  }
  return out;
}

std::string spectrum_to_csv(const std::vector<Rational>& lambda) {
  std::string out = "n,lambda_n\n";
  for (std::size_t n = 0; n < lambda.size(); ++n) {
    out += std::to_string(n) + ',' + fmt_double(to_double(lambda[n])) + '\n';
  }
  return out;
}

Json measure_to_json(const DiscreteMeasure& mu) {
  Json j;
  j["points"] = point_set_to_json(mu.points);
  Json w = Json::array();
  for (Eigen::Index i = 0; i < mu.weights.size(); ++i) w.push_back(scalar_to_json(mu.weights(i)));
  j["weights"] = std::move(w);
  return j;
}

DiscreteMeasure measure_from_json(const Json& j) {
  PointSet pts = point_set_from_json(j.at("points"));
  const Json& w = j.at("weights");
  Eigen::VectorXcd weights(static_cast<Eigen::Index>(w.size()));
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    weights(i) = scalar_from_json(w.at(static_cast<std::size_t>(i)));
  }
  return DiscreteMeasure(std::move(pts), std::move(weights));
}

Json empirical_to_json(const EmpiricalGram& e) {
  Json j;
  j["points"] = point_set_to_json(e.points);
  j["matrix"] = matrix_to_json(e.entries);
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  return j;
}

Json distribution_to_json(const std::vector<Scalar>& coeffs) {
  Json c = Json::array();
  for (Scalar v : coeffs) c.push_back(scalar_to_json(v));
  Json j;
  j["coefficients"] = std::move(c);
  return j;
}

std::vector<Scalar> distribution_from_json(const Json& j) {
  std::vector<Scalar> out;
  for (const Json& c : j.at("coefficients")) out.push_back(scalar_from_json(c));
  return out;
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.flush();
    if (!f) throw std::runtime_error("atomic_write: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace kernelab
