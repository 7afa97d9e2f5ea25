#include "kernelab/sampling.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "kernelab/fractal.hpp"
#include "kernelab/rng.hpp"

namespace kernelab {

namespace {

constexpr double kGoldenAngle = 2.39996322972865332;  // pi (3 - sqrt 5)

void require_count(int n) {
  if (n < 1) throw std::invalid_argument("point set: need at least one point");
}

}  // namespace

PointSet disk_points(int n, double radius) {
  require_count(n);
  if (!(radius > 0.0)) throw std::invalid_argument("disk_points: radius must be positive");
  std::vector<Scalar> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double r = radius * std::sqrt((i + 0.5) / n);
    const double th = kGoldenAngle * i;
    v.emplace_back(r * std::cos(th), r * std::sin(th));
  }
  // Tag with a disk slightly larger than the outermost point so membership
  // is strict.
  return PointSet(std::move(v), Domain::disk(radius * (1.0 + 1e-12) + 1e-300));
}

PointSet circle_points(int n, double radius) {
  require_count(n);
  if (!(radius > 0.0)) throw std::invalid_argument("circle_points: radius must be positive");
  std::vector<Scalar> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * M_PI * i / n;
    v.emplace_back(radius * std::cos(th), radius * std::sin(th));
  }
  return PointSet(std::move(v), Domain::disk(radius * (1.0 + 1e-12) + 1e-300));
}

PointSet interval_points(int n, double a, double b) {
  require_count(n);
  if (!(a < b)) throw std::invalid_argument("interval_points: need a < b");
  std::vector<Scalar> v;
  v.reserve(n);
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = a + (b - a) * (i + 1.0) / (n + 1.0);
    v.emplace_back(x, 0.0);
    r = std::max(r, std::abs(x));
  }
  return PointSet(std::move(v), Domain::real_interval(r * (1.0 + 1e-12) + 1e-300));
}

PointSet triadic_points(int depth) {
  if (depth < 0 || depth > 12) {
    throw std::invalid_argument("triadic_points: depth must be in [0, 12]");
  }
  const long long q = pow3(depth);
  std::vector<Scalar> v;
  v.reserve(q + 1);
  for (long long i = 0; i <= q; ++i) {
    v.emplace_back(static_cast<double>(i) / static_cast<double>(q), 0.0);
  }
  return PointSet(std::move(v), Domain::unit_interval());
}

PointSet random_disk_points(int n, double radius, std::uint64_t seed) {
  require_count(n);
  std::vector<Scalar> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(rng::uniform(seed, 1, i));
    const double th = 2.0 * M_PI * rng::uniform(seed, 2, i);
    v.emplace_back(r * std::cos(th), r * std::sin(th));
  }
  return PointSet(std::move(v), Domain::disk(radius * (1.0 + 1e-12) + 1e-300));
}

PointSet random_interval_points(int n, double a, double b, std::uint64_t seed) {
  require_count(n);
  if (!(a < b)) throw std::invalid_argument("random_interval_points: need a < b");
  std::vector<Scalar> v;
  v.reserve(n);
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = a + (b - a) * rng::uniform(seed, 3, i);
    v.emplace_back(x, 0.0);
    r = std::max(r, std::abs(x));
  }
  return PointSet(std::move(v), Domain::real_interval(r * (1.0 + 1e-12) + 1e-300));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("point set grammar: bad ") + what + " '" + s + "'");
  }
}

Scalar parse_scalar_token(const std::string& tok) {
  // "re", "re+imi" or "re-imi"
  std::string s = tok;
  if (!s.empty() && s.back() == 'i') {
    s.pop_back();
    std::size_t split_at = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split_at = i;
    }
    if (split_at == std::string::npos) {
      return Scalar(0.0, parse_num(s.empty() ? "1" : s, "imaginary part"));
    }
    return Scalar(parse_num(s.substr(0, split_at), "real part"),
                  parse_num(s.substr(split_at), "imaginary part"));
  }
  return Scalar(parse_num(s, "point"), 0.0);
}

}  // namespace

PointSet parse_point_set(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts[0];

  auto radius_arg = [&](const std::string& s) {
    if (s.empty() || s[0] != 'r') {
      throw std::invalid_argument("point set grammar: expected rR, got '" + s + "'");
    }
    return parse_num(s.substr(1), "radius");
  };

  if (kind == "disk" || kind == "circle") {
    if (parts.size() != 3) {
      throw std::invalid_argument("point set grammar: " + kind + ":N:rR");
    }
    const int n = static_cast<int>(parse_num(parts[1], "count"));
    const double r = radius_arg(parts[2]);
    return kind == "disk" ? disk_points(n, r) : circle_points(n, r);
  }
  if (kind == "interval") {
    if (parts.size() != 4) throw std::invalid_argument("point set grammar: interval:N:a:b");
    return interval_points(static_cast<int>(parse_num(parts[1], "count")),
                           parse_num(parts[2], "endpoint"), parse_num(parts[3], "endpoint"));
  }
  if (kind == "triadic") {
    if (parts.size() != 2) throw std::invalid_argument("point set grammar: triadic:DEPTH");
    return triadic_points(static_cast<int>(parse_num(parts[1], "depth")));
  }
  if (kind == "explicit") {
    if (parts.size() < 2 || parts[1].size() < 2 || parts[1].front() != '[' ||
        parts[1].back() != ']') {
      throw std::invalid_argument("point set grammar: explicit:[v;v;...]");
    }
    std::vector<Scalar> v;
    for (const auto& tok : split(parts[1].substr(1, parts[1].size() - 2), ';')) {
      if (!tok.empty()) v.push_back(parse_scalar_token(tok));
    }
    Domain d = Domain::whole_plane();
    if (parts.size() >= 3) {
      const std::string& dk = parts[2];
      if (dk == "disk" && parts.size() == 4) {
        d = Domain::disk(parse_num(parts[3], "radius"));
      } else if (dk == "interval" && parts.size() == 4) {
        d = Domain::real_interval(parse_num(parts[3], "radius"));
      } else if (dk == "uhp" && parts.size() == 3) {
        d = Domain::upper_half_plane();
      } else if (dk == "plane" && parts.size() == 3) {
        d = Domain::whole_plane();
      } else if (dk == "unit" && parts.size() == 3) {
        d = Domain::unit_interval();
      } else {
        throw std::invalid_argument("point set grammar: unknown domain suffix '" + dk + "'");
      }
    }
    return PointSet(std::move(v), d);
  }
  throw std::invalid_argument("point set grammar: unknown kind '" + kind + "'");
}

}  // namespace kernelab
