#include "kernelab/fractal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kernelab {

long long pow3(int n) {
  if (n < 0 || n > 39) throw std::invalid_argument("pow3: exponent out of range");
  long long p = 1;
  while (n-- > 0) p *= 3;
  return p;
}

namespace {

// Support of T^k(base) is contained in C_k, itself inside [0,1], so any
// argument outside [0,1] contributes an exact 0 at every recursion level.
// The comparisons are exact on purpose: off-support points must produce
// literal zeros, not tolerance-sized residues.
double eval_rec(const std::function<double(double)>& base, int depth, double x) {
  if (x < 0.0 || x > 1.0) return 0.0;
  if (depth == 0) return base(x);
  return eval_rec(base, depth - 1, 3.0 * x) + eval_rec(base, depth - 1, 3.0 * x - 2.0);
}

// Same recursion on exact triadic coordinates num / 3^level.  Multiplying by
// 3 lowers the level (or scales the numerator once level hits 0), so range
// tests stay in integers and endpoint classification is exact.
double eval_rec_triadic(const std::function<double(double)>& base, int depth, long long num,
                        int level) {
  if (num < 0 || num > pow3(level)) return 0.0;
  if (depth == 0) {
    return base(static_cast<double>(num) / static_cast<double>(pow3(level)));
  }
  long long n3;   // numerator of 3x
  int l3;         // level of 3x
  if (level > 0) {
    n3 = num;
    l3 = level - 1;
  } else {
    n3 = 3 * num;
    l3 = 0;
  }
  return eval_rec_triadic(base, depth - 1, n3, l3) +
         eval_rec_triadic(base, depth - 1, n3 - 2 * pow3(l3), l3);
}

}  // namespace

double ifs_eval(const IfsFunction& f, double x) { return ifs_eval(f.base, f.depth, x); }

double ifs_eval(const std::function<double(double)>& base, int depth, double x) {
  if (!base) throw std::invalid_argument("ifs_eval: null base function");
  if (depth < 0) throw std::invalid_argument("ifs_eval: negative depth");
  if (!std::isfinite(x)) throw std::invalid_argument("ifs_eval: non-finite point");
  return eval_rec(base, depth, x);
}

double ifs_eval(const std::function<double(double)>& base, int depth, TriadicPoint t) {
  if (!base) throw std::invalid_argument("ifs_eval: null base function");
  if (depth < 0) throw std::invalid_argument("ifs_eval: negative depth");
  return eval_rec_triadic(base, depth, t.num, t.level);
}

SupportIntervals support_intervals(int depth) {
  if (depth < 0 || depth > 20) {
    throw std::invalid_argument("support_intervals: depth must be in [0, 20]");
  }
  // C_n endpoints as numerators over 3^n.  Children of [a, a+1]/3^{n-1} are
  // [3a, 3a+1]/3^n and [3a+2, 3a+3]/3^n; starting from [0,1] this stays sorted.
  std::vector<long long> starts = {0};
  for (int d = 1; d <= depth; ++d) {
    std::vector<long long> next;
    next.reserve(starts.size() * 2);
    for (long long a : starts) {
      next.push_back(3 * a);
      next.push_back(3 * a + 2);
    }
    starts = std::move(next);
  }
  SupportIntervals out;
  out.depth = depth;
  out.denom = pow3(depth);
  out.nums.reserve(starts.size());
  for (long long a : starts) out.nums.emplace_back(a, a + 1);
  return out;
}

namespace {

bool member_rec(double x, int depth, double tol) {
  if (x < -tol || x > 1.0 + tol) return false;
  if (depth == 0) return true;
  // The rounding allowance scales with the coordinate map; both branches are
  // tried and pruned by the range test above.
  return member_rec(3.0 * x, depth - 1, 3.0 * tol) ||
         member_rec(3.0 * x - 2.0, depth - 1, 3.0 * tol);
}

bool member_rec_triadic(long long num, int level, int depth) {
  if (num < 0 || num > pow3(level)) return false;
  if (depth == 0) return true;
  long long n3;
  int l3;
  if (level > 0) {
    n3 = num;
    l3 = level - 1;
  } else {
    n3 = 3 * num;
    l3 = 0;
  }
  return member_rec_triadic(n3, l3, depth - 1) ||
         member_rec_triadic(n3 - 2 * pow3(l3), l3, depth - 1);
}

}  // namespace

bool cantor_member(double x, int depth) {
  if (depth < 0 || depth > 20) {
    throw std::invalid_argument("cantor_member: depth must be in [0, 20]");
  }
  if (!std::isfinite(x)) return false;
  // 64 ulp of slack at the top level; triadic endpoints stored as doubles
  // accumulate at most a few ulp per multiply-by-3, so they stay members.
  return member_rec(x, depth, 64.0 * std::numeric_limits<double>::epsilon());
}

bool cantor_member(TriadicPoint t, int depth) {
  if (depth < 0 || depth > 20) {
    throw std::invalid_argument("cantor_member: depth must be in [0, 20]");
  }
  return member_rec_triadic(t.num, t.level, depth);
}

ExprPtr ifs_kernel(const SeriesKernel& base, int depth, int truncation) {
  return kernels::ifs(base, depth, truncation);
}

namespace {

// T^depth applied to sqrt(a_i) t^i, on an exact triadic point.
double frame_value(const SeriesKernel& base, int i, int depth, TriadicPoint t) {
  const double scale = std::sqrt(base.rule->coeff(i));
  return ifs_eval([i, scale](double u) { return scale * std::pow(u, i); }, depth, t);
}

}  // namespace

double ifs_invariance_check(const SeriesKernel& base, int depth, int truncation,
                            int grid_level) {
  if (grid_level < 0 || grid_level > 12) {
    throw std::invalid_argument("ifs_invariance_check: grid_level must be in [0, 12]");
  }
  const long long q = pow3(grid_level);

  // Frame functions of stage `depth` evaluated through one extra transform
  // round, against the stage `depth+1` functions evaluated directly.  The
  // extra round is applied outside the recursion: (T u)(x) = u(3x) + u(3x-2).
  auto stage_vec = [&](TriadicPoint t, int d) {
    std::vector<double> v(truncation);
    for (int i = 0; i < truncation; ++i) v[i] = frame_value(base, i, d, t);
    return v;
  };
  auto transformed_vec = [&](TriadicPoint t) {
    std::vector<double> v(truncation);
    for (int i = 0; i < truncation; ++i) {
      const double scale = std::sqrt(base.rule->coeff(i));
      auto g = [i, scale](double u) { return scale * std::pow(u, i); };
      // Exact triadic images of 3x and 3x-2.
      long long n3;
      int l3;
      if (t.level > 0) {
        n3 = t.num;
        l3 = t.level - 1;
      } else {
        n3 = 3 * t.num;
        l3 = 0;
      }
      v[i] = ifs_eval(g, depth, TriadicPoint{n3, l3}) +
             ifs_eval(g, depth, TriadicPoint{n3 - 2 * pow3(l3), l3});
    }
    return v;
  };

  std::vector<std::vector<double>> trans(q + 1), next(q + 1);
  for (long long i = 0; i <= q; ++i) {
    const TriadicPoint p{i, grid_level};
    trans[i] = transformed_vec(p);
    next[i] = stage_vec(p, depth + 1);
  }

  double worst = 0.0;
  for (long long ix = 0; ix <= q; ++ix) {
    for (long long iy = ix; iy <= q; ++iy) {
      double lhs = 0.0, rhs = 0.0;
      for (int i = 0; i < truncation; ++i) {
        lhs += trans[ix][i] * trans[iy][i];
        rhs += next[ix][i] * next[iy][i];
      }
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace kernelab
