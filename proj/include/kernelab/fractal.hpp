#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "kernelab/kernel_expr.hpp"

namespace kernelab {

/// One-variable function on [0,1] (zero-extended off it) together with the
/// number of subdivision rounds applied to it.  The transform is
///
///     T f(x) = f(3x) + f(3x - 2),
///
/// which contracts supports onto the stage sets of the middle-thirds
/// construction: stage n is C_n = union of 2^n closed intervals of length
/// 3^{-n}, C_0 = [0,1], C_n = C_{n-1}/3  u  (C_{n-1}+2)/3.
struct IfsFunction {
  std::function<double(double)> base;
  int depth = 0;
};

/// Exact triadic coordinate num / 3^level, used so grid sweeps classify
/// support membership with integer arithmetic instead of rounded doubles.
struct TriadicPoint {
  long long num = 0;
  int level = 0;
};

long long pow3(int n);

/// T^depth applied to `base`, evaluated at x by direct recursion.  Arguments
/// that leave [0,1] return an exact 0.0 (the zero extension), so points off
/// the stage set produce literal zeros, not small residues.
double ifs_eval(const IfsFunction& f, double x);
double ifs_eval(const std::function<double(double)>& base, int depth, double x);

/// Same recursion with the range tests done on integers; `t.level` may be
/// anything with 3^level representable (level <= 39).
double ifs_eval(const std::function<double(double)>& base, int depth, TriadicPoint t);

/// Stage set C_depth as sorted closed intervals [num, num+1] / 3^depth.
/// Requires 0 <= depth <= 20.
struct SupportIntervals {
  int depth = 0;
  long long denom = 1;                                // 3^depth
  std::vector<std::pair<long long, long long>> nums;  // endpoint numerators
};
SupportIntervals support_intervals(int depth);

/// Membership of x in C_depth.  The double overload snaps within an
/// accumulated rounding allowance so triadic endpoints stored as doubles
/// classify as members; the triadic overload is exact.
bool cantor_member(double x, int depth);
bool cantor_member(TriadicPoint t, int depth);

/// Kernel sum_{i < truncation} conj(T^depth g_i(x)) T^depth g_i(y) with
/// g_i(t) = sqrt(a_i) t^i drawn from `base`; lives on the closed unit
/// interval.  `base` must be a real-interval or unit-interval series kernel.
ExprPtr ifs_kernel(const SeriesKernel& base, int depth, int truncation);

/// Max over a triadic grid of |T K_depth (x,y) - K_{depth+1}(x,y)|, where T
/// acts on the left/right slots through the expansion functions.  Both sides
/// come from the same recursion, so this is a structural consistency check;
/// deviations beyond rounding indicate a broken transform.
double ifs_invariance_check(const SeriesKernel& base, int depth, int truncation,
                            int grid_level);

}  // namespace kernelab
