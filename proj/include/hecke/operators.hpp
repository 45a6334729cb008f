#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hecke/farey.hpp"

namespace hecke {

using RealFn = std::function<double(double)>;

struct DensityFn {
    RealFn fn;
    std::string label;
};

DensityFn density_one();
DensityFn density_inv_x();
DensityFn density_by_name(const std::string& name);  // "one" | "invx"

// Perron-Frobenius operator with respect to Lebesgue:
// (P f)(x) = sum over the alphabet p of |p'(x)| f(p.x), x in (0,1].
double pf_apply(const FareyMap& fm, const RealFn& f, double x);

// (P^n f)(x) as a stream over W_{q,n} with compensated summation.
double pf_iterate_pointwise(const FareyMap& fm, const RealFn& f, double x, int n,
                            int cap = kDefaultWordCap);
// Same value through n-fold recursion of pf_apply; cross-check path for small n.
double pf_iterate_recursive(const FareyMap& fm, const RealFn& f, double x, int n);
// (P^n 1)(x) for a batch of points sharing one word pass.
std::vector<double> pf_iterate_one_batch(const FareyMap& fm, const std::vector<double>& xs, int n,
                                         int cap = kDefaultWordCap);

// Transfer operator with respect to the invariant measure: F(f) = P(f h)/h,
// h(x) = 1/x.
double transfer_apply(const FareyMap& fm, const RealFn& f, double x);
// n-fold transfer iteration via word sums: (F^n f)(x) = x * sum |h'(x)| f(h.x)/h.x.
double transfer_iterate_pointwise(const FareyMap& fm, const RealFn& f, double x, int n,
                                  int cap = kDefaultWordCap);

// max over the grid i/grid_size, i = 1..grid_size, of |P h - h| / h.
double eigenfunction_residual(const FareyMap& fm, int grid_size);

// Composite midpoint rule (avoids the endpoint singularity of 1/x at 0).
double quadrature_midpoint(const RealFn& f, double a, double b, int panels);

// Ulam discretization of P on B uniform bins: entry (i,j) is
// Leb(F^{-1}(bin_i) n bin_j) / Leb(bin_j). Column sums are 1 (Lebesgue is
// conserved); mass is never renormalized during iteration.
struct UlamMatrix {
    int bins = 0;
    std::vector<std::vector<std::pair<int, double>>> rows;

    double bin_left(int i) const { return static_cast<double>(i) / bins; }
    double bin_right(int i) const { return static_cast<double>(i + 1) / bins; }
};

UlamMatrix ulam_build(const FareyMap& fm, int bins);
std::vector<double> ulam_apply(const UlamMatrix& m, const std::vector<double>& density);
std::vector<double> ulam_iterate(const UlamMatrix& m, std::vector<double> density, int iters);

}  // namespace hecke
