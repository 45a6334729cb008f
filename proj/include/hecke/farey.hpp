#pragma once

#include <vector>

#include "hecke/group.hpp"
#include "hecke/wordsum.hpp"

namespace hecke {

struct ExactInterval {
    ProjPoint left, right;
};

// One branch of the generalized Farey map: the element g acting on it
// (g_{q,k} or Q g_{q,k}), its exact domain, and the position of g^{-1} in the
// alphabet. Increasing branches have det +1, decreasing ones det -1.
struct Branch {
    GroupElem element;
    ExactInterval domain;
    int letter_index;
    bool increasing;
};

// The generalized Farey map F_q on [0,1]: q-1 full Moebius branches tiling
// the interval, with an indifferent fixed point at 0. Branch lookup snaps to
// a breakpoint within 1e-14 (the two branches agree there), and float images
// are clamped to [0,1] to absorb rounding at the endpoints.
class FareyMap {
  public:
    explicit FareyMap(const RingContext& ctx);

    const RingContext& context() const { return *ctx_; }
    const std::vector<Branch>& branches() const { return branches_; }
    // Interior breakpoints, exact and float (q-2 of them, increasing).
    const std::vector<ProjPoint>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& breakpoints_float() const { return breaks_; }
    const std::vector<Mob>& alphabet_float() const { return alpha_float_; }

    int branch_index(double x) const;
    double apply(double x) const;
    ProjPoint apply(const ProjPoint& p) const;
    // x, F(x), ..., F^n(x)
    std::vector<double> orbit(double x, int n) const;

  private:
    const RingContext* ctx_;
    std::vector<Branch> branches_;
    std::vector<ProjPoint> breakpoints_;
    std::vector<double> breaks_;
    std::vector<Mob> branch_float_;
    std::vector<Mob> alpha_float_;
};

std::vector<Branch> branch_partition(const RingContext& ctx);

// { h.p : h in W_{q,n}, p in points }, deduplicated exactly and sorted.
std::vector<ProjPoint> inverse_images(const RingContext& ctx, const std::vector<ProjPoint>& points,
                                      int n, int cap = kDefaultWordCap);

// Points of F^{-n}({0,1}) that are new at level n (first-appearance level);
// S_0 = {0, 1}. Sorted increasingly by the exact order.
std::vector<ProjPoint> stern_brocot_level(const RingContext& ctx, int n, int cap = kDefaultWordCap);
// Levels 0..n in one pass.
std::vector<std::vector<ProjPoint>> stern_brocot_levels(const RingContext& ctx, int n,
                                                        int cap = kDefaultWordCap);

// The set A = (1/(lambda+1), 1] whose n-step backward orbit union is the
// half-open interval (1/(n*lambda+1), 1].
ExactInterval sweep_out_set(const RingContext& ctx);
// Closed form (1/(n*lambda+1), 1].
ExactInterval sweep_out_union(const RingContext& ctx, long n);
// Audit mode: computes the union of F^{-k}(A), k < n, by exact interval-set
// union over inverse branches and asserts equality with the closed form at
// every level. Returns the final interval.
ExactInterval sweep_out_union_audit(const RingContext& ctx, int n, int cap = kDefaultWordCap);

inline constexpr long kDefaultHitCap = 1000000;

struct HitResult {
    long steps = 0;        // valid when reached
    bool reached = false;  // false means the cap was exhausted
};

// Least n >= 1 with F^n(x) in Y = (left, right], iterated at float precision.
HitResult first_hitting_time(const FareyMap& fm, double x, double y_left, double y_right,
                             long cap = kDefaultHitCap);
// Same, but requires x in Y.
HitResult first_return_time(const FareyMap& fm, double x, double y_left, double y_right,
                            long cap = kDefaultHitCap);

// Least N with C contained in (1/((N+1)*lambda+1), 1], plus that interval.
struct CompactCover {
    long N = 0;
    ExactInterval Y;
};
CompactCover y_of_compact(const RingContext& ctx, const ExactInterval& C);

}  // namespace hecke
