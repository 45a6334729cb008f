#pragma once

#include <cstdint>
#include <vector>

#include "hecke/farey.hpp"
#include "hecke/operators.hpp"

namespace hecke {

// mu((a,b]) = log(b/a) for the invariant density 1/x; a must be positive.
double mu_interval(double a, double b);

// Leb(F^{-n}([alpha,beta])) = sum over W_{q,n} of |h.beta - h.alpha|.
double preimage_lebesgue_words(const FareyMap& fm, int n, double alpha, double beta,
                               int cap = kDefaultWordCap);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    long samples = 0;
};

// Forward-orbit estimate of the same volume: uniform x, count F^n(x) in [alpha,beta].
McEstimate preimage_lebesgue_montecarlo(const FareyMap& fm, int n, double alpha, double beta,
                                        long samples, std::uint64_t seed);

// Weighted Dirac comb rho_n at base point x: atoms (h.x, x |h'(x)| [log n]).
struct WeightedComb {
    struct Atom {
        double location;
        double weight;
    };
    std::vector<Atom> atoms;  // sorted by location
    long q = 0;
    int n = 0;
    double base_x = 0.0;

    double total_mass() const;
    double cdf(double y) const;  // sum of weights at locations <= y

  private:
    friend WeightedComb finish_comb(std::vector<Atom> atoms, long q, int n, double x);
    std::vector<double> prefix_;
};

WeightedComb dirac_comb(const FareyMap& fm, double x, int n, bool with_log_factor,
                        int cap = kDefaultWordCap);

// Reduced fraction (r, s): a sign-normalized pair of ring elements with the
// first nonzero of (s, r) positive, compared componentwise (not projectively).
struct ReducedFraction {
    RingElem r, s;

    bool operator==(const ReducedFraction& o) const { return r == o.r && s == o.s; }
    double to_double() const { return r.to_double() / s.to_double(); }
};

ReducedFraction make_reduced(RingElem r, RingElem s);
ReducedFraction reduced_base_one(const RingContext& ctx);  // the pair (1,1)

// [[a,b],[c,d]] . (v,w) = (av+bw, cv+dw), sign-normalized.
ReducedFraction reduced_apply(const GroupElem& g, const ReducedFraction& base);
ReducedFraction reduced_from_word(const RingContext& ctx, const Word& w,
                                  const ReducedFraction& base);

// Cusp comb at level n from a base reduced fraction v/w in (0,1]: enumerates
// W_{q,n}, maps words to reduced fractions, deduplicates exactly, and weights
// each atom with c vw log(n)/s^2 (c = 2 exactly when v/w = 1, else 1). The
// word->fraction map is 1:1 except at v/w = 1 where it collapses exactly 2:1.
struct CuspComb {
    WeightedComb comb;
    std::uint64_t rf_count = 0;    // |RF_{q,n}(v,w)|
    bool collapse_two_to_one = false;
};

CuspComb cusp_comb(const RingContext& ctx, const ReducedFraction& base, int n,
                   bool with_log_factor = true, int cap = kDefaultWordCap);

// Exact tail probability mu(phi_Y > n) = log(1 + lambda/((N+n) lambda + 1))
// for Y = (1/((N+1) lambda + 1), 1].
double tail_exact(const RingContext& ctx, long N, long n);
// Partial sums w(n) of the tail probabilities.
double tail_summation(const RingContext& ctx, long N, long n);

struct TailReport {
    long q = 0;
    long N = 0;
    double y_left = 0.0;
    double mu_y = 0.0;
    long samples = 0;
    long censored = 0;  // first returns not reached within the cap
    struct Row {
        long n;
        double exact;
        double estimate;
        double stderr_;
    };
    std::vector<Row> rows;
};

// Samples x from mu|_Y / mu(Y) by inverse CDF, computes first return times,
// and reports the empirical survival mu(Y) P(phi > n) against the exact tail.
TailReport tail_montecarlo(const FareyMap& fm, long N, long n_max, long samples,
                           std::uint64_t seed, long cap = kDefaultHitCap);

// log(n) * mu(F^{-n}(U) n V) by word enumeration, U and V bounded away from 0.
double mixing_statistic(const FareyMap& fm, double u_lo, double u_hi, double v_lo, double v_hi,
                        int n, int cap = kDefaultWordCap);

}  // namespace hecke
