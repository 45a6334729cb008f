#include "hecke/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hecke/errors.hpp"
#include "hecke/rng.hpp"

namespace hecke {

double mu_interval(double a, double b) {
    if (!(a > 0.0)) throw std::domain_error("mu is infinite near 0; need a > 0");
    if (b < a) throw std::invalid_argument("need a <= b");
    return std::log(b / a);
}

double preimage_lebesgue_words(const FareyMap& fm, int n, double alpha, double beta, int cap) {
    if (!(alpha > 0.0) || beta < alpha || beta > 1.0)
        throw std::domain_error("need 0 < alpha <= beta <= 1");
    word_count(fm.context(), n, cap);
    return word_sum(fm.alphabet_float(), n,
                    [&](const Mob& h) { return std::abs(h.apply(beta) - h.apply(alpha)); });
}

McEstimate preimage_lebesgue_montecarlo(const FareyMap& fm, int n, double alpha, double beta,
                                        long samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("need samples >= 1");
    long hits = 0;
    for (long i = 0; i < samples; ++i) {
        double x = counter_uniform01(seed, static_cast<std::uint64_t>(i));
        for (int k = 0; k < n; ++k) x = fm.apply(x);
        if (x >= alpha && x <= beta) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return McEstimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples};
}

WeightedComb finish_comb(std::vector<WeightedComb::Atom> atoms, long q, int n, double x) {
    std::sort(atoms.begin(), atoms.end(),
              [](const WeightedComb::Atom& a, const WeightedComb::Atom& b) {
                  return a.location < b.location;
              });
    WeightedComb comb;
    comb.atoms = std::move(atoms);
    comb.q = q;
    comb.n = n;
    comb.base_x = x;
    comb.prefix_.reserve(comb.atoms.size());
    Kahan acc;
    for (const auto& a : comb.atoms) {
        acc.add(a.weight);
        comb.prefix_.push_back(acc.value());
    }
    return comb;
}

double WeightedComb::total_mass() const { return prefix_.empty() ? 0.0 : prefix_.back(); }

double WeightedComb::cdf(double y) const {
    const auto it = std::upper_bound(atoms.begin(), atoms.end(), y,
                                     [](double v, const Atom& a) { return v < a.location; });
    const size_t k = static_cast<size_t>(it - atoms.begin());
    return k == 0 ? 0.0 : prefix_[k - 1];
}

WeightedComb dirac_comb(const FareyMap& fm, double x, int n, bool with_log_factor, int cap) {
    if (!(x > 0.0) || x > 1.0) throw std::domain_error("comb base point must be in (0,1]");
    if (with_log_factor && n < 2)
        throw std::invalid_argument("log factor degenerates for n < 2");
    word_count(fm.context(), n, cap);
    const double scale = with_log_factor ? x * std::log(static_cast<double>(n)) : x;
    std::vector<WeightedComb::Atom> atoms;
    for_each_word_mob(fm.alphabet_float(), n, [&](const Mob& h) {
        atoms.push_back(WeightedComb::Atom{h.apply(x), scale * h.deriv_abs(x)});
    });
    return finish_comb(std::move(atoms), fm.context().q(), n, x);
}

ReducedFraction make_reduced(RingElem r, RingElem s) {
    if (r.is_zero() && s.is_zero()) throw std::invalid_argument("(0,0) is not a reduced fraction");
    for (const RingElem* e : {&s, &r}) {
        const int sg = e->sign();
        if (sg == 0) continue;
        if (sg < 0) {
            r = -r;
            s = -s;
        }
        break;
    }
    return ReducedFraction{std::move(r), std::move(s)};
}

ReducedFraction reduced_base_one(const RingContext& ctx) {
    return make_reduced(ctx.one(), ctx.one());
}

ReducedFraction reduced_apply(const GroupElem& g, const ReducedFraction& base) {
    return make_reduced(g.a * base.r + g.b * base.s, g.c * base.r + g.d * base.s);
}

ReducedFraction reduced_from_word(const RingContext& ctx, const Word& w,
                                  const ReducedFraction& base) {
    return reduced_apply(word_compose(ctx, w), base);
}

namespace {

// Strict component order on normalized pairs, for exact dedup.
bool reduced_less(const ReducedFraction& a, const ReducedFraction& b) {
    const auto& ar = a.r.coeffs();
    const auto& br = b.r.coeffs();
    for (size_t i = 0; i < ar.size(); ++i) {
        const int c = cmp(ar[i], br[i]);
        if (c != 0) return c < 0;
    }
    const auto& as = a.s.coeffs();
    const auto& bs = b.s.coeffs();
    for (size_t i = 0; i < as.size(); ++i) {
        const int c = cmp(as[i], bs[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

}  // namespace

CuspComb cusp_comb(const RingContext& ctx, const ReducedFraction& base, int n,
                   bool with_log_factor, int cap) {
    const double base_x = base.to_double();
    if (!(base_x > 0.0) || base_x > 1.0 + 1e-15)
        throw std::domain_error("base point must be in (0,1]");
    if (with_log_factor && n < 2)
        throw std::invalid_argument("log factor degenerates for n < 2");

    const bool base_is_one = (base.r - base.s).is_zero();
    const double c_factor = base_is_one ? 2.0 : 1.0;
    const double vw = base.r.to_double() * base.s.to_double();
    const double scale =
        c_factor * vw * (with_log_factor ? std::log(static_cast<double>(n)) : 1.0);

    std::vector<ReducedFraction> fractions;
    for_each_word_elem(
        ctx, n, [&](const Word&, const GroupElem& h) { fractions.push_back(reduced_apply(h, base)); },
        cap);
    std::sort(fractions.begin(), fractions.end(), reduced_less);

    CuspComb out;
    out.collapse_two_to_one = true;
    std::vector<WeightedComb::Atom> atoms;
    size_t i = 0;
    while (i < fractions.size()) {
        size_t j = i;
        while (j < fractions.size() && fractions[j] == fractions[i]) ++j;
        const size_t mult = j - i;
        const size_t expected = base_is_one ? 2 : 1;
        if (mult != expected) {
            if (base_is_one) out.collapse_two_to_one = false;
            throw std::logic_error("cusp comb: unexpected word collapse multiplicity " +
                                   std::to_string(mult));
        }
        const double s = fractions[i].s.to_double();
        atoms.push_back(WeightedComb::Atom{fractions[i].to_double(), scale / (s * s)});
        ++out.rf_count;
        i = j;
    }
    out.comb = finish_comb(std::move(atoms), ctx.q(), n, base_x);
    return out;
}

double tail_exact(const RingContext& ctx, long N, long n) {
    if (N < 0 || n < 1) throw std::invalid_argument("need N >= 0 and n >= 1");
    const double lam = ctx.lambda_double();
    return std::log1p(lam / (static_cast<double>(N + n) * lam + 1.0));
}

double tail_summation(const RingContext& ctx, long N, long n) {
    Kahan acc;
    for (long j = 1; j <= n; ++j) acc.add(tail_exact(ctx, N, j));
    return acc.value();
}

TailReport tail_montecarlo(const FareyMap& fm, long N, long n_max, long samples,
                           std::uint64_t seed, long cap) {
    if (samples < 1 || n_max < 1) throw std::invalid_argument("need samples >= 1 and n_max >= 1");
    const RingContext& ctx = fm.context();
    const ExactInterval Y = sweep_out_union(ctx, N + 1);

    TailReport rep;
    rep.q = ctx.q();
    rep.N = N;
    rep.y_left = Y.left.to_double();
    rep.mu_y = mu_interval(rep.y_left, 1.0);
    rep.samples = samples;

    // Survival counts: surv[k] = #{ samples with phi > k }, k = 1..n_max.
    std::vector<long> surv(static_cast<size_t>(n_max) + 1, 0);
    for (long i = 0; i < samples; ++i) {
        // Inverse CDF of mu|_Y / mu(Y) on (y_left, 1]: x = y_left^(1-u).
        const double u = counter_uniform01(seed, static_cast<std::uint64_t>(i));
        double x = std::exp((1.0 - u) * std::log(rep.y_left));
        x = std::min(std::max(x, std::nextafter(rep.y_left, 1.0)), 1.0);
        const HitResult hit = first_return_time(fm, x, rep.y_left, 1.0, cap);
        if (!hit.reached) {
            ++rep.censored;
            for (long k = 1; k <= n_max; ++k) ++surv[static_cast<size_t>(k)];
            continue;
        }
        for (long k = 1; k <= std::min(n_max, hit.steps - 1); ++k) ++surv[static_cast<size_t>(k)];
    }
    for (long k = 1; k <= n_max; ++k) {
        const double p = static_cast<double>(surv[static_cast<size_t>(k)]) /
                         static_cast<double>(samples);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
        rep.rows.push_back(TailReport::Row{k, tail_exact(ctx, N, k), rep.mu_y * p, rep.mu_y * se});
    }
    return rep;
}

double mixing_statistic(const FareyMap& fm, double u_lo, double u_hi, double v_lo, double v_hi,
                        int n, int cap) {
    if (!(u_lo > 0.0) || !(v_lo > 0.0) || u_hi < u_lo || v_hi < v_lo || u_hi > 1.0 || v_hi > 1.0)
        throw std::domain_error("U and V must be subintervals of (0,1]");
    word_count(fm.context(), n, cap);
    const double total = word_sum(fm.alphabet_float(), n, [&](const Mob& h) {
        double a = h.apply(u_lo), b = h.apply(u_hi);
        if (a > b) std::swap(a, b);
        const double lo = std::max(a, v_lo), hi = std::min(b, v_hi);
        return hi > lo ? std::log(hi / lo) : 0.0;
    });
    return std::log(static_cast<double>(n)) * total;
}

}  // namespace hecke
