#include <doctest.h>

#include <cmath>

#include "hecke/equidist.hpp"
#include "hecke/verify.hpp"

using namespace hecke;

TEST_CASE("mu of intervals") {
    CHECK(mu_interval(0.5, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(mu_interval(0.3, 0.3) == 0.0);
    CHECK_THROWS_AS((void)mu_interval(0.0, 0.5), std::domain_error);

    const RingContext c5(5);
    const double a = sweep_out_set(c5).left.to_double();
    CHECK(mu_interval(a, 1.0) ==
          doctest::Approx(std::log(c5.lambda_double() + 1.0)).epsilon(1e-13));
    CHECK(mu_interval(a, 1.0) == doctest::Approx(0.9624).epsilon(1e-4));
}

TEST_CASE("preimage volumes by word sums") {
    const RingContext c3(3);
    const FareyMap fm3(c3);
    CHECK(preimage_lebesgue_words(fm3, 0, 0.25, 0.75) == doctest::Approx(0.5).epsilon(1e-15));
    // Classical branches map [1/2,1] to [1/3,1/2] and [1/2,2/3]: total 1/3.
    CHECK(preimage_lebesgue_words(fm3, 1, 0.5, 1.0) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK_THROWS_AS((void)preimage_lebesgue_words(fm3, 1, 0.0, 0.5), std::domain_error);
}

TEST_CASE("monte carlo cross-oracle") {
    for (long q : {3L, 5L, 7L}) {
        const RingContext ctx(q);
        const FareyMap fm(ctx);
        for (int n : {0, 3, 6}) {
            for (auto [alpha, beta] : {std::pair{0.5, 1.0}, std::pair{0.25, 1.0 / 3}}) {
                const double words = preimage_lebesgue_words(fm, n, alpha, beta);
                const McEstimate mc =
                    preimage_lebesgue_montecarlo(fm, n, alpha, beta, 1000000, 42);
                CHECK(std::abs(words - mc.estimate) <= 3.0 * mc.stderr_ + 1e-12);
            }
        }
        // The whole interval is invariant: estimate is exactly 1.
        const McEstimate all = preimage_lebesgue_montecarlo(fm, 4, 0.0 + 1e-300, 1.0, 1000, 7);
        CHECK(all.estimate == 1.0);
    }
}

TEST_CASE("monte carlo determinism") {
    const RingContext c5(5);
    const FareyMap fm(c5);
    const McEstimate a = preimage_lebesgue_montecarlo(fm, 3, 0.5, 1.0, 50000, 123);
    const McEstimate b = preimage_lebesgue_montecarlo(fm, 3, 0.5, 1.0, 50000, 123);
    CHECK(a.estimate == b.estimate);
    const McEstimate c = preimage_lebesgue_montecarlo(fm, 3, 0.5, 1.0, 50000, 124);
    CHECK(a.estimate != c.estimate);
}

TEST_CASE("dirac combs") {
    const RingContext c3(3);
    const FareyMap fm3(c3);
    // Two atoms at 1/2 with weight 1/4 each.
    const WeightedComb comb = dirac_comb(fm3, 1.0, 1, false);
    REQUIRE(comb.atoms.size() == 2);
    CHECK(comb.atoms[0].location == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(comb.atoms[1].location == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(comb.atoms[0].weight == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(comb.total_mass() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(comb.cdf(0.49) == 0.0);
    CHECK(comb.cdf(0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(comb.cdf(1.0) == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS((void)dirac_comb(fm3, 0.0, 3, true), std::domain_error);
    CHECK_THROWS_AS((void)dirac_comb(fm3, 0.5, 1, true), std::invalid_argument);

    // Total mass identity against the operator module.
    for (long q : {3L, 5L}) {
        const RingContext ctx(q);
        const FareyMap fm(ctx);
        for (int n : {1, 4, 6}) {
            for (double x : {0.3, 1.0}) {
                const WeightedComb cb = dirac_comb(fm, x, n, false);
                const double mass =
                    x * pf_iterate_pointwise(fm, [](double) { return 1.0; }, x, n);
                CHECK(std::abs(cb.total_mass() - mass) <= 1e-10);
            }
        }
    }
}

TEST_CASE("reduced fractions from words") {
    const RingContext c3(3);
    const ReducedFraction base11 = reduced_base_one(c3);

    Word w0;
    w0.letters.push_back(0);
    const ReducedFraction rf = reduced_from_word(c3, w0, base11);
    CHECK(rf.r == c3.one());
    CHECK(rf.s == c3.from_int(2));  // classical F^{-1}(1) = {1/2}

    CHECK(reduced_from_word(c3, Word{}, base11) == base11);

    // The 2:1 collapse at 1: both letters give the same exact pair.
    const RingContext c5(5);
    const auto letters5 = alphabet(c5);
    const ReducedFraction via_g = reduced_apply(letters5[1], reduced_base_one(c5));
    const ReducedFraction via_qg = reduced_apply(letters5[3], reduced_base_one(c5));
    CHECK(via_g == via_qg);
}

TEST_CASE("cusp combs: bijection counts and weights") {
    const RingContext c3(3);
    // Base 1/2, n=1: atoms at 1/3 and 2/3 with s^2 = 9, weights 2/9 (no log).
    Word w0;
    w0.letters.push_back(0);
    const ReducedFraction half = reduced_from_word(c3, w0, reduced_base_one(c3));
    const CuspComb cc = cusp_comb(c3, half, 1, false);
    REQUIRE(cc.rf_count == 2);
    CHECK(cc.comb.atoms[0].location == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(cc.comb.atoms[1].location == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(cc.comb.atoms[0].weight == doctest::Approx(2.0 / 9).epsilon(1e-13));
    CHECK(cc.comb.atoms[1].weight == doctest::Approx(2.0 / 9).epsilon(1e-13));

    // |RF| = (q-1)^n off 1; exact 2:1 collapse at 1.
    for (long q : {3L, 5L}) {
        const RingContext ctx(q);
        const int nmax = q == 3 ? 5 : 4;
        for (int n = 1; n <= nmax; ++n) {
            const CuspComb at_one = cusp_comb(ctx, reduced_base_one(ctx), n, false);
            CHECK(at_one.collapse_two_to_one);
            CHECK(at_one.rf_count == word_count(ctx, n) / 2);

            Word w;
            w.letters.push_back(0);
            const CuspComb generic =
                cusp_comb(ctx, reduced_from_word(ctx, w, reduced_base_one(ctx)), n, false);
            CHECK(generic.rf_count == word_count(ctx, n));
        }
    }

    // Weight identity 1/s^2 = |h'(v/w)|/w^2 per atom.
    for (long q : {3L, 5L}) {
        const RingContext ctx(q);
        Word w;
        w.letters.push_back(static_cast<int>(q - 1) / 2);  // a decreasing letter
        const ReducedFraction base = reduced_from_word(ctx, w, reduced_base_one(ctx));
        const double v = base.r.to_double(), ww = base.s.to_double();
        for_each_word_elem(ctx, 3, [&](const Word&, const GroupElem& h) {
            const ReducedFraction out = reduced_apply(h, base);
            const double s2 = out.s.to_double() * out.s.to_double();
            CHECK(std::abs(1.0 / s2 - derivative_abs(h, v / ww) / (ww * ww)) <= 1e-10);
        });
    }
}

TEST_CASE("exact tails and their asymptotics") {
    const RingContext c5(5);
    CHECK(tail_exact(c5, 0, 1) ==
          doctest::Approx(std::log(1.0 + c5.lambda_double() / (c5.lambda_double() + 1.0)))
              .epsilon(1e-15));
    CHECK(tail_exact(c5, 0, 1) == doctest::Approx(0.48121).epsilon(1e-4));

    // n mu(phi_A > n) -> 1 and w(n) ~ log n.
    CHECK(1e4 * tail_exact(c5, 0, 10000) == doctest::Approx(1.0).epsilon(1e-3));
    const double w_ratio = tail_summation(c5, 0, 1000000) / std::log(1e6);
    CHECK(w_ratio >= 0.9);
    CHECK(w_ratio <= 1.1);

    // The sum telescopes: w(n) = log(((n+1) lambda + 1)/(lambda + 1)).
    const double lam = c5.lambda_double();
    for (long n : {10L, 1000L}) {
        CHECK(tail_summation(c5, 0, n) ==
              doctest::Approx(std::log(((n + 1) * lam + 1.0) / (lam + 1.0))).epsilon(1e-12));
    }
}

TEST_CASE("tail cylinder brute force matches the closed form") {
    for (long q : {3L, 5L}) {
        const RingContext ctx(q);
        const FareyMap fm(ctx);
        for (int n = 1; n <= 4; ++n) {
            CHECK(std::abs(tail_cylinder_bruteforce(fm, n) - tail_exact(ctx, 0, n)) <= 1e-10);
        }
    }
}

TEST_CASE("monte carlo tails within 3 sigma") {
    const RingContext c5(5);
    const FareyMap fm(c5);
    const TailReport rep = tail_montecarlo(fm, 0, 10, 100000, 42);
    CHECK(rep.censored == 0);
    for (const auto& row : rep.rows) {
        CHECK(std::abs(row.estimate - row.exact) <= 3.0 * row.stderr_ + 1e-12);
    }
    // Deterministic for a fixed seed.
    const TailReport rep2 = tail_montecarlo(fm, 0, 10, 100000, 42);
    CHECK(rep.rows.back().estimate == rep2.rows.back().estimate);
}

TEST_CASE("mixing statistic") {
    const RingContext c5(5);
    const FareyMap fm(c5);
    // V = (0,1] variant reduces to log(n) mu(F^{-n}(U)).
    for (int n : {2, 5}) {
        const double a = mixing_statistic(fm, 0.5, 1.0, 1e-12, 1.0, n);
        const double direct =
            std::log(static_cast<double>(n)) *
            word_sum(fm.alphabet_float(), n, [&](const Mob& h) {
                double u = h.apply(0.5), v = h.apply(1.0);
                if (u > v) std::swap(u, v);
                return std::log(v / u);
            });
        CHECK(a == doctest::Approx(direct).epsilon(1e-12));
        // Monotonicity bound: mu(F^{-n}(U) n V) <= mu(V).
        const double b = mixing_statistic(fm, 0.5, 1.0, 0.5, 1.0, n);
        CHECK(b <= std::log(static_cast<double>(n)) * mu_interval(0.5, 1.0) + 1e-12);
        CHECK(b > 0.0);
    }
}

TEST_CASE("x = 1 reduction mass identity") {
    for (long q : {3L, 5L, 7L}) {
        const RingContext ctx(q);
        const FareyMap fm(ctx);
        Kahan acc;
        for (const Mob& p : fm.alphabet_float()) acc.add(p.deriv_abs(1.0) / p.apply(1.0));
        CHECK(std::abs(acc.value() - 1.0) <= 1e-12);
    }
}
