#include "hecke/verify.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "hecke/equidist.hpp"
#include "hecke/operators.hpp"
#include "hecke/rng.hpp"

namespace hecke {

double tail_cylinder_bruteforce(const FareyMap& fm, int n, int cap) {
    const RingContext& ctx = fm.context();
    const double a0 = sweep_out_set(ctx).left.to_double();
    const std::vector<Mob>& alpha = fm.alphabet_float();
    const int base = static_cast<int>(alpha.size());
    word_count(ctx, n + 1, cap);

    // A cylinder of depth n+1 is h.[0,1] for h = p_{i_0} ... p_{i_n}; its
    // j-step image is the suffix cylinder p_{i_j} ... p_{i_n}.[0,1]. Branch
    // domains have positive distance to the A-boundary except at endpoints,
    // so the midpoint decides containment.
    Kahan mass;
    std::vector<int> digits(static_cast<size_t>(n + 1), 0);
    for (;;) {
        std::vector<Mob> suffix(static_cast<size_t>(n + 2));
        suffix[static_cast<size_t>(n + 1)] = Mob::identity();
        for (int j = n; j >= 0; --j)
            suffix[static_cast<size_t>(j)] =
                alpha[static_cast<size_t>(digits[static_cast<size_t>(j)])].mul(
                    suffix[static_cast<size_t>(j + 1)]);
        bool keep = true;
        for (int j = 0; j <= n; ++j) {
            const Mob& m = suffix[static_cast<size_t>(j)];
            const double mid = m.apply(0.5);
            const bool in_a = mid > a0;
            if ((j == 0 && !in_a) || (j > 0 && in_a)) {
                keep = false;
                break;
            }
        }
        if (keep) {
            double lo = suffix[0].apply(0.0), hi = suffix[0].apply(1.0);
            if (lo > hi) std::swap(lo, hi);
            mass.add(std::log(hi / lo));
        }
        int pos = n;
        while (pos >= 0 && digits[static_cast<size_t>(pos)] == base - 1) {
            digits[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++digits[static_cast<size_t>(pos)];
    }
    return mass.value();
}

std::vector<std::vector<std::pair<long, long>>> mediant_levels(int n) {
    std::vector<std::vector<std::pair<long, long>>> levels;
    std::vector<std::pair<long, long>> row{{0, 1}, {1, 1}};
    levels.push_back(row);
    for (int level = 1; level <= n; ++level) {
        std::vector<std::pair<long, long>> next, fresh;
        for (size_t i = 0; i + 1 < row.size(); ++i) {
            next.push_back(row[i]);
            const std::pair<long, long> med{row[i].first + row[i + 1].first,
                                            row[i].second + row[i + 1].second};
            next.push_back(med);
            fresh.push_back(med);
        }
        next.push_back(row.back());
        levels.push_back(std::move(fresh));
        row = std::move(next);
    }
    return levels;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Suite {
    std::vector<CheckResult> results;

    template <typename F>
    void check(const std::string& name, F&& f) {
        CheckResult r;
        r.name = name;
        const auto t0 = Clock::now();
        try {
            std::ostringstream detail;
            r.pass = f(detail);
            r.detail = detail.str();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        results.push_back(std::move(r));
    }
};

GroupElem group_pow(const RingContext& ctx, const GroupElem& g, long e) {
    GroupElem acc = group_identity(ctx);
    for (long i = 0; i < e; ++i) acc = group_mul(acc, g);
    return acc;
}

// Largest n <= limit with (q-1)^n <= budget.
int depth_for_budget(long q, int limit, double budget) {
    int n = 0;
    double total = 1;
    while (n < limit && total * static_cast<double>(q - 1) <= budget) {
        total *= static_cast<double>(q - 1);
        ++n;
    }
    return n;
}

}  // namespace

std::vector<CheckResult> run_verify_suite(long q, int max_n) {
    Suite s;
    const RingContext ctx(q);
    const FareyMap fm(ctx);
    const std::vector<GroupElem> letters = alphabet(ctx);
    const double lam = ctx.lambda_double();

    s.check("minpoly-divides-chebyshev", [&](std::ostringstream& d) {
        d << "degree " << ctx.degree();
        return poly_divides_monic(ctx.minpoly(), chebyshev_like_poly(q));
    });

    s.check("chebyshev-s-values", [&](std::ostringstream&) {
        if (!ctx.chebyshev_s(q).is_zero() || !ctx.chebyshev_s(q - 1).is_one()) return false;
        for (long k = 0; k <= 2 * q; ++k) {
            if (ctx.chebyshev_s(k + 2 * q) != ctx.chebyshev_s(k)) return false;
            if (ctx.chebyshev_s(-k) != -ctx.chebyshev_s(k)) return false;
            const double want = std::sin(k * M_PI / q) / std::sin(M_PI / q);
            if (std::abs(ctx.chebyshev_s(k).to_double() - want) > 1e-12) return false;
        }
        return true;
    });

    s.check("generators", [&](std::ostringstream&) {
        const Generators g = generators(ctx);
        if (!(group_mul(g.T, g.S) == g.U)) return false;
        if (!(group_pow(ctx, g.U, q) == group_identity(ctx))) return false;
        if (!(group_mul(g.Q, g.Q) == group_identity(ctx))) return false;
        return g.Q.det == -1;
    });

    s.check("q-conjugation", [&](std::ostringstream&) {
        const GroupElem Q = generators(ctx).Q;
        for (long k = 0; k <= 2 * q; ++k) {
            const GroupElem lhs = group_mul(group_mul(Q, branch_element(ctx, k)), Q);
            if (!(lhs == branch_element(ctx, q - k))) return false;
            if (!(branch_element(ctx, k + q) == branch_element(ctx, k))) return false;
        }
        return true;
    });

    s.check("alphabet", [&](std::ostringstream&) {
        if (letters.size() != static_cast<size_t>(q - 1)) return false;
        for (size_t i = 0; i < letters.size(); ++i) {
            const int want = i < static_cast<size_t>((q - 1) / 2) ? 1 : -1;
            if (letters[i].det != want) return false;
        }
        return true;
    });

    s.check("branch-boundary-matching", [&](std::ostringstream&) {
        const GroupElem Q = generators(ctx).Q;
        const ProjPoint zero = proj_from_long(ctx, 0, 1), one = proj_from_long(ctx, 1, 1);
        for (long k = 0; k <= 2 * q; ++k) {
            const GroupElem gk_inv = group_inverse(branch_element(ctx, k));
            const GroupElem qgk_inv = group_inverse(group_mul(Q, branch_element(ctx, k)));
            const GroupElem qgk1_inv = group_inverse(group_mul(Q, branch_element(ctx, k + 1)));
            if (!proj_equal(moebius_apply(qgk1_inv, zero), moebius_apply(gk_inv, zero)))
                return false;
            if (!proj_equal(moebius_apply(qgk_inv, one), moebius_apply(gk_inv, one))) return false;
        }
        return true;
    });

    s.check("branch-tiling", [&](std::ostringstream& d) {
        const std::vector<Branch>& br = fm.branches();
        d << br.size() << " branches";
        return br.size() == static_cast<size_t>(q - 1) &&
               fm.breakpoints().size() == static_cast<size_t>(q - 2);
    });

    s.check("freeness", [&](std::ostringstream& d) {
        const int n = depth_for_budget(q, std::min(max_n, 6), 60000);
        d << "depth " << n;
        for (int len = 1; len <= n; ++len) {
            std::set<std::string> seen;
            for_each_word_elem(ctx, len,
                               [&](const Word&, const GroupElem& h) { seen.insert(h.key()); });
            if (seen.size() != word_count(ctx, len)) return false;
        }
        return true;
    });

    s.check("word-positivity", [&](std::ostringstream& d) {
        const int n = depth_for_budget(q, std::min(max_n, 4), 20000);
        d << "depth " << n;
        for (int len = 1; len <= n; ++len) {
            bool ok = true;
            for_each_word_elem(ctx, len, [&](const Word&, const GroupElem& h) {
                if (h.a.sign() < 0 || h.b.sign() < 0 || h.c.sign() <= 0 || h.d.sign() <= 0)
                    ok = false;
            });
            if (!ok) return false;
        }
        return true;
    });

    s.check("derivative-monotone-extremal", [&](std::ostringstream& d) {
        const int n = depth_for_budget(q, std::min(max_n, 5), 20000);
        d << "depth " << n;
        for (int len = 1; len <= n; ++len) {
            bool ok = true;
            for_each_word_elem(ctx, len, [&](const Word&, const GroupElem& h) {
                const Mob m = to_mob(h);
                double prev = m.deriv_abs(0.0);
                for (int i = 1; i <= 64; ++i) {
                    const double x = i / 64.0;
                    const double cur = m.deriv_abs(x);
                    if (cur > prev + 1e-12) ok = false;
                    if (cur > 1.0 / std::pow(len * lam * x + 1.0, 2) + 1e-12) ok = false;
                    prev = cur;
                }
            });
            if (!ok) return false;
        }
        return true;
    });

    s.check("order-lemma", [&](std::ostringstream&) {
        const GroupElem extremal = letters[static_cast<size_t>((q - 1) / 2 - 1)];
        for (int i = 0; i <= 64; ++i) {
            const ProjPoint x = proj_from_long(ctx, i, 64);
            const ProjPoint lhs = moebius_apply(extremal, x);
            for (const GroupElem& h : letters) {
                if (proj_compare(lhs, moebius_apply(h, x)) > 0) return false;
            }
        }
        return true;
    });

    s.check("afn-expansion-bounds", [&](std::ostringstream&) {
        const double lam2 = lam * lam;
        for (const Branch& br : fm.branches()) {
            const double lo = br.domain.left.to_double(), hi = br.domain.right.to_double();
            const bool leftmost = lo == 0.0;
            const double eps = leftmost ? (hi - lo) / 2 : 0.0;
            const double floor_bound = leftmost ? 1.0 / std::pow(1.0 - lam * eps, 2) : lam2;
            for (int i = 0; i <= 32; ++i) {
                const double x = (leftmost ? lo + eps : lo) +
                                 (hi - (leftmost ? lo + eps : lo)) * i / 32.0;
                if (derivative_abs(br.element, x) < floor_bound - 1e-12) return false;
            }
        }
        return true;
    });

    s.check("adler-bound", [&](std::ostringstream& d) {
        double bound = 0.0;
        for (const Branch& br : fm.branches()) {
            const double c = std::abs(br.element.c.to_double());
            const double dd = std::abs(br.element.d.to_double());
            bound = std::max(bound, 2.0 * c * (c + dd));
        }
        d << "bound " << bound;
        for (const Branch& br : fm.branches()) {
            const double lo = br.domain.left.to_double(), hi = br.domain.right.to_double();
            const double c = br.element.c.to_double(), dd = br.element.d.to_double();
            for (int i = 0; i <= 32; ++i) {
                const double x = lo + (hi - lo) * i / 32.0;
                if (std::abs(-2.0 * c * (c * x + dd)) > bound + 1e-9) return false;
            }
        }
        return true;
    });

    s.check("indifferent-fixed-point-unique", [&](std::ostringstream&) {
        int found = 0;
        for (size_t bi = 0; bi < fm.branches().size(); ++bi) {
            const Branch& br = fm.branches()[bi];
            for (const ProjPoint* p : {&br.domain.left, &br.domain.right}) {
                if (!proj_equal(moebius_apply(br.element, *p), *p)) continue;
                // |g'(p)| = 1 iff (c u + d v)^2 = v^2 exactly.
                const RingElem t = br.element.c * p->num + br.element.d * p->den;
                if ((t * t - p->den * p->den).is_zero()) {
                    ++found;
                    if (bi != 0 || !p->num.is_zero()) return false;
                }
            }
        }
        return found == 1;
    });

    s.check("cylinder-refinement-shrinks", [&](std::ostringstream& d) {
        const int n_hi = depth_for_budget(q, std::min(max_n, 8), 2000000);
        const int n_lo = std::max(1, n_hi / 2);
        auto max_diam = [&](int n) {
            double worst = 0.0;
            for_each_word_mob(fm.alphabet_float(), n, [&](const Mob& h) {
                const double u = h.apply(0.0), v = h.apply(1.0);
                if (std::min(u, v) == 0.0) return;  // cylinder at the fixed point
                worst = std::max(worst, std::abs(v - u));
            });
            return worst;
        };
        const double hi = max_diam(n_hi), lo = max_diam(n_lo);
        d << "max diam " << lo << " @n=" << n_lo << " -> " << hi << " @n=" << n_hi;
        return n_hi > n_lo && hi < lo;
    });

    s.check("orbit-conjugacy", [&](std::ostringstream& d) {
        const int n = depth_for_budget(q, std::min(max_n, 4), 3000);
        d << "depth " << n;
        const ProjPoint zero = proj_from_long(ctx, 0, 1), one = proj_from_long(ctx, 1, 1);
        bool ok = true;
        for_each_word_elem(ctx, n, [&](const Word&, const GroupElem& h) {
            for (const ProjPoint* base : {&zero, &one}) {
                ProjPoint p = moebius_apply(h, *base);
                double x = p.to_double();
                for (int step = 0; step < n; ++step) {
                    bool near_break = false;
                    for (double b : fm.breakpoints_float())
                        near_break = near_break || std::abs(p.to_double() - b) < 1e-6;
                    if (near_break) return;  // float branch choice may differ from here on
                    p = fm.apply(p);
                    x = fm.apply(x);
                    if (std::abs(x - p.to_double()) > 1e-9) ok = false;
                }
                if (!proj_equal(p, *base)) ok = false;
            }
        });
        return ok;
    });

    s.check("stern-brocot-structure", [&](std::ostringstream& d) {
        const int n = depth_for_budget(q, std::min(max_n, 6), 30000);
        d << "levels 0.." << n;
        const auto levels = stern_brocot_levels(ctx, n);
        size_t total = 0;
        for (const auto& level : levels) total += level.size();
        return total == inverse_images(ctx, {proj_from_long(ctx, 0, 1), proj_from_long(ctx, 1, 1)},
                                       n)
                            .size();
    });

    if (q == 3) {
        s.check("stern-brocot-mediants", [&](std::ostringstream&) {
            const int n = std::min(max_n, 6);
            const auto got = stern_brocot_levels(ctx, n);
            const auto want = mediant_levels(n);
            for (int level = 1; level <= n; ++level) {
                const auto& g = got[static_cast<size_t>(level)];
                const auto& w = want[static_cast<size_t>(level)];
                if (g.size() != w.size()) return false;
                for (size_t i = 0; i < g.size(); ++i) {
                    if (!proj_equal(g[i], proj_from_long(ctx, w[i].first, w[i].second)))
                        return false;
                }
            }
            return true;
        });
    }

    s.check("sweep-out-audit", [&](std::ostringstream& d) {
        const int n = std::max(1, depth_for_budget(q, std::min(max_n, 8), 120000) + 1);
        d << "n=" << n;
        sweep_out_union_audit(ctx, n);
        return true;
    });

    s.check("eigenfunction-residual", [&](std::ostringstream& d) {
        const double r = eigenfunction_residual(fm, 1000);
        d << "residual " << r;
        return r <= (q <= 9 ? 1e-10 : 1e-8);
    });

    s.check("transfer-fixes-one", [&](std::ostringstream& d) {
        double worst = 0.0;
        for (int i = 1; i <= 1000; ++i) {
            const double x = i / 1000.0;
            worst = std::max(worst,
                             std::abs(transfer_apply(fm, [](double) { return 1.0; }, x) - 1.0));
        }
        d << "max deviation " << worst;
        return worst <= 1e-12;
    });

    s.check("telescoping-identity", [&](std::ostringstream&) {
        std::vector<double> sf(static_cast<size_t>(q) + 2);
        for (long k = 0; k <= q + 1; ++k) sf[static_cast<size_t>(k)] = ctx.chebyshev_s(k).to_double();
        for (int trial = 0; trial < 100; ++trial) {
            const double x = counter_uniform01(7, static_cast<std::uint64_t>(trial));
            if (x == 0.0) continue;
            Kahan acc;
            for (long k = 1; k <= q - 1; ++k) {
                acc.add(std::log(x * sf[static_cast<size_t>(k)] + sf[static_cast<size_t>(k + 1)]));
                acc.add(-std::log(x * sf[static_cast<size_t>(k - 1)] + sf[static_cast<size_t>(k)]));
            }
            if (std::abs(acc.value() - std::log(x)) > 1e-10) return false;
        }
        return true;
    });

    s.check("wordsum-vs-recursive", [&](std::ostringstream& d) {
        const int n = depth_for_budget(q, std::min(max_n, 6), 50000);
        d << "depth " << n;
        const auto invx = [](double y) { return 1.0 / y; };
        for (const double x : {0.37, 0.71, 1.0}) {
            const double a = pf_iterate_pointwise(fm, invx, x, n);
            const double b = pf_iterate_recursive(fm, invx, x, n);
            if (std::abs(a - b) > 1e-10) return false;
        }
        return true;
    });

    s.check("preimage-duality", [&](std::ostringstream& d) {
        const int n = depth_for_budget(q, std::min(max_n, 4), 10000);
        d << "depth " << n;
        const double words = preimage_lebesgue_words(fm, n, 0.5, 1.0);
        std::vector<double> xs(10000);
        for (size_t i = 0; i < xs.size(); ++i)
            xs[i] = 0.5 + 0.5 * (static_cast<double>(i) + 0.5) / static_cast<double>(xs.size());
        const std::vector<double> vals = pf_iterate_one_batch(fm, xs, n);
        Kahan acc;
        for (double v : vals) acc.add(v);
        const double quad = acc.value() * 0.5 / static_cast<double>(xs.size());
        d << ", words " << words << " vs quad " << quad;
        return std::abs(words - quad) <= 1e-8;
    });

    s.check("preimage-montecarlo", [&](std::ostringstream& d) {
        const int n = depth_for_budget(q, std::min(max_n, 6), 50000);
        const double words = preimage_lebesgue_words(fm, n, 0.5, 1.0);
        const McEstimate mc = preimage_lebesgue_montecarlo(fm, n, 0.5, 1.0, 200000, 42);
        d << "words " << words << " vs mc " << mc.estimate << " +- " << mc.stderr_;
        return std::abs(words - mc.estimate) <= 3.0 * mc.stderr_ + 1e-12;
    });

    s.check("comb-mass-identity", [&](std::ostringstream& d) {
        const int n = depth_for_budget(q, std::min(max_n, 6), 50000);
        d << "depth " << n;
        const WeightedComb comb = dirac_comb(fm, 0.7, n, false);
        const double mass = 0.7 * pf_iterate_pointwise(fm, [](double) { return 1.0; }, 0.7, n);
        return std::abs(comb.total_mass() - mass) <= 1e-10;
    });

    s.check("cusp-collapse-counts", [&](std::ostringstream& d) {
        const int n = depth_for_budget(q, std::min(max_n, 4), 5000);
        d << "depth " << n;
        const CuspComb at_one = cusp_comb(ctx, reduced_base_one(ctx), n, false);
        if (!at_one.collapse_two_to_one || at_one.rf_count != word_count(ctx, n) / 2) return false;
        Word w0;
        w0.letters.push_back(0);
        const ReducedFraction base = reduced_from_word(ctx, w0, reduced_base_one(ctx));
        const CuspComb generic = cusp_comb(ctx, base, n, false);
        return generic.rf_count == word_count(ctx, n);
    });

    s.check("cusp-weight-identity", [&](std::ostringstream&) {
        const int n = depth_for_budget(q, std::min(max_n, 4), 5000);
        Word w0;
        w0.letters.push_back(0);
        const ReducedFraction base = reduced_from_word(ctx, w0, reduced_base_one(ctx));
        const double v = base.r.to_double(), w = base.s.to_double();
        bool ok = true;
        for_each_word_elem(ctx, n, [&](const Word&, const GroupElem& h) {
            const ReducedFraction rf = reduced_apply(h, base);
            const double s2 = rf.s.to_double() * rf.s.to_double();
            const double dh = derivative_abs(h, v / w);
            if (std::abs(1.0 / s2 - dh / (w * w)) > 1e-10) ok = false;
        });
        return ok;
    });

    s.check("x1-mass-identity", [&](std::ostringstream& d) {
        Kahan acc;
        for (const Mob& p : fm.alphabet_float()) acc.add(p.deriv_abs(1.0) / p.apply(1.0));
        d << "sum " << acc.value();
        return std::abs(acc.value() - 1.0) <= 1e-12;
    });

    s.check("tail-cylinder-bruteforce", [&](std::ostringstream& d) {
        const int n = std::max(1, depth_for_budget(q, std::min(max_n, 6) + 1, 50000) - 1);
        d << "n=" << n;
        for (int k = 1; k <= n; ++k) {
            if (std::abs(tail_cylinder_bruteforce(fm, k) - tail_exact(ctx, 0, k)) > 1e-10)
                return false;
        }
        return true;
    });

    s.check("tail-asymptotics", [&](std::ostringstream& d) {
        const double a = 1e4 * tail_exact(ctx, 0, 10000);
        const double w = tail_summation(ctx, 0, 1000000) / std::log(1e6);
        d << "n*tail " << a << ", w/log " << w;
        return std::abs(a - 1.0) <= 1e-3 && w >= 0.9 && w <= 1.1;
    });

    s.check("sweep-out-closed-form", [&](std::ostringstream&) {
        const GroupElem ginv = group_inverse(branch_element(ctx, q - 1));
        ProjPoint p = proj_from_long(ctx, 1, 1);
        const RingElem lamr = ctx.lambda(), one = ctx.one();
        for (long n = 1; n <= 1000; ++n) {
            p = moebius_apply(ginv, p);
            if (!proj_equal(p, make_proj(one, ctx.from_int(n) * lamr + one))) return false;
        }
        return true;
    });

    s.check("sign-totality", [&](std::ostringstream&) {
        const int d = ctx.degree();
        for (int trial = 0; trial < 10000; ++trial) {
            std::vector<mpz_class> coeffs(static_cast<size_t>(d));
            bool zero = true;
            for (int i = 0; i < d; ++i) {
                const std::uint64_t r =
                    counter_mix(11, static_cast<std::uint64_t>(trial * d + i));
                coeffs[static_cast<size_t>(i)] = static_cast<long>(r % 2000001) - 1000000;
                zero = zero && coeffs[static_cast<size_t>(i)] == 0;
            }
            const RingElem e = ctx.from_coeffs(coeffs);
            const int sp = e.sign(), sn = (-e).sign();
            if (zero ? (sp != 0 || sn != 0) : (sp * sn != -1)) return false;
        }
        return true;
    });

    s.check("compare-matches-float", [&](std::ostringstream&) {
        const int d = ctx.degree();
        for (int trial = 0; trial < 2000; ++trial) {
            std::vector<mpz_class> ca(static_cast<size_t>(d)), cb(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i) {
                ca[static_cast<size_t>(i)] =
                    static_cast<long>(counter_mix(13, static_cast<std::uint64_t>(trial * d + i)) % 201) - 100;
                cb[static_cast<size_t>(i)] =
                    static_cast<long>(counter_mix(17, static_cast<std::uint64_t>(trial * d + i)) % 201) - 100;
            }
            const RingElem a = ctx.from_coeffs(ca), b = ctx.from_coeffs(cb);
            const double fa = a.to_double(), fb = b.to_double();
            if (std::abs(fa - fb) > 1e-9) {
                if (a.compare(b) != (fa < fb ? -1 : 1)) return false;
            }
        }
        return true;
    });

    s.check("ulam-column-sums", [&](std::ostringstream& d) {
        const UlamMatrix m = ulam_build(fm, 256);
        std::vector<double> col(256, 0.0);
        for (const auto& row : m.rows) {
            for (const auto& [j, v] : row) col[static_cast<size_t>(j)] += v;
        }
        double worst = 0.0;
        for (double c : col) worst = std::max(worst, std::abs(c - 1.0));
        d << "max column deviation " << worst;
        return worst <= 1e-10;
    });

    return s.results;
}

}  // namespace hecke
