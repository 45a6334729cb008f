#include "hecke/farey.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

constexpr double kBreakSnap = 1e-14;

ExactInterval make_exact_interval(ProjPoint l, ProjPoint r) {
    if (proj_compare(l, r) > 0) throw std::invalid_argument("interval endpoints out of order");
    return ExactInterval{std::move(l), std::move(r)};
}

}  // namespace

std::vector<Branch> branch_partition(const RingContext& ctx) {
    const long q = ctx.q();
    const GroupElem Q = generators(ctx).Q;
    std::vector<Branch> branches;

    for (long k = (q + 1) / 2; k <= q - 1; ++k) {
        const int pos = static_cast<int>(k - (q + 1) / 2);
        const GroupElem g = branch_element(ctx, k);
        const GroupElem ginv = group_inverse(g);
        const ProjPoint zero = proj_from_long(ctx, 0, 1), one = proj_from_long(ctx, 1, 1);
        branches.push_back(Branch{
            g,
            make_exact_interval(moebius_apply(ginv, zero), moebius_apply(ginv, one)),
            pos,
            true,
        });
        const GroupElem qg = group_mul(Q, g);
        const GroupElem qginv = group_inverse(qg);
        branches.push_back(Branch{
            qg,
            make_exact_interval(moebius_apply(qginv, one), moebius_apply(qginv, zero)),
            static_cast<int>((q - 1) / 2) + pos,
            false,
        });
    }

    std::sort(branches.begin(), branches.end(), [](const Branch& x, const Branch& y) {
        return proj_compare(x.domain.left, y.domain.left) < 0;
    });

    // Tiling: consecutive endpoints match exactly, first left is 0, last right is 1.
    const RingContext& c = ctx;
    if (!proj_equal(branches.front().domain.left, proj_from_long(c, 0, 1)) ||
        !proj_equal(branches.back().domain.right, proj_from_long(c, 1, 1)))
        throw std::logic_error("branch partition does not span [0,1]");
    for (size_t i = 0; i + 1 < branches.size(); ++i) {
        if (!proj_equal(branches[i].domain.right, branches[i + 1].domain.left))
            throw std::logic_error("branch domains do not tile [0,1]");
    }
    return branches;
}

FareyMap::FareyMap(const RingContext& ctx) : ctx_(&ctx) {
    branches_ = branch_partition(ctx);
    for (size_t i = 0; i + 1 < branches_.size(); ++i) {
        breakpoints_.push_back(branches_[i].domain.right);
        breaks_.push_back(breakpoints_.back().to_double());
    }
    for (const Branch& br : branches_) branch_float_.push_back(to_mob(br.element));
    alpha_float_ = hecke::alphabet_float(ctx);
}

int FareyMap::branch_index(double x) const {
    int idx = static_cast<int>(std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin());
    // Snap to the breakpoint: both adjacent branches agree there, the
    // left-closed branch is the convention.
    if (idx > 0 && x - breaks_[static_cast<size_t>(idx - 1)] < kBreakSnap) --idx;
    return idx;
}

double FareyMap::apply(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("x outside [0,1]");
    const Mob& m = branch_float_[static_cast<size_t>(branch_index(x))];
    return std::min(1.0, std::max(0.0, m.apply(x)));
}

ProjPoint FareyMap::apply(const ProjPoint& p) const {
    const ProjPoint zero = proj_from_long(*ctx_, 0, 1), one = proj_from_long(*ctx_, 1, 1);
    if (proj_compare(p, zero) < 0 || proj_compare(p, one) > 0)
        throw std::domain_error("point outside [0,1]");
    for (const Branch& br : branches_) {
        if (proj_compare(p, br.domain.right) <= 0) return moebius_apply(br.element, p);
    }
    return moebius_apply(branches_.back().element, p);
}

std::vector<double> FareyMap::orbit(double x, int n) const {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n) + 1);
    out.push_back(x);
    for (int i = 0; i < n; ++i) out.push_back(apply(out.back()));
    return out;
}

namespace {

void sort_dedup(std::vector<ProjPoint>& pts) {
    std::sort(pts.begin(), pts.end(),
              [](const ProjPoint& a, const ProjPoint& b) { return proj_compare(a, b) < 0; });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const ProjPoint& a, const ProjPoint& b) { return proj_equal(a, b); }),
              pts.end());
}

}  // namespace

std::vector<ProjPoint> inverse_images(const RingContext& ctx, const std::vector<ProjPoint>& points,
                                      int n, int cap) {
    word_count(ctx, n, cap);
    const std::vector<GroupElem> letters = alphabet(ctx);
    std::vector<ProjPoint> cur = points;
    sort_dedup(cur);
    for (int level = 0; level < n; ++level) {
        std::vector<ProjPoint> next;
        next.reserve(cur.size() * letters.size());
        for (const GroupElem& p : letters) {
            for (const ProjPoint& s : cur) next.push_back(moebius_apply(p, s));
        }
        sort_dedup(next);
        cur = std::move(next);
    }
    return cur;
}

std::vector<std::vector<ProjPoint>> stern_brocot_levels(const RingContext& ctx, int n, int cap) {
    word_count(ctx, n, cap);
    const std::vector<GroupElem> letters = alphabet(ctx);
    std::vector<ProjPoint> tilde{proj_from_long(ctx, 0, 1), proj_from_long(ctx, 1, 1)};
    std::vector<std::vector<ProjPoint>> out;
    out.push_back(tilde);
    for (int level = 1; level <= n; ++level) {
        std::vector<ProjPoint> next;
        next.reserve(tilde.size() * letters.size());
        for (const GroupElem& p : letters) {
            for (const ProjPoint& s : tilde) next.push_back(moebius_apply(p, s));
        }
        sort_dedup(next);
        // New at this level: next \ tilde (both sorted).
        std::vector<ProjPoint> fresh;
        size_t i = 0, j = 0;
        while (i < next.size()) {
            if (j < tilde.size()) {
                const int c = proj_compare(next[i], tilde[j]);
                if (c == 0) {
                    ++i;
                    ++j;
                    continue;
                }
                if (c > 0) {
                    ++j;
                    continue;
                }
            }
            fresh.push_back(next[i]);
            ++i;
        }
        out.push_back(std::move(fresh));
        tilde = std::move(next);
    }
    return out;
}

std::vector<ProjPoint> stern_brocot_level(const RingContext& ctx, int n, int cap) {
    return stern_brocot_levels(ctx, n, cap).back();
}

ExactInterval sweep_out_set(const RingContext& ctx) { return sweep_out_union(ctx, 1); }

ExactInterval sweep_out_union(const RingContext& ctx, long n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const RingElem den = ctx.from_int(n) * ctx.lambda() + ctx.one();
    return ExactInterval{make_proj(ctx.one(), den), proj_from_long(ctx, 1, 1)};
}

namespace {

struct HalfOpen {
    ProjPoint lo, hi;
    bool lo_closed, hi_closed;
    double lo_d;
};

// Merges into a sorted disjoint list and checks the running union against the
// closed form after each level.
void merge_into(std::vector<HalfOpen>& merged, std::vector<HalfOpen>& fresh) {
    for (auto& h : merged) fresh.push_back(std::move(h));
    merged.clear();
    std::sort(fresh.begin(), fresh.end(),
              [](const HalfOpen& a, const HalfOpen& b) { return a.lo_d < b.lo_d; });
    for (auto& iv : fresh) {
        if (merged.empty()) {
            merged.push_back(std::move(iv));
            continue;
        }
        HalfOpen& cur = merged.back();
        if (proj_compare(iv.lo, cur.lo) < 0)
            throw std::logic_error("interval union: float pre-sort disagrees with exact order");
        const int c = proj_compare(iv.lo, cur.hi);
        if (c < 0 || (c == 0 && (cur.hi_closed || iv.lo_closed))) {
            const int ch = proj_compare(iv.hi, cur.hi);
            if (ch > 0) {
                cur.hi = std::move(iv.hi);
                cur.hi_closed = iv.hi_closed;
            } else if (ch == 0) {
                cur.hi_closed = cur.hi_closed || iv.hi_closed;
            }
        } else {
            merged.push_back(std::move(iv));
        }
    }
    fresh.clear();
}

}  // namespace

ExactInterval sweep_out_union_audit(const RingContext& ctx, int n, int cap) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const ExactInterval A = sweep_out_set(ctx);
    std::vector<HalfOpen> merged, fresh;
    for (int level = 0; level < n; ++level) {
        for_each_word_elem(
            ctx, level,
            [&](const Word&, const GroupElem& h) {
                ProjPoint pa = moebius_apply(h, A.left);
                ProjPoint pb = moebius_apply(h, A.right);
                if (h.det > 0) {
                    fresh.push_back(HalfOpen{std::move(pa), std::move(pb), false, true, 0.0});
                } else {
                    fresh.push_back(HalfOpen{std::move(pb), std::move(pa), true, false, 0.0});
                }
                fresh.back().lo_d = fresh.back().lo.to_double();
            },
            cap);
        merge_into(merged, fresh);
        const ExactInterval want = sweep_out_union(ctx, level + 1);
        if (merged.size() != 1 || !proj_equal(merged[0].lo, want.left) ||
            !proj_equal(merged[0].hi, want.right) || merged[0].lo_closed || !merged[0].hi_closed)
            throw std::logic_error("sweep-out audit: union differs from closed form at level " +
                                   std::to_string(level + 1));
    }
    return ExactInterval{merged[0].lo, merged[0].hi};
}

HitResult first_hitting_time(const FareyMap& fm, double x, double y_left, double y_right, long cap) {
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    double cur = x;
    for (long step = 1; step <= cap; ++step) {
        cur = fm.apply(cur);
        if (cur > y_left && cur <= y_right) return HitResult{step, true};
    }
    return HitResult{cap, false};
}

HitResult first_return_time(const FareyMap& fm, double x, double y_left, double y_right, long cap) {
    if (!(x > y_left && x <= y_right)) throw std::invalid_argument("first return requires x in Y");
    return first_hitting_time(fm, x, y_left, y_right, cap);
}

CompactCover y_of_compact(const RingContext& ctx, const ExactInterval& C) {
    const ProjPoint zero = proj_from_long(ctx, 0, 1);
    if (proj_compare(C.left, zero) <= 0)
        throw std::domain_error("compact set must be bounded away from 0");

    const RingElem one = ctx.one(), lam = ctx.lambda();
    auto endpoint = [&](long N) { return make_proj(one, ctx.from_int(N + 1) * lam + one); };

    const double c = C.left.to_double();
    long N = static_cast<long>(std::floor((1.0 / c - 1.0) / ctx.lambda_double())) - 1;
    if (N < 0) N = 0;
    while (N > 0 && proj_compare(endpoint(N - 1), C.left) < 0) --N;
    while (proj_compare(endpoint(N), C.left) >= 0) ++N;

    return CompactCover{N, ExactInterval{endpoint(N), proj_from_long(ctx, 1, 1)}};
}

}  // namespace hecke
