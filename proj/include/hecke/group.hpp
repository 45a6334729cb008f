#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hecke/ring.hpp"

namespace hecke {

// 2x2 matrix over Z[lambda_q] with determinant +-1, identified up to global
// sign. The canonical representative makes the first nonzero entry in the
// order (c, d, a, b) positive, so [M] and [-M] compare equal.
struct GroupElem {
    RingElem a, b, c, d;
    int det = 1;

    bool operator==(const GroupElem& o) const {
        return det == o.det && a == o.a && b == o.b && c == o.c && d == o.d;
    }

    std::string json() const;
    // Stable key over the canonical representative, for use in hash sets.
    std::string key() const;
};

// Point of P^1(R) as a sign-normalized pair (numerator, denominator) of ring
// elements; the first nonzero of (denominator, numerator) is positive.
// Equality is exact cross-product equality.
struct ProjPoint {
    RingElem num, den;

    bool is_infinity() const { return den.is_zero(); }
    double to_double() const { return num.to_double() / den.to_double(); }
};

GroupElem make_group_elem(RingElem a, RingElem b, RingElem c, RingElem d);
GroupElem group_identity(const RingContext& ctx);
GroupElem group_mul(const GroupElem& x, const GroupElem& y);
GroupElem group_inverse(const GroupElem& x);
// Product without determinant re-verification or sign normalization. Only
// for products of alphabet letters, whose entries are non-negative with a
// positive bottom row, so the result is already canonical.
GroupElem group_mul_unchecked(const GroupElem& x, const GroupElem& y);

ProjPoint make_proj(RingElem num, RingElem den);
ProjPoint proj_from_long(const RingContext& ctx, long num, long den);
bool proj_equal(const ProjPoint& p, const ProjPoint& q);
// Strict total order on P^1(R) with infinity greatest.
int proj_compare(const ProjPoint& p, const ProjPoint& q);

ProjPoint moebius_apply(const GroupElem& g, const ProjPoint& p);
double moebius_apply_float(const GroupElem& g, double x);
// det(g)/(cx+d)^2 at the embedded entries.
double derivative_float(const GroupElem& g, double x);
double derivative_abs(const GroupElem& g, double x);

struct Generators {
    GroupElem T, S, U, Q;
};
Generators generators(const RingContext& ctx);

// g_{q,k} = [[s(k), -s(k+1)], [-s(k-1), s(k)]]; periodic with period q and
// satisfying Q g_k = g_{q-k} Q.
GroupElem branch_element(const RingContext& ctx, long k);

// The q-1 inverse branches in the fixed order
// g_{(q+1)/2}^{-1}, ..., g_{q-1}^{-1}, (Q g_{(q+1)/2})^{-1}, ..., (Q g_{q-1})^{-1}.
std::vector<GroupElem> alphabet(const RingContext& ctx);

struct Word {
    std::vector<int> letters;

    size_t size() const { return letters.size(); }
    std::string serialize() const;  // "0,3,1"
};
Word word_parse(const std::string& text);

inline constexpr int kDefaultWordCap = 16;

// Number of words (q-1)^n; throws CapExceeded when n exceeds the cap, with a
// size estimate in the message.
std::uint64_t word_count(const RingContext& ctx, int n, int cap = kDefaultWordCap);
// Word at position `index` in lexicographic letter order.
Word word_at(const RingContext& ctx, int n, std::uint64_t index);

GroupElem word_compose(const RingContext& ctx, const Word& w);

// Deterministic lexicographic stream over all (q-1)^n words; visit receives
// (index, word). Supports disjoint index sub-ranges for parallel map-reduce.
template <typename F>
void words_iter(const RingContext& ctx, int n, F&& visit, int cap = kDefaultWordCap) {
    const std::uint64_t total = word_count(ctx, n, cap);
    Word w;
    w.letters.assign(static_cast<size_t>(n), 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        visit(idx, const_cast<const Word&>(w));
        for (int pos = n - 1; pos >= 0; --pos) {
            if (++w.letters[pos] < static_cast<int>(ctx.q() - 1)) break;
            w.letters[pos] = 0;
        }
    }
}

// Lexicographic stream of exact compositions of all words of length n;
// visit receives (word, composed element).
template <typename F>
void for_each_word_elem(const RingContext& ctx, int n, F&& visit, int cap = kDefaultWordCap) {
    word_count(ctx, n, cap);  // cap check
    const std::vector<GroupElem> letters = alphabet(ctx);
    Word w;
    std::vector<GroupElem> stack;
    stack.push_back(group_identity(ctx));
    auto descend = [&](auto&& self) -> void {
        if (static_cast<int>(w.size()) == n) {
            visit(const_cast<const Word&>(w), stack.back());
            return;
        }
        for (int letter = 0; letter < static_cast<int>(letters.size()); ++letter) {
            w.letters.push_back(letter);
            stack.push_back(group_mul_unchecked(stack.back(), letters[static_cast<size_t>(letter)]));
            self(self);
            stack.pop_back();
            w.letters.pop_back();
        }
    };
    descend(descend);
}

}  // namespace hecke
