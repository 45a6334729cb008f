#include "hecke/group.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

void negate_all(RingElem& a, RingElem& b, RingElem& c, RingElem& d) {
    a = -a;
    b = -b;
    c = -c;
    d = -d;
}

}  // namespace

GroupElem make_group_elem(RingElem a, RingElem b, RingElem c, RingElem d) {
    const RingElem det = a * d - b * c;
    int dv;
    if (det.is_one()) {
        dv = 1;
    } else if ((-det).is_one()) {
        dv = -1;
    } else {
        throw std::invalid_argument("matrix determinant is not +-1: " + det.json());
    }
    // Canonical sign: first nonzero of (c, d, a, b) positive.
    for (const RingElem* e : {&c, &d, &a, &b}) {
        const int s = e->sign();
        if (s == 0) continue;
        if (s < 0) negate_all(a, b, c, d);
        break;
    }
    return GroupElem{std::move(a), std::move(b), std::move(c), std::move(d), dv};
}

GroupElem group_identity(const RingContext& ctx) {
    return make_group_elem(ctx.one(), ctx.zero(), ctx.zero(), ctx.one());
}

GroupElem group_mul(const GroupElem& x, const GroupElem& y) {
    return make_group_elem(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                           x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

GroupElem group_inverse(const GroupElem& x) {
    return make_group_elem(x.d, -x.b, -x.c, x.a);
}

GroupElem group_mul_unchecked(const GroupElem& x, const GroupElem& y) {
    return GroupElem{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                     x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d, x.det * y.det};
}

std::string GroupElem::json() const {
    std::ostringstream os;
    os << "{\"a\":" << a.json() << ",\"b\":" << b.json() << ",\"c\":" << c.json()
       << ",\"d\":" << d.json() << ",\"det\":" << det << "}";
    return os.str();
}

std::string GroupElem::key() const { return json(); }

ProjPoint make_proj(RingElem num, RingElem den) {
    if (num.is_zero() && den.is_zero()) throw std::invalid_argument("(0 : 0) is not a projective point");
    for (const RingElem* e : {&den, &num}) {
        const int s = e->sign();
        if (s == 0) continue;
        if (s < 0) {
            num = -num;
            den = -den;
        }
        break;
    }
    return ProjPoint{std::move(num), std::move(den)};
}

ProjPoint proj_from_long(const RingContext& ctx, long num, long den) {
    return make_proj(ctx.from_int(num), ctx.from_int(den));
}

bool proj_equal(const ProjPoint& p, const ProjPoint& q) {
    return (p.num * q.den - q.num * p.den).is_zero();
}

int proj_compare(const ProjPoint& p, const ProjPoint& q) {
    const bool pi = p.is_infinity(), qi = q.is_infinity();
    if (pi && qi) return 0;
    if (pi) return 1;
    if (qi) return -1;
    // Normalized denominators are positive, so the cross product decides.
    return (p.num * q.den - q.num * p.den).sign();
}

ProjPoint moebius_apply(const GroupElem& g, const ProjPoint& p) {
    return make_proj(g.a * p.num + g.b * p.den, g.c * p.num + g.d * p.den);
}

double moebius_apply_float(const GroupElem& g, double x) {
    const double den = g.c.to_double() * x + g.d.to_double();
    if (den == 0.0) throw std::domain_error("moebius image is infinity");
    return (g.a.to_double() * x + g.b.to_double()) / den;
}

double derivative_float(const GroupElem& g, double x) {
    const double den = g.c.to_double() * x + g.d.to_double();
    if (den == 0.0) throw std::domain_error("derivative pole at x = -d/c");
    return static_cast<double>(g.det) / (den * den);
}

double derivative_abs(const GroupElem& g, double x) { return std::abs(derivative_float(g, x)); }

Generators generators(const RingContext& ctx) {
    const RingElem zero = ctx.zero(), one = ctx.one(), lam = ctx.lambda();
    Generators gen{
        make_group_elem(one, lam, zero, one),        // T
        make_group_elem(zero, one, -one, zero),      // S
        make_group_elem(lam, -one, one, zero),       // U = T*S
        make_group_elem(zero, one, one, zero),       // Q
    };
    return gen;
}

GroupElem branch_element(const RingContext& ctx, long k) {
    return make_group_elem(ctx.chebyshev_s(k), -ctx.chebyshev_s(k + 1),
                           -ctx.chebyshev_s(k - 1), ctx.chebyshev_s(k));
}

std::vector<GroupElem> alphabet(const RingContext& ctx) {
    const long q = ctx.q();
    const GroupElem Q = generators(ctx).Q;
    std::vector<GroupElem> letters;
    letters.reserve(static_cast<size_t>(q - 1));
    for (long k = (q + 1) / 2; k <= q - 1; ++k) {
        letters.push_back(group_inverse(branch_element(ctx, k)));
    }
    for (long k = (q + 1) / 2; k <= q - 1; ++k) {
        letters.push_back(group_inverse(group_mul(Q, branch_element(ctx, k))));
    }
    return letters;
}

std::string Word::serialize() const {
    std::ostringstream os;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ',';
        os << letters[i];
    }
    return os.str();
}

Word word_parse(const std::string& text) {
    Word w;
    if (text.empty()) return w;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        w.letters.push_back(std::stoi(tok));
    }
    return w;
}

std::uint64_t word_count(const RingContext& ctx, int n, int cap) {
    if (n < 0) throw std::invalid_argument("word length must be >= 0");
    if (n > cap) {
        const double est = std::pow(static_cast<double>(ctx.q() - 1), n);
        std::ostringstream os;
        os << "word length " << n << " exceeds enumeration cap " << cap << " (about " << est
           << " words)";
        throw CapExceeded(os.str());
    }
    std::uint64_t total = 1;
    const std::uint64_t base = static_cast<std::uint64_t>(ctx.q() - 1);
    for (int i = 0; i < n; ++i) {
        if (total > UINT64_MAX / base) throw CapExceeded("word count overflows 64 bits");
        total *= base;
    }
    return total;
}

Word word_at(const RingContext& ctx, int n, std::uint64_t index) {
    const std::uint64_t base = static_cast<std::uint64_t>(ctx.q() - 1);
    Word w;
    w.letters.assign(static_cast<size_t>(n), 0);
    for (int pos = n - 1; pos >= 0; --pos) {
        w.letters[pos] = static_cast<int>(index % base);
        index /= base;
    }
    return w;
}

GroupElem word_compose(const RingContext& ctx, const Word& w) {
    const std::vector<GroupElem> letters = alphabet(ctx);
    GroupElem acc = group_identity(ctx);
    for (int idx : w.letters) {
        if (idx < 0 || idx >= static_cast<int>(letters.size()))
            throw std::invalid_argument("letter index out of range");
        acc = group_mul(acc, letters[static_cast<size_t>(idx)]);
    }
    return acc;
}

}  // namespace hecke
