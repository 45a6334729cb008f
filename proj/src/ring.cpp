#include "hecke/ring.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

constexpr mpfr_prec_t kSignStartPrec = 128;
constexpr mpfr_prec_t kSignMaxPrec = 8192;
constexpr mpfr_prec_t kMinpolyStartPrec = 256;
constexpr mpfr_prec_t kMinpolyMaxPrec = 16384;

long gcd_long(long a, long b) {
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

std::vector<mpz_class> chebyshev_like_poly(long q) {
    std::vector<mpz_class> prev{0};  // p_0
    std::vector<mpz_class> cur{1};   // p_1
    for (long k = 1; k < q; ++k) {
        std::vector<mpz_class> next(cur.size() + 1, mpz_class(0));
        for (size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
        for (size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;  // p_q
}

bool poly_divides_monic(const std::vector<mpz_class>& divisor, const std::vector<mpz_class>& dividend) {
    if (divisor.empty() || divisor.back() != 1) throw std::invalid_argument("divisor must be monic");
    std::vector<mpz_class> rem = dividend;
    const size_t dd = divisor.size() - 1;
    while (rem.size() > dd) {
        mpz_class lead = rem.back();
        const size_t shift = rem.size() - 1 - dd;
        if (lead != 0) {
            for (size_t i = 0; i <= dd; ++i) rem[shift + i] -= lead * divisor[i];
        }
        rem.pop_back();
    }
    for (const auto& c : rem) {
        if (c != 0) return false;
    }
    return true;
}

RingContext::RingContext(long q, mpfr_prec_t default_prec) : q_(q), default_prec_(default_prec) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be odd and >= 3");

    std::vector<long> conj;
    for (long k = 1; k < q; k += 2) {
        if (gcd_long(k, q) == 1) conj.push_back(k);
    }
    degree_ = static_cast<int>(conj.size());

    const std::vector<mpz_class> pq = chebyshev_like_poly(q);

    for (mpfr_prec_t prec = kMinpolyStartPrec;; prec *= 2) {
        if (prec > kMinpolyMaxPrec)
            throw PrecisionExhausted("minpoly coefficient rounding did not stabilize for q=" + std::to_string(q));

        // Monic product over the conjugate roots, with rigorous enclosures.
        std::vector<Interval> poly;
        poly.push_back(Interval::from_long(1, prec));
        for (long k : conj) {
            const Interval root = Interval::two_cos_pi_ratio(k, q, prec);
            std::vector<Interval> next(poly.size() + 1, Interval(prec));
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] = iv_add(next[i + 1], poly[i]);
                next[i] = iv_sub(next[i], iv_mul(root, poly[i]));
            }
            poly = std::move(next);
        }

        // Ambiguous rounding (no unique enclosed integer, or midpoint further
        // than 1/4 from it) retries at doubled precision; only the cap fails.
        std::vector<mpz_class> candidate(poly.size());
        bool ok = true;
        for (size_t i = 0; i < poly.size(); ++i) {
            if (!poly[i].unique_integer(candidate[i]) || poly[i].dist_to_nearest_int() > 0.25) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (candidate.back() != 1) continue;
        if (!poly_divides_monic(candidate, pq)) continue;

        // Certified: candidate vanishes at every conjugate enclosure and
        // divides p_q exactly over Z.
        const Interval at_lambda = iv_poly_eval(candidate, lambda_enclosure(prec));
        if (!at_lambda.contains_zero())
            throw PrecisionExhausted("certified minpoly does not enclose zero at lambda");

        minpoly_ = std::move(candidate);
        break;
    }

    lambda_double_ = lambda_enclosure(default_prec_).mid_double();
}

Interval RingContext::lambda_enclosure(mpfr_prec_t prec) const {
    return Interval::two_cos_pi_ratio(1, q_, prec);
}

void RingContext::reduce(std::vector<mpz_class>& c) const {
    const size_t d = static_cast<size_t>(degree_);
    while (c.size() > d) {
        mpz_class lead = c.back();
        const size_t shift = c.size() - 1 - d;
        if (lead != 0) {
            for (size_t i = 0; i <= d; ++i) c[shift + i] -= lead * minpoly_[i];
        }
        c.pop_back();
    }
    c.resize(d, mpz_class(0));
}

RingElem RingContext::zero() const { return from_int(0); }

RingElem RingContext::one() const { return from_int(1); }

RingElem RingContext::from_int(long v) const {
    std::vector<mpz_class> c(static_cast<size_t>(degree_), mpz_class(0));
    c[0] = v;
    return RingElem(this, std::move(c));
}

RingElem RingContext::from_mpz(const mpz_class& v) const {
    std::vector<mpz_class> c(static_cast<size_t>(degree_), mpz_class(0));
    c[0] = v;
    return RingElem(this, std::move(c));
}

RingElem RingContext::from_coeffs(std::vector<mpz_class> coeffs) const {
    reduce(coeffs);
    return RingElem(this, std::move(coeffs));
}

RingElem RingContext::lambda() const {
    std::vector<mpz_class> c{0, 1};
    reduce(c);
    return RingElem(this, std::move(c));
}

RingElem RingContext::chebyshev_s(long k) const {
    if (k < 0) return -chebyshev_s(-k);
    RingElem prev = zero();
    if (k == 0) return prev;
    RingElem cur = one();
    const RingElem lam = lambda();
    for (long i = 1; i < k; ++i) {
        RingElem next = lam * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

void RingElem::require_same_context(const RingElem& o) const {
    if (ctx_ == nullptr || o.ctx_ == nullptr) throw std::invalid_argument("uninitialized ring element");
    if (ctx_ != o.ctx_) throw std::invalid_argument("ring context mismatch");
}

RingElem RingElem::operator+(const RingElem& o) const {
    require_same_context(o);
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] + o.c_[i];
    return RingElem(ctx_, std::move(c));
}

RingElem RingElem::operator-(const RingElem& o) const {
    require_same_context(o);
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] - o.c_[i];
    return RingElem(ctx_, std::move(c));
}

RingElem RingElem::operator-() const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return RingElem(ctx_, std::move(c));
}

RingElem RingElem::operator*(const RingElem& o) const {
    require_same_context(o);
    std::vector<mpz_class> prod(2 * c_.size(), mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    ctx_->reduce(prod);
    return RingElem(ctx_, std::move(prod));
}

bool RingElem::operator==(const RingElem& o) const {
    require_same_context(o);
    return c_ == o.c_;
}

bool RingElem::is_zero() const {
    for (const auto& c : c_) {
        if (c != 0) return false;
    }
    return true;
}

bool RingElem::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i) {
        if (c_[i] != 0) return false;
    }
    return true;
}

Interval RingElem::enclosure(mpfr_prec_t prec) const {
    return iv_poly_eval(c_, ctx_->lambda_enclosure(prec));
}

int RingElem::sign() const {
    if (is_zero()) return 0;
    // Fast path: double evaluation with a rigorous forward error bound. The
    // bound is generous; anything inconclusive falls through to intervals.
    bool fits = true;
    double val = 0.0, mag = 0.0, pw = 1.0;
    const double lam = ctx_->lambda_double();
    for (const auto& c : c_) {
        if (mpz_sizeinbase(c.get_mpz_t(), 2) > 52) {
            fits = false;
            break;
        }
        const double cd = c.get_d();
        val += cd * pw;
        mag += std::abs(cd) * pw;
        pw *= lam;
    }
    if (fits) {
        const double err = mag * (8.0 * static_cast<double>(c_.size()) + 8.0) * 2.220446049250313e-16;
        if (val > err) return 1;
        if (val < -err) return -1;
    }
    for (mpfr_prec_t prec = kSignStartPrec; prec <= kSignMaxPrec; prec *= 2) {
        const int s = enclosure(prec).definite_sign();
        if (s != 0) return s;
    }
    std::ostringstream os;
    os << "sign undecided at precision cap for element " << json();
    throw PrecisionExhausted(os.str());
}

int RingElem::compare(const RingElem& o) const { return (*this - o).sign(); }

double RingElem::to_double() const { return to_double(ctx_->default_precision()); }

double RingElem::to_double(mpfr_prec_t prec) const { return enclosure(prec).mid_double(); }

std::string RingElem::json() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << c_[i].get_str();
    }
    os << ']';
    return os.str();
}

}  // namespace hecke
