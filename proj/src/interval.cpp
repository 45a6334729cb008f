#include "hecke/interval.hpp"

#include <algorithm>
#include <cmath>

namespace hecke {

Interval Interval::from_mpz(const mpz_class& z, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z(r.lo.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi.get(), z.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_long(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi.get(), v, MPFR_RNDU);
    return r;
}

Interval Interval::two_cos_pi_ratio(long k, long q, mpfr_prec_t prec) {
    // theta = k*pi/q lies in (0, pi) where cos is strictly decreasing.
    BigFloat pi_lo(prec), pi_hi(prec), t_lo(prec), t_hi(prec);
    mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
    mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
    mpfr_mul_si(t_lo.get(), pi_lo.get(), k, MPFR_RNDD);
    mpfr_div_si(t_lo.get(), t_lo.get(), q, MPFR_RNDD);
    mpfr_mul_si(t_hi.get(), pi_hi.get(), k, MPFR_RNDU);
    mpfr_div_si(t_hi.get(), t_hi.get(), q, MPFR_RNDU);

    Interval r(prec);
    mpfr_cos(r.lo.get(), t_hi.get(), MPFR_RNDD);
    mpfr_cos(r.hi.get(), t_lo.get(), MPFR_RNDU);
    mpfr_mul_2ui(r.lo.get(), r.lo.get(), 1, MPFR_RNDD);
    mpfr_mul_2ui(r.hi.get(), r.hi.get(), 1, MPFR_RNDU);
    return r;
}

int Interval::definite_sign() const {
    if (mpfr_sgn(lo.get()) > 0) return 1;
    if (mpfr_sgn(hi.get()) < 0) return -1;
    return 0;
}

double Interval::mid_double() const {
    BigFloat m(prec());
    mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return mpfr_get_d(m.get(), MPFR_RNDN);
}

double Interval::width_double() const {
    BigFloat w(prec());
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool Interval::unique_integer(mpz_class& out) const {
    mpz_class zl, zh;
    mpfr_get_z(zl.get_mpz_t(), lo.get(), MPFR_RNDU);  // ceil(lo)
    mpfr_get_z(zh.get_mpz_t(), hi.get(), MPFR_RNDD);  // floor(hi)
    if (zl != zh) return false;
    out = zl;
    return true;
}

double Interval::dist_to_nearest_int() const {
    BigFloat m(prec()), n(prec());
    mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    mpfr_round(n.get(), m.get());
    mpfr_sub(m.get(), m.get(), n.get(), MPFR_RNDN);
    mpfr_abs(m.get(), m.get(), MPFR_RNDN);
    return mpfr_get_d(m.get(), MPFR_RNDU);
}

Interval iv_add(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
    mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
    return r;
}

Interval iv_sub(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
    mpfr_sub(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
    return r;
}

Interval iv_neg(const Interval& a) {
    Interval r(a.prec());
    mpfr_neg(r.lo.get(), a.hi.get(), MPFR_RNDD);
    mpfr_neg(r.hi.get(), a.lo.get(), MPFR_RNDU);
    return r;
}

Interval iv_mul(const Interval& a, const Interval& b) {
    const mpfr_prec_t prec = std::max(a.prec(), b.prec());
    Interval r(prec);
    BigFloat t(prec);
    mpfr_srcptr as[2] = {a.lo.get(), a.hi.get()};
    mpfr_srcptr bs[2] = {b.lo.get(), b.hi.get()};
    bool first = true;
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo.get()) < 0) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi.get()) > 0) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval iv_poly_eval(const std::vector<mpz_class>& coeffs, const Interval& x) {
    const mpfr_prec_t prec = x.prec();
    if (coeffs.empty()) return Interval(prec);
    Interval acc = Interval::from_mpz(coeffs.back(), prec);
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
        acc = iv_add(iv_mul(acc, x), Interval::from_mpz(*it, prec));
    }
    return acc;
}

}  // namespace hecke
