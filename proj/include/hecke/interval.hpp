#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <vector>

namespace hecke {

// RAII wrapper for a single mpfr_t value.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

  private:
    mpfr_t v_;
};

// Closed interval [lo, hi] guaranteed to enclose the represented real number.
// All operations round outward, so enclosures stay rigorous at any precision.
struct Interval {
    BigFloat lo, hi;

    explicit Interval(mpfr_prec_t prec) : lo(prec), hi(prec) {}

    mpfr_prec_t prec() const { return mpfr_get_prec(lo.get()); }

    static Interval from_mpz(const mpz_class& z, mpfr_prec_t prec);
    static Interval from_long(long v, mpfr_prec_t prec);
    // Enclosure of 2*cos(k*pi/q) for 0 < k < q.
    static Interval two_cos_pi_ratio(long k, long q, mpfr_prec_t prec);

    // +1 if lo > 0, -1 if hi < 0, 0 if the enclosure straddles or touches zero.
    int definite_sign() const;
    bool contains_zero() const { return definite_sign() == 0; }
    double mid_double() const;
    double width_double() const;
    // Unique integer contained in the interval, if there is exactly one.
    bool unique_integer(mpz_class& out) const;
    // Distance from the midpoint to the nearest integer (ambiguity measure).
    double dist_to_nearest_int() const;
};

Interval iv_add(const Interval& a, const Interval& b);
Interval iv_sub(const Interval& a, const Interval& b);
Interval iv_neg(const Interval& a);
Interval iv_mul(const Interval& a, const Interval& b);

// Horner evaluation of an integer polynomial (constant coefficient first).
Interval iv_poly_eval(const std::vector<mpz_class>& coeffs, const Interval& x);

}  // namespace hecke
