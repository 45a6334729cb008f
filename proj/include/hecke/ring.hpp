#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hecke/interval.hpp"

namespace hecke {

class RingContext;

// Element of Z[lambda_q], lambda_q = 2cos(pi/q), stored as an integer
// coefficient vector of length d = deg(minpoly) in the basis 1, lambda, ...,
// lambda^{d-1}. Always kept in canonical (reduced) form, so the zero test is
// exact. The sign is decided against the real embedding at lambda_q by
// interval evaluation with precision doubling; it terminates on every nonzero
// element because 1, lambda, ..., lambda^{d-1} are linearly independent.
class RingElem {
  public:
    RingElem() = default;

    RingElem operator+(const RingElem& o) const;
    RingElem operator-(const RingElem& o) const;
    RingElem operator-() const;
    RingElem operator*(const RingElem& o) const;
    bool operator==(const RingElem& o) const;
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_one() const;
    int sign() const;
    // sign(*this - o)
    int compare(const RingElem& o) const;

    double to_double() const;
    double to_double(mpfr_prec_t prec) const;
    Interval enclosure(mpfr_prec_t prec) const;

    const std::vector<mpz_class>& coeffs() const { return c_; }
    const RingContext& context() const { return *ctx_; }
    bool valid() const { return ctx_ != nullptr; }

    // Coefficients as decimal strings, constant first ("[0,1]" for lambda).
    std::string json() const;

  private:
    friend class RingContext;
    RingElem(const RingContext* ctx, std::vector<mpz_class> c) : ctx_(ctx), c_(std::move(c)) {}
    void require_same_context(const RingElem& o) const;

    const RingContext* ctx_ = nullptr;
    std::vector<mpz_class> c_;
};

// Immutable arithmetic context for Z[lambda_q], q odd >= 3. Construction
// builds the minimal polynomial of 2cos(pi/q) from the numeric product over
// the conjugate roots 2cos(k*pi/q), k odd, gcd(k,q)=1, rounds the
// coefficients to integers and certifies the result by exact divisibility of
// the Chebyshev-type polynomial p_q (p_0=0, p_1=x... p_{k+1}=x*p_k-p_{k-1}).
class RingContext {
  public:
    explicit RingContext(long q, mpfr_prec_t default_prec = 256);

    RingContext(const RingContext&) = delete;
    RingContext& operator=(const RingContext&) = delete;

    long q() const { return q_; }
    int degree() const { return degree_; }
    // Monic, integer, constant coefficient first, length degree()+1.
    const std::vector<mpz_class>& minpoly() const { return minpoly_; }
    mpfr_prec_t default_precision() const { return default_prec_; }

    RingElem zero() const;
    RingElem one() const;
    RingElem from_int(long v) const;
    RingElem from_mpz(const mpz_class& v) const;
    // Full coefficient vector (length <= degree after reduction is enforced).
    RingElem from_coeffs(std::vector<mpz_class> coeffs) const;
    RingElem lambda() const;

    // s(k) = sin(k*pi/q)/sin(pi/q) as an exact ring element, any integer k.
    RingElem chebyshev_s(long k) const;

    double lambda_double() const { return lambda_double_; }
    Interval lambda_enclosure(mpfr_prec_t prec) const;

  private:
    friend class RingElem;
    void reduce(std::vector<mpz_class>& c) const;

    long q_ = 0;
    int degree_ = 0;
    std::vector<mpz_class> minpoly_;
    mpfr_prec_t default_prec_ = 256;
    double lambda_double_ = 0.0;
};

// p_q from the recurrence p_0 = 0, p_1 = 1, p_{k+1} = x*p_k - p_{k-1};
// a monic integer polynomial of degree q-1 with p_q(2cos(pi/q)) = 0.
std::vector<mpz_class> chebyshev_like_poly(long q);

// Exact division of integer polynomials by a monic divisor.
// Returns true iff the remainder is identically zero.
bool poly_divides_monic(const std::vector<mpz_class>& divisor, const std::vector<mpz_class>& dividend);

}  // namespace hecke
