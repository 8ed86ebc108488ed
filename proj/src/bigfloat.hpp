#pragma once

#include "rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <utility>

namespace crn {

// Owning MPFR value with a per-object precision. Results take the larger
// precision of the operands, so no process-wide default is consulted and
// values can be used from several threads at once.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(double x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    BigFloat(const Rational& q, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // log2 |x|, -inf for zero.
    double log2_abs() const {
        if (mpfr_zero_p(v_)) return -1e300;
        long e = 0;
        double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return std::log2(std::abs(m)) + static_cast<double>(e);
    }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_add); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_sub); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_mul); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_div); }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
    BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
    BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
    BigFloat& operator/=(const BigFloat& b) { return *this = *this / b; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);  // a macro in some MPFR versions
        return r;
    }
    friend BigFloat exp(const BigFloat& a) { return un(a, mpfr_exp); }
    friend BigFloat log(const BigFloat& a) { return un(a, mpfr_log); }
    friend BigFloat expm1(const BigFloat& a) { return un(a, mpfr_expm1); }
    // x^y for x > 0.
    friend BigFloat pow(const BigFloat& x, const BigFloat& y) { return bin(x, y, mpfr_pow); }

private:
    using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using UnOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
    static BigFloat bin(const BigFloat& a, const BigFloat& b, BinOp op) {
        BigFloat r(std::max(a.prec(), b.prec()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat un(const BigFloat& a, UnOp op) {
        BigFloat r(a.prec());
        op(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

}  // namespace crn
