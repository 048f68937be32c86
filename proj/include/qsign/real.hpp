#pragma once

#include <mpfr.h>

#include "qsign/rational.hpp"

#include <string>

namespace qsign {

/* Arbitrary-precision real backed by MPFR, round-to-nearest.  The
 * precision is fixed per value; binary operations widen to the larger
 * operand precision. */
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 192) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(double x, mpfr_prec_t prec = 192);
    static Real of(long x, mpfr_prec_t prec = 192);
    static Real of(const Rational& x, mpfr_prec_t prec = 192);
    static Real of(const Integer& x, mpfr_prec_t prec = 192);
    static Real pi(mpfr_prec_t prec = 192);
    static Real euler_gamma(mpfr_prec_t prec = 192);

    Real with_prec(mpfr_prec_t prec) const {
        Real r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(int digits = 20) const;
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    Real operator-() const;
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    Real& operator+=(const Real& b) { *this = *this + b; return *this; }
    Real& operator-=(const Real& b) { *this = *this - b; return *this; }
    Real& operator*=(const Real& b) { *this = *this * b; return *this; }
    Real& operator/=(const Real& b) { *this = *this / b; return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend Real abs(const Real& a);
    friend Real sqrt(const Real& a);
    friend Real exp(const Real& a);
    friend Real log(const Real& a);
    friend Real cos(const Real& a);
    friend Real sin(const Real& a);
    friend Real atan2(const Real& y, const Real& x);
    friend Real pow(const Real& a, const Real& b);
    /* remainder of a/b with the sign of a (mpfr_fmod) */
    friend Real fmod(const Real& a, const Real& b);

  private:
    mpfr_t v_;
};

/* Complex value as a pair of Reals; only what the summation needs. */
struct Complex {
    Real re, im;

    explicit Complex(mpfr_prec_t prec = 192) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator*(const Complex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex scaled(const Real& s) const { return {re * s, im * s}; }
    Real abs2() const { return re * re + im * im; }
};

Complex operator-(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Real cabs(const Complex& z);
Complex cexp(const Complex& z);
/* principal branch */
Complex clog(const Complex& z);

/* exp(i*pi*phase) for rational phase, reduced mod 2 exactly first. */
Complex unit_phase(const Rational& phase, mpfr_prec_t prec);

/* exp(x + i*pi*(rational + t)) where t is a real phase-in-units-of-pi. */
Complex polar_exp(const Real& magnitude_log, const Rational& phase_pi, const Real& extra_pi,
                  mpfr_prec_t prec);

}  // namespace qsign
