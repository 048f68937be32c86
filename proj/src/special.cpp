#include "qsign/special.hpp"

#include <stdexcept>

namespace qsign {

Real bessel_i1(const Real& z, mpfr_prec_t prec) {
    if (z.sign() < 0) throw std::domain_error("bessel_i1: z must be >= 0");
    if (prec < 53) throw std::domain_error("bessel_i1: precision must be >= 53");
    mpfr_prec_t wp = prec + 32;
    Real half = z.with_prec(wp) / Real::of(2L, wp);
    Real h2 = half * half;
    Real term = half;  // n = 0 term
    Real sum = term;
    Real eps = Real::of(1L, wp);
    mpfr_mul_2si(eps.raw(), eps.raw(), -(prec + 16), MPFR_RNDN);
    for (long n = 1;; ++n) {
        term = term * h2 / Real::of(n * (n + 1), wp);
        sum += term;
        if (term < eps * sum) break;
        if (n > 1000000) throw std::runtime_error("bessel_i1: series did not converge");
    }
    Real out(prec);
    mpfr_set(out.raw(), sum.raw(), MPFR_RNDN);
    return out;
}

Real bessel_sum_bound(const Real& x, long y, int start, mpfr_prec_t prec) {
    if (start != 2 && start != 3) throw std::domain_error("bessel_sum_bound: start must be 2 or 3");
    if (y <= start) throw std::domain_error("bessel_sum_bound: need y > start");
    if (!(x > Real::of(0L, prec))) throw std::domain_error("bessel_sum_bound: need x > 0");
    Real gamma = Real::euler_gamma(prec);
    Real ly = log(Real::of(y, prec));
    Real half_y = Real::of(Rational(1, 2 * y), prec);
    if (start == 2)
        return x * ly + Real::of(2L, prec) * bessel_i1(x, prec) -
               (Real::of(2L, prec) - gamma - half_y) * x;
    return x * ly + Real::of(3L, prec) * bessel_i1(Real::of(2L, prec) * x / Real::of(3L, prec), prec) -
           (Real::of(Rational(5, 2), prec) - gamma - half_y) * x;
}

Real ratio_M(const Real& s, const Real& t, mpfr_prec_t prec) {
    if (!(t >= Real::of(3L, prec))) throw std::domain_error("ratio_M: monotone only for t >= 3");
    if (!(s > Real::of(0L, prec))) throw std::domain_error("ratio_M: need s > 0");
    return (t * log(t) + Real::of(2L, prec) * bessel_i1(t, prec) + s * t) /
           bessel_i1(Real::of(2L, prec) * t, prec);
}

Real ratio_Mhat(const Real& s, const Real& t, mpfr_prec_t prec) {
    if (!(t >= Real::of(5L, prec))) throw std::domain_error("ratio_Mhat: monotone only for t >= 5");
    if (!(s > Real::of(0L, prec))) throw std::domain_error("ratio_Mhat: need s > 0");
    return (t * log(t) +
            Real::of(3L, prec) * bessel_i1(Real::of(2L, prec) * t / Real::of(3L, prec), prec) +
            s * t) /
           bessel_i1(t, prec);
}

}  // namespace qsign
