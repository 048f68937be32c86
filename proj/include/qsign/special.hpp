#pragma once

#include "qsign/real.hpp"

namespace qsign {

/* Modified Bessel function I_{-1}(z) = I_1(z) = sum_{n>=0}
 * (z/2)^{2n+1} / (n! (n+1)!), z >= 0.  All series terms are positive,
 * so plain summation with guard bits is reliable; relative error is
 * below 2^{-prec+8}. */
Real bessel_i1(const Real& z, mpfr_prec_t prec = 192);

/* Upper bound for sum_{start<=k<=y} I_{-1}(2x/k), x > 0, integer
 * y > start:
 *   start=2:  x log y + 2 I_{-1}(x)     - (2   - gamma - 1/(2y)) x
 *   start=3:  x log y + 3 I_{-1}(2x/3)  - (5/2 - gamma - 1/(2y)) x */
Real bessel_sum_bound(const Real& x, long y, int start, mpfr_prec_t prec = 192);

/* M(s,t) = (t log t + 2 I_{-1}(t) + s t) / I_{-1}(2t), decreasing in t
 * for t >= 3 (s > 0). */
Real ratio_M(const Real& s, const Real& t, mpfr_prec_t prec = 192);

/* Mhat(s,t) = (t log t + 3 I_{-1}(2t/3) + s t) / I_{-1}(t), decreasing
 * in t for t >= 5 (s > 0). */
Real ratio_Mhat(const Real& s, const Real& t, mpfr_prec_t prec = 192);

}  // namespace qsign
