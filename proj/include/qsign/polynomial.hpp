#pragma once

#include "qsign/rational.hpp"

#include <vector>

namespace qsign {

/* Univariate polynomial in the exponent delta, exact rational
 * coefficients in ascending degree with trailing zeros trimmed. */
class DeltaPolynomial {
  public:
    DeltaPolynomial() = default;
    explicit DeltaPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static DeltaPolynomial constant(const Rational& v) {
        return DeltaPolynomial(std::vector<Rational>{v});
    }

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /* -1 for the zero polynomial. */
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    Rational eval(const Rational& x) const;
    DeltaPolynomial derivative() const;

    /* Coefficients of p(center + t) as a polynomial in t. */
    std::vector<Rational> taylor_shift(const Rational& center) const;

    DeltaPolynomial& operator+=(const DeltaPolynomial& o);
    DeltaPolynomial& mul_scalar(const Rational& s);
    /* Multiply by delta^k (shift up by k degrees). */
    DeltaPolynomial& shift_up(long k);

    bool operator==(const DeltaPolynomial& o) const { return c_ == o.c_; }

    std::string to_string() const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/* Rigorous enclosure of {p(x) : x in iv}: the result contains the true
 * range and exceeds its width by at most tol.  Adaptive bisection; a
 * subinterval where p' has constant sign contributes its exact endpoint
 * values, elsewhere a Taylor-remainder enclosure about the midpoint is
 * used. */
RationalInterval poly_range_over_interval(const DeltaPolynomial& p, const RationalInterval& iv,
                                          const Rational& tol);

/* Total sign changes of the Sturm chain of p at x (standard count;
 * zero entries skipped). */
long sturm_variations(const std::vector<std::vector<Integer>>& chain, const Rational& x);

std::vector<std::vector<Integer>> sturm_chain(const DeltaPolynomial& p);

/* Number of distinct real roots in (a, b]. */
long count_roots(const DeltaPolynomial& p, const Rational& a, const Rational& b);

/* Disjoint isolating intervals of width <= width, one real root each,
 * covering all roots of p inside iv.  Throws std::domain_error for the
 * zero polynomial. */
std::vector<RationalInterval> isolate_real_roots(const DeltaPolynomial& p,
                                                 const RationalInterval& iv,
                                                 const Rational& width);

}  // namespace qsign
