#pragma once

#include "qsign/polynomial.hpp"
#include "qsign/rational.hpp"

#include <string>
#include <vector>

namespace qsign {

struct ProductFactor {
    long m = 0;  // 1 <= m < n
    long n = 0;  // modulus of the factor (q^m, q^{n-m}; q^n)
    long u = 0;  // nonzero integer exponent

    bool operator==(const ProductFactor&) const = default;
};

/* The product prod_i (q^{m_i}, q^{n_i-m_i}; q^{n_i})_inf^{u_i} together
 * with L = lcm(n_i) and Omega = sum u_i (12 m_i^2/n_i - 12 m_i + 2 n_i). */
class ProductSpec {
  public:
    ProductSpec() = default;
    explicit ProductSpec(std::vector<ProductFactor> factors);

    /* "1:5:1,2:5:-1", a preset name (Q5, Q6, Q8, Q10, Q12, G3), or
     * BORWEIN:p for odd p >= 3. */
    static ProductSpec parse(const std::string& text);

    const std::vector<ProductFactor>& factors() const { return factors_; }
    long L() const { return L_; }
    const Rational& Omega() const { return Omega_; }
    std::size_t size() const { return factors_.size(); }

    /* Same factors with every exponent negated (the reciprocal product). */
    ProductSpec inverse() const;

    std::string to_string() const;
    bool operator==(const ProductSpec& o) const { return factors_ == o.factors_; }

  private:
    std::vector<ProductFactor> factors_;
    long L_ = 1;
    Rational Omega_ = 0;
};

/* Dense truncated q-series, coefficient of q^j at index j. */
using QSeries = std::vector<Rational>;

QSeries series_mul(const QSeries& a, const QSeries& b, long order);
/* Requires constant term 1. */
QSeries series_inverse(const QSeries& a, long order);
/* Formal log; requires constant term 1. */
QSeries series_log(const QSeries& a, long order);
/* Formal exp; requires constant term 0. */
QSeries series_exp(const QSeries& a, long order);

/* G(q) truncated at q^order using only integer arithmetic on the
 * binomial factors; negative exponents via exact series inversion. */
QSeries expand_integer_product(const ProductSpec& spec, long order);

/* Exact coefficients l_j of log G(q); l_0 = 0 and j*l_j is an integer. */
QSeries log_weights(const ProductSpec& spec, long order);
/* The integers j*l_j (index j), used by the expansion recurrences. */
std::vector<Integer> log_weights_scaled(const ProductSpec& spec, long order);

/* Truncated series for G(q)^delta with coefficients that are exact
 * polynomials in delta. */
struct DeltaSeries {
    ProductSpec spec;
    long order = 0;
    std::vector<DeltaPolynomial> coeffs;  // coeffs[n] = c_delta(n)

    QSeries eval_at(const Rational& delta) const;
};

/* Computes G^delta = exp(delta * log G) symbolically: coefficient n has
 * polynomial degree <= n, and evaluation at an integer d reproduces the
 * integer-product expansion with exponents scaled by d. */
DeltaSeries expand_real_power(const ProductSpec& spec, long order);

/* Exact c_delta(0..order) at a fixed rational delta, without building
 * the polynomials (quadratic-time recurrence). */
QSeries coefficients_at(const ProductSpec& spec, const Rational& delta, long order);

}  // namespace qsign
