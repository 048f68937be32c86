#pragma once

#include "qsign/modular.hpp"
#include "qsign/qseries.hpp"
#include "qsign/real.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qsign {

enum class CertifiedSign { undetermined, plus, minus };

struct Estimate {
    long n = 0;
    double delta = 0;
    long N = 0;
    Real main;
    Real imag_residue;
    Real bound;
    CertifiedSign sign = CertifiedSign::undetermined;
};

/* N = ceil(sqrt(4 pi (n + delta Omega / 24))); requires
 * 24 n + delta Omega > 0. */
long default_N(const ProductSpec& spec, const Rational& delta, long n);

/* Caches the per-(h,k) data the summation reuses across n: the exact
 * frame, the branch-corrected total phase, and log Pi_{h,k} split into
 * modulus and argument-in-units-of-pi (exact, since every 1-zeta has a
 * rational argument over pi). */
class FrameTable {
  public:
    explicit FrameTable(ProductSpec spec, mpfr_prec_t prec = 192);

    struct Entry {
        ModularFrame frame;
        long branch = 0;         // the 2-pi defect integer of the frame's log
        Rational phase;          // phase_total + 2*branch (units of pi)
        Rational pi_arg;         // arg(Pi_{h,k})/ (pi*delta): exact rational
        Real pi_log_abs_unit;    // log|Pi_{h,k}| / delta
    };

    const Entry& get(long h, long k);
    const ProductSpec& spec() const { return spec_; }
    mpfr_prec_t prec() const { return prec_; }

  private:
    long compute_branch(const ModularFrame& fr);

    ProductSpec spec_;
    mpfr_prec_t prec_;
    std::map<std::pair<long, long>, Entry> cache_;
};

/* The Bessel main term: triple sum over residue classes with Delta > 0,
 * k <= N in the class, and coprime 0 <= h < k in the class.  Returns
 * real part and imaginary residue.  delta must satisfy the growth
 * condition. */
struct MainTermResult {
    Real value;
    Real imag_residue;
    bool empty_sum = false;
};

MainTermResult main_term(FrameTable& frames, const Rational& delta, long n, long N);

/* Certified upper bound for |E_{delta,N}(n)|: the two displayed sums,
 * with every infinite Pochhammer factor replaced by a rigorous upper
 * bound and a final multiplicative slack of (1 + 2^-96). */
Real error_bound(FrameTable& frames, const Rational& delta, long n, long N);

/* default_N + main_term + error_bound + sign certification.  Negative
 * delta is rewritten as the inverse product at -delta. */
Estimate estimate_coefficient(const ProductSpec& spec, const Rational& delta, long n,
                              mpfr_prec_t prec = 192);

/* Relative disagreement of the two sides of the modular transformation
 * for G^delta at q = exp(2 pi i h/k - 2 pi z / k^2).  The left side is
 * the series exp(delta * log-series), the right side the frame data
 * with the z-dependent Pochhammer tails; order controls the series
 * truncation. */
Real transformation_check(const ProductSpec& spec, const Rational& delta, long h, long k,
                          const Real& z_re, const Real& z_im, long order,
                          mpfr_prec_t prec = 256);

}  // namespace qsign
