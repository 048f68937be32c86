#pragma once

#include "qsign/qseries.hpp"
#include "qsign/rational.hpp"

#include <set>
#include <utility>
#include <vector>

namespace qsign {

/* Dedekind sum s(d,c) = sum_{n mod c} ((dn/c))((n/c)), exact.  Uses the
 * O(c) definition for small c and the reciprocity recursion above that
 * (falling back to the definition when gcd(d,c) > 1). */
Rational dedekind_sum(const Integer& d, const Integer& c);

/* lambda = ceil(m h / gcd(n,k)) and its fractional complement
 * lambda* = lambda - m h / gcd(n,k) in [0,1). */
std::pair<Integer, Rational> lambda_pair(long m, long n, long h, long k);

/* Upsilon: 0 at 0, x on (0,1/2], 1-x on (1/2,1). */
Rational upsilon(const Rational& x);

/* Everything (h,k)-dependent that one summand of the coefficient
 * formula needs, all exact.  Phases are rational multiples of pi:
 * omega_{h,k} = exp(i pi omega_phase), Theta_{h,k} = exp(i pi
 * theta_phase), and the prefactor i^{sum u}(-1)^{sum u lambda} =
 * exp(i pi front_phase). */
struct FrameFactor {
    long m, n, u;
    long d;               // gcd(n, k)
    Integer lambda;
    Rational lambda_star; // in [0,1)
    long h_prime;         // 0 <= h' < k/d, h' h n/d == -1 (mod k/d)
    Integer b;            // (h' h n/d + 1)/(k/d)
    Rational qhat1_exp;   // qhat1 = exp(2 pi qhat1_exp), = -lambda* d^2/n
    Rational qhat2_exp;   // qhat2 = exp(2 pi qhat2_exp), = -d^2/n
    Rational zeta_exp;    // for lambda*=0: root of unity exponent in (0,1)
};

struct ModularFrame {
    long h = 0, k = 1;
    std::vector<FrameFactor> factors;
    std::vector<std::size_t> I0, I1, I0_plus, I0_minus;
    Rational Delta;
    Rational omega_phase;
    Rational theta_phase;
    Rational front_phase;

    Rational phase_total() const { return omega_phase + theta_phase + front_phase; }
};

/* Requires 0 <= h < k and gcd(h,k) = 1. */
ModularFrame build_frame(const ProductSpec& spec, long h, long k);

/* Delta(h,k) alone, defined for any residue pair (no coprimality). */
Rational frame_delta(const ProductSpec& spec, long h, long k);

using ResiduePair = std::pair<long, long>;  // (varkappa, kappa)

struct ResidueClasses {
    std::vector<ResiduePair> le0;  // Delta(vk,kap) <= 0
    std::vector<ResiduePair> gt0;  // Delta(vk,kap) > 0
};

/* All pairs 0 <= vk < kap <= L, partitioned by the sign of Delta. */
ResidueClasses classify_residue_pairs(const ProductSpec& spec);

struct GrowthCheck {
    bool ok = true;
    ResiduePair violating{0, 0};
};

/* The growth inequality min_i Upsilon(lambda*_i) d_i^2/n_i >=
 * delta Delta(vk,kap)/24 over every class with Delta > 0; for an
 * interval the upper endpoint is used.  delta must be positive. */
GrowthCheck check_growth_condition(const ProductSpec& spec, const Rational& delta);
GrowthCheck check_growth_condition(const ProductSpec& spec, const RationalInterval& delta);

struct GrowthRatio {
    Rational value;  // max Delta(vk,kap)/kap^2 (the square of max sqrt(Delta)/k)
    std::vector<std::tuple<long, long, long>> witnesses;  // (vk, kap, k=kap)
    bool empty = false;  // no class with Delta > 0
};

GrowthRatio max_growth_ratio(const ProductSpec& spec);

}  // namespace qsign
