#include "qsign/modular.hpp"

#include <numeric>
#include <stdexcept>

namespace qsign {

namespace {

Rational dedekind_direct(const Integer& d, const Integer& c) {
    Rational s(0);
    Integer r;
    for (Integer n = 1; n < c; ++n) {
        mpz_mod(r.get_mpz_t(), Integer(d * n).get_mpz_t(), c.get_mpz_t());
        if (r == 0) continue;
        s += (Rational(r, c) - Rational(1, 2)) * (Rational(n, c) - Rational(1, 2));
    }
    return s;
}

/* s(d,c) + s(c,d) = -1/4 + (d/c + c/d + 1/(dc))/12 for coprime d,c > 0. */
Rational dedekind_euclid(Integer d, Integer c) {
    Rational s(0);
    int sign = 1;
    while (true) {
        mpz_mod(d.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
        if (d == 0) break;
        if (c < 20000) {
            s += sign * dedekind_direct(d, c);
            break;
        }
        Rational recip = Rational(-1, 4) +
                         (Rational(d, c) + Rational(c, d) + Rational(1, d * c)) / 12;
        s += sign * recip;
        std::swap(d, c);
        sign = -sign;
    }
    return s;
}

}  // namespace

Rational dedekind_sum(const Integer& d, const Integer& c) {
    if (c <= 0) throw std::domain_error("dedekind_sum: c must be positive");
    Integer dr;
    mpz_mod(dr.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
    if (c < 20000) return dedekind_direct(dr, c);
    Integer g;
    mpz_gcd(g.get_mpz_t(), dr.get_mpz_t(), c.get_mpz_t());
    if (g != 1) return dedekind_direct(dr, c);  // recursion needs coprimality
    return dedekind_euclid(dr, c);
}

std::pair<Integer, Rational> lambda_pair(long m, long n, long h, long k) {
    long d = std::gcd(n, k);
    Rational mh_d(m * h, d);
    mh_d.canonicalize();
    Integer lam = ceil_rational(mh_d);
    return {lam, Rational(lam) - mh_d};
}

Rational upsilon(const Rational& x) {
    if (x == 0) return Rational(0);
    if (x <= Rational(1, 2)) return x;
    return 1 - x;
}

namespace {

long mod_inverse(long a, long mod) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), Integer(a).get_mpz_t(), Integer(mod).get_mpz_t()) == 0)
        throw std::logic_error("mod_inverse: not invertible");
    return static_cast<long>(inv.get_si());
}

}  // namespace

ModularFrame build_frame(const ProductSpec& spec, long h, long k) {
    if (k < 1 || h < 0 || h >= k || std::gcd(h == 0 ? k : h, k) != 1)
        throw std::domain_error("build_frame: need 0 <= h < k with gcd(h,k)=1");
    ModularFrame fr;
    fr.h = h;
    fr.k = k;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& f = spec.factors()[i];
        FrameFactor a;
        a.m = f.m;
        a.n = f.n;
        a.u = f.u;
        a.d = std::gcd(f.n, k);
        auto [lam, lst] = lambda_pair(f.m, f.n, h, k);
        a.lambda = lam;
        a.lambda_star = lst;
        long kd = k / a.d;
        if (kd == 1) {
            a.h_prime = 0;
        } else {
            Integer base = Integer(h) * (f.n / a.d);
            base %= kd;
            a.h_prime = (kd - mod_inverse(base.get_si(), kd)) % kd;
        }
        a.b = (Integer(a.h_prime) * h * (f.n / a.d) + 1) / kd;
        a.qhat2_exp = Rational(-a.d * a.d, f.n);
        a.qhat2_exp.canonicalize();
        a.qhat1_exp = -a.lambda_star * Rational(a.d * a.d, f.n);
        fr.Delta += Rational(f.u) * (Rational(12 * a.d * a.d, f.n) * (lst - lst * lst) -
                                     Rational(2 * a.d * a.d, f.n));
        fr.omega_phase +=
            Rational(-2 * f.u) * dedekind_sum(Integer(f.n / a.d) * h, Integer(kd));
        fr.theta_phase +=
            Rational(f.u) * (Rational(f.m * h, k) - Rational(f.m * a.d, k * f.n) +
                             2 * lst * Rational(f.m * a.d, k * f.n) +
                             Rational((lam * lam - lam) * a.h_prime * a.d) / k);
        fr.front_phase += Rational(f.u, 2) + f.u * Rational(lam);
        if (lst == 0) {
            a.zeta_exp = frac_rational(
                Rational(Integer(f.m) * a.d + lam * f.n * a.h_prime * a.d, Integer(k) * f.n));
            if (a.zeta_exp == 0)
                throw std::logic_error("build_frame: root-of-unity exponent is an integer");
            fr.I0.push_back(i);
            (f.u > 0 ? fr.I0_plus : fr.I0_minus).push_back(i);
        } else {
            fr.I1.push_back(i);
        }
        fr.factors.push_back(std::move(a));
    }
    return fr;
}

Rational frame_delta(const ProductSpec& spec, long h, long k) {
    Rational D(0);
    for (const auto& f : spec.factors()) {
        auto [lam, lst] = lambda_pair(f.m, f.n, h, k);
        long d = std::gcd(f.n, k);
        D += Rational(f.u) *
             (Rational(12 * d * d, f.n) * (lst - lst * lst) - Rational(2 * d * d, f.n));
    }
    return D;
}

ResidueClasses classify_residue_pairs(const ProductSpec& spec) {
    ResidueClasses out;
    for (long kap = 1; kap <= spec.L(); ++kap) {
        for (long vk = 0; vk < kap; ++vk) {
            if (frame_delta(spec, vk, kap) > 0)
                out.gt0.emplace_back(vk, kap);
            else
                out.le0.emplace_back(vk, kap);
        }
    }
    return out;
}

GrowthCheck check_growth_condition(const ProductSpec& spec, const Rational& delta) {
    if (delta <= 0) throw std::domain_error("check_growth_condition: delta must be positive");
    GrowthCheck res;
    auto classes = classify_residue_pairs(spec);
    for (const auto& [vk, kap] : classes.gt0) {
        Rational D = frame_delta(spec, vk, kap);
        bool first = true;
        Rational mn(0);
        for (const auto& f : spec.factors()) {
            auto [lam, lst] = lambda_pair(f.m, f.n, vk, kap);
            long d = std::gcd(f.n, kap);
            Rational v = upsilon(lst) * Rational(d * d, f.n);
            if (first || v < mn) { mn = v; first = false; }
        }
        if (mn < delta * D / 24) {
            res.ok = false;
            res.violating = {vk, kap};
            return res;
        }
    }
    return res;
}

GrowthCheck check_growth_condition(const ProductSpec& spec, const RationalInterval& delta) {
    if (delta.lo <= 0)
        throw std::domain_error("check_growth_condition: delta interval must be positive");
    return check_growth_condition(spec, delta.hi);
}

GrowthRatio max_growth_ratio(const ProductSpec& spec) {
    GrowthRatio out;
    auto classes = classify_residue_pairs(spec);
    if (classes.gt0.empty()) {
        out.empty = true;
        return out;
    }
    bool first = true;
    for (const auto& [vk, kap] : classes.gt0) {
        Rational v = frame_delta(spec, vk, kap) / Rational(kap * kap);
        if (first || v > out.value) {
            out.value = v;
            out.witnesses.clear();
            first = false;
        }
        if (v == out.value) out.witnesses.emplace_back(vk, kap, kap);
    }
    return out;
}

}  // namespace qsign
