#include "qsign/signpattern.hpp"

#include "qsign/special.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qsign {

SignPattern SignPattern::parse(const std::string& text) {
    SignPattern p;
    for (char c : text) {
        switch (c) {
            case '+': p.symbols.push_back(Symbol::plus); break;
            case '-': p.symbols.push_back(Symbol::minus); break;
            case '0': p.symbols.push_back(Symbol::zero); break;
            default: throw std::invalid_argument("SignPattern: expected only +, -, 0");
        }
    }
    if (p.symbols.empty()) throw std::invalid_argument("SignPattern: empty pattern");
    bool nonzero = false;
    for (auto s : p.symbols) nonzero |= (s != Symbol::zero);
    if (!nonzero) throw std::invalid_argument("SignPattern: needs a nonzero symbol");
    return p;
}

std::string SignPattern::to_string() const {
    std::string s;
    for (auto v : symbols)
        s += (v == Symbol::plus ? '+' : (v == Symbol::minus ? '-' : '0'));
    return s;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::strict_match: return "strict";
        case Verdict::weak_match: return "weak";
        case Verdict::zero_match: return "zero";
        default: return "violation";
    }
}

const char* status_name(CertStatus s) {
    switch (s) {
        case CertStatus::proven: return "proven";
        case CertStatus::refuted: return "refuted";
        default: return "inconclusive";
    }
}

namespace {

Verdict verdict_for(Symbol sym, const RationalInterval& range, bool identically_zero) {
    if (identically_zero) return sym == Symbol::zero ? Verdict::zero_match : Verdict::violation;
    if (sym == Symbol::zero) return Verdict::violation;  // only symbolic zeros count
    if (sym == Symbol::plus) {
        if (range.lo > 0) return Verdict::strict_match;
        if (range.lo == 0 && range.hi >= 0) return Verdict::weak_match;
        return Verdict::violation;
    }
    if (range.hi < 0) return Verdict::strict_match;
    if (range.hi == 0 && range.lo <= 0) return Verdict::weak_match;
    return Verdict::violation;
}

/* ---- directed-rounding interval Horner, used to screen large-degree
 * interval-delta rows before the exact path ---- */

struct FInt {
    Real lo, hi;
    explicit FInt(mpfr_prec_t prec) : lo(prec), hi(prec) {}
};

FInt fi_of(const Rational& x, mpfr_prec_t prec) {
    FInt r(prec);
    mpfr_set_q(r.lo.raw(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi.raw(), x.get_mpq_t(), MPFR_RNDU);
    return r;
}

FInt fi_add(const FInt& a, const FInt& b, mpfr_prec_t prec) {
    FInt r(prec);
    mpfr_add(r.lo.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDD);
    mpfr_add(r.hi.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDU);
    return r;
}

FInt fi_mul(const FInt& a, const FInt& b, mpfr_prec_t prec) {
    FInt r(prec);
    mpfr_t c;
    mpfr_init2(c, prec);
    mpfr_mul(r.lo.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDD);
    mpfr_mul(c, a.lo.raw(), b.hi.raw(), MPFR_RNDD);
    mpfr_min(r.lo.raw(), r.lo.raw(), c, MPFR_RNDD);
    mpfr_mul(c, a.hi.raw(), b.lo.raw(), MPFR_RNDD);
    mpfr_min(r.lo.raw(), r.lo.raw(), c, MPFR_RNDD);
    mpfr_mul(c, a.hi.raw(), b.hi.raw(), MPFR_RNDD);
    mpfr_min(r.lo.raw(), r.lo.raw(), c, MPFR_RNDD);
    mpfr_mul(r.hi.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDU);
    mpfr_mul(c, a.lo.raw(), b.hi.raw(), MPFR_RNDU);
    mpfr_max(r.hi.raw(), r.hi.raw(), c, MPFR_RNDU);
    mpfr_mul(c, a.hi.raw(), b.lo.raw(), MPFR_RNDU);
    mpfr_max(r.hi.raw(), r.hi.raw(), c, MPFR_RNDU);
    mpfr_mul(c, a.hi.raw(), b.hi.raw(), MPFR_RNDU);
    mpfr_max(r.hi.raw(), r.hi.raw(), c, MPFR_RNDU);
    mpfr_clear(c);
    return r;
}

FInt fi_horner(const std::vector<FInt>& coeffs, const FInt& x, mpfr_prec_t prec) {
    FInt acc(prec);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = fi_add(fi_mul(acc, x, prec), *it, prec);
    return acc;
}

/* +1 if p > 0 on iv, -1 if p < 0, 0 undecided. */
int screen_sign(const DeltaPolynomial& p, const RationalInterval& iv, mpfr_prec_t prec) {
    std::vector<FInt> pc, dc;
    for (const auto& c : p.coeffs()) pc.push_back(fi_of(c, prec));
    auto d = p.derivative();
    for (const auto& c : d.coeffs()) dc.push_back(fi_of(c, prec));
    int overall = 0;
    struct Node { Rational a, b; int depth; };
    std::vector<Node> stack{{iv.lo, iv.hi, 0}};
    long budget = 50000;
    auto point_sign = [&](const Rational& x) {
        FInt xx = fi_of(x, prec);
        FInt v = fi_horner(pc, xx, prec);
        if (v.lo.sign() > 0) return 1;
        if (v.hi.sign() < 0) return -1;
        return 0;
    };
    while (!stack.empty()) {
        if (--budget < 0) return 0;
        Node nd = stack.back();
        stack.pop_back();
        FInt x(prec);
        mpfr_set_q(x.lo.raw(), nd.a.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(x.hi.raw(), nd.b.get_mpq_t(), MPFR_RNDU);
        int s;
        FInt dv = fi_horner(dc, x, prec);
        if (dv.lo.sign() > 0 || dv.hi.sign() < 0) {
            int sa = point_sign(nd.a), sb = point_sign(nd.b);
            if (sa == 0 || sb == 0 || sa != sb) return 0;
            s = sa;
        } else {
            FInt pv = fi_horner(pc, x, prec);
            if (pv.lo.sign() > 0) s = 1;
            else if (pv.hi.sign() < 0) s = -1;
            else {
                if (nd.depth >= 60) return 0;
                Rational mid = (nd.a + nd.b) / 2;
                stack.push_back({nd.a, mid, nd.depth + 1});
                stack.push_back({mid, nd.b, nd.depth + 1});
                continue;
            }
        }
        if (overall == 0) overall = s;
        else if (overall != s) return 0;
    }
    return overall;
}

}  // namespace

std::vector<ExactVerdict> verify_exact(const ProductSpec& spec, const RationalInterval& delta,
                                       const SignPattern& pattern, long n_max,
                                       const Rational& tol) {
    if (n_max < 0) throw std::domain_error("verify_exact: n_max must be >= 0");
    std::vector<ExactVerdict> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    if (delta.is_point()) {
        auto vals = coefficients_at(spec, delta.lo, n_max);
        for (long n = 0; n <= n_max; ++n) {
            const Rational& v = vals[static_cast<std::size_t>(n)];
            ExactVerdict ev;
            ev.n = n;
            ev.range = RationalInterval::point(v);
            ev.verdict = verdict_for(pattern.at(n), ev.range, v == 0);
            out.push_back(std::move(ev));
        }
        return out;
    }
    auto ds = expand_real_power(spec, n_max);
    for (long n = 0; n <= n_max; ++n) {
        const auto& p = ds.coeffs[static_cast<std::size_t>(n)];
        ExactVerdict ev;
        ev.n = n;
        if (p.is_zero()) {
            ev.range = RationalInterval::point(Rational(0));
            ev.verdict = verdict_for(pattern.at(n), ev.range, true);
            out.push_back(std::move(ev));
            continue;
        }
        Symbol sym = pattern.at(n);
        if (p.degree() > 200 && sym != Symbol::zero) {
            int s = screen_sign(p, delta, 320);
            if (s != 0) {
                Rational v = p.eval(delta.lo);
                ev.range = RationalInterval{v, v};  // representative sample
                ev.verdict = ((s > 0) == (sym == Symbol::plus)) ? Verdict::strict_match
                                                                : Verdict::violation;
                out.push_back(std::move(ev));
                continue;
            }
        }
        ev.range = poly_range_over_interval(p, delta, tol);
        ev.verdict = verdict_for(sym, ev.range, false);
        out.push_back(std::move(ev));
    }
    return out;
}

namespace {

/* ---------- asymptotic certificate ---------- */

struct DomFrame {
    long h = 0;
    Rational phase_unit;  // per-delta phase (omega+theta+front+branch+argPi), units of pi
    Real log_w;           // per-delta log of the Pi modulus

    DomFrame(long hh, Rational ph, Real lw)
        : h(hh), phase_unit(std::move(ph)), log_w(std::move(lw)) {}
};

bool phase_is_half_odd(const Rational& x) {
    /* cos(pi x) == 0  <=>  x = m + 1/2 */
    return x.get_den() == 2;
}

struct ResidueC {
    Real value;
    bool exact_zero = false;
    explicit ResidueC(mpfr_prec_t prec) : value(prec) {}
};

ResidueC residue_cos(const std::vector<DomFrame>& frames, long k, const Rational& delta, long r,
                     mpfr_prec_t prec) {
    ResidueC out(prec);
    out.value = Real::of(0L, prec);
    std::vector<Rational> phases(frames.size());
    std::vector<Real> weights;
    bool all_zero = true;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        phases[i] = Rational(-2 * r * frames[i].h, k) + delta * frames[i].phase_unit;
        phases[i].canonicalize();
        bool zero = phase_is_half_odd(phases[i]);
        Real w = exp(Real::of(delta, prec) * frames[i].log_w);
        weights.push_back(w);
        if (!zero) {
            Rational red = phases[i] - 2 * Rational(floor_rational(phases[i] / 2));
            out.value += w * cos(Real::of(red, prec) * Real::pi(prec));
            all_zero = false;
        }
    }
    if (all_zero) {
        out.exact_zero = true;
        return out;
    }
    if (frames.size() == 2) {
        /* conjugate cancellation: cos terms opposite and weights equal */
        Rational s = phases[0] + phases[1];
        bool odd_sum = s.get_den() == 1 && mpz_odd_p(s.get_num().get_mpz_t());
        Real eps = Real::of(1L, prec);
        mpfr_mul_2si(eps.raw(), eps.raw(), -static_cast<long>(prec) / 2, MPFR_RNDN);
        if (odd_sum && abs(weights[0] - weights[1]) < eps * (weights[0] + weights[1]))
            out.exact_zero = true;
    }
    return out;
}

struct IntervalC {
    bool ok = false;     // sign constant with positive margin
    int sign = 0;
    Real min_abs;
    explicit IntervalC(mpfr_prec_t prec) : min_abs(prec) {}
};

/* Lower bound of |C(r, delta)| over a delta interval, by adaptive
 * subdivision with a Lipschitz bound in delta. */
IntervalC residue_cos_interval(const std::vector<DomFrame>& frames, long k,
                               const RationalInterval& delta, long r, mpfr_prec_t prec) {
    IntervalC out(prec);
    Real pi = Real::pi(prec);
    Real lip = Real::of(0L, prec);
    for (const auto& f : frames) {
        Real wlo = exp(Real::of(delta.lo, prec) * f.log_w);
        Real whi = exp(Real::of(delta.hi, prec) * f.log_w);
        Real wmax = wlo > whi ? wlo : whi;
        lip += wmax * (abs(f.log_w) + pi * abs(Real::of(f.phase_unit, prec)));
    }
    struct Node { Rational a, b; int depth; };
    std::vector<Node> stack{{delta.lo, delta.hi, 0}};
    bool first = true;
    while (!stack.empty()) {
        Node nd = stack.back();
        stack.pop_back();
        Rational mid = (nd.a + nd.b) / 2;
        auto c = residue_cos(frames, k, mid, r, prec);
        Real halfw = Real::of((nd.b - nd.a) / 2, prec);
        Real margin = abs(c.value) - lip * halfw;
        if (margin.sign() <= 0 || c.exact_zero) {
            if (nd.depth >= 40) return out;  // ok = false
            stack.push_back({nd.a, mid, nd.depth + 1});
            stack.push_back({mid, nd.b, nd.depth + 1});
            continue;
        }
        int s = c.value.sign();
        if (first) {
            out.sign = s;
            out.min_abs = margin;
            first = false;
        } else {
            if (s != out.sign) return out;
            if (margin < out.min_abs) out.min_abs = margin;
        }
    }
    out.ok = !first;
    return out;
}

/* Error-term envelope valid for every n >= n0: the exp factor is <= e
 * by the choice of N, and the k,h sums are replaced by majorants that
 * decrease in N (hence in n).  Monotone delta factors are evaluated at
 * whichever interval endpoint maximizes them. */
Real error_envelope(const ProductSpec& spec, const RationalInterval& delta, long N0,
                    mpfr_prec_t prec) {
    Real pi = Real::pi(prec);
    Real one = Real::of(1L, prec);
    Real e1 = exp(one);
    Real total = Real::of(0L, prec);
    auto classes = classify_residue_pairs(spec);
    long L = spec.L();

    auto pow_max = [&](const Real& base, long u) {
        Real a = pow(base, Real::of(u, prec) * Real::of(delta.lo, prec));
        Real b = pow(base, Real::of(u, prec) * Real::of(delta.hi, prec));
        return a > b ? a : b;
    };
    auto poch_term = [&](Real x, const Real& q, const Real& c) {
        Real thresh = one;
        mpfr_mul_2si(thresh.raw(), thresh.raw(), -static_cast<long>(prec) / 2, MPFR_RNDN);
        Real s = Real::of(0L, prec);
        while (!(x < thresh)) {
            s -= log(one - x);
            x = x * q;
        }
        s += x / ((one - q) * (one - x));
        return exp(c * s);
    };

    for (int gt = 0; gt <= 1; ++gt) {
        const auto& list = gt ? classes.gt0 : classes.le0;
        for (const auto& [vk, kappa] : list) {
            Real B = one, P = one;
            Rational D(0);
            Real chi_hi = Real::of(delta.hi, prec);
            for (const auto& f : spec.factors()) {
                auto [lam, lst] = lambda_pair(f.m, f.n, vk, kappa);
                long d = std::gcd(f.n, kappa);
                D += Rational(f.u) * (Rational(12 * d * d, f.n) * (lst - lst * lst) -
                                      Rational(2 * d * d, f.n));
                Real q2 = exp(Real::of(Rational(-2 * d * d, f.n), prec) * pi);
                Real chi = Real::of(std::labs(f.u), prec) * chi_hi;
                if (lst == 0) {
                    if (f.u > 0)
                        B *= pow_max(Real::of(2L, prec), f.u);
                    else
                        B *= pow_max(Real::of(2L, prec) * sin(pi / Real::of(f.n, prec)), f.u);
                    P *= poch_term(q2, q2, chi);
                    P *= poch_term(q2, q2, chi);
                } else {
                    Real q1 = exp(Real::of(-2 * lst * Rational(d * d, f.n), prec) * pi);
                    P *= poch_term(q1, q2, chi);
                    P *= poch_term(q2 / q1, q2, chi);
                }
            }
            Rational d_for_D = D > 0 ? delta.hi : delta.lo;
            Real eD = exp(Real::of(d_for_D * D, prec) * pi / Real::of(12L, prec));
            /* sum_{k<=N,class} ceil(k/kappa) 2/(k(N+1)) <=
             *   (2/(N+1)) ((#k+1)/kappa + ln(N/kappa)/L),  #k <= (N-kappa)/L + 1 */
            Real Nr = Real::of(N0, prec);
            Real kap = Real::of(kappa, prec);
            Real Lr = Real::of(L, prec);
            Real terms = (Nr - kap) / Lr + one;
            if (terms.sign() < 0) terms = Real::of(0L, prec);
            Real lnNk = N0 > kappa ? log(Nr / kap) : Real::of(0L, prec);
            Real bracket = (terms + one) / kap + lnNk / Lr;
            Real G = (Real::of(2L, prec) / (Nr + one)) * bracket;
            if (gt) {
                Real H = (pi * sqrt(Real::of(2L, prec)) / Nr) * bracket;
                Real tail = G * (P - one) + H;
                total += e1 * B * eD * tail;
            } else {
                total += e1 * eD * B * P * G;
            }
        }
    }
    Real slack = one;
    mpfr_mul_2si(slack.raw(), slack.raw(), -64, MPFR_RNDN);
    return total * (one + slack);
}

struct VanishingInstance {
    long modulus = 0;  // k0
    long offset = 0;   // r (k0 - r + 1)/2 for the positive-exponent factor
};

/* Matches the two-factor shape (q^r, q^{2k-r}; q^{2k}) /
 * (q^{k-r}, q^{k+r}; q^{2k}) whose coefficients vanish along
 * k*j + r(k-r+1)/2. */
std::optional<VanishingInstance> vanishing_instance(const ProductSpec& spec) {
    if (spec.size() != 2) return std::nullopt;
    const auto& a = spec.factors()[0];
    const auto& b = spec.factors()[1];
    if (a.n != b.n || a.n % 2 != 0) return std::nullopt;
    long k0 = a.n / 2;
    const ProductFactor* pos = nullptr;
    const ProductFactor* neg = nullptr;
    if (a.u == 1 && b.u == -1) { pos = &a; neg = &b; }
    else if (a.u == -1 && b.u == 1) { pos = &b; neg = &a; }
    else return std::nullopt;
    if (pos->m + neg->m != k0) return std::nullopt;
    long r = pos->m;
    if ((r * (k0 - r + 1)) % 2 != 0) return std::nullopt;
    return VanishingInstance{k0, r * (k0 - r + 1) / 2};
}

}  // namespace

AsymptoticReport asymptotic_certificate(const ProductSpec& spec, const RationalInterval& delta,
                                        const SignPattern& pattern, long n_start,
                                        mpfr_prec_t prec) {
    AsymptoticReport rep;
    rep.n_start = n_start;
    if (delta.lo <= 0) {
        rep.note = "delta must be positive (negate the spec first)";
        return rep;
    }
    auto gc = check_growth_condition(spec, delta.hi);
    if (!gc.ok) {
        rep.note = "growth condition fails at (" + std::to_string(gc.violating.first) + "," +
                   std::to_string(gc.violating.second) + ")";
        return rep;
    }
    auto classes = classify_residue_pairs(spec);
    if (classes.gt0.empty()) {
        rep.note = "no class with Delta > 0";
        return rep;
    }
    auto gr = max_growth_ratio(spec);
    std::vector<ResiduePair> dom;
    long kappa_star = 0;
    for (const auto& [vk, kap] : classes.gt0) {
        if (frame_delta(spec, vk, kap) / Rational(kap * kap) != gr.value) continue;
        if (std::gcd(vk == 0 ? kap : vk, kap) != 1) continue;
        if (kappa_star == 0) kappa_star = kap;
        if (kap != kappa_star) {
            rep.note = "dominant classes with different kappa are not supported";
            return rep;
        }
        dom.push_back({vk, kap});
    }
    if (dom.empty()) {
        rep.note = "no coprime dominant class";
        return rep;
    }
    Rational delta_star = frame_delta(spec, dom[0].first, dom[0].second);

    FrameTable frames(spec, prec);
    std::vector<DomFrame> dframes;
    for (const auto& [vk, kap] : dom) {
        const auto& e = frames.get(vk, kap);
        dframes.emplace_back(vk, e.phase + e.pi_arg, e.pi_log_abs_unit);
    }

    Real pi = Real::pi(prec);
    Real one = Real::of(1L, prec);
    long N0 = default_N(spec, delta.lo, n_start);

    Rational S_lo = 24 * Rational(n_start) * delta.lo + delta.lo * delta.lo * spec.Omega();
    if (S_lo <= 0) {
        rep.note = "n_start too small for the Bessel argument";
        return rep;
    }
    Real t0 = (pi / Real::of(12 * kappa_star, prec)) * sqrt(Real::of(delta_star * S_lo, prec));
    if (!(t0 >= Real::of(3L, prec))) {
        rep.note = "dominant Bessel argument below the t >= 3 threshold";
        return rep;
    }

    /* envelope of the remainder over the dominant amplitude, valid for
     * every n >= n_start (each piece is decreasing in n) */
    Real Eenv = error_envelope(spec, delta, N0, prec);
    Real dlo = Real::of(delta.lo, prec);
    Real s_E = Eenv * Real::of(6 * kappa_star * kappa_star, prec) /
               (dlo * pi * pi * Real::of(delta_star, prec));
    Real c_N = (one + one / Real::of(N0, prec)) *
               sqrt(Real::of(4L, prec) * pi / (Real::of(24L, prec) * dlo)) *
               Real::of(12 * kappa_star, prec) / (pi * sqrt(Real::of(delta_star, prec)));

    Real I1_2t = bessel_i1(Real::of(2L, prec) * t0, prec);
    Real I1_t = bessel_i1(t0, prec);
    Real ratio1 = s_E * t0 / I1_2t;
    bool has_nondominant = false;
    Real dom_cy(prec);
    Real dom_Pmax_sum = Real::of(0L, prec);
    for (const auto& [vk, kap] : classes.gt0) {
        Rational Dc = frame_delta(spec, vk, kap);
        bool dominant =
            std::find(dom.begin(), dom.end(), std::make_pair(vk, kap)) != dom.end();
        Real lam = Real::of(kappa_star, prec) / Real::of(kap, prec) *
                   sqrt(Real::of(Dc, prec) / Real::of(delta_star, prec));
        Real Pmax = one;
        for (const auto& f : spec.factors()) {
            auto [lamb, lst] = lambda_pair(f.m, f.n, vk, kap);
            if (lst != 0) continue;
            Real base = Real::of(2L, prec);
            if (f.u < 0) base = Real::of(2L, prec) * sin(pi / Real::of(f.n, prec));
            Real a = pow(base, Real::of(f.u, prec) * dlo);
            Real b = pow(base, Real::of(f.u, prec) * Real::of(delta.hi, prec));
            Pmax *= (a > b ? a : b);
        }
        Real eta = (spec.L() % kap == 0) ? one : Real::of(2L, prec);
        Real g_c = lam * Pmax * eta;
        Real c_y = c_N / Real::of(kap, prec) *
                   (one + Real::of(kap, prec) / Real::of(N0, prec));
        ratio1 += g_c * (lam * t0 * (log(t0) + log(c_y)) + Real::of(2L, prec) * I1_t) / I1_2t;
        if (!dominant) {
            has_nondominant = true;
            /* head term at k = kappa_c; the ratio I1(2 lam t)/I1(2t)
             * decreases in t for lam < 1, so pinning it at t0 covers
             * every n >= n_start */
            ratio1 += g_c * bessel_i1(Real::of(2L, prec) * lam * t0, prec) / I1_2t;
        } else {
            dom_cy = c_y;
            dom_Pmax_sum += Pmax;
        }
    }
    rep.ratio1 = ratio1.to_double();

    /* residue cosines at level 1 */
    long R = std::lcm(pattern.period(), kappa_star);
    std::vector<long> level2_residues;
    std::vector<long> zero_residues;
    Real min_cos(prec);
    bool min_set = false;
    bool margin_fail = false;
    for (long r = 0; r < R; ++r) {
        Symbol sym = pattern.at(r);
        if (delta.is_point()) {
            auto C = residue_cos(dframes, kappa_star, delta.lo, r, prec);
            if (C.exact_zero) {
                if (sym == Symbol::zero) {
                    if (std::find(zero_residues.begin(), zero_residues.end(),
                                  r % pattern.period()) == zero_residues.end())
                        zero_residues.push_back(r % pattern.period());
                } else {
                    level2_residues.push_back(r);
                }
                continue;
            }
            if (sym == Symbol::zero) {
                rep.note = "pattern expects 0 where the dominant term does not vanish";
                return rep;
            }
            if ((C.value.sign() > 0) != (sym == Symbol::plus)) {
                rep.note = "dominant-term sign disagrees with the pattern at residue " +
                           std::to_string(r);
                return rep;
            }
            Real mag = abs(C.value);
            if (!min_set || mag < min_cos) { min_cos = mag; min_set = true; }
        } else {
            if (sym == Symbol::zero) {
                rep.note = "zero symbols are not certifiable over a delta interval";
                return rep;
            }
            auto C = residue_cos_interval(dframes, kappa_star, delta, r, prec);
            if (!C.ok) {
                rep.note = "dominant cosine loses its sign over the delta range (residue " +
                           std::to_string(r) + ")";
                return rep;
            }
            if ((C.sign > 0) != (sym == Symbol::plus)) {
                rep.note = "dominant-term sign disagrees with the pattern at residue " +
                           std::to_string(r);
                return rep;
            }
            if (!min_set || C.min_abs < min_cos) { min_cos = C.min_abs; min_set = true; }
        }
    }
    rep.min_cos1 = min_set ? min_cos.to_double() : 0.0;
    if (min_set && !(ratio1 < min_cos)) margin_fail = true;

    /* zero symbols ride on the vanishing identity, checked exactly */
    if (!zero_residues.empty()) {
        Rational dval = delta.lo;
        if (!delta.is_point() || (dval != 1 && dval != -1)) {
            rep.note = "zero symbols are only certified at delta = +-1";
            return rep;
        }
        auto inst = vanishing_instance(spec);
        if (!inst) {
            rep.note = "zero symbols present but no vanishing identity applies";
            return rep;
        }
        long window = n_start + 5 * pattern.period();
        auto vals = coefficients_at(spec, dval, window);
        for (long n = 0; n <= window; ++n) {
            bool pat_zero = pattern.at(n) == Symbol::zero;
            bool id_zero = (n % inst->modulus) == (inst->offset % inst->modulus) && n > 0;
            if (pat_zero != id_zero) {
                rep.note = "zero residues do not coincide with the vanishing identity";
                return rep;
            }
            if (id_zero && vals[static_cast<std::size_t>(n)] != 0) {
                rep.note = "vanishing identity fails at n=" + std::to_string(n);
                return rep;
            }
        }
        rep.identity_zero_residues = zero_residues;
        rep.identity_checked_to = window;
    }

    /* level 2: residues where the dominant combination vanishes */
    if (!level2_residues.empty()) {
        rep.used_secondary = true;
        if (!delta.is_point()) {
            rep.note = "secondary-level certification needs a point delta";
            return rep;
        }
        if (kappa_star != spec.L() || has_nondominant) {
            rep.note = "secondary level requires kappa* = L and no extra classes";
            return rep;
        }
        if (!(t0 >= Real::of(5L, prec))) {
            rep.note = "secondary level needs t >= 5";
            return rep;
        }
        long k2 = 2 * kappa_star;
        std::vector<DomFrame> d2;
        for (const auto& [vk, kap] : dom) {
            for (long h = vk; h < k2; h += kap) {
                if (std::gcd(h, k2) != 1) continue;
                const auto& e = frames.get(h, k2);
                d2.emplace_back(h, e.phase + e.pi_arg, e.pi_log_abs_unit);
            }
        }
        if (d2.empty()) {
            rep.note = "no frames at k = 2 kappa*";
            return rep;
        }
        Real num = dom_Pmax_sum *
                   (t0 * (log(t0) + log(dom_cy)) +
                    Real::of(3L, prec) *
                        bessel_i1(Real::of(2L, prec) * t0 / Real::of(3L, prec), prec));
        Real ratio2 =
            (Real::of(2L, prec) * s_E * t0 + Real::of(2L, prec) * num) / I1_t;
        rep.ratio2 = ratio2.to_double();
        long R2 = std::lcm(R, k2);
        Real min_cos2(prec);
        bool set2 = false;
        for (long r : level2_residues) {
            for (long r2 = r; r2 < R2; r2 += R) {
                Symbol sym = pattern.at(r2);
                if (sym == Symbol::zero) continue;
                auto C2 = residue_cos(d2, k2, delta.lo, r2, prec);
                if (C2.exact_zero) {
                    rep.note = "secondary term vanishes too at residue " + std::to_string(r2);
                    return rep;
                }
                if ((C2.value.sign() > 0) != (sym == Symbol::plus)) {
                    rep.note = "secondary-term sign disagrees at residue " + std::to_string(r2);
                    return rep;
                }
                Real mag = abs(C2.value);
                if (!set2 || mag < min_cos2) { min_cos2 = mag; set2 = true; }
            }
        }
        rep.min_cos2 = set2 ? min_cos2.to_double() : 0.0;
        if (set2 && !(ratio2 < min_cos2)) margin_fail = true;
    }

    /* direct numeric cross-check at n_start */
    for (long n = n_start; n < n_start + 2 * pattern.period(); ++n) {
        Symbol sym = pattern.at(n);
        if (sym == Symbol::zero) continue;
        if (std::find(level2_residues.begin(), level2_residues.end(), n % R) !=
            level2_residues.end())
            continue;
        auto est = estimate_coefficient(spec, delta.lo, n, prec);
        if (est.sign != CertifiedSign::undetermined) {
            bool plus = est.sign == CertifiedSign::plus;
            rep.cross_check_ok = plus == (sym == Symbol::plus);
        }
        break;
    }

    rep.ok = !margin_fail && rep.cross_check_ok;
    if (!rep.ok && rep.note.empty())
        rep.note = margin_fail ? "remainder envelope does not beat the cosine margin"
                               : "numeric cross-check failed";
    return rep;
}

Certificate certify(const ProductSpec& spec, const RationalInterval& delta,
                    const SignPattern& pattern, std::optional<long> n_start, mpfr_prec_t prec) {
    Certificate cert;
    cert.pattern = pattern;
    if (delta.hi < 0 || (delta.hi == 0 && delta.lo < 0)) {
        cert.spec = spec.inverse();
        cert.delta = RationalInterval{-delta.hi, -delta.lo};
        cert.negated = true;
    } else if (delta.lo > 0) {
        cert.spec = spec;
        cert.delta = delta;
    } else {
        throw std::invalid_argument("certify: delta range must not contain 0");
    }

    long n0 = 0;
    if (n_start) {
        n0 = *n_start;
        cert.asymptotic = asymptotic_certificate(cert.spec, cert.delta, pattern, n0, prec);
    } else {
        long lo_fail = 0;
        for (long probe = 64;; probe *= 2) {
            if (probe > 1L << 16) break;
            cert.asymptotic = asymptotic_certificate(cert.spec, cert.delta, pattern, probe, prec);
            if (cert.asymptotic.ok) { n0 = probe; break; }
            lo_fail = probe;
        }
        if (n0 == 0) {
            cert.status = CertStatus::inconclusive;
            cert.note = "asymptotic stage failed up to the search cap: " + cert.asymptotic.note;
            return cert;
        }
        while (n0 - lo_fail > 1) {
            long mid = lo_fail + (n0 - lo_fail) / 2;
            auto r = asymptotic_certificate(cert.spec, cert.delta, pattern, mid, prec);
            if (r.ok) { n0 = mid; cert.asymptotic = r; }
            else lo_fail = mid;
        }
    }

    cert.exact_upto = n0;
    cert.exact_results = verify_exact(cert.spec, cert.delta, pattern, n0 - 1, Rational(1, 1000));
    for (const auto& ev : cert.exact_results) {
        if (ev.verdict == Verdict::violation) {
            cert.status = CertStatus::refuted;
            cert.refuted_at = ev.n;
            cert.note = "pattern violated at n=" + std::to_string(ev.n);
            return cert;
        }
    }
    if (!cert.asymptotic.ok) {
        cert.status = CertStatus::inconclusive;
        cert.note = cert.asymptotic.note;
        return cert;
    }
    cert.status = CertStatus::proven;
    return cert;
}

std::vector<RationalInterval> critical_delta(const ProductSpec& spec, long n,
                                             const RationalInterval& search,
                                             const Rational& width) {
    if (n < 1) throw std::domain_error("critical_delta: n must be >= 1");
    auto ds = expand_real_power(spec, n);
    return isolate_real_roots(ds.coeffs[static_cast<std::size_t>(n)], search, width);
}

std::vector<TableRow> table_ranges(const ProductSpec& spec, const RationalInterval& delta,
                                   long n_max, int decimals) {
    std::vector<TableRow> rows;
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
    Rational tol = Rational(1, 4) / Rational(p10);
    auto ds = expand_real_power(spec, n_max);
    for (long n = 0; n <= n_max; ++n) {
        TableRow row;
        row.n = n;
        const auto& p = ds.coeffs[static_cast<std::size_t>(n)];
        if (p.is_zero())
            row.range = RationalInterval::point(Rational(0));
        else if (delta.is_point())
            row.range = RationalInterval::point(p.eval(delta.lo));
        else
            row.range = poly_range_over_interval(p, delta, tol);
        row.lo = format_decimal_directed(row.range.lo, decimals, true);
        row.hi = format_decimal_directed(row.range.hi, decimals, false);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qsign
