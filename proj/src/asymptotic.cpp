#include "qsign/asymptotic.hpp"

#include "qsign/special.hpp"

#include <numeric>
#include <stdexcept>

namespace qsign {

long default_N(const ProductSpec& spec, const Rational& delta, long n) {
    Rational arg = Rational(n) + delta * spec.Omega() / 24;
    if (arg <= 0) throw std::domain_error("default_N: need 24n + delta*Omega > 0");
    mpfr_prec_t prec = 192;
    Real x = Real::of(4L, prec) * Real::pi(prec) * Real::of(arg, prec);
    Real s = sqrt(x);
    mpfr_t c;
    mpfr_init2(c, prec);
    mpfr_ceil(c, s.raw());
    long N = mpfr_get_si(c, MPFR_RNDN);
    mpfr_clear(c);
    return N;
}

FrameTable::FrameTable(ProductSpec spec, mpfr_prec_t prec)
    : spec_(std::move(spec)), prec_(prec) {}

const FrameTable::Entry& FrameTable::get(long h, long k) {
    auto key = std::make_pair(h, k);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Entry e;
    e.frame = build_frame(spec_, h, k);
    e.branch = compute_branch(e.frame);
    e.phase = e.frame.phase_total() + 2 * Rational(e.branch);
    e.pi_arg = 0;
    Real logabs = Real::of(0L, prec_);
    Real pi = Real::pi(prec_);
    for (auto i : e.frame.I0) {
        const auto& f = e.frame.factors[i];
        // 1 - exp(2 pi i a) = 2 sin(pi a) exp(i pi (a - 1/2)), a in (0,1)
        Real s = Real::of(2L, prec_) * sin(pi * Real::of(f.zeta_exp, prec_));
        logabs += Real::of(f.u, prec_) * log(s);
        e.pi_arg += Rational(f.u) * (f.zeta_exp - Rational(1, 2));
    }
    e.pi_log_abs_unit = logabs;
    return cache_.emplace(key, std::move(e)).first->second;
}

long FrameTable::compute_branch(const ModularFrame& fr) {
    /* The printed transformation drops integer multiples of 2 pi i in
     * the logarithm; they matter once the product is raised to a
     * non-integer power.  The defect is a z-independent integer, so it
     * can be pinned at any convenient z; z = k sqrt(L) balances the
     * convergence of the series side against the Pochhammer side. */
    const long h = fr.h, k = fr.k;
    mpfr_prec_t wp = 128;
    Real z = Real::of(k, wp) * sqrt(Real::of(spec_.L(), wp));
    Real pi = Real::pi(wp);
    Real two_pi = Real::of(2L, wp) * pi;
    Real thresh = Real::of(1L, wp);
    mpfr_mul_2si(thresh.raw(), thresh.raw(), -64, MPFR_RNDN);

    Complex q0 = cexp(Complex{-two_pi * z / Real::of(k * k, wp),
                              two_pi * Real::of(Rational(h, k), wp)});
    // log-series of G at q0: -sum_i u_i sum_t (q0^{t m}+q0^{t(n-m)})/(t (1-q0^{t n}))
    Complex series_log{wp};
    Real aq0 = cabs(q0);
    Real aq0_t = Real::of(1L, wp);
    std::vector<Complex> q0pow;  // q0^t cache, 1-indexed
    Complex q0t = q0;
    for (long t = 1;; ++t) {
        aq0_t *= aq0;
        if (aq0_t < thresh) break;
        for (const auto& f : spec_.factors()) {
            auto cpow = [&](long e) {
                Complex r{wp};
                r.re = Real::of(1L, wp);
                Complex base = q0t;
                long ee = e;
                while (ee > 0) {
                    if (ee & 1) r = r * base;
                    base = base * base;
                    ee >>= 1;
                }
                return r;
            };
            Complex num = cpow(f.m) + cpow(f.n - f.m);
            Complex one{wp};
            one.re = Real::of(1L, wp);
            Complex den = one - cpow(f.n);
            Complex term = num / den;
            series_log += term.scaled(Real::of(Rational(-f.u, t), wp));
        }
        q0t = q0t * q0;
        if (t > 100000) throw std::runtime_error("compute_branch: series too slow");
    }
    // assembled log
    Real assembled_im = pi * Real::of(fr.phase_total(), wp);
    Real assembled_re =
        (pi / Real::of(12 * k, wp)) *
        (Real::of(spec_.Omega(), wp) * z / Real::of(k, wp) + Real::of(fr.Delta, wp) * Real::of(k, wp) / z);
    Complex assembled{assembled_re, assembled_im};
    for (const auto& f : fr.factors) {
        Rational a_exp(Integer(f.m) * f.d + f.lambda * f.n * f.h_prime * f.d, Integer(k) * f.n);
        Complex q1 = cexp(Complex{-two_pi * Real::of(f.lambda_star, wp) * Real::of(f.d * f.d, wp) /
                                      (Real::of(f.n, wp) * z),
                                  two_pi * Real::of(frac_rational(a_exp), wp)});
        Complex q2 = cexp(Complex{-two_pi * Real::of(f.d * f.d, wp) / (Real::of(f.n, wp) * z),
                                  two_pi * Real::of(Rational(f.h_prime * f.d, k), wp)});
        Complex one{wp};
        one.re = Real::of(1L, wp);
        Complex x = q1, y = q2 / q1;
        for (long j = 0;; ++j) {
            Complex sum_logs = clog(one - x) + clog(one - y);
            assembled += sum_logs.scaled(Real::of(f.u, wp));
            x = x * q2;
            y = y * q2;
            if (cabs(x) < thresh && cabs(y) < thresh) break;
            if (j > 200000) throw std::runtime_error("compute_branch: Pochhammer too slow");
        }
    }
    Real m_real = (series_log.im - assembled.im) / two_pi;
    Real rounded(wp);
    mpfr_round(rounded.raw(), m_real.raw());
    if (!(abs(m_real - rounded) < Real::of(0.125, wp)))
        throw std::runtime_error("compute_branch: defect not near an integer");
    // real parts must agree: cross-check the frame data
    if (!(abs(series_log.re - assembled.re) <
          Real::of(1e-8, wp) * (Real::of(1L, wp) + abs(series_log.re))))
        throw std::runtime_error("compute_branch: transformation mismatch in modulus");
    return mpfr_get_si(rounded.raw(), MPFR_RNDN);
}

namespace {

struct GtClassSet {
    std::set<ResiduePair> gt0;
    long min_kappa = 0;
};

GtClassSet gt0_set(const ProductSpec& spec) {
    GtClassSet out;
    auto classes = classify_residue_pairs(spec);
    for (auto& p : classes.gt0) {
        out.gt0.insert(p);
        if (out.min_kappa == 0 || p.second < out.min_kappa) out.min_kappa = p.second;
    }
    return out;
}

}  // namespace

MainTermResult main_term(FrameTable& frames, const Rational& delta, long n, long N) {
    const ProductSpec& spec = frames.spec();
    mpfr_prec_t prec = frames.prec();
    if (delta <= 0) throw std::domain_error("main_term: delta must be positive");
    auto gc = check_growth_condition(spec, delta);
    if (!gc.ok)
        throw std::domain_error("main_term: growth condition fails at class (" +
                                std::to_string(gc.violating.first) + "," +
                                std::to_string(gc.violating.second) + ")");
    Rational S = 24 * Rational(n) * delta + delta * delta * spec.Omega();
    if (S <= 0) throw std::domain_error("main_term: need n > -delta*Omega/24");
    auto classes = gt0_set(spec);
    MainTermResult out{Real::of(0L, prec), Real::of(0L, prec), true};
    Real pi = Real::pi(prec);
    Real sqrtS = sqrt(Real::of(S, prec));
    Complex acc{prec};
    for (long k = 1; k <= N; ++k) {
        long kappa = ((k - 1) % spec.L()) + 1;
        for (long h = (k == 1 ? 0 : 1); h < std::max(k, 1L); ++h) {
            if (k > 1 && std::gcd(h, k) != 1) continue;
            if (!classes.gt0.count({h % kappa, kappa})) continue;
            const auto& e = frames.get(h, k);
            out.empty_sum = false;
            Rational phase = Rational(-2 * n * h, k) + delta * (e.phase + e.pi_arg);
            phase.canonicalize();
            Real dl = Real::of(delta, prec);
            Real amp = (Real::of(2L, prec) * dl * pi / Real::of(k, prec)) *
                       sqrt(Real::of(e.frame.Delta, prec)) / sqrtS *
                       exp(dl * e.pi_log_abs_unit);
            Real barg = (pi / Real::of(6 * k, prec)) * sqrt(Real::of(e.frame.Delta, prec)) * sqrtS;
            Real bess = bessel_i1(barg, prec);
            Complex ph = unit_phase(phase, prec);
            acc += ph.scaled(amp * bess);
        }
    }
    out.value = acc.re;
    out.imag_residue = acc.im;
    return out;
}

namespace {

/* Upper bound on (a, b; q)_inf^{-c} for 0 < a,b < 1, 0 < q < 1, c > 0:
 * truncate the log at a q^J < 2^{-prec/2} and close the tail with
 * -log(1-x) <= x/(1-x). */
Real poch_inv_upper(const Real& a, const Real& b, const Real& q, const Real& c,
                    mpfr_prec_t prec) {
    Real one = Real::of(1L, prec);
    Real thresh = one;
    mpfr_mul_2si(thresh.raw(), thresh.raw(), -static_cast<long>(prec) / 2, MPFR_RNDN);
    Real s = Real::of(0L, prec);
    for (Real x : {a, b}) {
        long guard = 0;
        while (!(x < thresh)) {
            s -= log(one - x);
            x = x * q;
            if (++guard > 100000)
                throw std::runtime_error("poch_inv_upper: slow convergence");
        }
        s += x / ((one - q) * (one - x));  // tail
    }
    return exp(c * s);
}

}  // namespace

Real error_bound(FrameTable& frames, const Rational& delta, long n, long N) {
    const ProductSpec& spec = frames.spec();
    mpfr_prec_t prec = frames.prec();
    if (delta <= 0) throw std::domain_error("error_bound: delta must be positive");
    Rational nOm = 24 * Rational(n) + delta * spec.Omega();
    if (nOm <= 0) throw std::domain_error("error_bound: need 24 pi n + delta pi Omega > 0");
    if (N < 1) throw std::domain_error("error_bound: N must be positive");
    Real pi = Real::pi(prec);
    Real one = Real::of(1L, prec);
    Real dl = Real::of(delta, prec);
    Real expfac = exp(pi * Real::of(nOm, prec) / Real::of(6 * N * N, prec));
    Real total = Real::of(0L, prec);

    auto classes = classify_residue_pairs(spec);
    auto handle_class = [&](long vk, long kappa, bool gt) {
        // class-level factor data
        Real B = one;     // I0+- prefactor
        Real P = one;     // Pochhammer-tail upper bound product
        Rational D(0);
        for (const auto& f : spec.factors()) {
            auto [lam, lst] = lambda_pair(f.m, f.n, vk, kappa);
            long d = std::gcd(f.n, kappa);
            D += Rational(f.u) *
                 (Rational(12 * d * d, f.n) * (lst - lst * lst) - Rational(2 * d * d, f.n));
            Real q2 = exp(Real::of(Rational(-2 * d * d, f.n), prec) * pi);
            Real cu = Real::of(std::labs(f.u), prec) * dl;
            if (lst == 0) {
                if (f.u > 0)
                    B *= pow(Real::of(2L, prec), Real::of(f.u, prec) * dl);
                else
                    B *= pow(Real::of(2L, prec) * sin(pi / Real::of(f.n, prec)),
                             Real::of(f.u, prec) * dl);
                P *= poch_inv_upper(q2, q2, q2, cu, prec);
            } else {
                Real q1 = exp(Real::of(-2 * lst * Rational(d * d, f.n), prec) * pi);
                P *= poch_inv_upper(q1, q2 / q1, q2, cu, prec);
            }
        }
        Real eD = exp(dl * pi * Real::of(D, prec) / Real::of(12L, prec));
        for (long k = kappa; k <= N; k += spec.L()) {
            if (((k - 1) % spec.L()) + 1 != kappa) continue;  // guard, always true
            long cnt = 0;
            for (long h = (k == 1 ? 0 : 1); h < std::max(k, 1L); ++h) {
                if (k > 1 && std::gcd(h, k) != 1) continue;
                if (h % kappa == vk) ++cnt;
            }
            if (!cnt) continue;
            Real c = Real::of(cnt, prec);
            Real pref = Real::of(2L, prec) / Real::of(Integer(Integer(k) * (N + 1)), prec);
            if (gt) {
                Real tail = pref * P - pref + pi * sqrt(Real::of(2L, prec)) / Real::of(Integer(Integer(k) * N), prec);
                total += c * expfac * B * eD * tail;
            } else {
                total += c * pref * expfac * eD * B * P;
            }
        }
    };
    for (const auto& [vk, kappa] : classes.le0) handle_class(vk, kappa, false);
    for (const auto& [vk, kappa] : classes.gt0) handle_class(vk, kappa, true);
    // rounding slack
    Real slack = one;
    mpfr_mul_2si(slack.raw(), slack.raw(), -96, MPFR_RNDN);
    return total * (one + slack);
}

Estimate estimate_coefficient(const ProductSpec& spec, const Rational& delta, long n,
                              mpfr_prec_t prec) {
    if (delta == 0) throw std::domain_error("estimate_coefficient: delta must be nonzero");
    if (delta < 0) return estimate_coefficient(spec.inverse(), -delta, n, prec);
    Estimate est;
    est.n = n;
    est.delta = delta.get_d();
    est.N = default_N(spec, delta, n);
    FrameTable frames(spec, prec);
    auto mt = main_term(frames, delta, n, est.N);
    est.main = mt.value;
    est.imag_residue = mt.imag_residue;
    est.bound = error_bound(frames, delta, n, est.N);
    Real margin = abs(est.main) - est.bound;
    if (margin.sign() > 0)
        est.sign = est.main.sign() > 0 ? CertifiedSign::plus : CertifiedSign::minus;
    return est;
}

Real transformation_check(const ProductSpec& spec, const Rational& delta, long h, long k,
                          const Real& z_re, const Real& z_im, long order, mpfr_prec_t prec) {
    if (!(z_re > Real::of(0L, prec)))
        throw std::domain_error("transformation_check: need Re(z) > 0");
    Real pi = Real::pi(prec);
    Real two_pi = Real::of(2L, prec) * pi;
    Complex z{z_re, z_im};
    Complex q0 = cexp(Complex{-two_pi * z_re / Real::of(k * k, prec),
                              two_pi * Real::of(Rational(h, k), prec) -
                                  two_pi * z_im / Real::of(k * k, prec)});
    // left side: exp(delta * sum l_j q0^j)
    auto l = log_weights(spec, order);
    Complex pw{prec};
    pw.re = Real::of(1L, prec);
    Complex ls{prec};
    for (long j = 1; j <= order; ++j) {
        pw = pw * q0;
        if (l[static_cast<std::size_t>(j)] != 0)
            ls += pw.scaled(Real::of(l[static_cast<std::size_t>(j)], prec));
    }
    Complex lhs = cexp(ls.scaled(Real::of(delta, prec)));
    // right side
    FrameTable frames(spec, prec);
    const auto& e = frames.get(h, k);
    Complex rhs_log{Real::of(0L, prec), pi * Real::of(delta * e.phase, prec)};
    Complex inv_z = Complex{Real::of(1L, prec), Real::of(0L, prec)} / z;
    Complex growth =
        (z.scaled(Real::of(spec.Omega() / k, prec)) + inv_z.scaled(Real::of(e.frame.Delta * k, prec)))
            .scaled(Real::of(delta, prec) * pi / Real::of(12 * k, prec));
    rhs_log += growth;
    Complex one{prec};
    one.re = Real::of(1L, prec);
    Real thresh = Real::of(1L, prec);
    mpfr_mul_2si(thresh.raw(), thresh.raw(), -(static_cast<long>(prec) + 8), MPFR_RNDN);
    for (const auto& f : e.frame.factors) {
        Rational a_exp(Integer(f.m) * f.d + f.lambda * f.n * f.h_prime * f.d, Integer(k) * f.n);
        Complex q1_log = inv_z.scaled(-two_pi * Real::of(f.lambda_star, prec) *
                                      Real::of(Rational(f.d * f.d, f.n), prec));
        q1_log.im += two_pi * Real::of(frac_rational(a_exp), prec);
        Complex q2_log = inv_z.scaled(-two_pi * Real::of(Rational(f.d * f.d, f.n), prec));
        q2_log.im += two_pi * Real::of(Rational(f.h_prime * f.d, k), prec);
        Complex q1 = cexp(q1_log);
        Complex q2 = cexp(q2_log);
        Complex x = q1, y = q2 / q1;
        for (long j = 0;; ++j) {
            rhs_log += (clog(one - x) + clog(one - y)).scaled(Real::of(f.u, prec) * Real::of(delta, prec));
            x = x * q2;
            y = y * q2;
            if (cabs(x) < thresh && cabs(y) < thresh) break;
            if (j > 1000000) throw std::runtime_error("transformation_check: slow Pochhammer");
        }
    }
    Complex rhs = cexp(rhs_log);
    return cabs(lhs - rhs) / cabs(lhs);
}

}  // namespace qsign
