#include "qsign/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qsign {

Rational DeltaPolynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

DeltaPolynomial DeltaPolynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
    return DeltaPolynomial(std::move(d));
}

std::vector<Rational> DeltaPolynomial::taylor_shift(const Rational& center) const {
    /* Repeated synthetic division: after pass k the residues are the
     * coefficients of p(center + t) in ascending order of t. */
    std::vector<Rational> w = c_;
    if (w.empty()) return w;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        for (std::size_t j = w.size() - 1; j > k; --j) w[j - 1] += center * w[j];
    }
    return w;
}

DeltaPolynomial& DeltaPolynomial::operator+=(const DeltaPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

DeltaPolynomial& DeltaPolynomial::mul_scalar(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
}

DeltaPolynomial& DeltaPolynomial::shift_up(long k) {
    if (!c_.empty() && k > 0) c_.insert(c_.begin(), static_cast<std::size_t>(k), Rational(0));
    return *this;
}

std::string DeltaPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = degree(); k >= 0; --k) {
        const Rational& a = c_[static_cast<std::size_t>(k)];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        Rational mag = a > 0 ? a : Rational(-a);
        if (mag != 1 || k == 0) os << format_rational(mag);
        if (k > 0) {
            if (mag != 1) os << "*";
            os << "d";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

namespace {

struct TaylorEnclosure {
    Rational value_lo, value_hi;  // p over the subinterval
    Rational deriv_lo, deriv_hi;  // p' over the subinterval
};

/* Enclose p and p' on [c-r, c+r] from the shifted coefficients b_k of
 * p(c+t):  p in b0 +- sum_{k>=1} |b_k| r^k,  p' in b1 +- sum_{k>=2}
 * k |b_k| r^{k-1}. */
TaylorEnclosure enclose(const std::vector<Rational>& b, const Rational& r) {
    TaylorEnclosure e;
    Rational b0 = b.empty() ? Rational(0) : b[0];
    Rational b1 = b.size() > 1 ? b[1] : Rational(0);
    Rational tail_v(0), tail_d(0), rk(r);
    for (std::size_t k = 1; k < b.size(); ++k) {
        Rational mag = b[k] >= 0 ? b[k] : Rational(-b[k]);
        tail_v += mag * rk;
        if (k >= 2) tail_d += Rational(static_cast<long>(k)) * mag * rk / r;
        rk *= r;
    }
    e.value_lo = b0 - tail_v;
    e.value_hi = b0 + tail_v;
    e.deriv_lo = b1 - tail_d;
    e.deriv_hi = b1 + tail_d;
    return e;
}

void range_rec(const DeltaPolynomial& p, const Rational& lo, const Rational& hi,
               const Rational& vlo, const Rational& vhi, const Rational& tol,
               RationalInterval& hull, int depth) {
    Rational emin = vlo < vhi ? vlo : vhi;
    Rational emax = vlo < vhi ? vhi : vlo;
    Rational c = (lo + hi) / 2;
    Rational r = (hi - lo) / 2;
    auto b = p.taylor_shift(c);
    auto e = enclose(b, r);
    if (e.deriv_lo > 0 || e.deriv_hi < 0) {
        // monotone: endpoint values are the exact extrema here
        hull = hull.hull({emin, emax});
        return;
    }
    if (e.value_hi - emax <= tol && emin - e.value_lo <= tol) {
        hull = hull.hull({e.value_lo, e.value_hi});
        return;
    }
    if (depth > 128)
        throw std::runtime_error("poly_range_over_interval: subdivision did not converge");
    Rational vc = p.eval(c);
    range_rec(p, lo, c, vlo, vc, tol, hull, depth + 1);
    range_rec(p, c, hi, vc, vhi, tol, hull, depth + 1);
}

}  // namespace

RationalInterval poly_range_over_interval(const DeltaPolynomial& p, const RationalInterval& iv,
                                          const Rational& tol) {
    if (tol <= 0) throw std::domain_error("poly_range_over_interval: tol must be positive");
    if (p.degree() <= 0) {
        Rational v = p.is_zero() ? Rational(0) : p.coeffs()[0];
        return RationalInterval::point(v);
    }
    Rational vlo = p.eval(iv.lo);
    if (iv.is_point()) return RationalInterval::point(vlo);
    Rational vhi = p.eval(iv.hi);
    RationalInterval hull{vlo < vhi ? vlo : vhi, vlo < vhi ? vhi : vlo};
    range_rec(p, iv.lo, iv.hi, vlo, vhi, tol / 2, hull, 0);
    return hull;
}

namespace {

/* Primitive integer image of a rational polynomial. */
std::vector<Integer> primitive_part(const std::vector<Rational>& c) {
    if (c.empty()) return {};
    Integer den(1);
    for (const auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<Integer> out(c.size());
    Integer g(0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        out[k] = c[k].get_num() * (den / c[k].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[k].get_mpz_t());
    }
    if (g > 1)
        for (auto& v : out) v /= g;
    return out;
}

int sign_of(const Integer& v) { return mpz_sgn(v.get_mpz_t()); }

Rational eval_int_poly(const std::vector<Integer>& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

}  // namespace

std::vector<std::vector<Integer>> sturm_chain(const DeltaPolynomial& p) {
    std::vector<std::vector<Integer>> chain;
    auto p0 = primitive_part(p.coeffs());
    auto p1 = primitive_part(p.derivative().coeffs());
    if (p0.empty()) return chain;
    chain.push_back(p0);
    if (p1.empty()) return chain;
    chain.push_back(p1);
    /* Euclidean chain with negated pseudo-remainders, content-stripped
     * to keep the integers small. */
    while (true) {
        const auto& a = chain[chain.size() - 2];
        const auto& b = chain[chain.size() - 1];
        if (b.size() == 0) break;
        long da = static_cast<long>(a.size()) - 1;
        long db = static_cast<long>(b.size()) - 1;
        if (db < 0) break;
        std::vector<Rational> rem(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) rem[k] = Rational(a[k]);
        Rational lead_b = Rational(b.back());
        for (long k = da; k >= db; --k) {
            Rational f = rem[static_cast<std::size_t>(k)] / lead_b;
            if (f == 0) continue;
            for (long j = 0; j <= db; ++j)
                rem[static_cast<std::size_t>(k - db + j)] -= f * Rational(b[static_cast<std::size_t>(j)]);
        }
        rem.resize(static_cast<std::size_t>(db > 0 ? db : 0));
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.empty()) break;
        for (auto& v : rem) v = -v;
        chain.push_back(primitive_part(rem));
    }
    return chain;
}

long sturm_variations(const std::vector<std::vector<Integer>>& chain, const Rational& x) {
    long var = 0;
    int prev = 0;
    for (const auto& poly : chain) {
        Rational v = eval_int_poly(poly, x);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s != 0) {
            if (prev != 0 && s != prev) ++var;
            prev = s;
        }
    }
    return var;
}

long count_roots(const DeltaPolynomial& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw std::domain_error("count_roots: zero polynomial");
    auto chain = sturm_chain(p);
    return sturm_variations(chain, a) - sturm_variations(chain, b);
}

std::vector<RationalInterval> isolate_real_roots(const DeltaPolynomial& p,
                                                 const RationalInterval& iv,
                                                 const Rational& width) {
    if (p.is_zero()) throw std::domain_error("isolate_real_roots: zero polynomial");
    if (width <= 0) throw std::domain_error("isolate_real_roots: width must be positive");
    auto chain = sturm_chain(p);
    std::vector<RationalInterval> out;
    /* Sturm counts roots in (a, b]; nudge the left end so a root exactly
     * at iv.lo is reported too. */
    Rational lo = iv.lo;
    if (p.eval(lo) == 0) lo -= width / 4;

    struct Item { Rational a, b; long count; };
    std::vector<Item> stack;
    long total = sturm_variations(chain, lo) - sturm_variations(chain, iv.hi);
    if (total > 0) stack.push_back({lo, iv.hi, total});
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (it.count == 1 && it.b - it.a <= width) {
            out.push_back({it.a, it.b});
            continue;
        }
        Rational m = (it.a + it.b) / 2;
        if (p.eval(m) == 0) m += (it.b - it.a) / 16;  // avoid splitting on a root
        long left = sturm_variations(chain, it.a) - sturm_variations(chain, m);
        long right = it.count - left;
        if (left > 0) stack.push_back({it.a, m, left});
        if (right > 0) stack.push_back({m, it.b, right});
    }
    std::sort(out.begin(), out.end(),
              [](const RationalInterval& x, const RationalInterval& y) { return x.lo < y.lo; });
    return out;
}

}  // namespace qsign
