#include "qsign/rational.hpp"

#include <cctype>
#include <numeric>

namespace qsign {

Integer ceil_rational(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Integer floor_rational(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Rational frac_rational(const Rational& x) {
    return x - Rational(floor_rational(x));
}

long lcm_long(long a, long b) {
    return std::lcm(a, b);
}

Rational parse_rational(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational r;
        if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational literal: " + s);
        r.canonicalize();
        if (r.get_den() == 0)
            throw std::invalid_argument("zero denominator: " + s);
        return r;
    }
    // decimal, possibly with exponent
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }
    std::string digits;
    long frac_len = 0, exp10 = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_dot) ++frac_len;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            exp10 = std::stol(s.substr(i + 1));
            break;
        } else {
            throw std::invalid_argument("bad numeric literal: " + s);
        }
    }
    if (!seen_digit)
        throw std::invalid_argument("bad numeric literal: " + s);
    Integer num(digits.empty() ? "0" : digits);
    if (neg) num = -num;
    Rational r(num);
    long shift = exp10 - frac_len;
    if (shift > 0) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        r *= Rational(p);
    } else if (shift < 0) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        r /= Rational(p);
    }
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string format_decimal(const Rational& x, int digits) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational scaled = x * Rational(scale);
    // round to nearest, ties away from zero
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_num().get_mpz_t(),
                scaled.get_den().get_mpz_t());
    Integer rounded = q;
    Integer twice_r = 2 * r;
    if (twice_r > scaled.get_den() || (twice_r == scaled.get_den() && scaled.get_num() >= 0))
        rounded += 1;
    bool neg = rounded < 0;
    Integer mag = neg ? Integer(-rounded) : rounded;
    std::string sdig = mag.get_str();
    if (digits == 0) return (neg ? "-" : "") + sdig;
    if (static_cast<int>(sdig.size()) <= digits)
        sdig.insert(0, digits + 1 - sdig.size(), '0');
    sdig.insert(sdig.size() - digits, ".");
    return (neg ? "-" : "") + sdig;
}

std::string format_decimal_directed(const Rational& x, int digits, bool down) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational scaled = x * Rational(scale);
    Integer rounded = down ? floor_rational(scaled) : ceil_rational(scaled);
    bool neg = rounded < 0;
    Integer mag = neg ? Integer(-rounded) : rounded;
    std::string sdig = mag.get_str();
    if (digits == 0) return (neg ? "-" : "") + sdig;
    if (static_cast<int>(sdig.size()) <= digits)
        sdig.insert(0, digits + 1 - sdig.size(), '0');
    sdig.insert(sdig.size() - digits, ".");
    return (neg ? "-" : "") + sdig;
}

namespace {

/* Bracket sqrt(a) with error < width, endpoints dyadic rationals. */
RationalInterval sqrt_bracket(long a, const Rational& width) {
    // choose 2^-t < width
    unsigned long t = 1;
    Rational w(1, 2);
    while (w >= width && t < 4096) { w /= 2; ++t; }
    Integer scaled = Integer(a);
    Integer four_t;
    mpz_ui_pow_ui(four_t.get_mpz_t(), 4, t);
    scaled *= four_t;
    Integer s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    Integer two_t;
    mpz_ui_pow_ui(two_t.get_mpz_t(), 2, t);
    return {Rational(s) / Rational(two_t), Rational(s + 1) / Rational(two_t)};
}

}  // namespace

std::optional<RationalInterval> named_constant(const std::string& name, const Rational& width) {
    // forms: "sqrt<A>m<B>over<C>"  -> (sqrt(A)-B)/C
    //        "<B>msqrt<A>over<C>"  -> (B-sqrt(A))/C
    auto parse_tail = [](const std::string& t, long& b, long& c) -> bool {
        auto over = t.find("over");
        if (over == std::string::npos) return false;
        try {
            b = std::stol(t.substr(0, over));
            c = std::stol(t.substr(over + 4));
        } catch (...) { return false; }
        return c > 0;
    };
    if (name.rfind("sqrt", 0) == 0) {
        auto mpos = name.find('m', 4);
        if (mpos == std::string::npos) return std::nullopt;
        long a = 0, b = 0, c = 0;
        try { a = std::stol(name.substr(4, mpos - 4)); } catch (...) { return std::nullopt; }
        if (!parse_tail(name.substr(mpos + 1), b, c)) return std::nullopt;
        auto s = sqrt_bracket(a, width * c);
        return RationalInterval{(s.lo - b) / c, (s.hi - b) / c};
    }
    auto msqrt = name.find("msqrt");
    if (msqrt != std::string::npos) {
        long a = 0, b = 0, c = 0;
        try { b = std::stol(name.substr(0, msqrt)); } catch (...) { return std::nullopt; }
        auto over = name.find("over", msqrt + 5);
        if (over == std::string::npos) return std::nullopt;
        try {
            a = std::stol(name.substr(msqrt + 5, over - msqrt - 5));
            c = std::stol(name.substr(over + 4));
        } catch (...) { return std::nullopt; }
        if (c <= 0) return std::nullopt;
        auto s = sqrt_bracket(a, width * c);
        return RationalInterval{(b - s.hi) / c, (b - s.lo) / c};
    }
    return std::nullopt;
}

}  // namespace qsign
