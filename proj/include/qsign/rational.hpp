#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsign {

using Integer = mpz_class;
using Rational = mpq_class;

/* Smallest integer not less than x. */
Integer ceil_rational(const Rational& x);

/* Greatest integer not exceeding x. */
Integer floor_rational(const Rational& x);

/* Fractional part in [0,1). */
Rational frac_rational(const Rational& x);

long lcm_long(long a, long b);

/* Parses "p/q", "p", or a plain decimal like "-0.772" into an exact
 * rational. Throws std::invalid_argument on malformed input. */
Rational parse_rational(const std::string& s);

/* "p/q" when the denominator is not 1, otherwise just "p". */
std::string format_rational(const Rational& x);

/* Decimal rendering with the requested number of fractional digits,
 * rounded toward the nearest (ties away from zero). */
std::string format_decimal(const Rational& x, int digits);

/* Directed decimal rendering: toward -inf (down=true) or +inf. */
std::string format_decimal_directed(const Rational& x, int digits, bool down);

/* Closed interval with exact rational endpoints. Irrational quantities
 * enter the library only as such brackets. */
struct RationalInterval {
    Rational lo;
    Rational hi;

    RationalInterval() : lo(0), hi(0) {}
    RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (this->lo > this->hi)
            throw std::invalid_argument("RationalInterval: lo > hi");
    }
    static RationalInterval point(const Rational& x) { return {x, x}; }

    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }

    RationalInterval hull(const RationalInterval& o) const {
        return {lo < o.lo ? lo : o.lo, hi > o.hi ? hi : o.hi};
    }
};

/* Rational brackets of the named irrational constants used on the
 * command line, e.g. "(sqrt(97)-5)/2".  width bounds hi-lo. */
std::optional<RationalInterval> named_constant(const std::string& name, const Rational& width);

}  // namespace qsign
