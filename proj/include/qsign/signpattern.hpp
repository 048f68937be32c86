#pragma once

#include "qsign/asymptotic.hpp"
#include "qsign/qseries.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qsign {

enum class Symbol { plus, minus, zero };

struct SignPattern {
    std::vector<Symbol> symbols;

    static SignPattern parse(const std::string& text);  // characters +, -, 0
    long period() const { return static_cast<long>(symbols.size()); }
    Symbol at(long n) const { return symbols[static_cast<std::size_t>(n % period())]; }
    std::string to_string() const;
};

enum class Verdict { strict_match, weak_match, zero_match, violation };

struct ExactVerdict {
    long n = 0;
    Verdict verdict = Verdict::violation;
    RationalInterval range;  // degenerate for point delta
};

/* Per-n comparison of the rigorous coefficient range against the
 * pattern symbol.  A '0' symbol is accepted only when the coefficient
 * is identically zero (symbolically for interval delta, exactly for
 * point delta).  tol controls only the tightness of the reported
 * enclosures, not soundness. */
std::vector<ExactVerdict> verify_exact(const ProductSpec& spec, const RationalInterval& delta,
                                       const SignPattern& pattern, long n_max,
                                       const Rational& tol);

struct AsymptoticReport {
    bool ok = false;
    long n_start = 0;
    /* level 1: dominant frames at k = kappa* */
    double ratio1 = 0;        // certified envelope of |c - D|/A at n_start
    double min_cos1 = 0;      // smallest |C(r)| over level-1 residues
    /* level 2 (engaged when some residues have C(r) = 0 exactly) */
    bool used_secondary = false;
    double ratio2 = 0;
    double min_cos2 = 0;
    /* residues (mod pattern period) whose zero symbols rest on the
     * vanishing identity, checked exactly up to the stated window */
    std::vector<long> identity_zero_residues;
    long identity_checked_to = 0;
    bool cross_check_ok = false;  // |main| > bound at n_start, signs match
    std::string note;
};

/* The threshold argument: compares the certified remainder envelope
 * (valid for all n >= n_start) against the dominant cosine combination
 * per residue.  delta must be a positive point or interval. */
AsymptoticReport asymptotic_certificate(const ProductSpec& spec, const RationalInterval& delta,
                                        const SignPattern& pattern, long n_start,
                                        mpfr_prec_t prec = 192);

enum class CertStatus { proven, refuted, inconclusive };

struct Certificate {
    ProductSpec spec;          // possibly rewritten (negative delta)
    RationalInterval delta;    // possibly negated to the positive side
    bool negated = false;      // true when the input delta was negative
    SignPattern pattern;
    long exact_upto = 0;       // exclusive
    std::vector<ExactVerdict> exact_results;
    AsymptoticReport asymptotic;
    CertStatus status = CertStatus::inconclusive;
    long refuted_at = -1;
    std::string note;
};

/* Composes the asymptotic stage at n_start (searched upward when not
 * given) with exact verification below it.  Negative delta ranges are
 * rewritten with the exponents negated. */
Certificate certify(const ProductSpec& spec, const RationalInterval& delta,
                    const SignPattern& pattern, std::optional<long> n_start = std::nullopt,
                    mpfr_prec_t prec = 192);

/* Isolating brackets for the real roots of c_delta(n) inside the
 * search interval; recovers the conjectures' critical constants. */
std::vector<RationalInterval> critical_delta(const ProductSpec& spec, long n,
                                             const RationalInterval& search,
                                             const Rational& width);

struct TableRow {
    long n = 0;
    RationalInterval range;    // the rigorous enclosure itself
    std::string lo, hi;        // endpoints rounded outward to `decimals`
};

std::vector<TableRow> table_ranges(const ProductSpec& spec, const RationalInterval& delta,
                                   long n_max, int decimals);

const char* verdict_name(Verdict v);
const char* status_name(CertStatus s);

}  // namespace qsign
