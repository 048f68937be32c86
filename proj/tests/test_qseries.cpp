#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qsign/polynomial.hpp"
#include "qsign/qseries.hpp"

#include <random>

using namespace qsign;

namespace {
Rational Q(long n, long d = 1) { return Rational(n, d); }
}

TEST_CASE("spec parsing and derived data") {
    auto q5 = ProductSpec::parse("Q5");
    CHECK(q5.factors().size() == 2);
    CHECK(q5.L() == 5);
    CHECK(q5.Omega() == Q(24, 5));
    CHECK(ProductSpec::parse("Q6").Omega() == Q(2));
    CHECK(ProductSpec::parse("Q8").Omega() == Q(12));
    CHECK(ProductSpec::parse("Q10").Omega() == Q(72, 5));
    CHECK(ProductSpec::parse("Q12").Omega() == Q(24));
    CHECK(ProductSpec::parse("1:5:1,2:5:-1") == q5);
    CHECK(ProductSpec::parse("G3") == ProductSpec::parse("1:3:1"));
    CHECK(ProductSpec::parse("BORWEIN:5") == ProductSpec::parse("1:5:1,2:5:1"));
    CHECK_THROWS(ProductSpec::parse("5:5:1"));
    CHECK_THROWS(ProductSpec::parse("1:5:0"));
    CHECK_THROWS(ProductSpec::parse("BORWEIN:4"));
    CHECK(q5.inverse().Omega() == Q(-24, 5));
}

TEST_CASE("integer product expansion") {
    // Q6 to order 6: the first two binomials give 1 - q - q^5 + q^6
    auto s = expand_integer_product(ProductSpec::parse("Q6"), 6);
    QSeries expect{Q(1), Q(-1), Q(0), Q(0), Q(0), Q(-1), Q(1)};
    CHECK(s == expect);
    // empty product
    CHECK(expand_integer_product(ProductSpec{}, 5) ==
          QSeries{Q(1), Q(0), Q(0), Q(0), Q(0), Q(0)});
    // Q5 at order 4 agrees with the delta-power path at delta = 1
    auto a = expand_integer_product(ProductSpec::parse("Q5"), 4);
    auto b = expand_real_power(ProductSpec::parse("Q5"), 4).eval_at(Q(1));
    CHECK(a == b);
}

TEST_CASE("log and exp") {
    QSeries one_minus_q{Q(1), Q(-1), Q(0), Q(0)};
    CHECK(series_log(one_minus_q, 3) == QSeries{Q(0), Q(-1), Q(-1, 2), Q(-1, 3)});
    QSeries one{Q(1), Q(0), Q(0), Q(0), Q(0), Q(0)};
    CHECK(series_log(one, 5) == QSeries{Q(0), Q(0), Q(0), Q(0), Q(0), Q(0)});
    CHECK(series_exp(QSeries{Q(0)}, 0) == QSeries{Q(1)});
    CHECK(series_exp(QSeries{Q(0), Q(-1), Q(-1, 2), Q(-1, 3), Q(-1, 4)}, 4) ==
          QSeries{Q(1), Q(-1), Q(0), Q(0), Q(0)});
    CHECK(series_exp(QSeries{Q(0), Q(1)}, 4) ==
          QSeries{Q(1), Q(1), Q(1, 2), Q(1, 6), Q(1, 24)});
    CHECK_THROWS_AS(series_log(QSeries{Q(2)}, 1), std::domain_error);
    CHECK_THROWS_AS(series_exp(QSeries{Q(1)}, 1), std::domain_error);
    // round trip on the Q5 integer expansion
    auto s = expand_integer_product(ProductSpec::parse("Q5"), 30);
    CHECK(series_exp(series_log(s, 30), 30) == s);
}

TEST_CASE("round trip on random small specs") {
    std::mt19937 rng(20240817);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<ProductFactor> fs;
        int cnt = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < cnt; ++i) {
            long n = 2 + static_cast<long>(rng() % 9);
            long m = 1 + static_cast<long>(rng() % (n - 1));
            long u = 1 + static_cast<long>(rng() % 3);
            if (rng() % 2) u = -u;
            fs.push_back({m, n, u});
        }
        ProductSpec spec(fs);
        long order = 10 + static_cast<long>(rng() % 31);
        auto s = expand_integer_product(spec, order);
        CHECK(series_exp(series_log(s, order), order) == s);
    }
}

TEST_CASE("delta series basics") {
    auto ds = expand_real_power(ProductSpec::parse("Q5"), 10);
    // constant term is 1 for every delta
    CHECK(ds.coeffs[0] == DeltaPolynomial::constant(Q(1)));
    // coefficient of q^1 is the polynomial -delta
    CHECK(ds.coeffs[1] == DeltaPolynomial({Q(0), Q(-1)}));
    // degree bound
    for (long n = 0; n <= 10; ++n) CHECK(ds.coeffs[static_cast<std::size_t>(n)].degree() <= n);
    // c4 = d(d+1)(d^2+5d-18)/24 vanishes at (sqrt(97)-5)/2; check at a
    // tight bracket midpoint
    auto root = named_constant("sqrt97m5over2", Q(1, 1000000000000L));
    REQUIRE(root.has_value());
    Rational mid = root->mid();
    Rational val = ds.coeffs[4].eval(mid);
    CHECK(std::abs(val.get_d()) < 1e-11);
}

TEST_CASE("integer-power consistency to order 60") {
    for (const char* name : {"Q5", "Q6", "Q8", "Q10", "Q12"}) {
        auto spec = ProductSpec::parse(name);
        auto ds = expand_real_power(spec, 60);
        for (long d = 1; d <= 3; ++d) {
            auto scaled = spec.factors();
            for (auto& f : scaled) f.u *= d;
            auto direct = expand_integer_product(ProductSpec(scaled), 60);
            CHECK(ds.eval_at(Q(d)) == direct);
            CHECK(coefficients_at(spec, Q(d), 60) == direct);
        }
    }
}

TEST_CASE("point evaluation matches the symbolic path at rational delta") {
    auto spec = ProductSpec::parse("Q8");
    auto ds = expand_real_power(spec, 40);
    for (Rational d : {Q(1, 2), Q(-3, 7), Q(5, 3)})
        CHECK(coefficients_at(spec, d, 40) == ds.eval_at(d));
}

TEST_CASE("poly_range_over_interval") {
    // monotone linear: exact
    DeltaPolynomial p({Q(0), Q(-1)});
    auto iv = RationalInterval{Q(1), Q(24244, 10000)};
    auto r = poly_range_over_interval(p, iv, Q(1, 1000));
    CHECK(r.lo == Q(-24244, 10000));
    CHECK(r.hi == Q(-1));
    // constant
    auto rc = poly_range_over_interval(DeltaPolynomial::constant(Q(1)), iv, Q(1));
    CHECK(rc.lo == Q(1));
    CHECK(rc.hi == Q(1));
    // Q5 coefficient of q^2 = d(d+1)/2 over [1, (sqrt97-5)/2]: table row [1, 4.2]
    auto ds = expand_real_power(ProductSpec::parse("Q5"), 2);
    auto root = named_constant("sqrt97m5over2", Q(1, 1000000000000L));
    auto r2 = poly_range_over_interval(ds.coeffs[2], RationalInterval{Q(1), root->hi}, Q(1, 100));
    CHECK(r2.lo == Q(1));
    CHECK(format_decimal(r2.hi, 1) == "4.2");
}

TEST_CASE("range soundness on random polynomials") {
    std::mt19937 rng(987654321);
    auto rnd_rat = [&](long scale) {
        long num = static_cast<long>(rng() % (2 * scale + 1)) - scale;
        long den = 1 + static_cast<long>(rng() % 9);
        return Rational(num, den);
    };
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<Rational> cs;
        int deg = 1 + static_cast<int>(rng() % 7);
        for (int i = 0; i <= deg; ++i) cs.push_back(rnd_rat(50));
        DeltaPolynomial p(cs);
        Rational a = rnd_rat(30), b = a + Q(1 + static_cast<long>(rng() % 40), 7);
        RationalInterval iv{a, b};
        auto r = poly_range_over_interval(p, iv, Q(1, 1000));
        for (int s = 0; s <= 10; ++s) {
            Rational x = a + (b - a) * Q(s, 10);
            Rational v = p.eval(x);
            CHECK(r.lo <= v);
            CHECK(v <= r.hi);
        }
    }
}

TEST_CASE("root isolation") {
    // d^2 + 5d - 18 has one root in [0,5], near 2.42442890
    DeltaPolynomial p({Q(-18), Q(5), Q(1)});
    auto roots = isolate_real_roots(p, RationalInterval{Q(0), Q(5)}, Q(1, 100000000));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].contains(Q(242442890, 100000000)));
    // no root of the identity polynomial d in [1,2]
    CHECK(isolate_real_roots(DeltaPolynomial({Q(0), Q(1)}), RationalInterval{Q(1), Q(2)}, Q(1))
              .empty());
    // the degree-7 polynomial whose unique root in (2,3) is alpha
    DeltaPolynomial conj1(
        {Q(282240), Q(-184752), Q(104300), Q(-14336), Q(-6055), Q(7), Q(35), Q(1)});
    auto r7 = isolate_real_roots(conj1, RationalInterval{Q(2), Q(3)}, Q(1, 10000000000000L));
    REQUIRE(r7.size() == 1);
    CHECK(r7[0].contains(Q(2571366313289L, 1000000000000L)));
    CHECK_THROWS_AS(isolate_real_roots(DeltaPolynomial{}, RationalInterval{Q(0), Q(1)}, Q(1)),
                    std::domain_error);
    // bracket midpoints of the Q5 q^4 polynomial are nearly roots
    auto ds = expand_real_power(ProductSpec::parse("Q5"), 4);
    auto r4 =
        isolate_real_roots(ds.coeffs[4], RationalInterval{Q(0), Q(5)}, Q(1, 1000000000000L));
    REQUIRE(r4.size() == 1);
    CHECK(std::abs(ds.coeffs[4].eval(r4[0].mid()).get_d()) < 1e-8);
}

TEST_CASE("rational helpers") {
    CHECK(parse_rational("3/4") == Q(3, 4));
    CHECK(parse_rational("-0.25") == Q(-1, 4));
    CHECK(parse_rational("1e-3") == Q(1, 1000));
    CHECK(parse_rational("2.5e2") == Q(250));
    CHECK(format_rational(Q(-7, 3)) == "-7/3");
    CHECK(format_decimal(Q(-24244289, 10000000), 1) == "-2.4");
    CHECK(format_decimal(Q(415, 100), 1) == "4.2");  // ties away from zero
    CHECK(format_decimal_directed(Q(-24244289, 10000000), 1, true) == "-2.5");
    CHECK(format_decimal_directed(Q(-24244289, 10000000), 1, false) == "-2.4");
    auto b = named_constant("7msqrt73over2", Q(1, 1L << 40));
    REQUIRE(b.has_value());
    CHECK(b->width() <= Q(1, 1L << 40));
    double mid = b->mid().get_d();
    CHECK(mid == doctest::Approx(-0.77200187265877).epsilon(1e-9));
}
