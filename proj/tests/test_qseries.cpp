#include <doctest.h>

#include <cstdint>

#include "qgen/qseries.hpp"

using namespace qgen;

namespace {

// deterministic small-coefficient generator for property checks
struct Lcg {
    std::uint64_t s = 0x2545F4914F6CDD1Dull;
    long next(long lo, long hi) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return lo + static_cast<long>((s >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

}  // namespace

TEST_CASE("series basics") {
    auto z = FormalSeries::zero(6);
    CHECK(z.is_zero_to_order());
    CHECK(z.valuation() == 6);
    CHECK(z.coeff(3) == Rational(0));
    CHECK_THROWS_AS(z.coeff(6), std::out_of_range);

    auto q2 = FormalSeries::binomial_power(2, 6);  // (1+eps)^2
    CHECK(q2.coeff(0) == Rational(1));
    CHECK(q2.coeff(1) == Rational(2));
    CHECK(q2.coeff(2) == Rational(1));
    CHECK(q2.coeff(3) == Rational(0));

    CHECK_THROWS_AS(q2 / FormalSeries::zero(6), DivisionByZero);
}

TEST_CASE("series inverse round-trip: (1/(1+S)) (1+S) = 1 to stored order") {
    Lcg rng;
    for (int trial = 0; trial < 20; ++trial) {
        const long bound = 8;
        FormalSeries s = FormalSeries::zero(bound);
        for (long e = 1; e < bound; ++e) {
            const long num = rng.next(-8, 8);
            const long den = rng.next(1, 9);
            s = s + FormalSeries::monomial(Rational(num, den), e, bound);
        }
        FormalSeries one_plus = FormalSeries::constant(Rational(1), bound) + s;
        FormalSeries inv = FormalSeries::constant(Rational(1), bound) / one_plus;
        CHECK(inv * one_plus == FormalSeries::constant(Rational(1), bound));
    }
}

TEST_CASE("series division tracks valuation") {
    const long bound = 8;
    // eps^2 * (1 + eps) divided by eps gives eps * (1 + eps)
    FormalSeries num = FormalSeries::monomial(Rational(1), 2, bound) +
                       FormalSeries::monomial(Rational(1), 3, bound);
    FormalSeries den = FormalSeries::monomial(Rational(1), 1, bound);
    FormalSeries q = num / den;
    CHECK(q.valuation() == 1);
    CHECK(q.coeff(1) == Rational(1));
    CHECK(q.coeff(2) == Rational(1));
}

TEST_CASE("truncation-bound tracking: low-order results are prefixes of high-order ones") {
    // every coefficient a truncated computation claims to know must agree
    // with the same computation carried out at a higher truncation order
    Lcg rng;
    for (int trial = 0; trial < 25; ++trial) {
        const long lo = 6, hi = 14;
        const auto gen = [&rng](long bound, long min_val) {
            FormalSeries s = FormalSeries::zero(bound);
            for (long e = min_val; e < 6; ++e)
                s = s + FormalSeries::monomial(Rational(rng.next(-6, 6), rng.next(1, 7)), e, bound);
            return s;
        };
        // same underlying polynomials at both bounds
        Lcg saved = rng;
        FormalSeries a_lo = gen(lo, 0), b_lo = gen(lo, 1);
        rng = saved;
        FormalSeries a_hi = gen(hi, 0), b_hi = gen(hi, 1);

        const FormalSeries prod_lo = a_lo * b_lo, prod_hi = a_hi * b_hi;
        for (long e = 0; e < prod_lo.bound(); ++e) CHECK(prod_lo.coeff(e) == prod_hi.coeff(e));

        const FormalSeries one_lo = FormalSeries::constant(Rational(1), lo) + b_lo;
        const FormalSeries one_hi = FormalSeries::constant(Rational(1), hi) + b_hi;
        const FormalSeries quot_lo = a_lo / one_lo, quot_hi = a_hi / one_hi;
        for (long e = quot_lo.valuation(); e < quot_lo.bound(); ++e)
            CHECK(quot_lo.coeff(e) == quot_hi.coeff(e));
    }
}

TEST_CASE("series_genocchi: closed expansions") {
    // n=1, beta=1: exactly 1 + eps/2
    auto g1 = series_genocchi(1, Weights(1, 1), 6);
    CHECK(g1.coeff(0) == Rational(1));
    CHECK(g1.coeff(1) == Rational(1, 2));
    CHECK(g1.coeff(2) == Rational(0));
    CHECK(g1.coeff(3) == Rational(0));

    // n=2 with alpha = beta: the constant series -1
    for (unsigned a = 1; a <= 3; ++a) {
        auto g2 = series_genocchi(2, Weights(a, a), 8);
        CHECK(g2.coeff(0) == Rational(-1));
        CHECK(g2.coeff(1) == Rational(0));
        CHECK(g2.coeff(2) == Rational(0));
    }

    // n=0: the zero series
    CHECK(series_genocchi(0, Weights(2, 3), 6).is_zero_to_order());

    CHECK_THROWS_AS(series_genocchi(3, Weights(1, 1), 4), OrderTooSmall);
}

TEST_CASE("classical Genocchi numbers from 2t/(e^t+1)") {
    const long expected[] = {0, 1, -1, 0, 1, 0, -3, 0, 17, 0, -155, 0, 2073};
    for (unsigned n = 0; n < 13; ++n) CHECK(classical_genocchi(n) == Rational(expected[n]));
    // odd Genocchi numbers vanish from index 3 on
    for (unsigned k = 1; k <= 7; ++k) CHECK(classical_genocchi(2 * k + 1) == Rational(0));
}

TEST_CASE("Genocchi convolution recurrence: (e^t+1) sum G_n t^n/n! = 2t") {
    // coefficient of t^n for n >= 2: sum_m C(n,m) G_m + G_n = 0; n = 1: G_0 + 2 G_1 = 2
    CHECK(classical_genocchi(0) == Rational(0));
    CHECK(classical_genocchi(0) + Rational(2) * classical_genocchi(1) == Rational(2));
    for (unsigned n = 2; n <= 14; ++n) {
        const auto binom = binomial_row(n);
        Rational s(0);
        for (unsigned m = 0; m <= n; ++m) s += Rational(binom[m]) * classical_genocchi(m);
        CHECK(s + classical_genocchi(n) == Rational(0));
    }
}

TEST_CASE("q->1 limit is weight independent and classical") {
    for (unsigned n = 0; n <= 12; ++n) {
        const Rational base = series_genocchi(n, Weights(1, 1), n + 4).coeff(0);
        CHECK(base == classical_genocchi(n));
        for (unsigned a = 1; a <= 3; ++a)
            for (unsigned b = 1; b <= 3; ++b)
                CHECK(series_genocchi(n, Weights(a, b), n + 4).coeff(0) == base);
    }
    CHECK(check_classical_limit(1, Weights(3, 2)).holds);
    CHECK(check_classical_limit(8, Weights(1, 1)).holds);
    CHECK(check_classical_limit(0, Weights(2, 2)).holds);
}
