#include <gtest/gtest.h>

#include "padic_sylvester/valuation.hpp"
#include "support/oracles.hpp"

using namespace padic_sylvester;

namespace {

const Prime p3(3), p7(7), p11(11);

Rat R(long n, long d = 1) { return make_rat(Integer(n), Integer(d)); }

TEST(Prime, AcceptsPrimesRejectsComposites) {
    EXPECT_NO_THROW(Prime(2));
    EXPECT_NO_THROW(Prime(Integer("18446744073709551557")));  // largest 64-bit prime
    for (unsigned long n : {0UL, 1UL, 4UL, 9UL, 561UL, 3215031751UL}) {
        try {
            Prime bad(n);
            ADD_FAILURE() << n << " accepted";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::invalid_prime);
        }
    }
}

TEST(Prime, AgreesWithTrialDivisionBelowTenThousand) {
    for (unsigned long n = 0; n < 10000; ++n) {
        bool trial = n >= 2;
        for (unsigned long d = 2; d * d <= n && trial; ++d) trial = n % d != 0;
        EXPECT_EQ(is_prime(Integer(n)), trial) << n;
    }
}

TEST(Ord, Examples) {
    EXPECT_EQ(ord(p11, R(5, 121)), Valuation(-2));
    EXPECT_EQ(ord(p7, R(1, 11)), Valuation(0));
    EXPECT_EQ(ord(p3, R(1150, 19683)), Valuation(-9));
    EXPECT_TRUE(ord(p3, Rat(0)).is_infinite());
}

TEST(Ord, InfinityExceedsEveryInteger) {
    Valuation inf = Valuation::infinity();
    EXPECT_GT(inf, Valuation(std::numeric_limits<long>::max()));
    EXPECT_LT(Valuation(-5), inf);
    EXPECT_EQ(inf, Valuation::infinity());
    EXPECT_EQ(std::min(inf, Valuation(3)), Valuation(3));
    EXPECT_THROW((void)inf.value(), Error);
}

TEST(UnitPart, Examples) {
    EXPECT_EQ(unit_part(p11, R(5, 121)), R(5));
    EXPECT_EQ(unit_part(p3, R(921)), R(307));
    EXPECT_NE(Integer(307) % 3, 0);
    EXPECT_EQ(unit_part(p3, R(50, 27)), R(50));
    try {
        (void)unit_part(p3, Rat(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::zero_input);
    }
}

TEST(PAbs, Examples) {
    EXPECT_EQ(p_abs(p3, Rat(0)), Rat(0));
    EXPECT_EQ(p_abs(p3, R(18)), R(1, 9));
    EXPECT_EQ(p_abs(p7, R(1, 11)), R(1));
}

TEST(AsPLocal, Examples) {
    PLocal x = as_plocal(p3, R(115, 81));
    EXPECT_EQ(x.unit(), 115);
    EXPECT_EQ(x.exponent(), -4);
    EXPECT_FALSE(try_as_plocal(p3, R(5, 7)).has_value());
    try {
        (void)as_plocal(p3, R(5, 7));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_in_ring);
    }
    PLocal zero = as_plocal(p3, Rat(0));
    EXPECT_EQ(zero.unit(), 0);
    EXPECT_EQ(zero.exponent(), 0);
}

TEST(PLocalArith, Examples) {
    PLocal two(p3, Integer(2), 0), five_thirds(p3, Integer(5), -1);
    PLocal product = two * five_thirds;
    EXPECT_EQ(product.unit(), 10);
    EXPECT_EQ(product.exponent(), -1);

    PLocal one(p3, Integer(1), 0);
    EXPECT_TRUE((one - one).is_zero());
    EXPECT_EQ((one - one).exponent(), 0);

    PLocal quotient = PLocal(p3, Integer(921)) / PLocal(p3, Integer(307));
    EXPECT_EQ(quotient.unit(), 1);
    EXPECT_EQ(quotient.exponent(), 1);
    EXPECT_EQ(Integer(921) / 307, 3);
}

TEST(PLocalArith, Errors) {
    PLocal one(p3, Integer(1));
    try {
        (void)(one / PLocal(p3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::div_by_zero);
    }
    try {
        (void)(one / PLocal(p3, Integer(5)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_in_ring);
    }
    EXPECT_THROW((void)(one + PLocal(p7, Integer(1))), Error);
}

TEST(PLocal, NormalizesPowersOfPIntoExponent) {
    PLocal x(p3, Integer(-54), 2);  // -2 * 3^3 * 3^2
    EXPECT_EQ(x.unit(), -2);
    EXPECT_EQ(x.exponent(), 5);
    EXPECT_EQ(x.to_rat(), R(-486));
}

TEST(ParseRat, AcceptsCanonicalForms) {
    EXPECT_EQ(parse_rat("473/25"), R(473, 25));
    EXPECT_EQ(parse_rat("-6/4"), R(-3, 2));
    EXPECT_EQ(parse_rat("12"), R(12));
    EXPECT_EQ(parse_rat("5/-10"), R(-1, 2));
    for (const char* bad : {"", "1/0", "a", "1/", "/3", "1.5", "--2"}) EXPECT_FALSE(parse_rat(bad)) << bad;
}

// ---------------------------------------------------------------------------
// properties

TEST(ValuationProperties, OrdIsMultiplicativeAndUltrametric) {
    oracle::Rng rng(1);
    std::vector<Prime> primes{Prime(2), p3, Prime(5), p7, p11, Prime(13)};
    for (int i = 0; i < 2000; ++i) {
        const Prime& p = rng.pick(primes);
        Rat x = rng.nonzero_rational(100000, 100000) * oracle::power(p.value(), rng.uniform(-4, 4));
        Rat y = rng.nonzero_rational(100000, 100000) * oracle::power(p.value(), rng.uniform(-4, 4));
        Valuation ox = ord(p, x), oy = ord(p, y);
        EXPECT_EQ(ox.value(), oracle::order(x, p.value()));
        EXPECT_EQ(ord(p, Rat(x * y)).value(), ox.value() + oy.value());
        Valuation sum = ord(p, Rat(x + y));
        EXPECT_GE(sum, std::min(ox, oy));
        if (ox != oy) {
            EXPECT_EQ(sum, std::min(ox, oy));
        }
    }
}

TEST(ValuationProperties, UnitPartReconstructsAndPLocalRoundTrips) {
    oracle::Rng rng(2);
    for (int i = 0; i < 2000; ++i) {
        Prime p(static_cast<unsigned long>(rng.pick(std::vector<long>{2, 3, 5, 7, 11})));
        Rat r = rng.nonzero_rational(1000000, 1000000);
        EXPECT_EQ(unit_part(p, r) * rat_pow_p(p, ord(p, r).value()), r);
        EXPECT_EQ(ord(p, unit_part(p, r)), Valuation(0));

        Rat local = Rat(r.get_num()) * oracle::power(p.value(), rng.uniform(-6, 6));
        PLocal x = as_plocal(p, local);
        EXPECT_EQ(x.to_rat(), local);
        EXPECT_EQ(as_plocal(p, x.to_rat()), x);
    }
}

TEST(ValuationProperties, PLocalArithmeticMatchesRationals) {
    oracle::Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        Prime p(static_cast<unsigned long>(rng.pick(std::vector<long>{3, 5, 7})));
        PLocal x(p, rng.integer(-5000, 5000), rng.uniform(-5, 5));
        PLocal y(p, rng.integer(-5000, 5000), rng.uniform(-5, 5));
        EXPECT_EQ((x + y).to_rat(), x.to_rat() + y.to_rat());
        EXPECT_EQ((x - y).to_rat(), x.to_rat() - y.to_rat());
        EXPECT_EQ((x * y).to_rat(), x.to_rat() * y.to_rat());
        if (!y.is_zero()) {
            EXPECT_EQ(((x * y) / y).to_rat(), x.to_rat());
        }
    }
}

}  // namespace
