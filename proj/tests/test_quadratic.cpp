#include <gtest/gtest.h>

#include "padic_sylvester/quadratic.hpp"
#include "support/oracles.hpp"

using namespace padic_sylvester;

namespace {

const Prime p3(3), p7(7);

Rat R(long n, long d = 1) { return make_rat(Integer(n), Integer(d)); }

// Q(sqrt 11) inside Q_7 with sqrt(11) = 2 mod 7, so xi = sqrt(11)/11 = 4 mod 7.
QuadContextPtr field11(RealSign sign = RealSign::positive) { return QuadContext::make(R(11), sign, p7, Integer(2)); }

QuadElement xi(RealSign sign = RealSign::positive) { return QuadElement(field11(sign), R(0), R(1, 11)); }

// p-adic image of x + y sqrt(d) mod p^m for p-integral x, y, with sqrt(d)
// taken from the enumeration oracle.
Integer image_mod(const Rat& x, const Rat& y, long d, long p, long m, long r0) {
    auto roots = oracle::square_roots(Integer(d), Integer(p), m, Integer(r0));
    EXPECT_EQ(roots.size(), 1u);
    Integer modulus = 1;
    for (long i = 0; i < m; ++i) modulus *= p;
    return mod_floor(rat_mod(x, modulus) + rat_mod(y, modulus) * roots.at(0), modulus);
}

TEST(QuadContext, Validation) {
    auto expect_kind = [](auto&& make, ErrorKind kind) {
        try {
            make();
            ADD_FAILURE() << "no error";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), kind);
        }
    };
    expect_kind([] { QuadContext::make(R(9), RealSign::positive, p7, Integer(3)); }, ErrorKind::not_a_square_free_field);
    expect_kind([] { QuadContext::make(R(-11), RealSign::positive, p7, Integer(2)); },
                ErrorKind::not_a_square_free_field);
    expect_kind([] { QuadContext::make(R(11), RealSign::positive, Prime(2), Integer(1)); }, ErrorKind::even_prime);
    expect_kind([] { QuadContext::make(R(11), RealSign::positive, p7, Integer(3)); }, ErrorKind::not_a_residue);
    expect_kind([] { QuadContext::make(R(14), RealSign::positive, p7, Integer(0)); },
                ErrorKind::precondition_violated);
}

TEST(QuadContext, NormalizesToSquareFreeRadicand) {
    // sqrt(44/9) = (2/3) sqrt(11); the residue 6 = (2/3) * 2 mod 7 pairs with sqrt(11) = 2
    auto ctx = QuadContext::make(R(44, 9), RealSign::positive, p7, Integer(6));
    EXPECT_EQ(ctx->squarefree_radicand(), 11);
    EXPECT_EQ(ctx->scale(), R(2, 3));
    EXPECT_EQ(ctx->root_residue(), 2);
    EXPECT_EQ(*ctx, *field11());

    QuadElement u(ctx, R(0), R(1));
    EXPECT_EQ(u.y(), R(2, 3));
    EXPECT_EQ(u.y_of_sqrt_d(), R(1));
    EXPECT_EQ(u * u, QuadElement::rational(ctx, R(44, 9)));
}

TEST(QuadArith, Examples) {
    auto ctx = field11();
    QuadElement inv = QuadElement(ctx, R(0), R(1, 11)).inverse();
    EXPECT_EQ(inv, QuadElement(ctx, R(0), R(1)));
    EXPECT_EQ(inv * QuadElement(ctx, R(0), R(1, 11)), QuadElement::rational(ctx, R(1)));

    QuadElement one_one(ctx, R(1), R(1));
    EXPECT_TRUE((one_one - one_one).is_zero());

    QuadElement root(ctx, R(0), R(1));
    EXPECT_EQ(root * root, QuadElement(ctx, R(11), R(0)));
}

TEST(QuadArith, DivisionAndErrors) {
    auto ctx = field11();
    QuadElement u(ctx, R(3), R(-2, 5)), w(ctx, R(-1, 7), R(4));
    EXPECT_EQ((u / w) * w, u);
    EXPECT_EQ(u - R(3), QuadElement(ctx, R(0), R(-2, 5)));
    EXPECT_EQ(R(1) - u, QuadElement(ctx, R(-2), R(2, 5)));
    try {
        (void)QuadElement(ctx, R(0), R(0)).inverse();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::div_by_zero);
    }
    QuadElement other(field11(RealSign::negative), R(1), R(1));
    try {
        (void)(u + other);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::embedding_mismatch);
    }
    // equal contexts built separately are compatible
    EXPECT_NO_THROW((void)(u + QuadElement(field11(), R(1), R(1))));
}

TEST(RealCompare, Examples) {
    auto root2 = QuadContext::make(R(2), RealSign::positive, p7, Integer(3));
    EXPECT_EQ(real_compare(QuadElement(root2, R(0), R(1)), R(1)), std::strong_ordering::greater);
    EXPECT_EQ(real_compare(xi(RealSign::negative), R(0)), std::strong_ordering::less);
    EXPECT_EQ(real_compare(QuadElement(field11(), R(3, 2), R(0)), R(3, 2)), std::strong_ordering::equal);
}

TEST(RealCeil, Examples) {
    EXPECT_EQ(real_ceil(QuadElement(field11(), R(0), R(1))), 4);
    EXPECT_EQ(real_ceil(xi(RealSign::negative)), 0);
    EXPECT_EQ(real_ceil(R(5, 3)), 2);
    EXPECT_EQ(real_ceil(R(-5, 3)), -1);
    EXPECT_EQ(real_ceil(R(4)), 4);
    EXPECT_EQ(real_ceil(QuadElement(field11(), R(4), R(0))), 4);
}

TEST(RealCeil, AgreesWithFloatingPointAwayFromIntegers) {
    oracle::Rng rng(21);
    std::vector<long> radicands{2, 3, 5, 6, 7, 10, 11, 13, 14, 15};
    for (int i = 0; i < 3000; ++i) {
        long d = rng.pick(radicands);
        RealSign sign = rng.uniform(0, 1) ? RealSign::positive : RealSign::negative;
        // any odd prime not dividing d with d a residue
        std::optional<Prime> p;
        std::optional<Integer> r0;
        for (unsigned long q : {3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL}) {
            if (d % static_cast<long>(q) == 0) continue;
            for (unsigned long s = 1; s < q; ++s)
                if ((s * s) % q == static_cast<unsigned long>(d) % q) {
                    p = Prime(q);
                    r0 = Integer(s);
                    break;
                }
            if (p) break;
        }
        ASSERT_TRUE(p);
        auto ctx = QuadContext::make(R(d), sign, *p, *r0);
        Rat x = rng.nonzero_rational(100000, 1000), y = rng.nonzero_rational(100000, 1000);
        QuadElement u(ctx, x, y);
        long double value = oracle::approx(x, sign == RealSign::positive ? y : Rat(-y), d);
        long double nearest = std::nearbyint(value);
        if (std::fabs(value - nearest) < 1e-6L) continue;
        EXPECT_EQ(real_ceil(u), Integer(static_cast<long>(std::ceil(value)))) << x << " + " << y << " sqrt " << d;
        EXPECT_EQ(real_compare(u, Rat(0)), value > 0 ? std::strong_ordering::greater : std::strong_ordering::less);
    }
}

TEST(QuadOrd, Examples) {
    EXPECT_EQ(quad_ord(xi()), 0);
    EXPECT_EQ(quad_ord(xi() * R(7)), 1);
    EXPECT_EQ(quad_ord(QuadElement(field11(), R(7), R(0))), 1);
    EXPECT_THROW((void)quad_ord(QuadElement(field11(), R(0), R(0))), Error);
}

TEST(QuadOrd, DetectsCancellationAgainstTheChosenRoot) {
    // sqrt(11) - 2 vanishes mod 7 under the root 2 but not under the root 5
    auto plus = field11();
    auto minus = QuadContext::make(R(11), RealSign::positive, p7, Integer(5));
    QuadElement a(plus, R(-2), R(1)), b(minus, R(-2), R(1));
    EXPECT_GE(quad_ord(a), 1);
    EXPECT_EQ(quad_ord(b), 0);
    // the order is exact: image mod 7^(ord+1) is nonzero
    long v = quad_ord(a);
    EXPECT_NE(image_mod(R(-2), R(1), 11, 7, v + 1, 2), 0);
    EXPECT_EQ(image_mod(R(-2), R(1), 11, 7, v, 2), 0);
}

TEST(QuadOrd, Multiplicative) {
    oracle::Rng rng(22);
    auto ctx = field11();
    for (int i = 0; i < 500; ++i) {
        QuadElement u(ctx, rng.nonzero_rational(500, 500) * oracle::power(7, rng.uniform(-2, 2)),
                      rng.nonzero_rational(500, 500));
        QuadElement w(ctx, rng.nonzero_rational(500, 500), rng.nonzero_rational(500, 500) * oracle::power(7, rng.uniform(-2, 2)));
        EXPECT_EQ(quad_ord(u * w), quad_ord(u) + quad_ord(w));
        EXPECT_EQ(quad_ord(u.inverse()), -quad_ord(u));
    }
}

TEST(QuadFracPartK, Examples) {
    EXPECT_EQ(quad_frac_part_k(xi().inverse(), 1).to_rat(), R(2));
    auto ctx3 = QuadContext::make(R(7), RealSign::positive, p3, Integer(1));
    EXPECT_EQ(quad_frac_part_k(QuadElement::rational(ctx3, R(25, 473)), 1).to_rat(), R(2));
    EXPECT_TRUE(quad_frac_part_k(xi() * R(49), 1).is_zero());
    EXPECT_TRUE(quad_frac_part_k(xi() * R(49), 2).is_zero());
}

TEST(QuadFracPartK, AgreesWithRationalPath) {
    oracle::Rng rng(23);
    auto ctx = field11();
    for (int i = 0; i < 500; ++i) {
        Rat r = rng.nonzero_rational(100000, 100000) * oracle::power(7, rng.uniform(-3, 3));
        long k = rng.uniform(-3, 5);
        EXPECT_EQ(quad_frac_part_k(QuadElement::rational(ctx, r), k), frac_part_k(p7, k, r));
    }
}

TEST(QuadFracPartK, MatchesImageFromEnumeratedRoot) {
    oracle::Rng rng(24);
    auto ctx = field11();
    for (int i = 0; i < 300; ++i) {
        // p-integral units x + y sqrt(11): truncation to k digits is the image mod 7^k
        Rat x = rng.nonzero_rational(1000, 1000), y = rng.nonzero_rational(1000, 1000);
        if (oracle::order(x, 7) < 0 || oracle::order(y, 7) < 0) continue;
        QuadElement u(ctx, x, y);
        if (quad_ord(u) != 0) continue;
        long k = rng.uniform(1, 3);
        EXPECT_EQ(quad_frac_part_k(u, k).to_rat(), Rat(image_mod(x, y, 11, 7, k, 2)));
    }
}

}  // namespace
