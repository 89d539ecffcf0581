#pragma once

// Classical and p^k division with remainder.
//
// The p^k-division of b by a > 0 (a, b in Z[1/p], k any integer) produces
// the unique q, r in Z[1/p] with
//
//     b = a q - r,    0 <= r < a p^k,    |r|_p <= |a p^k|_p.
//
// Writing a = ahat p^alpha and b = bhat p^beta, the remainder is
// r = rbar p^(alpha + k) where rbar is the representative in [0, ahat) of
// -bhat p^(beta - alpha - k) mod ahat. A step "jumps" when p divides rbar.

#include <cstdint>

#include "valuation.hpp"

namespace padic_sylvester {

enum class DivisionCase {
    case1,  ///< k > ord(b) - ord(a): q = m p^(beta - alpha)
    case2,  ///< k <= ord(b) - ord(a): q = m p^k
};

inline std::string_view to_string(DivisionCase c) { return c == DivisionCase::case1 ? "case1" : "case2"; }

struct DivisionStep {
    PLocal a;
    PLocal b;
    long k = 0;
    PLocal q;
    PLocal r;
    Integer rbar;
    bool jumped = false;
    DivisionCase division_case = DivisionCase::case2;

    friend bool operator==(const DivisionStep&, const DivisionStep&) = default;
};

struct ClassicalDivision {
    Rat a;
    Rat b;
    Integer q;
    Rat r;
};

/// b = a q - r with 0 <= r < a and q integral, i.e. q = ceil(b / a).
/// Accepts rational operands; integer operands give the textbook case.
inline ClassicalDivision classical_divide(const Rat& a, const Rat& b) {
    if (sgn(a) <= 0) throw Error(ErrorKind::non_positive_divisor, "divisor must be positive");
    Integer q = ceil_of(b / a);
    Rat r = a * Rat(q) - b;
    return {a, b, q, r};
}

inline ClassicalDivision classical_divide(const Integer& a, const Integer& b) { return classical_divide(Rat(a), Rat(b)); }

inline DivisionStep pk_divide(const Prime& p, long k, const PLocal& a, const PLocal& b) {
    if (a.sign() <= 0) throw Error(ErrorKind::non_positive_divisor, "divisor must be positive");
    if (b.is_zero())
        return {a, b, k, PLocal(p), PLocal(p), Integer(0), false, DivisionCase::case2};

    const long alpha = a.exponent();
    const long beta = b.exponent();
    const Integer& ahat = a.unit();
    const Integer& bhat = b.unit();
    const long shift = beta - alpha - k;

    Integer rbar = ahat == 1 ? Integer(0) : mod_floor(-bhat * pow_p_mod(p, shift, ahat), ahat);

    DivisionStep step{a, b, k, PLocal(p), PLocal(p, rbar, alpha + k), rbar, false, DivisionCase::case2};
    step.jumped = rbar != 0 && mpz_divisible_p(rbar.get_mpz_t(), p.value().get_mpz_t());

    Integer numerator;
    if (k > beta - alpha) {
        step.division_case = DivisionCase::case1;
        numerator = rbar * pow_p(p, -shift) + bhat;
    } else {
        numerator = rbar + bhat * pow_p(p, shift);
    }
    Integer m;
    mpz_divexact(m.get_mpz_t(), numerator.get_mpz_t(), ahat.get_mpz_t());
    step.q = PLocal(p, m, step.division_case == DivisionCase::case1 ? beta - alpha : k);
    return step;
}

/// p^k division with rational operands, by clearing denominators.
struct RationalDivisionStep {
    Rat a;
    Rat b;
    long k = 0;
    PLocal q;
    Rat r;
    DivisionStep cleared;  ///< the step on a' = u t, b' = s v
};

inline RationalDivisionStep pk_divide_rational(const Prime& p, long k, const Rat& a, const Rat& b) {
    if (sgn(a) <= 0) throw Error(ErrorKind::non_positive_divisor, "divisor must be positive");
    // b = s/t, a = u/v
    Integer cleared_a = a.get_num() * b.get_den();
    Integer cleared_b = b.get_num() * a.get_den();
    DivisionStep step = pk_divide(p, k, PLocal(p, cleared_a), PLocal(p, cleared_b));
    Rat r = step.r.to_rat() / Rat(a.get_den() * b.get_den());
    return {a, b, k, step.q, r, step};
}

/// Independent oracle for pk_divide: scans every remainder j p^(alpha + k),
/// 0 <= j < ahat, and keeps the one making (b + r) / a lie in Z[1/p].
inline DivisionStep brute_force_divide(const Prime& p, long k, const PLocal& a, const PLocal& b,
                                       const Integer& budget = Integer(1000000)) {
    if (a.sign() <= 0) throw Error(ErrorKind::non_positive_divisor, "divisor must be positive");
    const Integer& ahat = a.unit();
    if (ahat > budget) throw Error(ErrorKind::budget_exceeded, "unit part " + ahat.get_str() + " exceeds budget");

    const long alpha = a.exponent();
    const long remainder_exp = alpha + k;
    // (b + j p^(alpha+k)) / a is in Z[1/p] iff ahat divides the p-free
    // integer bhat p^(beta - low) + j p^(alpha + k - low), low = min(beta, alpha + k)
    const bool b_zero = b.is_zero();
    const long low = b_zero ? remainder_exp : std::min(b.exponent(), remainder_exp);
    const Integer b_part = b_zero ? Integer(0) : b.unit() * pow_p(p, b.exponent() - low);
    const Integer j_scale = pow_p(p, remainder_exp - low);

    std::optional<Integer> found;
    for (Integer j = 0; j < ahat; ++j) {
        Integer n = b_part + j * j_scale;
        if (mpz_divisible_p(n.get_mpz_t(), ahat.get_mpz_t())) {
            if (found) throw Error(ErrorKind::hypothesis_violated, "remainder is not unique");
            found = j;
        }
    }
    if (!found) throw Error(ErrorKind::hypothesis_violated, "no admissible remainder");

    const Integer& j = *found;
    PLocal r(p, j, remainder_exp);
    PLocal q = (b + r) / a;
    bool jumped = j != 0 && mpz_divisible_p(j.get_mpz_t(), p.value().get_mpz_t());
    DivisionCase c = (!b_zero && k > b.exponent() - alpha) ? DivisionCase::case1 : DivisionCase::case2;
    return {a, b, k, q, r, j, jumped, c};
}

/// For integers a > 0, b with k <= ord(b) - ord(a): the p^k quotient equals
/// the classical quotient of b by a p^k, times p^k.
inline bool check_scaling_correspondence(const Prime& p, long k, const Integer& a, const Integer& b) {
    if (a <= 0) throw Error(ErrorKind::non_positive_divisor, "divisor must be positive");
    if (b != 0 && k > ord(p, b).value() - ord(p, a).value())
        throw Error(ErrorKind::hypothesis_violated, "k exceeds ord(b) - ord(a)");
    Rat q_padic = pk_divide(p, k, PLocal(p, a), PLocal(p, b)).q.to_rat();
    Rat pk = rat_pow_p(p, k);
    Integer q_classical = classical_divide(Rat(a) * pk, Rat(b)).q;
    return q_padic == Rat(q_classical) * pk;
}

}  // namespace padic_sylvester
