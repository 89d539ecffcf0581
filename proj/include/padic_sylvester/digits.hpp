#pragma once

// Base-p digits of rationals, the truncations <r>_k, and Hensel lifting of
// square roots modulo p^m.

#include <optional>
#include <vector>

#include "valuation.hpp"

namespace padic_sylvester {

/// A finite window of base-p digits: value ~ sum digits[i] * p^(start + i).
struct DigitExpansion {
    Prime p;
    long start = 0;
    std::vector<Integer> digits;

    bool is_zero() const { return digits.empty(); }

    /// sum digits[i] * p^(start + i) as an exact rational.
    Rat value() const {
        Rat sum = 0;
        for (std::size_t i = 0; i < digits.size(); ++i)
            sum += Rat(digits[i]) * rat_pow_p(p, start + static_cast<long>(i));
        return sum;
    }
};

/// First `count` digits of r starting at n = ord(p, r). Zero yields the
/// empty expansion. Each digit is u mod p for the current unit u, which is
/// then replaced by (u - digit) / p.
inline DigitExpansion digits_of(const Prime& p, const Rat& r, std::size_t count) {
    DigitExpansion out{p, 0, {}};
    if (r == 0) return out;
    out.start = ord(p, r).value();
    Rat u = unit_part(p, r);
    Rat p_rat(p.value());
    out.digits.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Integer c = rat_mod(u, p.value());
        out.digits.push_back(c);
        u = (u - c) / p_rat;
    }
    return out;
}

/// <r>_k: the sum of the digits of r with index below k, an element of
/// Z[1/p] lying in [0, p^k). Empty (zero) when ord(p, r) >= k.
inline PLocal frac_part_k(const Prime& p, long k, const Rat& r) {
    if (r == 0) return PLocal(p);
    long v = ord(p, r).value();
    if (v >= k) return PLocal(p);
    Rat u = r * rat_pow_p(p, -v);
    Integer window = pow_p(p, k - v);
    return PLocal(p, rat_mod(u, window), v);
}

/// <r> = <r>_1.
inline PLocal frac_part(const Prime& p, const Rat& r) { return frac_part_k(p, 1, r); }

/// Legendre-symbol test for d (with ord(p, d) = 0) being a square mod odd p.
inline bool is_square_mod_p(const Prime& p, const Rat& d) {
    if (!p.is_odd()) throw Error(ErrorKind::even_prime, "square roots need an odd prime");
    if (d == 0 || ord(p, d) != Valuation(0))
        throw Error(ErrorKind::precondition_violated, "radicand must be a p-adic unit");
    Integer residue = rat_mod(d, p.value());
    return mpz_legendre(residue.get_mpz_t(), p.value().get_mpz_t()) == 1;
}

/// Smallest r0 in [0, p) with r0^2 = d mod p (Tonelli-Shanks), or nullopt.
inline std::optional<Integer> sqrt_mod_p(const Prime& p, const Rat& d) {
    if (!is_square_mod_p(p, d)) return std::nullopt;
    const Integer& mod = p.value();
    Integer a = rat_mod(d, mod);
    Integer q = mod - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    q >>= s;
    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), mod.get_mpz_t()) != -1) ++z;
    Integer c = detail::pow_mod(z, q, mod);
    Integer x = detail::pow_mod(a, (q + 1) / 2, mod);
    Integer t = detail::pow_mod(a, q, mod);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Integer t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % mod;
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % mod;
        x = x * b % mod;
        c = b * b % mod;
        t = t * c % mod;
        m = i;
    }
    Integer other = mod - x;
    return x < other ? x : other;
}

/// The unique s mod p^m with s^2 = d mod p^m and s = r0 mod p, by Newton
/// iteration doubling the precision each round.
inline Integer hensel_sqrt(const Prime& p, const Rat& d, const Integer& r0, long m) {
    if (!p.is_odd()) throw Error(ErrorKind::even_prime, "Hensel square roots need an odd prime");
    if (m < 1) throw Error(ErrorKind::precondition_violated, "precision must be positive");
    if (d == 0 || ord(p, d) != Valuation(0))
        throw Error(ErrorKind::precondition_violated, "radicand must be a p-adic unit");
    const Integer& mod_p = p.value();
    Integer s = mod_floor(r0, mod_p);
    if (mod_floor(s * s - rat_mod(d, mod_p), mod_p) != 0)
        throw Error(ErrorKind::not_a_residue, r0.get_str() + " is not a square root mod p");
    long precision = 1;
    while (precision < m) {
        precision = std::min(2 * precision, m);
        Integer modulus = pow_p(p, precision);
        Integer target = rat_mod(d, modulus);
        Integer step = mod_floor((s * s - target) * inverse_mod(Integer(2 * s), modulus), modulus);
        s = mod_floor(s - step, modulus);
    }
    return s;
}

}  // namespace padic_sylvester
