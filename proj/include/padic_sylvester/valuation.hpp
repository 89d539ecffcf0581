#pragma once

// Exact rationals with p-adic valuation, unit parts, and the subring Z[1/p].

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "error.hpp"

namespace padic_sylvester {

using Integer = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(ErrorKind::div_by_zero, "zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "n", "-n" or "n/d" into a canonical rational. Returns nullopt on
/// malformed text or a zero denominator.
inline std::optional<Rat> parse_rat(std::string_view text) {
    auto parse_int = [](std::string_view s) -> std::optional<Integer> {
        if (s.empty()) return std::nullopt;
        std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
        if (start == s.size()) return std::nullopt;
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return std::nullopt;
        Integer n;
        if (s.front() == '+') s.remove_prefix(1);
        if (n.set_str(std::string(s), 10) != 0) return std::nullopt;
        return n;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        auto n = parse_int(text);
        if (!n) return std::nullopt;
        return Rat(*n);
    }
    auto n = parse_int(text.substr(0, slash));
    auto d = parse_int(text.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return make_rat(*n, *d);
}

inline Integer ceil_of(const Rat& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer floor_of(const Rat& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

/// The order of a p-adic quantity: an integer, or +infinity for zero.
/// Infinity compares greater than every finite value.
class Valuation {
public:
    constexpr Valuation(long value) noexcept : value_(value) {}

    static constexpr Valuation infinity() noexcept {
        Valuation v(0);
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr bool is_finite() const noexcept { return !infinite_; }

    long value() const {
        if (infinite_) throw Error(ErrorKind::zero_input, "order of zero is infinite");
        return value_;
    }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) noexcept {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

    friend constexpr std::strong_ordering operator<=>(const Valuation& a,
                                                      const Valuation& b) noexcept {
        if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
        if (a.infinite_) return std::strong_ordering::greater;
        if (b.infinite_) return std::strong_ordering::less;
        return a.value_ <=> b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
        if (v.infinite_) return os << "inf";
        return os << v.value_;
    }

private:
    long value_ = 0;
    bool infinite_ = false;
};

inline std::string to_string(const Valuation& v) {
    return v.is_infinite() ? std::string("inf") : std::to_string(v.value());
}

namespace detail {

inline Integer pow_mod(const Integer& base, const Integer& exp, const Integer& mod) {
    Integer out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return out;
}

// Miller-Rabin with the first twelve prime bases; deterministic below 3.3e24.
inline bool miller_rabin(const Integer& n) {
    static constexpr std::array<unsigned long, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (unsigned long b : bases) {
        if (n == b) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
    }
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    Integer n_minus_one = n - 1;
    for (unsigned long b : bases) {
        Integer x = pow_mod(Integer(b), d, n);
        if (x == 1 || x == n_minus_one) continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n_minus_one) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace detail

inline bool is_prime(const Integer& n) {
    if (!detail::miller_rabin(n)) return false;
    static const Integer deterministic_bound("3317044064679887385961981");
    if (n < deterministic_bound) return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

/// A rational prime, validated once at construction.
class Prime {
public:
    explicit Prime(const Integer& p) : value_(p) {
        if (!is_prime(p)) throw Error(ErrorKind::invalid_prime, p.get_str() + " is not prime");
    }
    explicit Prime(unsigned long p) : Prime(Integer(p)) {}

    const Integer& value() const noexcept { return value_; }
    bool is_odd() const { return mpz_odd_p(value_.get_mpz_t()) != 0; }

    friend bool operator==(const Prime& a, const Prime& b) { return a.value_ == b.value_; }

    friend std::ostream& operator<<(std::ostream& os, const Prime& p) { return os << p.value_; }

private:
    Integer value_;
};

/// p^e for e >= 0.
inline Integer pow_p(const Prime& p, long e) {
    if (e < 0) throw Error(ErrorKind::precondition_violated, "negative exponent for integer power");
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), p.value().get_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

/// p^e as an exact rational for any sign of e.
inline Rat rat_pow_p(const Prime& p, long e) {
    if (e >= 0) return Rat(pow_p(p, e));
    return Rat(Integer(1), pow_p(p, -e));
}

/// Strips every factor p from n in place and returns how many were removed.
inline long remove_p(Integer& n, const Prime& p) {
    if (n == 0) return 0;
    return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.value().get_mpz_t()));
}

inline Valuation ord(const Prime& p, const Integer& n) {
    if (n == 0) return Valuation::infinity();
    Integer tmp = n;
    return remove_p(tmp, p);
}

inline Valuation ord(const Prime& p, const Rat& r) {
    if (r == 0) return Valuation::infinity();
    Integer num = r.get_num();
    Integer den = r.get_den();
    return remove_p(num, p) - remove_p(den, p);
}

/// The ord-zero cofactor of r, i.e. r = unit_part(r) * p^ord(r).
inline Rat unit_part(const Prime& p, const Rat& r) {
    if (r == 0) throw Error(ErrorKind::zero_input, "unit part of zero");
    Integer num = r.get_num();
    Integer den = r.get_den();
    remove_p(num, p);
    remove_p(den, p);
    return make_rat(num, den);
}

inline Rat p_abs(const Prime& p, const Rat& r) {
    if (r == 0) return Rat(0);
    return rat_pow_p(p, -ord(p, r).value());
}

/// Canonical representative of a in [0, m).
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer out;
    mpz_fdiv_r(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return out;
}

inline Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer out;
    if (m == 1) return Integer(0);
    if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error(ErrorKind::div_by_zero, a.get_str() + " is not invertible mod " + m.get_str());
    return out;
}

/// p^e mod m for any sign of e; m must be coprime to p when e < 0.
inline Integer pow_p_mod(const Prime& p, long e, const Integer& m) {
    if (m == 1) return Integer(0);
    Integer base = e >= 0 ? p.value() : inverse_mod(p.value(), m);
    unsigned long n = static_cast<unsigned long>(e >= 0 ? e : -e);
    Integer out;
    mpz_powm_ui(out.get_mpz_t(), base.get_mpz_t(), n, m.get_mpz_t());
    return out;
}

/// Residue of a rational with denominator coprime to m, in [0, m).
inline Integer rat_mod(const Rat& r, const Integer& m) {
    return mod_floor(r.get_num() * inverse_mod(r.get_den(), m), m);
}

/// An element of Z[1/p]: unit * p^exp with p not dividing unit, or zero.
class PLocal {
public:
    explicit PLocal(Prime p) : p_(std::move(p)) {}

    PLocal(Prime p, Integer unit, long exp) : p_(std::move(p)), unit_(std::move(unit)), exp_(exp) {
        if (unit_ == 0) {
            exp_ = 0;
            return;
        }
        exp_ += remove_p(unit_, p_);
    }

    PLocal(Prime p, const Integer& n) : PLocal(std::move(p), n, 0) {}

    const Prime& prime() const noexcept { return p_; }
    const Integer& unit() const noexcept { return unit_; }
    long exponent() const noexcept { return exp_; }

    bool is_zero() const { return unit_ == 0; }
    int sign() const { return sgn(unit_); }

    Valuation order() const { return is_zero() ? Valuation::infinity() : Valuation(exp_); }

    Rat to_rat() const {
        if (is_zero()) return Rat(0);
        return Rat(unit_) * rat_pow_p(p_, exp_);
    }

    PLocal operator-() const { return PLocal(p_, -unit_, exp_); }

    friend PLocal operator+(const PLocal& x, const PLocal& y) {
        check_same_prime(x, y);
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        long e = std::min(x.exp_, y.exp_);
        Integer sum = x.unit_ * pow_p(x.p_, x.exp_ - e) + y.unit_ * pow_p(x.p_, y.exp_ - e);
        return PLocal(x.p_, sum, e);
    }

    friend PLocal operator-(const PLocal& x, const PLocal& y) { return x + (-y); }

    friend PLocal operator*(const PLocal& x, const PLocal& y) {
        check_same_prime(x, y);
        if (x.is_zero() || y.is_zero()) return PLocal(x.p_);
        return PLocal(x.p_, x.unit_ * y.unit_, x.exp_ + y.exp_);
    }

    /// Exact division; the quotient must stay inside Z[1/p].
    friend PLocal operator/(const PLocal& x, const PLocal& y) {
        check_same_prime(x, y);
        if (y.is_zero()) throw Error(ErrorKind::div_by_zero, "division by zero in Z[1/p]");
        if (x.is_zero()) return PLocal(x.p_);
        if (!mpz_divisible_p(x.unit_.get_mpz_t(), y.unit_.get_mpz_t()))
            throw Error(ErrorKind::not_in_ring, "quotient leaves Z[1/p]");
        Integer q;
        mpz_divexact(q.get_mpz_t(), x.unit_.get_mpz_t(), y.unit_.get_mpz_t());
        return PLocal(x.p_, q, x.exp_ - y.exp_);
    }

    friend bool operator==(const PLocal& x, const PLocal& y) {
        return x.p_ == y.p_ && x.unit_ == y.unit_ && x.exp_ == y.exp_;
    }

private:
    static void check_same_prime(const PLocal& x, const PLocal& y) {
        if (!(x.p_ == y.p_))
            throw Error(ErrorKind::precondition_violated, "mixing elements of different Z[1/p]");
    }

    Prime p_;
    Integer unit_ = 0;
    long exp_ = 0;
};

/// r as an element of Z[1/p], or nullopt when its denominator is not a power of p.
inline std::optional<PLocal> try_as_plocal(const Prime& p, const Rat& r) {
    if (r == 0) return PLocal(p);
    Integer den = r.get_den();
    long den_exp = remove_p(den, p);
    if (den != 1) return std::nullopt;
    return PLocal(p, r.get_num(), -den_exp);
}

inline PLocal as_plocal(const Prime& p, const Rat& r) {
    auto out = try_as_plocal(p, r);
    if (!out) throw Error(ErrorKind::not_in_ring, to_string(r) + " is not in Z[1/" + p.value().get_str() + "]");
    return *std::move(out);
}

}  // namespace padic_sylvester
