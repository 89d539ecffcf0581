#pragma once

// Exact arithmetic in a real quadratic field Q(sqrt d) carrying a fixed real
// embedding and a fixed p-adic embedding. Internally the field is rewritten
// as Q(sqrt D) with D a square-free integer; elements are x + y*sqrt(D).

#include <compare>
#include <memory>

#include "digits.hpp"

namespace padic_sylvester {

enum class RealSign { positive, negative };

/// The embedding data shared by every element of one computation.
class QuadContext {
public:
    /// d: positive non-square rational radicand; sign: which real root of d
    /// plays sqrt(d); residue: sqrt(d) mod p selecting the p-adic root.
    static std::shared_ptr<const QuadContext> make(const Rat& d, RealSign sign, const Prime& p,
                                                    const Integer& residue) {
        return std::shared_ptr<const QuadContext>(new QuadContext(d, sign, p, residue));
    }

    const Rat& radicand() const noexcept { return d_; }
    const Integer& squarefree_radicand() const noexcept { return squarefree_; }
    /// sqrt(d) = scale * sqrt(D)
    const Rat& scale() const noexcept { return scale_; }
    RealSign sign() const noexcept { return sign_; }
    const Prime& prime() const noexcept { return p_; }
    /// sqrt(d) mod p as supplied by the caller.
    const Integer& residue() const noexcept { return residue_; }
    /// sqrt(D) mod p, the seed for Hensel lifting.
    const Integer& root_residue() const noexcept { return root_residue_; }

    /// sqrt(D) mod p^m under the chosen p-adic embedding.
    Integer padic_root(long m) const { return hensel_sqrt(p_, Rat(squarefree_), root_residue_, m); }

    friend bool operator==(const QuadContext& a, const QuadContext& b) {
        return a.squarefree_ == b.squarefree_ && a.sign_ == b.sign_ && a.p_ == b.p_ &&
               a.root_residue_ == b.root_residue_;
    }

private:
    QuadContext(const Rat& d, RealSign sign, const Prime& p, const Integer& residue)
        : d_(d), sign_(sign), p_(p), residue_(mod_floor(residue, p.value())) {
        if (sgn(d) <= 0) throw Error(ErrorKind::not_a_square_free_field, "radicand must be positive");
        if (!p.is_odd()) throw Error(ErrorKind::even_prime, "p-adic square roots need an odd prime");
        if (ord(p, d) != Valuation(0))
            throw Error(ErrorKind::precondition_violated, "radicand must be a p-adic unit");
        // d = n/m = (n*m)/m^2, then n*m = f^2 * D with D square-free
        Integer nm = d.get_num() * d.get_den();
        auto [square_root, squarefree] = split_square(nm);
        if (squarefree == 1)
            throw Error(ErrorKind::not_a_square_free_field, to_string(d) + " is a rational square");
        squarefree_ = squarefree;
        scale_ = make_rat(square_root, d.get_den());
        if (mod_floor(residue_ * residue_ - rat_mod(d, p.value()), p.value()) != 0)
            throw Error(ErrorKind::not_a_residue,
                        residue.get_str() + "^2 is not congruent to " + to_string(d) + " mod p");
        // sqrt(D) = sqrt(d) / scale
        root_residue_ = mod_floor(residue_ * rat_mod(1 / scale_, p.value()), p.value());
    }

    // n = root^2 * rest, pulling out square factors found by trial division
    // up to 10^6 and a final perfect-square check.
    static std::pair<Integer, Integer> split_square(Integer n) {
        Integer root = 1;
        for (unsigned long f = 2; f <= 1000000UL; ++f) {
            Integer f2 = Integer(f) * f;
            if (f2 > n) break;
            while (mpz_divisible_p(n.get_mpz_t(), f2.get_mpz_t())) {
                n /= f2;
                root *= f;
            }
        }
        if (n > 1 && mpz_perfect_square_p(n.get_mpz_t())) {
            Integer s;
            mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
            root *= s;
            n = 1;
        }
        return {root, n};
    }

    Rat d_;
    RealSign sign_;
    Prime p_;
    Integer residue_;
    Integer squarefree_;
    Rat scale_;
    Integer root_residue_;
};

using QuadContextPtr = std::shared_ptr<const QuadContext>;

/// Default cap on p-adic working precision, in digits.
inline constexpr long default_precision_cap = 1L << 16;

class QuadElement {
public:
    /// x + y*sqrt(d) in the field described by ctx.
    QuadElement(QuadContextPtr ctx, const Rat& x, const Rat& y_of_sqrt_d)
        : ctx_(std::move(ctx)), x_(x), y_(y_of_sqrt_d * ctx_->scale()) {}

    static QuadElement rational(QuadContextPtr ctx, const Rat& x) { return QuadElement(std::move(ctx), x, Rat(0)); }

    const QuadContextPtr& context() const noexcept { return ctx_; }
    const Prime& prime() const noexcept { return ctx_->prime(); }
    const Rat& x() const noexcept { return x_; }
    /// Coefficient of sqrt(D), D the square-free radicand.
    const Rat& y() const noexcept { return y_; }
    /// Coefficient of sqrt(d), the radicand given at construction.
    Rat y_of_sqrt_d() const { return y_ / ctx_->scale(); }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_rational() const { return y_ == 0; }

    QuadElement operator-() const { return with(-x_, -y_); }

    friend QuadElement operator+(const QuadElement& u, const QuadElement& v) {
        check(u, v);
        return u.with(u.x_ + v.x_, u.y_ + v.y_);
    }
    friend QuadElement operator-(const QuadElement& u, const QuadElement& v) {
        check(u, v);
        return u.with(u.x_ - v.x_, u.y_ - v.y_);
    }
    friend QuadElement operator*(const QuadElement& u, const QuadElement& v) {
        check(u, v);
        const Rat D(u.ctx_->squarefree_radicand());
        return u.with(u.x_ * v.x_ + u.y_ * v.y_ * D, u.x_ * v.y_ + u.y_ * v.x_);
    }

    /// 1/(x + y sqrt D) = (x - y sqrt D) / (x^2 - y^2 D)
    QuadElement inverse() const {
        if (is_zero()) throw Error(ErrorKind::div_by_zero, "inverse of zero");
        Rat norm = x_ * x_ - y_ * y_ * Rat(ctx_->squarefree_radicand());
        return with(x_ / norm, -y_ / norm);
    }

    friend QuadElement operator/(const QuadElement& u, const QuadElement& v) { return u * v.inverse(); }

    friend QuadElement operator+(const QuadElement& u, const Rat& q) { return u.with(u.x_ + q, u.y_); }
    friend QuadElement operator-(const QuadElement& u, const Rat& q) { return u.with(u.x_ - q, u.y_); }
    friend QuadElement operator-(const Rat& q, const QuadElement& u) { return u.with(q - u.x_, -u.y_); }
    friend QuadElement operator*(const QuadElement& u, const Rat& q) { return u.with(u.x_ * q, u.y_ * q); }
    friend QuadElement operator/(const QuadElement& u, const Rat& q) {
        if (q == 0) throw Error(ErrorKind::div_by_zero, "division by zero");
        return u.with(u.x_ / q, u.y_ / q);
    }

    friend bool operator==(const QuadElement& u, const QuadElement& v) {
        return *u.ctx_ == *v.ctx_ && u.x_ == v.x_ && u.y_ == v.y_;
    }

private:
    QuadElement(QuadContextPtr ctx, Rat x, Rat y, int /*internal*/)
        : ctx_(std::move(ctx)), x_(std::move(x)), y_(std::move(y)) {}

    QuadElement with(Rat x, Rat y) const { return QuadElement(ctx_, std::move(x), std::move(y), 0); }

    static void check(const QuadElement& u, const QuadElement& v) {
        if (u.ctx_ != v.ctx_ && !(*u.ctx_ == *v.ctx_))
            throw Error(ErrorKind::embedding_mismatch, "elements carry different embeddings");
    }

    QuadContextPtr ctx_;
    Rat x_;
    Rat y_;
};

namespace detail {

// Sign of a + b*sqrt(D) for integer D > 0 not a square.
inline int sign_of_surd(const Rat& a, const Rat& b, const Integer& D) {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 D, never equal for non-square D
    return a * a > b * b * Rat(D) ? sa : sb;
}

inline int real_root_sign(const QuadElement& u) { return u.context()->sign() == RealSign::positive ? 1 : -1; }

}  // namespace detail

/// Exact sign of psi(u) - q under the element's real embedding.
inline std::strong_ordering real_compare(const QuadElement& u, const Rat& q) {
    int s = detail::sign_of_surd(u.x() - q, u.y() * detail::real_root_sign(u), u.context()->squarefree_radicand());
    return s <=> 0;
}

/// Least integer n with n >= psi(u).
inline Integer real_ceil(const QuadElement& u) {
    if (u.is_rational()) return ceil_of(u.x());
    // |y| sqrt(D) = sqrt(N/M); floor(sqrt(N/M)) = floor(isqrt(N*M) / M)
    Rat b = u.y() * detail::real_root_sign(u);
    Rat b2d = b * b * Rat(u.context()->squarefree_radicand());
    Integer root;
    Integer nm = b2d.get_num() * b2d.get_den();
    mpz_sqrt(root.get_mpz_t(), nm.get_mpz_t());
    Rat approx_surd = Rat(floor_of(make_rat(root, b2d.get_den())));
    if (sgn(b) < 0) approx_surd = -approx_surd;
    Integer candidate = ceil_of(u.x() + approx_surd);
    while (real_compare(u, Rat(candidate)) == std::strong_ordering::greater) ++candidate;
    while (real_compare(u, Rat(candidate - 1)) != std::strong_ordering::greater) --candidate;
    return candidate;
}

inline Integer real_ceil(const Rat& r) { return ceil_of(r); }

namespace detail {

// p-adic image of u = p^v (X + Y sqrt D) with X, Y p-integral, reduced mod
// p^m: returns (v, X + Y s mod p^m).
struct PadicWindow {
    long base_order;
    Integer residue;
};

inline PadicWindow padic_window(const QuadElement& u, long m) {
    const Prime& p = u.prime();
    long v = std::min(ord(p, u.x()), ord(p, u.y())).value();
    Rat shift = rat_pow_p(p, -v);
    Integer modulus = pow_p(p, m);
    Integer s = u.context()->padic_root(m);
    Integer residue = mod_floor(rat_mod(u.x() * shift, modulus) + rat_mod(u.y() * shift, modulus) * s, modulus);
    return {v, residue};
}

}  // namespace detail

/// ord_p of the p-adic image of u. Working precision starts at 8 digits
/// and doubles while the image vanishes, up to precision_cap digits.
inline long quad_ord(const QuadElement& u, long precision_cap = default_precision_cap) {
    if (u.is_zero()) throw Error(ErrorKind::div_by_zero, "order of zero element");
    const Prime& p = u.prime();
    if (u.is_rational()) return ord(p, u.x()).value();
    for (long m = 8; m <= precision_cap; m *= 2) {
        auto window = detail::padic_window(u, m);
        if (window.residue != 0) return window.base_order + ord(p, window.residue).value();
    }
    throw Error(ErrorKind::precision_exhausted, "p-adic image vanished to the precision cap");
}

/// <u>_k for the p-adic image of u.
inline PLocal quad_frac_part_k(const QuadElement& u, long k, long precision_cap = default_precision_cap) {
    const Prime& p = u.prime();
    if (u.is_rational()) {
        if (u.is_zero()) throw Error(ErrorKind::div_by_zero, "fractional part of zero element");
        return frac_part_k(p, k, u.x());
    }
    long order = quad_ord(u, precision_cap);
    if (order >= k) return PLocal(p);
    long base = std::min(ord(p, u.x()), ord(p, u.y())).value();
    long width = k - base;
    auto window = detail::padic_window(u, width + 8);
    return PLocal(p, mod_floor(window.residue, pow_p(p, width)), base);
}

}  // namespace padic_sylvester
