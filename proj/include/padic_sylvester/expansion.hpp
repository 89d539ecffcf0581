#pragma once

// Sylvester-type expansions value = a0 + sum 1/q_i:
//
//   fs_greedy            classical Fibonacci-Sylvester greedy algorithm
//   pk_greedy            iterated p^k division
//   adaptive_pk_greedy   p^k greedy with a temporary larger k' while needed
//   knopfmacher_sylvester  a0 = <z>, a_n = <1/z_n>
//   modified_sylvester   t_i = <1/z_i>_k corrected by a real ceiling
//
// Greedy runs iterate  b q_0 ... q_(i-1) = r_(i-1) q_i - r_i  verbatim, so the
// trace carries the unreduced dividends and remainders.

#include <concepts>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "digits.hpp"
#include "division.hpp"
#include "quadratic.hpp"

namespace padic_sylvester {

inline constexpr std::size_t default_max_terms = 64;
inline constexpr std::size_t unlimited_terms = std::numeric_limits<std::size_t>::max();

enum class Algorithm { fs_greedy, pk_greedy, adaptive_pk_greedy, knopfmacher, modified_sylvester };

enum class Status { terminated, cap_reached, certified_nonterminating };

inline std::string_view to_string(Status s) {
    switch (s) {
    case Status::terminated: return "terminated";
    case Status::cap_reached: return "cap_reached";
    case Status::certified_nonterminating: return "certified_nonterminating";
    }
    return "unknown";
}

inline std::string_view to_string(Algorithm a) {
    switch (a) {
    case Algorithm::fs_greedy: return "fs";
    case Algorithm::pk_greedy: return "pk";
    case Algorithm::adaptive_pk_greedy: return "adaptive";
    case Algorithm::knopfmacher: return "knopf";
    case Algorithm::modified_sylvester: return "sylvester";
    }
    return "unknown";
}

struct ExpansionStep {
    Rat q;
    long k = 0;                                  ///< power p^k used for this term
    std::optional<Valuation> tail_order;         ///< ord of the tail before the step
    std::optional<Rat> tail;                     ///< exact tail before the step (rational runs)
    std::optional<PLocal> truncation;            ///< t_i, Sylvester-type runs
    std::optional<DivisionStep> division;        ///< p^k greedy runs
    std::optional<ClassicalDivision> classical;  ///< F-S runs
};

struct Expansion {
    Algorithm algorithm = Algorithm::pk_greedy;
    std::optional<Prime> p;
    std::optional<long> k;
    std::optional<Rat> initial;  ///< Knopfmacher a0, added as is (not a reciprocal)
    std::vector<Rat> terms;      ///< the q_i
    Status status = Status::cap_reached;
    std::vector<ExpansionStep> trace;

    Rat sum() const {
        Rat total = initial.value_or(Rat(0));
        for (const Rat& q : terms) total += 1 / q;
        return total;
    }

    bool has_jump() const {
        for (const auto& step : trace)
            if (step.division && step.division->jumped) return true;
        return false;
    }

    std::vector<PLocal> plocal_terms() const {
        if (!p) throw Error(ErrorKind::precondition_violated, "expansion has no prime");
        std::vector<PLocal> out;
        out.reserve(terms.size());
        for (const Rat& q : terms) out.push_back(as_plocal(*p, q));
        return out;
    }
};

// ---------------------------------------------------------------------------
// Classical greedy

inline Expansion fs_greedy(const Integer& a, const Integer& b) {
    if (a <= 0 || b == 0) throw Error(ErrorKind::precondition_violated, "need a > 0 and b != 0");
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g != 1) throw Error(ErrorKind::precondition_violated, "a and b must be coprime");
    if (make_rat(a, b) <= -1) throw Error(ErrorKind::precondition_violated, "value must exceed -1");

    Expansion e;
    e.algorithm = Algorithm::fs_greedy;
    Rat divisor(a), dividend(b);
    for (;;) {
        ClassicalDivision step = classical_divide(divisor, dividend);
        ExpansionStep record;
        record.q = Rat(step.q);
        record.tail = divisor / dividend;
        record.classical = step;
        e.terms.push_back(record.q);
        e.trace.push_back(std::move(record));
        if (step.r == 0) break;
        dividend *= Rat(step.q);
        divisor = step.r;
    }
    e.status = Status::terminated;
    return e;
}

inline Expansion fs_greedy(const Rat& value) {
    if (sgn(value) == 0) throw Error(ErrorKind::precondition_violated, "value must be nonzero");
    // value = a/b with a > 0
    Integer a = abs(value.get_num());
    Integer b = value.get_den() * sgn(value);
    return fs_greedy(a, b);
}

// ---------------------------------------------------------------------------
// p^k greedy family

namespace detail {

// Runs the greedy iteration on a/b, asking k_for(ord(tail)) for the power
// used at each step.
template <std::invocable<long> KChooser>
Expansion greedy_run(const Prime& p, const PLocal& a, const PLocal& b, KChooser&& k_for, std::size_t max_terms,
                     Algorithm algorithm) {
    if (a.sign() <= 0) throw Error(ErrorKind::non_positive_divisor, "numerator must be positive");
    if (b.is_zero()) throw Error(ErrorKind::div_by_zero, "zero denominator");
    Expansion e;
    e.algorithm = algorithm;
    e.p = p;
    PLocal divisor = a, dividend = b;
    e.status = Status::cap_reached;
    while (e.terms.size() < max_terms) {
        long tail_order = divisor.exponent() - dividend.exponent();
        long k = k_for(tail_order);
        DivisionStep step = pk_divide(p, k, divisor, dividend);
        if (step.q.is_zero()) throw Error(ErrorKind::precondition_violated, "zero quotient at this k");
        ExpansionStep record;
        record.q = step.q.to_rat();
        record.k = k;
        record.tail_order = Valuation(tail_order);
        record.tail = divisor.to_rat() / dividend.to_rat();
        record.division = step;
        e.terms.push_back(record.q);
        e.trace.push_back(std::move(record));
        if (step.r.is_zero()) {
            e.status = Status::terminated;
            break;
        }
        dividend = dividend * step.q;
        divisor = step.r;
    }
    return e;
}

// a/b with a > 0 for a nonzero rational.
inline std::pair<PLocal, PLocal> split_fraction(const Prime& p, const Rat& value) {
    if (value == 0) throw Error(ErrorKind::precondition_violated, "value must be nonzero");
    Integer a = abs(value.get_num());
    Integer b = value.get_den() * sgn(value);
    return {PLocal(p, a), PLocal(p, b)};
}

}  // namespace detail

/// Expands a/b (a > 0) by iterating p^k division with a fixed k.
/// Requires k > -ord(a/b); terminates in at most rhat_0 + 1 steps.
inline Expansion pk_greedy(const Prime& p, long k, const PLocal& a, const PLocal& b,
                           std::size_t max_terms = unlimited_terms) {
    if (a.sign() <= 0) throw Error(ErrorKind::non_positive_divisor, "numerator must be positive");
    if (b.is_zero()) throw Error(ErrorKind::div_by_zero, "zero denominator");
    long order = a.exponent() - b.exponent();
    if (k <= -order)
        throw Error(ErrorKind::k_too_small, "k = " + std::to_string(k) + " must exceed -ord(a/b) = " +
                                                std::to_string(-order));
    auto e = detail::greedy_run(p, a, b, [k](long) { return k; }, max_terms, Algorithm::pk_greedy);
    e.k = k;
    return e;
}

inline Expansion pk_greedy(const Prime& p, long k, const Rat& value, std::size_t max_terms = unlimited_terms) {
    auto [a, b] = detail::split_fraction(p, value);
    return pk_greedy(p, k, a, b, max_terms);
}

/// The same iteration without the k > -ord(a/b) requirement, used to study
/// the small-k regime. Stops at max_terms.
inline Expansion pk_greedy_unchecked(const Prime& p, long k, const Rat& value,
                                     std::size_t max_terms = default_max_terms) {
    auto [a, b] = detail::split_fraction(p, value);
    auto e = detail::greedy_run(p, a, b, [k](long) { return k; }, max_terms, Algorithm::pk_greedy);
    e.k = k;
    return e;
}

/// p^k greedy that substitutes k' = 1 - ord(tail) whenever k <= -ord(tail).
inline Expansion adaptive_pk_greedy(const Prime& p, long k, const Rat& value,
                                    std::size_t max_terms = unlimited_terms) {
    auto [a, b] = detail::split_fraction(p, value);
    auto choose = [k](long tail_order) { return k > -tail_order ? k : 1 - tail_order; };
    auto e = detail::greedy_run(p, a, b, choose, max_terms, Algorithm::adaptive_pk_greedy);
    e.k = k;
    return e;
}

// ---------------------------------------------------------------------------
// Knopfmacher

/// A negative state can never reach zero: every later a_n is positive.
inline bool certify_nontermination(const Rat& state) { return sgn(state) < 0; }

/// a0 = <v>, then a_n = <1/z_n>, z_(n+1) = z_n - 1/a_n. max_terms bounds the
/// number of reciprocal terms a_1, a_2, ...
inline Expansion knopfmacher_sylvester(const Prime& p, const Rat& value, std::size_t max_terms = default_max_terms,
                                       bool certify = true) {
    Expansion e;
    e.algorithm = Algorithm::knopfmacher;
    e.p = p;
    e.k = 1;
    e.initial = frac_part(p, value).to_rat();
    Rat state = value - *e.initial;
    e.status = Status::cap_reached;
    for (;;) {
        if (state == 0) {
            e.status = Status::terminated;
            break;
        }
        if (certify && certify_nontermination(state)) {
            e.status = Status::certified_nonterminating;
            break;
        }
        if (e.terms.size() >= max_terms) break;
        Rat inverse = 1 / state;
        PLocal a_n = frac_part(p, inverse);
        ExpansionStep record;
        record.q = a_n.to_rat();
        record.k = 1;
        record.tail_order = ord(p, state);
        record.tail = state;
        record.truncation = a_n;
        state -= 1 / record.q;
        e.terms.push_back(record.q);
        e.trace.push_back(std::move(record));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Modified Sylvester

namespace detail {

inline Valuation order_of(const Prime& p, const Rat& r) { return ord(p, r); }
inline Valuation order_of(const Prime&, const QuadElement& u) {
    return u.is_zero() ? Valuation::infinity() : Valuation(quad_ord(u));
}

inline bool is_zero(const Rat& r) { return r == 0; }
inline bool is_zero(const QuadElement& u) { return u.is_zero(); }

inline Rat reciprocal(const Rat& r) { return 1 / r; }
inline QuadElement reciprocal(const QuadElement& u) { return u.inverse(); }

inline PLocal truncation(const Prime& p, long k, const Rat& r) { return frac_part_k(p, k, r); }
inline PLocal truncation(const Prime&, long k, const QuadElement& u) { return quad_frac_part_k(u, k); }

inline bool is_irrational(const Rat&) { return false; }
inline bool is_irrational(const QuadElement& u) { return !u.is_rational(); }

inline void remember_tail(ExpansionStep& step, const Rat& r) { step.tail = r; }
inline void remember_tail(ExpansionStep&, const QuadElement&) {}

}  // namespace detail

template <class Value>
concept SylvesterValue = std::same_as<Value, Rat> || std::same_as<Value, QuadElement>;

/// t_i = <1/z_i>_k, q_i = t_i + ceil((1 - t_i z_i) / (p^k z_i)) p^k,
/// z_(i+1) = z_i - 1/q_i, the ceiling taken in the real embedding.
/// Irrational inputs never terminate; hitting max_terms on one reports
/// certified_nonterminating.
template <SylvesterValue Value>
Expansion modified_sylvester(const Prime& p, long k, const Value& zeta, std::size_t max_terms = default_max_terms) {
    if (detail::is_zero(zeta)) throw Error(ErrorKind::precondition_violated, "value must be nonzero");
    long order = detail::order_of(p, zeta).value();
    if (k <= -order)
        throw Error(ErrorKind::k_too_small, "k = " + std::to_string(k) + " must exceed -ord = " +
                                                std::to_string(-order));
    Expansion e;
    e.algorithm = Algorithm::modified_sylvester;
    e.p = p;
    e.k = k;
    const Rat pk = rat_pow_p(p, k);
    Value state = zeta;
    bool terminated = false;
    for (;;) {
        if (detail::is_zero(state)) {
            terminated = true;
            break;
        }
        if (e.terms.size() >= max_terms) break;
        ExpansionStep record;
        record.k = k;
        record.tail_order = detail::order_of(p, state);
        detail::remember_tail(record, state);
        Value inverse = detail::reciprocal(state);
        PLocal t = detail::truncation(p, k, inverse);
        Rat t_rat = t.to_rat();
        // (1 - t z) / (p^k z) = (1/z - t) / p^k
        Value correction = (inverse - t_rat) / pk;
        Integer c = real_ceil(correction);
        record.q = t_rat + Rat(c) * pk;
        record.truncation = t;
        Rat reciprocal_q = 1 / record.q;
        state = state - reciprocal_q;
        e.terms.push_back(record.q);
        e.trace.push_back(std::move(record));
    }
    if (terminated)
        e.status = Status::terminated;
    else
        e.status = detail::is_irrational(zeta) ? Status::certified_nonterminating : Status::cap_reached;
    return e;
}

// ---------------------------------------------------------------------------
// Scaled correspondence with the classical algorithm

enum class Correspondence { holds, holds_despite_jump, fails_with_jump };

inline std::string_view to_string(Correspondence c) {
    switch (c) {
    case Correspondence::holds: return "holds";
    case Correspondence::holds_despite_jump: return "holds_despite_jump";
    case Correspondence::fails_with_jump: return "fails_with_jump";
    }
    return "unknown";
}

struct CorrespondenceReport {
    Correspondence outcome;
    Expansion padic;      ///< p^k greedy on a/b
    Expansion classical;  ///< F-S greedy on a p^k / b
    bool jumped = false;
};

/// For a/b > 0 with k <= -ord(a/b): compares each p^k greedy term q_i with
/// the F-S term on a p^k / b scaled by p^k. Without jumps the two agree.
inline CorrespondenceReport check_nojump_correspondence(const Prime& p, long k, const Rat& value,
                                                        std::size_t max_terms = 4096) {
    if (sgn(value) <= 0) throw Error(ErrorKind::hypothesis_violated, "value must be positive");
    long order = ord(p, value).value();
    if (k > -order)
        throw Error(ErrorKind::hypothesis_violated, "needs k <= -ord(a/b) = " + std::to_string(-order));
    const Rat pk = rat_pow_p(p, k);
    CorrespondenceReport report{Correspondence::holds, pk_greedy_unchecked(p, k, value, max_terms),
                                fs_greedy(Rat(value * pk)), false};
    report.jumped = report.padic.has_jump();
    bool same = report.padic.status == Status::terminated &&
                report.padic.terms.size() == report.classical.terms.size();
    for (std::size_t i = 0; same && i < report.padic.terms.size(); ++i)
        same = report.padic.terms[i] == report.classical.terms[i] * pk;
    if (same)
        report.outcome = report.jumped ? Correspondence::holds_despite_jump : Correspondence::holds;
    else if (report.jumped)
        report.outcome = Correspondence::fails_with_jump;
    else
        throw std::logic_error("scaled correspondence failed on a run without jumps");
    return report;
}

inline CorrespondenceReport check_nojump_correspondence(const Prime& p, long k, const Integer& a, const Integer& b) {
    if (b == 0) throw Error(ErrorKind::div_by_zero, "zero denominator");
    return check_nojump_correspondence(p, k, make_rat(a, b));
}

// ---------------------------------------------------------------------------
// Verification

struct VerificationReport {
    bool ok = true;
    std::optional<bool> sum_matches;  ///< set when the expansion claims (or must have) an exact sum
    std::vector<Valuation> tail_orders;
    bool orders_increasing = true;
    bool growth_ok = true;  ///< ord(z_(i+1)) >= k_i + 2 ord(z_i) on every step
    std::vector<std::string> failures;
};

/// Recomputes every tail z_i = input - a0 - sum_(j<i) 1/q_j exactly and
/// checks the sum, strict growth of ord(z_i), and the per-step bound.
template <SylvesterValue Value>
VerificationReport verify_expansion(const Value& input, const Expansion& e) {
    VerificationReport report;
    auto fail = [&report](std::string message) {
        report.ok = false;
        report.failures.push_back(std::move(message));
    };

    std::vector<Value> tails;
    tails.reserve(e.terms.size() + 1);
    Value tail = input;
    if (e.initial) tail = tail - *e.initial;
    tails.push_back(tail);
    for (const Rat& q : e.terms) {
        if (q == 0) {
            fail("zero term");
            return report;
        }
        Rat reciprocal_q = 1 / q;
        tail = tail - reciprocal_q;
        tails.push_back(tail);
    }

    const bool exact = detail::is_zero(tails.back());
    if (e.status == Status::terminated) {
        report.sum_matches = exact;
        if (!exact) fail("terms do not sum to the input");
    } else if (exact && !e.terms.empty()) {
        report.sum_matches = true;
        fail("status " + std::string(to_string(e.status)) + " but the terms sum exactly to the input");
    }

    if (!e.p) return report;
    const Prime& p = *e.p;
    for (const Value& t : tails) report.tail_orders.push_back(detail::order_of(p, t));
    for (std::size_t i = 0; i + 1 < report.tail_orders.size(); ++i) {
        const Valuation& before = report.tail_orders[i];
        const Valuation& after = report.tail_orders[i + 1];
        if (!(after > before)) {
            report.orders_increasing = false;
            fail("ord(z_" + std::to_string(i + 1) + ") = " + to_string(after) + " does not exceed ord(z_" +
                 std::to_string(i) + ") = " + to_string(before));
        }
        if (before.is_infinite()) continue;
        long k = i < e.trace.size() ? e.trace[i].k : e.k.value_or(1);
        if (after < Valuation(k + 2 * before.value())) {
            report.growth_ok = false;
            fail("step " + std::to_string(i) + ": ord(z_(i+1)) = " + to_string(after) + " < k + 2s = " +
                 std::to_string(k + 2 * before.value()));
        }
    }
    return report;
}

}  // namespace padic_sylvester
