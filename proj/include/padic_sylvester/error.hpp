#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padic_sylvester {

enum class ErrorKind {
    invalid_prime,
    zero_input,
    not_in_ring,
    div_by_zero,
    not_a_residue,
    even_prime,
    not_a_square_free_field,
    embedding_mismatch,
    precision_exhausted,
    non_positive_divisor,
    budget_exceeded,
    hypothesis_violated,
    precondition_violated,
    k_too_small,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_prime: return "InvalidPrime";
    case ErrorKind::zero_input: return "ZeroInput";
    case ErrorKind::not_in_ring: return "NotInRing";
    case ErrorKind::div_by_zero: return "DivByZero";
    case ErrorKind::not_a_residue: return "NotAResidue";
    case ErrorKind::even_prime: return "EvenPrime";
    case ErrorKind::not_a_square_free_field: return "SquareRadicand";
    case ErrorKind::embedding_mismatch: return "EmbeddingMismatch";
    case ErrorKind::precision_exhausted: return "PrecisionExhausted";
    case ErrorKind::non_positive_divisor: return "NonPositiveDivisor";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::hypothesis_violated: return "HypothesisViolated";
    case ErrorKind::precondition_violated: return "PreconditionViolated";
    case ErrorKind::k_too_small: return "KTooSmall";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace padic_sylvester
