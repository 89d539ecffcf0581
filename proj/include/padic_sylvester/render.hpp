#pragma once

// Text rendering of expansions: 1/q with q = unit * p^-j is shown as p^j/unit,
// matching how p-adic Sylvester sums are usually written (3^4/115).

#include <string>

#include "expansion.hpp"

namespace padic_sylvester {

/// 1/q as "p^j/unit" when q = unit p^-j with j >= 0, else as an exact rational.
/// The result carries a leading '-' for negative q.
inline std::string render_reciprocal(const std::optional<Prime>& p, const Rat& q) {
    if (q == 0) throw Error(ErrorKind::div_by_zero, "zero term");
    std::string sign = sgn(q) < 0 ? "-" : "";
    Rat magnitude = abs(q);
    if (p) {
        if (auto local = try_as_plocal(*p, magnitude); local && local->exponent() <= 0) {
            long j = -local->exponent();
            std::string power = j == 0 ? "1" : j == 1 ? p->value().get_str()
                                                      : p->value().get_str() + "^" + std::to_string(j);
            if (local->unit() == 1) return sign + power;
            return sign + power + "/" + local->unit().get_str();
        }
    }
    return sign + to_string(Rat(1 / magnitude));
}

/// "a0 + 1/q_0 + ..." with " - " for negative terms and a trailing " + ..."
/// when the expansion does not terminate.
inline std::string render_expansion(const Expansion& e) {
    std::string out;
    auto append = [&out](const std::string& term) {
        if (out.empty()) {
            out = term;
        } else if (term.front() == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    };
    if (e.initial) append(to_string(*e.initial));
    for (const Rat& q : e.terms) append(render_reciprocal(e.p, q));
    if (out.empty()) out = "0";
    if (e.status != Status::terminated) out += " + ...";
    return out;
}

}  // namespace padic_sylvester
