#pragma once

// Machine-readable expansion reports (schema 1). Big integers and rationals
// are serialized as decimal strings; orders are JSON integers or "inf".

#include <json.hpp>

#include <string>
#include <vector>

#include "expansion.hpp"
#include "render.hpp"

namespace padic_sylvester::report {

inline constexpr int schema_version = 1;

struct QuadraticEcho {
    std::string d;
    std::string x;
    std::string y;
    std::string real_sign;
    std::string padic_residue;

    friend bool operator==(const QuadraticEcho&, const QuadraticEcho&) = default;
};

struct InputEcho {
    std::string algorithm;
    std::optional<std::string> p;
    std::optional<long> k;
    std::optional<std::string> value;
    std::optional<QuadraticEcho> quadratic;
    std::size_t max_terms = default_max_terms;

    friend bool operator==(const InputEcho&, const InputEcho&) = default;
};

struct TermRecord {
    std::string q;
    std::string reciprocal;  ///< 1/q as an exact rational
    std::string display;     ///< p^j/unit form, e.g. 3^4/115
    std::optional<long> p_power;
    std::optional<std::string> unit;

    friend bool operator==(const TermRecord&, const TermRecord&) = default;
};

struct StepRecord {
    long k = 0;
    std::string q;
    std::optional<Valuation> tail_order;
    std::optional<std::string> tail;
    std::optional<std::string> truncation;
    std::optional<std::string> dividend;
    std::optional<std::string> divisor;
    std::optional<std::string> r;
    std::optional<std::string> rbar;
    std::optional<bool> jumped;
    std::optional<std::string> division_case;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct VerificationBlock {
    bool ok = true;
    std::optional<bool> sum_matches;
    std::vector<Valuation> tail_orders;
    bool orders_increasing = true;
    bool growth_ok = true;
    std::vector<std::string> failures;

    friend bool operator==(const VerificationBlock&, const VerificationBlock&) = default;
};

struct ExpansionReport {
    int schema = schema_version;
    InputEcho input;
    std::optional<std::string> initial;
    std::vector<TermRecord> terms;
    std::string status;
    std::string rendered;
    std::vector<StepRecord> trace;
    VerificationBlock verification;

    friend bool operator==(const ExpansionReport&, const ExpansionReport&) = default;
};

inline TermRecord make_term(const std::optional<Prime>& p, const Rat& q) {
    TermRecord t{to_string(q), to_string(Rat(1 / q)), render_reciprocal(p, q), std::nullopt, std::nullopt};
    if (p) {
        if (auto local = try_as_plocal(*p, q); local && local->exponent() <= 0) {
            t.p_power = -local->exponent();
            t.unit = local->unit().get_str();
        }
    }
    return t;
}

inline ExpansionReport build(InputEcho input, const Expansion& e, const VerificationReport& v) {
    ExpansionReport out;
    out.input = std::move(input);
    if (e.initial) out.initial = to_string(*e.initial);
    for (const Rat& q : e.terms) out.terms.push_back(make_term(e.p, q));
    out.status = std::string(to_string(e.status));
    out.rendered = render_expansion(e);
    for (const ExpansionStep& s : e.trace) {
        StepRecord rec;
        rec.k = s.k;
        rec.q = to_string(s.q);
        rec.tail_order = s.tail_order;
        if (s.tail) rec.tail = to_string(*s.tail);
        if (s.truncation) rec.truncation = to_string(s.truncation->to_rat());
        if (s.division) {
            rec.dividend = to_string(s.division->b.to_rat());
            rec.divisor = to_string(s.division->a.to_rat());
            rec.r = to_string(s.division->r.to_rat());
            rec.rbar = s.division->rbar.get_str();
            rec.jumped = s.division->jumped;
            rec.division_case = std::string(to_string(s.division->division_case));
        }
        if (s.classical) {
            rec.dividend = to_string(s.classical->b);
            rec.divisor = to_string(s.classical->a);
            rec.r = to_string(s.classical->r);
        }
        out.trace.push_back(std::move(rec));
    }
    out.verification = {v.ok, v.sum_matches, v.tail_orders, v.orders_increasing, v.growth_ok, v.failures};
    return out;
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

inline json valuation_to_json(const Valuation& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

inline Valuation valuation_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "inf") throw json::other_error::create(501, "bad order", &j);
        return Valuation::infinity();
    }
    return j.get<long>();
}

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& value) {
    if (value) j[key] = *value;
}

template <class T>
void get_optional(const json& j, const char* key, std::optional<T>& value) {
    if (auto it = j.find(key); it != j.end() && !it->is_null())
        value = it->get<T>();
    else
        value.reset();
}

inline void to_json(json& j, const QuadraticEcho& q) {
    j = json{{"d", q.d}, {"x", q.x}, {"y", q.y}, {"real_sign", q.real_sign}, {"padic_residue", q.padic_residue}};
}

inline void from_json(const json& j, QuadraticEcho& q) {
    j.at("d").get_to(q.d);
    j.at("x").get_to(q.x);
    j.at("y").get_to(q.y);
    j.at("real_sign").get_to(q.real_sign);
    j.at("padic_residue").get_to(q.padic_residue);
}

inline void to_json(json& j, const InputEcho& in) {
    j = json{{"algorithm", in.algorithm}, {"max_terms", in.max_terms}};
    put_optional(j, "p", in.p);
    put_optional(j, "k", in.k);
    put_optional(j, "value", in.value);
    put_optional(j, "quadratic", in.quadratic);
}

inline void from_json(const json& j, InputEcho& in) {
    j.at("algorithm").get_to(in.algorithm);
    j.at("max_terms").get_to(in.max_terms);
    get_optional(j, "p", in.p);
    get_optional(j, "k", in.k);
    get_optional(j, "value", in.value);
    get_optional(j, "quadratic", in.quadratic);
}

inline void to_json(json& j, const TermRecord& t) {
    j = json{{"q", t.q}, {"reciprocal", t.reciprocal}, {"display", t.display}};
    put_optional(j, "p_power", t.p_power);
    put_optional(j, "unit", t.unit);
}

inline void from_json(const json& j, TermRecord& t) {
    j.at("q").get_to(t.q);
    j.at("reciprocal").get_to(t.reciprocal);
    j.at("display").get_to(t.display);
    get_optional(j, "p_power", t.p_power);
    get_optional(j, "unit", t.unit);
}

inline void to_json(json& j, const StepRecord& s) {
    j = json{{"k", s.k}, {"q", s.q}};
    if (s.tail_order) j["tail_order"] = valuation_to_json(*s.tail_order);
    put_optional(j, "tail", s.tail);
    put_optional(j, "truncation", s.truncation);
    put_optional(j, "dividend", s.dividend);
    put_optional(j, "divisor", s.divisor);
    put_optional(j, "r", s.r);
    put_optional(j, "rbar", s.rbar);
    put_optional(j, "jumped", s.jumped);
    put_optional(j, "case", s.division_case);
}

inline void from_json(const json& j, StepRecord& s) {
    j.at("k").get_to(s.k);
    j.at("q").get_to(s.q);
    if (auto it = j.find("tail_order"); it != j.end())
        s.tail_order = valuation_from_json(*it);
    else
        s.tail_order.reset();
    get_optional(j, "tail", s.tail);
    get_optional(j, "truncation", s.truncation);
    get_optional(j, "dividend", s.dividend);
    get_optional(j, "divisor", s.divisor);
    get_optional(j, "r", s.r);
    get_optional(j, "rbar", s.rbar);
    get_optional(j, "jumped", s.jumped);
    get_optional(j, "case", s.division_case);
}

inline void to_json(json& j, const VerificationBlock& v) {
    json orders = json::array();
    for (const Valuation& o : v.tail_orders) orders.push_back(valuation_to_json(o));
    j = json{{"ok", v.ok},
             {"tail_orders", orders},
             {"orders_increasing", v.orders_increasing},
             {"growth_ok", v.growth_ok},
             {"failures", v.failures}};
    put_optional(j, "sum_matches", v.sum_matches);
}

inline void from_json(const json& j, VerificationBlock& v) {
    j.at("ok").get_to(v.ok);
    v.tail_orders.clear();
    for (const json& o : j.at("tail_orders")) v.tail_orders.push_back(valuation_from_json(o));
    j.at("orders_increasing").get_to(v.orders_increasing);
    j.at("growth_ok").get_to(v.growth_ok);
    j.at("failures").get_to(v.failures);
    get_optional(j, "sum_matches", v.sum_matches);
}

inline void to_json(json& j, const ExpansionReport& r) {
    j = json{{"schema", r.schema},   {"command", "expand"}, {"input", r.input},   {"terms", r.terms},
             {"status", r.status},   {"rendered", r.rendered}, {"trace", r.trace}, {"verification", r.verification}};
    put_optional(j, "initial", r.initial);
}

inline void from_json(const json& j, ExpansionReport& r) {
    j.at("schema").get_to(r.schema);
    if (r.schema != schema_version)
        throw json::other_error::create(502, "unsupported report schema " + std::to_string(r.schema), &j);
    j.at("input").get_to(r.input);
    j.at("terms").get_to(r.terms);
    j.at("status").get_to(r.status);
    j.at("rendered").get_to(r.rendered);
    j.at("trace").get_to(r.trace);
    j.at("verification").get_to(r.verification);
    get_optional(j, "initial", r.initial);
}

}  // namespace padic_sylvester::report
