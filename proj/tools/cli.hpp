#pragma once

// Command-line front end. Exit codes: 0 success (a certified
// non-terminating expansion counts as success), 1 invalid input or failed
// verification, 2 step cap reached or p-adic precision exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "padic_sylvester/padic_sylvester.hpp"
#include "padic_sylvester/report.hpp"

namespace padic_sylvester::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_incomplete = 2;

namespace detail {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat require_rat(const std::string& flag, const std::string& text) {
    auto r = parse_rat(text);
    if (!r) throw UsageError("--" + flag + ": cannot parse '" + text + "' as an integer or num/den");
    return *r;
}

inline Prime require_prime(const std::string& text) {
    Integer n;
    if (text.empty() || n.set_str(text, 10) != 0) throw UsageError("--p: '" + text + "' is not an integer");
    try {
        return Prime(n);
    } catch (const Error&) {
        throw UsageError("--p: " + text + " is not prime");
    }
}

struct QuadFlags {
    std::string d, x, y, real_sign, padic_residue;

    bool any() const {
        return !d.empty() || !x.empty() || !y.empty() || !real_sign.empty() || !padic_residue.empty();
    }
    bool all() const {
        return !d.empty() && !x.empty() && !y.empty() && !real_sign.empty() && !padic_residue.empty();
    }

    void add_to(CLI::App* cmd) {
        cmd->add_option("--sqrt", d, "radicand d of the quadratic field Q(sqrt d)");
        cmd->add_option("--x", x, "rational part x of x + y sqrt(d)");
        cmd->add_option("--y", y, "coefficient y of sqrt(d)");
        cmd->add_option("--real-sign", real_sign, "real embedding of sqrt(d): + or -");
        cmd->add_option("--padic-residue", padic_residue, "sqrt(d) mod p selecting the p-adic root");
    }

    QuadElement element(const Prime& p) const {
        if (!all())
            throw UsageError("--sqrt, --x, --y, --real-sign and --padic-residue must be given together");
        Rat radicand = require_rat("sqrt", d);
        RealSign sign;
        if (real_sign == "+")
            sign = RealSign::positive;
        else if (real_sign == "-")
            sign = RealSign::negative;
        else
            throw UsageError("--real-sign: expected + or -, got '" + real_sign + "'");
        Integer residue;
        if (residue.set_str(padic_residue, 10) != 0)
            throw UsageError("--padic-residue: '" + padic_residue + "' is not an integer");
        try {
            auto ctx = QuadContext::make(radicand, sign, p, residue);
            return QuadElement(ctx, require_rat("x", x), require_rat("y", y));
        } catch (const Error& e) {
            std::string flag = e.kind() == ErrorKind::not_a_residue ? "--padic-residue" : "--sqrt";
            throw UsageError(flag + ": " + e.what());
        }
    }

    report::QuadraticEcho echo() const { return {d, x, y, real_sign, padic_residue}; }
};

enum class Output { text, json };

inline void add_output_flag(CLI::App* cmd, Output& output) {
    cmd->add_option("--output", output, "output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Output>{{"text", Output::text}, {"json", Output::json}}));
}

inline int exit_for(Status status) { return status == Status::cap_reached ? exit_incomplete : exit_ok; }

inline std::string ord_text(const std::vector<Valuation>& orders) {
    std::string out;
    for (const auto& o : orders) out += (out.empty() ? "" : " ") + to_string(o);
    return out;
}

// ---------------------------------------------------------------------------

struct DivideArgs {
    std::string p, a, b;
    long k = 0;
    bool brute = false;
    bool classical = false;
    Output output = Output::text;
};

inline int run_divide(const DivideArgs& args, std::ostream& out) {
    Rat a = require_rat("a", args.a);
    Rat b = require_rat("b", args.b);
    if (sgn(a) <= 0) throw UsageError("--a: divisor must be positive");
    nlohmann::json j{{"schema", report::schema_version}, {"command", "divide"}, {"a", to_string(a)}, {"b", to_string(b)}};
    if (args.classical) {
        ClassicalDivision d = classical_divide(a, b);
        j["q"] = d.q.get_str();
        j["r"] = to_string(d.r);
        if (args.output == Output::json)
            out << j.dump(2) << '\n';
        else
            out << "q = " << d.q << "\nr = " << to_string(d.r) << '\n';
        return exit_ok;
    }
    if (args.p.empty()) throw UsageError("--p: required for p^k division");
    Prime p = require_prime(args.p);
    j["p"] = args.p;
    j["k"] = args.k;

    auto pa = try_as_plocal(p, a);
    auto pb = try_as_plocal(p, b);
    std::optional<DivisionStep> step;
    Rat r;
    PLocal q(p);
    if (pa && pb) {
        step = pk_divide(p, args.k, *pa, *pb);
        q = step->q;
        r = step->r.to_rat();
    } else {
        RationalDivisionStep rs = pk_divide_rational(p, args.k, a, b);
        step = rs.cleared;
        q = rs.q;
        r = rs.r;
    }
    j["q"] = to_string(q.to_rat());
    j["r"] = to_string(r);
    j["rbar"] = step->rbar.get_str();
    j["case"] = std::string(to_string(step->division_case));
    j["jumped"] = step->jumped;
    std::optional<bool> oracle;
    if (args.brute) {
        if (!(pa && pb)) throw UsageError("--brute: operands must lie in Z[1/p]");
        oracle = brute_force_divide(p, args.k, *pa, *pb) == *step;
        j["oracle_agrees"] = *oracle;
    }
    if (args.output == Output::json) {
        out << j.dump(2) << '\n';
    } else {
        out << "q = " << to_string(q.to_rat()) << "\nr = " << to_string(r) << "\nrbar = " << step->rbar
            << "\ncase = " << to_string(step->division_case) << "\njumped = " << (step->jumped ? "true" : "false")
            << '\n';
        if (oracle) out << "oracle_agrees = " << (*oracle ? "true" : "false") << '\n';
    }
    return oracle.value_or(true) ? exit_ok : exit_invalid;
}

// ---------------------------------------------------------------------------

struct ExpandArgs {
    std::string algorithm, p, value;
    std::optional<long> k;
    QuadFlags quad;
    std::size_t max_terms = default_max_terms;
    Output output = Output::text;
};

struct ExpandResult {
    Expansion expansion;
    VerificationReport verification;
    report::InputEcho echo;
};

inline ExpandResult expand(const ExpandArgs& args) {
    report::InputEcho echo;
    echo.algorithm = args.algorithm;
    echo.max_terms = args.max_terms;
    echo.k = args.k;
    if (!args.p.empty()) echo.p = args.p;
    if (!args.value.empty()) echo.value = args.value;
    if (args.quad.any()) echo.quadratic = args.quad.echo();

    const bool quadratic = args.quad.any();
    if (quadratic && !args.value.empty()) throw UsageError("--value: cannot be combined with --sqrt");
    if (quadratic && args.algorithm != "sylvester")
        throw UsageError("--alg: quadratic inputs need --alg sylvester");
    if (!quadratic && args.value.empty()) throw UsageError("--value: required");
    if (args.max_terms == 0) throw UsageError("--max-terms: must be positive");

    auto need_p = [&]() {
        if (args.p.empty()) throw UsageError("--p: required for --alg " + args.algorithm);
        return require_prime(args.p);
    };
    auto need_k = [&]() {
        if (!args.k) throw UsageError("--k: required for --alg " + args.algorithm);
        return *args.k;
    };
    auto need_value = [&]() {
        Rat v = require_rat("value", args.value);
        if (v == 0) throw UsageError("--value: must be nonzero");
        return v;
    };

    if (args.algorithm == "fs") {
        Rat v = need_value();
        if (v <= -1) throw UsageError("--value: F-S greedy needs a value greater than -1");
        Expansion e = fs_greedy(v);
        return {e, verify_expansion(v, e), echo};
    }
    if (args.algorithm == "knopf") {
        Prime p = need_p();
        Rat v = need_value();
        Expansion e = knopfmacher_sylvester(p, v, args.max_terms);
        return {e, verify_expansion(v, e), echo};
    }
    if (args.algorithm == "pk" || args.algorithm == "adaptive") {
        Prime p = need_p();
        long k = need_k();
        Rat v = need_value();
        Expansion e;
        if (args.algorithm == "pk") {
            if (k <= -ord(p, v).value())
                throw UsageError("--k: must exceed -ord_p(value) = " + std::to_string(-ord(p, v).value()) +
                                 " (use --alg adaptive)");
            e = pk_greedy(p, k, v, args.max_terms);
        } else {
            e = adaptive_pk_greedy(p, k, v, args.max_terms);
        }
        return {e, verify_expansion(v, e), echo};
    }
    if (args.algorithm == "sylvester") {
        Prime p = need_p();
        long k = need_k();
        if (quadratic) {
            QuadElement u = args.quad.element(p);
            if (u.is_zero()) throw UsageError("--x/--y: value must be nonzero");
            if (k <= -quad_ord(u)) throw UsageError("--k: must exceed -ord_p(value) = " + std::to_string(-quad_ord(u)));
            Expansion e = modified_sylvester(p, k, u, args.max_terms);
            return {e, verify_expansion(u, e), echo};
        }
        Rat v = need_value();
        if (k <= -ord(p, v).value())
            throw UsageError("--k: must exceed -ord_p(value) = " + std::to_string(-ord(p, v).value()));
        Expansion e = modified_sylvester(p, k, v, args.max_terms);
        return {e, verify_expansion(v, e), echo};
    }
    throw UsageError("--alg: unknown algorithm '" + args.algorithm + "'");
}

inline int run_expand(const ExpandArgs& args, std::ostream& out) {
    ExpandResult result = expand(args);
    report::ExpansionReport rep = report::build(result.echo, result.expansion, result.verification);
    if (args.output == Output::json) {
        out << nlohmann::json(rep).dump(2) << '\n';
    } else {
        out << rep.rendered << '\n' << "status: " << rep.status << '\n';
        if (result.expansion.p && !result.verification.tail_orders.empty())
            out << "tail orders: " << ord_text(result.verification.tail_orders) << '\n';
        if (result.expansion.has_jump()) {
            out << "jumps at steps:";
            for (std::size_t i = 0; i < result.expansion.trace.size(); ++i)
                if (result.expansion.trace[i].division && result.expansion.trace[i].division->jumped) out << ' ' << i;
            out << '\n';
        }
    }
    return exit_for(result.expansion.status);
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string report_path = "-";
    Output output = Output::text;
};

inline int run_verify(const VerifyArgs& args, std::istream& in, std::ostream& out) {
    std::string text;
    if (args.report_path == "-") {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file(args.report_path);
        if (!file) throw UsageError("--report: cannot open '" + args.report_path + "'");
        text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    report::ExpansionReport rep;
    try {
        rep = nlohmann::json::parse(text).get<report::ExpansionReport>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("--report: malformed report: ") + e.what());
    }

    const report::InputEcho& in_echo = rep.input;
    Expansion e;
    if (in_echo.p) e.p = require_prime(*in_echo.p);
    e.k = in_echo.k;
    if (in_echo.algorithm == "knopf") e.k = 1;
    if (rep.initial) e.initial = require_rat("report initial", *rep.initial);
    for (const auto& t : rep.terms) e.terms.push_back(require_rat("report term", t.q));
    if (rep.status == "terminated")
        e.status = Status::terminated;
    else if (rep.status == "certified_nonterminating")
        e.status = Status::certified_nonterminating;
    else if (rep.status == "cap_reached")
        e.status = Status::cap_reached;
    else
        throw UsageError("--report: unknown status '" + rep.status + "'");
    for (const auto& s : rep.trace) {
        ExpansionStep step;
        step.q = require_rat("report trace", s.q);
        step.k = s.k;
        e.trace.push_back(std::move(step));
    }

    VerificationReport v;
    if (in_echo.quadratic) {
        if (!e.p) throw UsageError("--report: quadratic input without p");
        const auto& q = *in_echo.quadratic;
        QuadFlags flags{q.d, q.x, q.y, q.real_sign, q.padic_residue};
        v = verify_expansion(flags.element(*e.p), e);
    } else {
        if (!in_echo.value) throw UsageError("--report: input value missing");
        v = verify_expansion(require_rat("report value", *in_echo.value), e);
    }
    // the terms listed must also match the rendered line
    if (render_expansion(e) != rep.rendered) {
        v.ok = false;
        v.failures.push_back("rendered line does not match the terms");
    }
    if (args.output == Output::json) {
        nlohmann::json j{{"schema", report::schema_version},
                         {"command", "verify"},
                         {"ok", v.ok},
                         {"failures", v.failures}};
        report::put_optional(j, "sum_matches", v.sum_matches);
        nlohmann::json orders = nlohmann::json::array();
        for (const auto& o : v.tail_orders) orders.push_back(report::valuation_to_json(o));
        j["tail_orders"] = orders;
        out << j.dump(2) << '\n';
    } else {
        out << (v.ok ? "verified" : "FAILED") << '\n';
        if (v.sum_matches) out << "sum matches: " << (*v.sum_matches ? "yes" : "no") << '\n';
        if (!v.tail_orders.empty()) out << "tail orders: " << ord_text(v.tail_orders) << '\n';
        for (const auto& f : v.failures) out << "failure: " << f << '\n';
    }
    return v.ok ? exit_ok : exit_invalid;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
    std::string check, p, value, a, b;
    long k = 0;
    std::size_t max_terms = 4096;
    Output output = Output::text;
};

inline int run_compare(const CompareArgs& args, std::ostream& out) {
    Prime p = require_prime(args.p);
    nlohmann::json j{{"schema", report::schema_version}, {"command", "compare"}, {"check", args.check},
                     {"p", args.p}, {"k", args.k}};
    std::string text;
    if (args.check == "scaling") {
        if (args.a.empty() || args.b.empty()) throw UsageError("--a/--b: required for --check scaling");
        Rat a = require_rat("a", args.a), b = require_rat("b", args.b);
        if (a.get_den() != 1 || b.get_den() != 1) throw UsageError("--a/--b: must be integers");
        if (sgn(a) <= 0) throw UsageError("--a: must be positive");
        if (b != 0 && args.k > ord(p, b).value() - ord(p, a).value())
            throw UsageError("--k: must not exceed ord(b) - ord(a)");
        bool holds = check_scaling_correspondence(p, args.k, a.get_num(), b.get_num());
        j["a"] = to_string(a);
        j["b"] = to_string(b);
        j["holds"] = holds;
        text = std::string("scaling correspondence: ") + (holds ? "holds" : "fails") + '\n';
    } else {
        Rat v = require_rat("value", args.value);
        j["value"] = to_string(v);
        if (args.check == "nojump") {
            if (sgn(v) <= 0) throw UsageError("--value: must be positive");
            if (args.k > -ord(p, v).value())
                throw UsageError("--k: must not exceed -ord_p(value) = " + std::to_string(-ord(p, v).value()));
            CorrespondenceReport r = check_nojump_correspondence(p, args.k, v, args.max_terms);
            j["outcome"] = std::string(to_string(r.outcome));
            j["jumped"] = r.jumped;
            j["padic"] = render_expansion(r.padic);
            j["classical"] = render_expansion(r.classical);
            text = std::string(to_string(r.outcome)) + "\np-adic:    " + render_expansion(r.padic) +
                   "\nclassical: " + render_expansion(r.classical) + '\n';
        } else if (args.check == "equivalence") {
            if (v == 0) throw UsageError("--value: must be nonzero");
            if (args.k <= -ord(p, v).value())
                throw UsageError("--k: must exceed -ord_p(value) = " + std::to_string(-ord(p, v).value()));
            Expansion greedy = pk_greedy(p, args.k, v);
            Expansion sylvester = modified_sylvester(p, args.k, v, greedy.terms.size() + 1);
            bool same = greedy.terms == sylvester.terms && sylvester.status == Status::terminated;
            j["identical"] = same;
            j["pk"] = render_expansion(greedy);
            j["sylvester"] = render_expansion(sylvester);
            text = std::string(same ? "identical" : "different") + "\npk:        " + render_expansion(greedy) +
                   "\nsylvester: " + render_expansion(sylvester) + '\n';
        } else {
            throw UsageError("--check: expected nojump, equivalence or scaling");
        }
    }
    if (args.output == Output::json)
        out << j.dump(2) << '\n';
    else
        out << text;
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct DigitsArgs {
    std::string p, value;
    QuadFlags quad;
    std::size_t count = 8;
    std::optional<long> k;
    Output output = Output::text;
};

inline int run_digits(const DigitsArgs& args, std::ostream& out) {
    Prime p = require_prime(args.p);
    nlohmann::json j{{"schema", report::schema_version}, {"command", "digits"}, {"p", args.p}};
    std::ostringstream text;
    if (args.quad.any()) {
        if (!args.value.empty()) throw UsageError("--value: cannot be combined with --sqrt");
        QuadElement u = args.quad.element(p);
        if (u.is_zero()) throw UsageError("--x/--y: value must be nonzero");
        long order = quad_ord(u);
        long k = args.k.value_or(order + static_cast<long>(args.count));
        PLocal t = quad_frac_part_k(u, k);
        j["ord"] = order;
        j["k"] = k;
        j["frac_part_k"] = to_string(t.to_rat());
        text << "ord = " << order << "\n<value>_" << k << " = " << to_string(t.to_rat()) << '\n';
    } else {
        Rat v = require_rat("value", args.value);
        DigitExpansion d = digits_of(p, v, args.count);
        std::vector<std::string> digits;
        for (const auto& c : d.digits) digits.push_back(c.get_str());
        j["start"] = d.start;
        j["digits"] = digits;
        j["ord"] = report::valuation_to_json(ord(p, v));
        j["frac_part"] = to_string(frac_part(p, v).to_rat());
        text << "ord = " << to_string(ord(p, v)) << "\nstart = " << d.start << "\ndigits =";
        for (const auto& c : digits) text << ' ' << c;
        text << "\n<value> = " << to_string(frac_part(p, v).to_rat()) << '\n';
        if (args.k) {
            PLocal t = frac_part_k(p, *args.k, v);
            j["k"] = *args.k;
            j["frac_part_k"] = to_string(t.to_rat());
            text << "<value>_" << *args.k << " = " << to_string(t.to_rat()) << '\n';
        }
    }
    if (args.output == Output::json)
        out << j.dump(2) << '\n';
    else
        out << text.str();
    return exit_ok;
}

}  // namespace detail

/// Runs one CLI invocation. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    using namespace detail;
    CLI::App app{"p-adic Sylvester expansions by p^k division", "padic-sylvester"};
    app.require_subcommand(1);

    DivideArgs divide_args;
    auto* divide = app.add_subcommand("divide", "p^k division (or classical division) of b by a");
    divide->add_option("--p", divide_args.p, "prime p");
    divide->add_option("--k", divide_args.k, "power k")->default_val(0);
    divide->add_option("--a", divide_args.a, "divisor a > 0")->required();
    divide->add_option("--b", divide_args.b, "dividend b")->required();
    divide->add_flag("--brute", divide_args.brute, "also run the enumeration oracle");
    divide->add_flag("--classical", divide_args.classical, "classical division b = a q - r, 0 <= r < a");
    add_output_flag(divide, divide_args.output);

    ExpandArgs expand_args;
    auto* expand_cmd = app.add_subcommand("expand", "Sylvester-type expansion of a value");
    expand_cmd->add_option("--alg", expand_args.algorithm, "fs, pk, knopf, sylvester or adaptive")->required();
    expand_cmd->add_option("--p", expand_args.p, "prime p");
    expand_cmd->add_option("--k", expand_args.k, "power k");
    expand_cmd->add_option("--value", expand_args.value, "rational input n or n/d");
    expand_cmd->add_option("--max-terms", expand_args.max_terms, "term cap for runs that may not terminate");
    expand_args.quad.add_to(expand_cmd);
    add_output_flag(expand_cmd, expand_args.output);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "re-check a JSON expansion report");
    verify->add_option("--report", verify_args.report_path, "report file, - for standard input");
    add_output_flag(verify, verify_args.output);

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "cross-check algorithms");
    compare->add_option("--check", compare_args.check, "nojump, equivalence or scaling")->required();
    compare->add_option("--p", compare_args.p, "prime p")->required();
    compare->add_option("--k", compare_args.k, "power k")->required();
    compare->add_option("--value", compare_args.value, "rational input");
    compare->add_option("--a", compare_args.a, "integer divisor (scaling)");
    compare->add_option("--b", compare_args.b, "integer dividend (scaling)");
    compare->add_option("--max-terms", compare_args.max_terms, "term cap for the small-k p^k run");
    add_output_flag(compare, compare_args.output);

    DigitsArgs digits_args;
    auto* digits = app.add_subcommand("digits", "base-p digits and fractional parts");
    digits->add_option("--p", digits_args.p, "prime p")->required();
    digits->add_option("--value", digits_args.value, "rational input");
    digits->add_option("--count", digits_args.count, "number of digits");
    digits->add_option("--k", digits_args.k, "also print <value>_k");
    digits_args.quad.add_to(digits);
    add_output_flag(digits, digits_args.output);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    }

    try {
        if (divide->parsed()) return run_divide(divide_args, out);
        if (expand_cmd->parsed()) return run_expand(expand_args, out);
        if (verify->parsed()) return run_verify(verify_args, in, out);
        if (compare->parsed()) return run_compare(compare_args, out);
        if (digits->parsed()) return run_digits(digits_args, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::precision_exhausted ? exit_incomplete : exit_invalid;
    }
    return exit_invalid;
}

}  // namespace padic_sylvester::cli
