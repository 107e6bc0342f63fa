#include "hypersum/cli.hpp"

#include "hypersum/errors.hpp"
#include "hypersum/hyper.hpp"
#include "hypersum/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <set>
#include <sstream>

namespace hypersum {

namespace {

using nlohmann::json;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Config {
    bool trace = true;
    std::string direction = "down";
    int order = 5;
    bool factor = true;
    bool proof = false;
    bool check = false;
    bool json = false;
    bool to_factorial = false;
    std::vector<std::string> subs;
    std::uint64_t seed = 20240611;
};

struct Outcome {
    std::optional<Expr> result;
    std::string representation_name;
    std::vector<Expr> representation;  // {p, q, r, f}
    std::vector<Expr> sigma;
    std::optional<Recurrence> recurrence;
    std::optional<CheckReport> check;
};

const std::set<std::string> kValueOptions{"--direction", "--order", "--sub", "--seed"};

// Tokens that are not options are positional, so "-n,b" or "-k" reach the command.
std::vector<std::string> split_argv(const std::vector<std::string>& args) {
    std::vector<std::string> options{args.empty() ? "hypersum" : args[0]}, positional;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--") {
            positional.insert(positional.end(), args.begin() + i + 1, args.end());
            break;
        }
        if (a.rfind("--", 0) == 0 || a == "-h") {
            options.push_back(a);
            if (kValueOptions.count(a) && i + 1 < args.size()) options.push_back(args[++i]);
        } else {
            positional.push_back(a);
        }
    }
    options.push_back("--");
    options.insert(options.end(), positional.begin(), positional.end());
    return options;
}

std::string symbol_arg(const std::string& text) {
    Expr e = parse(text);
    if (e.kind() != Kind::Symbol) throw UsageError("expected a variable name, got '" + text + "'");
    return text;
}

int order_arg(const std::string& text) {
    Expr e = parse(text);
    if (!e.is_integer() || e.value() < 1 || e.value() > 100) throw UsageError("order must be a positive integer");
    return static_cast<int>(e.value().get_num().get_si());
}

// "{a,b,c}" or "a,b,c"; commas inside parentheses belong to the parameter.
std::vector<Expr> list_arg(std::string text) {
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    text = trim(text);
    if (!text.empty() && text.front() == '{') {
        if (text.back() != '}') throw UsageError("unbalanced braces in parameter list");
        text = text.substr(1, text.size() - 2);
    }
    std::vector<Expr> out;
    if (trim(text).empty()) return out;
    int depth = 0;
    std::string item;
    for (char c : text + ",") {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(parse(item));
            item.clear();
        } else {
            item += c;
        }
    }
    return out;
}

Expr apply_subs(Expr e, const std::vector<std::string>& subs) {
    for (const auto& s : subs) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("--sub expects name=value, got '" + s + "'");
        e = substitute(e, symbol_arg(s.substr(0, eq)), parse(s.substr(eq + 1)));
    }
    return e;
}

Direction direction_of(const Config& c) { return c.direction == "up" ? Direction::Up : Direction::Down; }

Expr shown(const RationalFunction& f, bool factor) { return factor ? from_rational_factored(f) : from_rational_function(f); }

std::vector<Expr> representation(const GosperForm& form, const RationalFunction& p, bool factor) {
    return {shown(p, factor), shown(RationalFunction(form.q), factor), shown(RationalFunction(form.r), factor),
            form.f ? shown(*form.f, factor) : Expr(0)};
}

std::optional<long> integer_value(const Expr& e) {
    if (!e.is_integer() || !e.value().get_num().fits_slong_p()) return std::nullopt;
    return e.value().get_num().get_si();
}

CheckReport check_zeilberger(const ZeilbergerResult& z, const Expr& F, const std::string& k, const std::string& n,
                             const Config& c) {
    RecurrenceCheckOptions options;
    options.seed = c.seed;
    try {
        return check_recurrence(z.recurrence, F, k, options);
    } catch (const UnboundedSupport&) {
        // infinite support under every instantiation: the certificate identity decides
        return check_certificate(z, F, k, n);
    }
}

Outcome run_gosper(const std::vector<std::string>& a, const Config& c, Trace* trace) {
    if (a.size() != 2 && a.size() != 4) throw ArityError();
    Outcome o;
    const Expr term = apply_subs(parse(a[0]), c.subs);
    const std::string k = symbol_arg(a[1]);
    if (a.size() == 4) {
        const Expr lo = parse(a[2]), hi = parse(a[3]);
        o.result = gosper_definite(term, k, lo, hi, trace);
        if (c.proof || (c.check && !(integer_value(lo) && integer_value(hi)))) {
            Antidifference g = gosper(term, k);
            o.representation_name = "gosper_representation";
            o.representation = representation(g.certificate, RationalFunction(g.certificate.p), c.factor);
            if (c.check && !(integer_value(lo) && integer_value(hi))) o.check = check_antidifference(g.g, term, k, Direction::Down, c.seed);
        }
        if (c.check && integer_value(lo) && integer_value(hi))
            o.check = check_equal(*o.result, finite_sum(term, k, *integer_value(lo), *integer_value(hi)), k, c.seed);
        return o;
    }
    Antidifference g = gosper(term, k, direction_of(c), trace);
    o.result = g.g;
    o.representation_name = "gosper_representation";
    o.representation = representation(g.certificate, RationalFunction(g.certificate.p), c.factor);
    if (c.check) o.check = check_antidifference(g.g, term, k, g.direction, c.seed);
    return o;
}

Outcome recurrence_outcome(const ZeilbergerResult& z, const Expr& F, const std::string& k, const std::string& n,
                           const Config& c) {
    Outcome o;
    o.recurrence = z.recurrence;
    o.result = z.recurrence.to_expr(c.factor);
    o.representation_name = "zeilberger_representation";
    o.representation = representation(z.certificate.form, z.certificate.p, c.factor);
    for (const auto& s : z.certificate.sigma) o.sigma.push_back(shown(s, c.factor));
    if (c.check) o.check = check_zeilberger(z, F, k, n, c);
    return o;
}

ZeilbergerOptions zeilberger_options(const Config& c, const std::vector<std::string>& a, std::size_t order_at) {
    ZeilbergerOptions z;
    z.max_order = c.order;
    z.direction = direction_of(c);
    if (a.size() > order_at) z.fixed_order = order_arg(a[order_at]);
    return z;
}

Outcome run_sumrecursion(const std::vector<std::string>& a, const Config& c, Trace* trace) {
    if (a.size() != 3 && a.size() != 4) throw ArityError();
    const Expr F = apply_subs(parse(a[0]), c.subs);
    const std::string k = symbol_arg(a[1]), n = symbol_arg(a[2]);
    ZeilbergerResult z = sumrecursion(F, k, n, zeilberger_options(c, a, 3), trace);
    return recurrence_outcome(z, F, k, n, c);
}

HyperSpec hyper_spec(const std::vector<std::string>& a, const Config& c) {
    HyperSpec s;
    for (const auto& e : list_arg(a[0])) s.upper.push_back(apply_subs(e, c.subs));
    for (const auto& e : list_arg(a[1])) s.lower.push_back(apply_subs(e, c.subs));
    s.x = apply_subs(parse(a[2]), c.subs);
    return s;
}

Outcome run_hyperrecursion(const std::vector<std::string>& a, const Config& c, Trace* trace) {
    if (a.size() != 4 && a.size() != 5) throw ArityError();
    HyperSpec s = hyper_spec(a, c);
    const std::string n = symbol_arg(a[3]);
    ZeilbergerResult z = hyperrecursion(s, n, zeilberger_options(c, a, 4), trace);
    // the summation index hyperrecursion picked is the other variable of the ratio in k
    std::string k = "k";
    for (const auto& v : free_symbols(from_rational_function(z.ratio_k.rational())))
        if (v.rfind("k", 0) == 0 && !depends_on(s.x, v)) k = v;
    return recurrence_outcome(z, hyperterm(s, k), k, n, c);
}

Outcome run_hyperterm(const std::vector<std::string>& a, const Config& c, Trace*) {
    if (a.size() != 4) throw ArityError();
    HyperSpec s = hyper_spec(a, c);
    const std::string k = symbol_arg(a[3]);
    Outcome o;
    o.result = hyperterm(s, k);
    if (c.check) {
        const Expr K = Expr::symbol(k);
        Expr expected = s.x / K;
        for (const auto& u : s.upper) expected = expected * (u + K - Expr(1));
        for (const auto& l : s.lower) expected = expected / (l + K - Expr(1));
        o.check = check_equal(from_rational_function(term_ratio(*o.result, k).rational()), expected, k, c.seed);
    }
    return o;
}

Outcome run_simplify(const std::vector<std::string>& a, const Config& c, Trace*) {
    if (a.size() != 1) throw ArityError();
    const Expr e = apply_subs(parse(a[0]), c.subs);
    Outcome o;
    o.result = simplify_combinatorial(e);
    if (c.to_factorial) o.result = gamma_to_factorial(*o.result);
    if (c.check) {
        auto names = free_symbols(e);
        o.check = check_equal(*o.result, e, names.empty() ? "k" : *names.begin(), c.seed);
    }
    return o;
}

Outcome run_sum(const std::vector<std::string>& a, const Config& c, Trace* trace) {
    if (a.size() != 4) throw ArityError();
    const Expr F = apply_subs(parse(a[0]), c.subs);
    const std::string k = symbol_arg(a[1]);
    const Expr lo = parse(a[2]), hi = parse(a[3]);
    Outcome o;
    auto l = integer_value(lo), h = integer_value(hi);
    if (l && h) {
        o.result = finite_sum(F, k, *l, *h);
        if (c.check) o.check = check_equal(*o.result, finite_sum(F, k, *l, *h, Accumulation::Pairwise), k, c.seed);
    } else {
        o.result = gosper_definite(F, k, lo, hi, trace);
        if (c.check) o.check = check_antidifference(gosper(F, k).g, F, k, Direction::Down, c.seed);
    }
    return o;
}

std::string brace_list(const std::vector<Expr>& items) {
    std::string s = "{";
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + print(items[i]);
    return s + "}";
}

std::string instantiation_text(const Assignment& a) {
    std::string s;
    for (const auto& [name, v] : a) s += (s.empty() ? "" : ", ") + name + "=" + v.get_str();
    return s;
}

json to_json(const Outcome& o, const Config& c, const Trace& trace) {
    json j;
    if (o.result) j["result"] = print(*o.result);
    if (!o.representation.empty()) {
        json cert{{"p", print(o.representation[0])},
                  {"q", print(o.representation[1])},
                  {"r", print(o.representation[2])},
                  {"f", print(o.representation[3])}};
        if (!o.sigma.empty()) {
            cert["sigma"] = json::array();
            for (const auto& s : o.sigma) cert["sigma"].push_back(print(s));
        }
        j["certificate"] = cert;
    }
    if (o.recurrence) {
        json coeffs = json::array();
        for (const auto& p : o.recurrence->coefficients) coeffs.push_back(print(shown(RationalFunction(p), c.factor)));
        j["recurrence"] = {{"order", o.recurrence->order()},
                           {"direction", o.recurrence->direction == Direction::Up ? "up" : "down"},
                           {"var", o.recurrence->var},
                           {"coefficients", coeffs}};
    }
    if (o.check) {
        json evidence = json::array();
        for (const auto& e : o.check->evidence) {
            json inst = json::object();
            for (const auto& [name, v] : e.instantiation) inst[name] = v.get_str();
            evidence.push_back({{"instantiation", inst}, {"lhs", print(e.lhs)}, {"rhs", print(e.rhs)}});
        }
        j["check"] = {{"verdict", verdict_name(o.check->verdict)},
                      {"method", o.check->method},
                      {"seed", o.check->seed},
                      {"evidence", evidence}};
    }
    if (c.trace) j["trace"] = trace.lines();
    return j;
}

void print_text(const Outcome& o, const Config& c, std::ostream& out) {
    if (o.result) out << print(*o.result) << "\n";
    if (c.proof && !o.representation.empty()) {
        out << o.representation_name << ":= " << brace_list(o.representation) << "\n";
        if (!o.sigma.empty()) out << "sigma:= " << brace_list(o.sigma) << "\n";
    }
    if (o.check) {
        out << "check: " << verdict_name(o.check->verdict) << " (" << o.check->method << ", seed " << o.check->seed
            << ")\n";
        for (const auto& e : o.check->evidence)
            out << "  " << (e.instantiation.empty() ? "" : instantiation_text(e.instantiation) + ": ") << print(e.lhs)
                << (e.lhs == e.rhs ? " = " : " <> ") << print(e.rhs) << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    std::string command;
    std::vector<std::string> positional;

    CLI::App app{"Hypergeometric summation: Gosper's and Zeilberger's algorithms", "hypersum"};
    app.footer(
        "Commands:\n"
        "  gosper EXPR K [LO HI]           antidifference in K, or the sum over LO..HI\n"
        "  sumrecursion EXPR K N [J]       recurrence in N for the sum over K (order J only)\n"
        "  hyperrecursion UP LOW X N [J]   recurrence for pFq(UP; LOW | X), lists as {a,b}\n"
        "  hyperterm UP LOW X K            the pFq summand\n"
        "  simplify EXPR                   rewrite factorials, binomials and Pochhammer symbols as Gamma terms\n"
        "  sum EXPR K LO HI                exact finite sum\n");
    app.add_option("command", command, "gosper, sumrecursion, hyperrecursion, hyperterm, simplify or sum")
        ->required()
        ->check(CLI::IsMember({"gosper", "sumrecursion", "hyperrecursion", "hyperterm", "simplify", "sum"}));
    app.add_option("args", positional, "command arguments");
    app.add_flag("--trace,!--no-trace", c.trace, "print intermediate results to stderr (default on)");
    app.add_option("--direction", c.direction, "down: g(k) - g(k-1), up: g(k+1) - g(k)")
        ->check(CLI::IsMember({"down", "up"}));
    app.add_option("--order", c.order, "largest recurrence order searched")->check(CLI::Range(1, 100));
    app.add_flag("--factor,!--no-factor", c.factor, "factor coefficients of the output (default on)");
    app.add_flag("--proof", c.proof, "print the final Gosper representation {p,q,r,f}");
    app.add_flag("--check", c.check, "verify the result independently");
    app.add_flag("--json", c.json, "print a JSON document");
    app.add_flag("--gamma-to-factorial", c.to_factorial, "simplify: write Gamma terms as factorials");
    app.add_option("--sub", c.subs, "substitute name=value into the input before running");
    app.add_option("--seed", c.seed, "seed of the randomized checks");

    std::vector<std::string> argv = split_argv(args);
    std::vector<const char*> raw;
    for (const auto& a : argv) raw.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, x;
        int status = app.exit(e, o, x);
        out << o.str();
        err << x.str();
        return status == 0 ? 0 : 2;
    }

    Trace trace;
    Trace* t = c.trace ? &trace : nullptr;
    auto flush_trace = [&] {
        if (!c.json)
            for (const auto& line : trace.lines()) err << line << "\n";
    };
    auto fail = [&](const std::string& message, int status) {
        flush_trace();
        err << "***** " << message << "\n";
        if (c.json) {
            json j{{"error", message}};
            if (c.trace) j["trace"] = trace.lines();
            out << j.dump(2) << "\n";
        }
        return status;
    };
    try {
        Outcome o;
        if (command == "gosper") o = run_gosper(positional, c, t);
        else if (command == "sumrecursion") o = run_sumrecursion(positional, c, t);
        else if (command == "hyperrecursion") o = run_hyperrecursion(positional, c, t);
        else if (command == "hyperterm") o = run_hyperterm(positional, c, t);
        else if (command == "simplify") o = run_simplify(positional, c, t);
        else o = run_sum(positional, c, t);
        flush_trace();
        if (c.json) out << to_json(o, c, trace).dump(2) << "\n";
        else print_text(o, c, out);
        return 0;
    } catch (const SyntaxError& e) {
        return fail(e.what(), 2);
    } catch (const UsageError& e) {
        return fail(e.what(), 2);
    } catch (const Error& e) {
        return fail(e.what(), 1);
    }
}

}  // namespace hypersum
