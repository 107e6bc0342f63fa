#pragma once

#include "hypersum/factored.hpp"
#include "hypersum/rational_function.hpp"

#include <memory>
#include <ostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hypersum {

enum class Kind {
    Number,
    Symbol,
    Add,
    Mul,
    Pow,
    Factorial,
    Gamma,
    Binomial,
    Pochhammer,
    Prod,
    SumRef,
};

class Expr;

struct ExprNode {
    Kind kind;
    Rational value;          // Number
    std::string name;        // Symbol, SumRef (the recurrence variable)
    long shift = 0;          // SumRef
    std::vector<Expr> args;  // operands; Prod: body, index symbol, lower, upper
};

/// Immutable expression in canonical form.
///
/// All constructors below normalize: Add and Mul are flattened and sorted,
/// like terms and like bases are combined, numbers are folded. Products are
/// never distributed over sums; use expand() for that.
class Expr {
public:
    Expr();  // the number 0
    Expr(long value);  // NOLINT
    explicit Expr(const Rational& value);

    static Expr symbol(const std::string& name);
    static Expr sum_ref(const std::string& var, long shift);

    Kind kind() const { return node_->kind; }
    const Rational& value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    long shift() const { return node_->shift; }
    const std::vector<Expr>& args() const { return node_->args; }
    const Expr& arg(std::size_t i) const { return node_->args[i]; }

    bool is_number() const { return kind() == Kind::Number; }
    bool is_integer() const { return is_number() && value().get_den() == 1; }
    bool is_zero() const { return is_number() && value() == 0; }
    bool is_one() const { return is_number() && value() == 1; }
    bool is_symbol(std::string_view name) const { return kind() == Kind::Symbol && this->name() == name; }

    friend bool operator==(const Expr& a, const Expr& b);
    friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

    std::string to_string() const;

private:
    explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ExprNode> node_;

    friend Expr make_node(ExprNode node);
};

/// Total order used for canonical sorting: kind rank, then children.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const Expr& exponent);
Expr factorial(const Expr& x);
Expr gamma(const Expr& x);
Expr binomial(const Expr& top, const Expr& bottom);
Expr pochhammer(const Expr& base, const Expr& count);
/// Product of body over index = lower..upper. Throws Error when the index occurs in the bounds.
Expr prod(const Expr& body, const std::string& index, const Expr& lower, const Expr& upper);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

/// Distributes products and positive integer powers over sums.
Expr expand(const Expr& e);

struct Substitution {
    std::string target;
    Expr value;
};

/// Replaces free occurrences of the target. Polynomial inputs come back expanded.
Expr substitute(const Expr& e, const Substitution& s);
Expr substitute(const Expr& e, const std::string& target, const Expr& value);

bool depends_on(const Expr& e, std::string_view var);
std::set<std::string> free_symbols(const Expr& e);
bool contains_kind(const Expr& e, Kind kind);

std::optional<Polynomial> to_polynomial(const Expr& e);
std::optional<RationalFunction> to_rational_function(const Expr& e);
Expr from_polynomial(const Polynomial& p);
Expr from_rational_function(const RationalFunction& f);
/// Factor list rendered as a product; polynomials appear in expanded form.
Expr from_factored(const FactoredRational& f);
/// Rational function shown with numerator and denominator factored for display.
Expr from_rational_factored(const RationalFunction& f);

Expr parse(std::string_view text);
std::string print(const Expr& e);

inline std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << print(e); }

}  // namespace hypersum
