#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "moment_lst/functionals.hpp"
#include "moment_lst/laurent.hpp"
#include "moment_lst/transforms.hpp"

namespace mlst::dsl {

enum class NodeKind {
    Number,  // integer or decimal literal, optionally imaginary (`2i`, `i`)
    Z,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Leb,
    Delta,
    Rational,
    Moments,
    Arc,
    Lst,
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::Number;
    /// Number: integer text as an exact value, or a double when `decimal`.
    mpz_class integer;
    double decimal_value = 0.0;
    bool decimal = false;
    bool imaginary = false;
    /// Pow exponent.
    int exponent = 0;
    std::vector<Expr> children;
};

/// Structural equality of ASTs (decimals compared bitwise).
bool equal(const Expr& a, const Expr& b);

/// LL(1) parse of the whole input. ParseError with 1-based line and column.
Expr parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(print(e)) is structurally equal to e.
std::string print(const Expr& e);

/// True when some literal is a decimal.
bool has_decimal(const Expr& e);

enum class Backend { Auto, Exact, Approx };

using Value = std::variant<Scalar, LaurentPolynomial, HermitianFunctional, LstTriple>;

std::string_view value_type_name(const Value& v) noexcept;

struct EvalOptions {
    /// Approx converts every literal to double precision. Exact with a
    /// decimal literal is MixedBackend.
    Backend backend = Backend::Auto;
    Tolerance tol;
};

Value evaluate(const Expr& e, const EvalOptions& opts = {});

/// Parse, evaluate and require one value type. InvalidArgument on a type
/// mismatch.
Scalar parse_scalar(std::string_view text, const EvalOptions& opts = {});
LaurentPolynomial parse_polynomial(std::string_view text, const EvalOptions& opts = {});
HermitianFunctional parse_functional(std::string_view text, const EvalOptions& opts = {});
LstTriple parse_triple(std::string_view text, const EvalOptions& opts = {});

/// `lst(L; M; C)` in re-parseable form.
std::string triple_text(const LstTriple& t);

}  // namespace mlst::dsl
