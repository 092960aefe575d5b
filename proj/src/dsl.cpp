#include "moment_lst/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "moment_lst/errors.hpp"

namespace mlst::dsl {

namespace {

enum class Tok { Number, Ident, Symbol, End };

struct Token {
    Tok type = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
   public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t{Tok::End, "", line_, col_};
            if (pos_ >= s_.size()) {
                out.push_back(t);
                return out;
            }
            const char ch = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(ch)) || (ch == '.' && digit_at(pos_ + 1))) {
                t.type = Tok::Number;
                t.text = number();
            } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                t.type = Tok::Ident;
                while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                    t.text += take();
                }
            } else if (std::string_view("+-*/^()[];,").find(ch) != std::string_view::npos) {
                t.type = Tok::Symbol;
                t.text = std::string(1, take());
            } else {
                throw ParseError(line_, col_, "expression");
            }
            out.push_back(std::move(t));
        }
    }

   private:
    bool digit_at(std::size_t p) const { return p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p])); }

    char take() {
        const char ch = s_[pos_++];
        ++col_;
        return ch;
    }

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            if (s_[pos_] == '\n') {
                ++line_;
                col_ = 0;
            }
            take();
        }
    }

    /// digits ['.' digits] [('e'|'E') ['+'|'-'] digits] ['i']
    std::string number() {
        std::string t;
        while (digit_at(pos_)) t += take();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            t += take();
            while (digit_at(pos_)) t += take();
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
            if (digit_at(p)) {
                while (pos_ < p) t += take();
                while (digit_at(pos_)) t += take();
            }
        }
        if (pos_ < s_.size() && s_[pos_] == 'i' &&
            !(pos_ + 1 < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '_'))) {
            t += take();
        }
        return t;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

Expr node(NodeKind kind, std::vector<Expr> children = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children = std::move(children);
    return n;
}

class Parser {
   public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Expr parse_all() {
        Expr e = expr();
        if (peek().type != Tok::End) fail("end of input");
        return e;
    }

   private:
    const Token& peek() const { return toks_[pos_]; }
    bool at(std::string_view sym) const { return peek().type == Tok::Symbol && peek().text == sym; }
    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(peek().line, peek().column, expected);
    }
    void expect(std::string_view sym) {
        if (!at(sym)) fail("'" + std::string(sym) + "'");
        ++pos_;
    }

    Expr expr() {
        Expr e = term();
        while (at("+") || at("-")) {
            const NodeKind k = at("+") ? NodeKind::Add : NodeKind::Sub;
            ++pos_;
            e = node(k, {e, term()});
        }
        return e;
    }

    Expr term() {
        Expr e = unary();
        while (at("*") || at("/")) {
            const NodeKind k = at("*") ? NodeKind::Mul : NodeKind::Div;
            ++pos_;
            e = node(k, {e, unary()});
        }
        return e;
    }

    Expr unary() {
        if (at("-")) {
            ++pos_;
            return node(NodeKind::Neg, {unary()});
        }
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!at("^")) return base;
        ++pos_;
        bool negative = false;
        if (at("-")) {
            negative = true;
            ++pos_;
        }
        const Token& t = peek();
        if (t.type != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
            fail("integer exponent");
        }
        const long k = std::strtol(t.text.c_str(), nullptr, 10);
        if (t.text.size() > 6) fail("exponent below 10^6");
        ++pos_;
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Pow;
        n->children = {base};
        n->exponent = static_cast<int>(negative ? -k : k);
        return n;
    }

    Expr number(const Token& t) {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Number;
        std::string text = t.text;
        if (!text.empty() && text.back() == 'i') {
            n->imaginary = true;
            text.pop_back();
        }
        if (text.find_first_not_of("0123456789") == std::string::npos) {
            n->integer = mpz_class(text);
        } else {
            n->decimal = true;
            n->decimal_value = std::strtod(text.c_str(), nullptr);
        }
        return n;
    }

    std::vector<Expr> arguments(std::string_view open, std::string_view close, std::string_view sep, int count) {
        expect(open);
        std::vector<Expr> args{expr()};
        while (count < 0 ? at(sep) : static_cast<int>(args.size()) < count) {
            expect(sep);
            args.push_back(expr());
        }
        expect(close);
        return args;
    }

    Expr primary() {
        const Token t = peek();
        if (t.type == Tok::Number) {
            ++pos_;
            return number(t);
        }
        if (at("(")) {
            ++pos_;
            Expr e = expr();
            expect(")");
            return e;
        }
        if (t.type != Tok::Ident) fail("expression");
        ++pos_;
        if (t.text == "z") return node(NodeKind::Z);
        if (t.text == "i") {
            auto n = std::make_shared<Node>();
            n->integer = 1;
            n->imaginary = true;
            return n;
        }
        if (t.text == "leb") return node(NodeKind::Leb);
        if (t.text == "arc") return node(NodeKind::Arc);
        if (t.text == "delta") return node(NodeKind::Delta, arguments("(", ")", ",", 1));
        if (t.text == "rational") return node(NodeKind::Rational, arguments("(", ")", ";", 2));
        if (t.text == "lst") return node(NodeKind::Lst, arguments("(", ")", ";", 3));
        if (t.text == "moments") return node(NodeKind::Moments, arguments("[", "]", ",", -1));
        --pos_;
        fail("expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

/// Unary, power and primary nodes never need parentheses as operands.
bool is_unary_level(const Expr& e) {
    switch (e->kind) {
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div: return false;
        default: return true;
    }
}

bool is_primary(const Expr& e) { return is_unary_level(e) && e->kind != NodeKind::Neg && e->kind != NodeKind::Pow; }

std::string wrap(const Expr& e, bool paren) { return paren ? "(" + print(e) + ")" : print(e); }

std::string join(const std::vector<Expr>& xs, std::string_view sep) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) out += sep;
        out += print(xs[k]);
    }
    return out;
}

}  // namespace

bool equal(const Expr& a, const Expr& b) {
    if (a->kind != b->kind || a->children.size() != b->children.size()) return false;
    if (a->kind == NodeKind::Number) {
        if (a->decimal != b->decimal || a->imaginary != b->imaginary) return false;
        if (a->decimal ? a->decimal_value != b->decimal_value : a->integer != b->integer) return false;
    }
    if (a->kind == NodeKind::Pow && a->exponent != b->exponent) return false;
    for (std::size_t k = 0; k < a->children.size(); ++k) {
        if (!equal(a->children[k], b->children[k])) return false;
    }
    return true;
}

Expr parse(std::string_view text) { return Parser(Lexer(text).run()).parse_all(); }

std::string print(const Expr& e) {
    const auto& c = e->children;
    switch (e->kind) {
        case NodeKind::Number: {
            if (e->imaginary && !e->decimal && e->integer == 1) return "i";
            const std::string body = e->decimal ? format_decimal(e->decimal_value) : e->integer.get_str();
            return body + (e->imaginary ? "i" : "");
        }
        case NodeKind::Z: return "z";
        case NodeKind::Neg: return "-" + wrap(c[0], !is_unary_level(c[0]));
        case NodeKind::Add: return print(c[0]) + " + " + wrap(c[1], c[1]->kind == NodeKind::Add || c[1]->kind == NodeKind::Sub);
        case NodeKind::Sub: return print(c[0]) + " - " + wrap(c[1], c[1]->kind == NodeKind::Add || c[1]->kind == NodeKind::Sub);
        case NodeKind::Mul:
        case NodeKind::Div: {
            const bool left = c[0]->kind == NodeKind::Add || c[0]->kind == NodeKind::Sub;
            return wrap(c[0], left) + (e->kind == NodeKind::Mul ? "*" : "/") + wrap(c[1], !is_unary_level(c[1]));
        }
        case NodeKind::Pow: return wrap(c[0], !is_primary(c[0])) + "^" + std::to_string(e->exponent);
        case NodeKind::Leb: return "leb";
        case NodeKind::Arc: return "arc";
        case NodeKind::Delta: return "delta(" + print(c[0]) + ")";
        case NodeKind::Rational: return "rational(" + join(c, "; ") + ")";
        case NodeKind::Moments: return "moments[" + join(c, ", ") + "]";
        case NodeKind::Lst: return "lst(" + join(c, "; ") + ")";
    }
    return "";
}

bool has_decimal(const Expr& e) {
    if (e->kind == NodeKind::Number && e->decimal) return true;
    return std::any_of(e->children.begin(), e->children.end(), [](const Expr& x) { return has_decimal(x); });
}

std::string_view value_type_name(const Value& v) noexcept {
    switch (v.index()) {
        case 0: return "scalar";
        case 1: return "polynomial";
        case 2: return "functional";
        default: return "triple";
    }
}

namespace {

class Evaluator {
   public:
    Evaluator(bool approx, Tolerance tol) : approx_(approx), tol_(tol) {}

    Value eval(const Expr& e) {
        const auto& c = e->children;
        switch (e->kind) {
            case NodeKind::Number: return literal(*e);
            case NodeKind::Z: return approx_ ? LaurentPolynomial::z().to_approx() : LaurentPolynomial::z();
            case NodeKind::Neg: return scale(eval(c[0]), one() * Scalar(-1));
            case NodeKind::Add: return add(eval(c[0]), eval(c[1]));
            case NodeKind::Sub: return add(eval(c[0]), scale(eval(c[1]), one() * Scalar(-1)));
            case NodeKind::Mul: return mul(eval(c[0]), eval(c[1]));
            case NodeKind::Div: {
                const Scalar d = as<Scalar>(eval(c[1]), "divisor");
                if (d.is_zero(tol_)) throw Error(ErrorCode::DivisionByZero, "division by zero in expression");
                return scale(eval(c[0]), one() / d);
            }
            case NodeKind::Pow: {
                const Value base = eval(c[0]);
                if (auto s = std::get_if<Scalar>(&base)) return pow(*s, e->exponent);
                return pow(polynomial(base, "base of ^"), e->exponent);
            }
            case NodeKind::Leb: return approx_ ? rational(Scalar::approx(1.0), Scalar::approx(1.0), tol_) : leb();
            case NodeKind::Arc: return arc_lebesgue();
            case NodeKind::Delta: return delta(as<Scalar>(eval(c[0]), "delta argument"), tol_);
            case NodeKind::Rational:
                return rational(polynomial(eval(c[0]), "numerator"), polynomial(eval(c[1]), "denominator"), tol_);
            case NodeKind::Moments: {
                std::vector<Scalar> ms;
                for (const auto& x : c) ms.push_back(as<Scalar>(eval(x), "moment"));
                return truncated(std::move(ms), tol_);
            }
            case NodeKind::Lst:
                return make_triple(polynomial(eval(c[0]), "L"), polynomial(eval(c[1]), "M"),
                                   polynomial(eval(c[2]), "C"), tol_);
        }
        throw Error(ErrorCode::InvalidArgument, "unknown expression node");
    }

   private:
    Scalar one() const { return approx_ ? Scalar::approx(1.0) : Scalar(1); }

    Scalar literal(const Node& n) const {
        Scalar x = n.decimal ? Scalar::approx(n.decimal_value) : Scalar(mpq_class(n.integer));
        if (approx_) x = x.to_approx();
        return n.imaginary ? x * (approx_ || n.decimal ? Scalar::approx(0.0, 1.0) : Scalar::i()) : x;
    }

    template <class T>
    static T as(const Value& v, std::string_view what) {
        if (auto x = std::get_if<T>(&v)) return *x;
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " has type " + std::string(value_type_name(v)));
    }

    static LaurentPolynomial polynomial(const Value& v, std::string_view what) {
        if (auto s = std::get_if<Scalar>(&v)) return LaurentPolynomial(*s);
        return as<LaurentPolynomial>(v, what);
    }

    static bool is_polynomial_like(const Value& v) { return v.index() <= 1; }

    Value add(const Value& a, const Value& b) const {
        if (auto x = std::get_if<Scalar>(&a)) {
            if (auto y = std::get_if<Scalar>(&b)) return *x + *y;
        }
        if (is_polynomial_like(a) && is_polynomial_like(b)) return polynomial(a, "") + polynomial(b, "");
        auto f = std::get_if<HermitianFunctional>(&a);
        auto g = std::get_if<HermitianFunctional>(&b);
        if (f && g) return combine({{one(), *f}, {one(), *g}}, tol_);
        throw Error(ErrorCode::InvalidArgument, "cannot add " + std::string(value_type_name(a)) + " and " +
                                                    std::string(value_type_name(b)));
    }

    Value scale(const Value& v, const Scalar& s) const {
        if (auto x = std::get_if<Scalar>(&v)) return *x * s;
        if (auto p = std::get_if<LaurentPolynomial>(&v)) return *p * s;
        if (auto f = std::get_if<HermitianFunctional>(&v)) return combine({{s, *f}}, tol_);
        throw Error(ErrorCode::InvalidArgument, "cannot scale a triple");
    }

    Value mul(const Value& a, const Value& b) const {
        if (auto s = std::get_if<Scalar>(&a)) return scale(b, *s);
        if (auto s = std::get_if<Scalar>(&b)) return scale(a, *s);
        if (is_polynomial_like(a) && is_polynomial_like(b)) return polynomial(a, "") * polynomial(b, "");
        throw Error(ErrorCode::InvalidArgument, "cannot multiply " + std::string(value_type_name(a)) + " by " +
                                                    std::string(value_type_name(b)));
    }

    bool approx_;
    Tolerance tol_;
};

template <class T>
T evaluate_as(std::string_view text, const EvalOptions& opts, std::string_view what) {
    Value v = evaluate(parse(text), opts);
    if constexpr (std::is_same_v<T, LaurentPolynomial>) {
        if (auto s = std::get_if<Scalar>(&v)) return LaurentPolynomial(*s);
    }
    if (auto x = std::get_if<T>(&v)) return *x;
    throw Error(ErrorCode::InvalidArgument, "expected " + std::string(what) + ", got " +
                                                std::string(value_type_name(v)));
}

}  // namespace

Value evaluate(const Expr& e, const EvalOptions& opts) {
    const bool decimal = has_decimal(e);
    if (decimal && opts.backend == Backend::Exact) {
        throw Error(ErrorCode::MixedBackend, "decimal literal in an exact-backend command");
    }
    const bool approx = opts.backend == Backend::Approx || decimal;
    return Evaluator(approx, opts.tol).eval(e);
}

Scalar parse_scalar(std::string_view text, const EvalOptions& opts) {
    return evaluate_as<Scalar>(text, opts, "scalar");
}
LaurentPolynomial parse_polynomial(std::string_view text, const EvalOptions& opts) {
    return evaluate_as<LaurentPolynomial>(text, opts, "polynomial");
}
HermitianFunctional parse_functional(std::string_view text, const EvalOptions& opts) {
    return evaluate_as<HermitianFunctional>(text, opts, "functional");
}
LstTriple parse_triple(std::string_view text, const EvalOptions& opts) {
    return evaluate_as<LstTriple>(text, opts, "triple");
}

std::string triple_text(const LstTriple& t) {
    return "lst(" + t.l.to_string() + "; " + t.m.to_string() + "; " + t.c.to_string() + ")";
}

}  // namespace mlst::dsl
