#include "hausdorff/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <variant>

#include "hausdorff/error.hpp"

namespace hausdorff {

namespace {

enum class Func { Exp, Log, Sqrt, Sin, Cos, Abs };

struct Number {
    double value;
};
struct Variable {};
struct Unary {
    Func func;
    std::shared_ptr<const Expression::Node> arg;
};
struct Negate {
    std::shared_ptr<const Expression::Node> arg;
};
struct Binary {
    char op;
    std::shared_ptr<const Expression::Node> lhs;
    std::shared_ptr<const Expression::Node> rhs;
};

} // namespace

struct Expression::Node {
    std::variant<Number, Variable, Unary, Negate, Binary> data;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

template <class T>
NodePtr make(T value) {
    return std::make_shared<const Expression::Node>(Expression::Node{std::move(value)});
}

double apply(Func f, double x) {
    switch (f) {
    case Func::Exp: return std::exp(x);
    case Func::Log: return std::log(x);
    case Func::Sqrt: return std::sqrt(x);
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Abs: return std::abs(x);
    }
    return std::nan("");
}

const char* name(Func f) {
    switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Abs: return "abs";
    }
    return "?";
}

double evaluate(const Expression::Node& n, double t) {
    struct Visitor {
        double t;
        double operator()(const Number& x) const { return x.value; }
        double operator()(const Variable&) const { return t; }
        double operator()(const Unary& u) const { return apply(u.func, evaluate(*u.arg, t)); }
        double operator()(const Negate& u) const { return -evaluate(*u.arg, t); }
        double operator()(const Binary& b) const {
            const double l = evaluate(*b.lhs, t);
            const double r = evaluate(*b.rhs, t);
            switch (b.op) {
            case '+': return l + r;
            case '-': return l - r;
            case '*': return l * r;
            case '/': return l / r;
            default: return std::pow(l, r);
            }
        }
    };
    return std::visit(Visitor{t}, n.data);
}

NodePtr substitute(const NodePtr& n, const NodePtr& replacement) {
    struct Visitor {
        const NodePtr& self;
        const NodePtr& replacement;
        NodePtr operator()(const Number&) const { return self; }
        NodePtr operator()(const Variable&) const { return replacement; }
        NodePtr operator()(const Unary& u) const {
            return make(Unary{u.func, substitute(u.arg, replacement)});
        }
        NodePtr operator()(const Negate& u) const {
            return make(Negate{substitute(u.arg, replacement)});
        }
        NodePtr operator()(const Binary& b) const {
            return make(Binary{b.op, substitute(b.lhs, replacement), substitute(b.rhs, replacement)});
        }
    };
    return std::visit(Visitor{n, replacement}, n->data);
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render(const Expression::Node& n) {
    struct Visitor {
        std::string operator()(const Number& x) const {
            if (x.value < 0) return "(" + format_number(x.value) + ")";
            return format_number(x.value);
        }
        std::string operator()(const Variable&) const { return "t"; }
        std::string operator()(const Unary& u) const {
            return std::string(name(u.func)) + "(" + render(*u.arg) + ")";
        }
        std::string operator()(const Negate& u) const { return "(-" + render(*u.arg) + ")"; }
        std::string operator()(const Binary& b) const {
            return "(" + render(*b.lhs) + b.op + render(*b.rhs) + ")";
        }
    };
    return std::visit(Visitor{}, n.data);
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr e = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::ParseError, "expression '" + std::string(text_) + "': " + what +
                                               " at offset " + std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expression() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make(Binary{'+', lhs, term()});
            else if (accept('-'))
                lhs = make(Binary{'-', lhs, term()});
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = make(Binary{'*', lhs, unary()});
            else if (accept('/'))
                lhs = make(Binary{'/', lhs, unary()});
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Negate{unary()});
        if (accept('+')) return unary();
        return power();
    }

    // '^' is right-associative and binds tighter than unary minus on its left.
    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Binary{'^', base, unary()});
        return base;
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expression();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
            const std::string_view word = text_.substr(pos_, end - pos_);
            pos_ = end;
            if (word == "t") return make(Variable{});
            if (word == "pi") return make(Number{std::numbers::pi});
            static constexpr std::pair<std::string_view, Func> funcs[] = {
                {"exp", Func::Exp}, {"log", Func::Log}, {"sqrt", Func::Sqrt},
                {"sin", Func::Sin}, {"cos", Func::Cos}, {"abs", Func::Abs}};
            for (const auto& [fname, func] : funcs) {
                if (word == fname) {
                    if (!accept('(')) fail("expected '(' after " + std::string(fname));
                    NodePtr arg = expression();
                    if (!accept(')')) fail("expected ')'");
                    return make(Unary{func, arg});
                }
            }
            fail("unknown identifier '" + std::string(word) + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{}) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return make(Number{value});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse()); }

double Expression::operator()(double t) const { return evaluate(*root_, t); }

Expression Expression::substitute_reciprocal() const {
    const NodePtr reciprocal = make(Binary{'/', make(Number{1.0}), make(Variable{})});
    return Expression(substitute(root_, reciprocal));
}

Expression Expression::times_power(double exponent) const {
    return Expression(
        make(Binary{'*', root_, make(Binary{'^', make(Variable{}), make(Number{exponent})})}));
}

std::string Expression::to_string() const { return render(*root_); }

} // namespace hausdorff
