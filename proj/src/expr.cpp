#include "pxhardy/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "pxhardy/error.hpp"
#include "pxhardy/field.hpp"

namespace pxhardy {

SyntaxError::SyntaxError(const std::string& message, std::size_t offset, std::vector<std::string> expected)
    : Error(message + " at offset " + std::to_string(offset)), offset_(offset), expected_(std::move(expected)) {}

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

const std::vector<std::string> kOperandStart = {"number", "variable", "constant", "function", "(", "-"};

NodePtr make_binary(char op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::Binary;
    n->op = op;
    n->args = {std::move(lhs), std::move(rhs)};
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("empty expression", pos_, kOperandStart);
        auto node = expression();
        skip_ws();
        if (pos_ < text_.size())
            throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_,
                              {"+", "-", "*", "/", "^", "end of input"});
        return node;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, std::vector<std::string> expected) {
        if (!accept(c)) {
            std::string got = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
            throw SyntaxError("expected '" + std::string(1, c) + "', got " + got, pos_, std::move(expected));
        }
    }

    NodePtr expression() {
        auto lhs = term();
        for (;;) {
            if (accept('+')) lhs = make_binary('+', lhs, term());
            else if (accept('-')) lhs = make_binary('-', lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make_binary('*', lhs, unary());
            else if (accept('/')) lhs = make_binary('/', lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Kind::Negate;
            n->args = {unary()};
            return n;
        }
        return power();
    }

    NodePtr power() {
        auto base = primary();
        if (accept('^')) return make_binary('^', base, unary());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_, kOperandStart);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = expression();
            expect(')', {")", "+", "-", "*", "/", "^"});
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw SyntaxError(std::string("unexpected '") + c + "'", pos_, kOperandStart);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t count = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            count += digits();
        }
        if (count == 0) throw SyntaxError("malformed number", start, {"number"});
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            // Only treat 'e' as an exponent marker when digits follow; "2e" is a
            // syntax error rather than 2 times the constant e.
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) throw SyntaxError("malformed exponent", save, {"digit"});
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_) throw SyntaxError("malformed number", start, {"number"});
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Kind::Number;
        n->value = value;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        auto n = std::make_shared<Expr::Node>();

        if (name == "r") {
            n->kind = Expr::Kind::Radius;
            return n;
        }
        if (name == "pi" || name == "e") {
            n->kind = Expr::Kind::Constant;
            n->name = std::string(name);
            n->value = name == "pi" ? std::numbers::pi : std::numbers::e;
            return n;
        }
        if (name.size() >= 2 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            std::size_t index = 0;
            std::from_chars(name.data() + 1, name.data() + name.size(), index);
            if (index == 0) throw SyntaxError("variables are numbered from x1", start, {"x1", "x2", "..."});
            n->kind = Expr::Kind::Variable;
            n->index = index - 1;
            return n;
        }

        struct Entry {
            std::string_view name;
            Func func;
            std::size_t arity;
        };
        static constexpr Entry table[] = {{"exp", Func::Exp, 1},  {"log", Func::Log, 1}, {"abs", Func::Abs, 1},
                                          {"sqrt", Func::Sqrt, 1}, {"min", Func::Min, 2}, {"max", Func::Max, 2}};
        const auto it = std::find_if(std::begin(table), std::end(table), [&](const Entry& e) { return e.name == name; });
        if (it == std::end(table))
            throw SyntaxError("unknown identifier '" + std::string(name) + "'", start,
                              {"x<k>", "r", "pi", "e", "exp", "log", "abs", "sqrt", "min", "max"});

        n->kind = Expr::Kind::Call;
        n->func = it->func;
        expect('(', {"("});
        std::vector<NodePtr> args;
        skip_ws();
        if (!accept(')')) {
            args.push_back(expression());
            while (accept(',')) args.push_back(expression());
            expect(')', {")", ","});
        }
        if (args.size() != it->arity)
            throw SyntaxError(std::string(name) + " takes " + std::to_string(it->arity) + " argument(s), got " +
                                  std::to_string(args.size()),
                              start, {});
        n->args = std::move(args);
        return n;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void scan(const Expr::Node& n, std::size_t& dim, bool& radius) {
    if (n.kind == Expr::Kind::Variable) dim = std::max(dim, n.index + 1);
    if (n.kind == Expr::Kind::Radius) radius = true;
    for (const auto& a : n.args) scan(*a, dim, radius);
}

[[noreturn, gnu::noinline]] void non_finite(const char* what) {
    throw EvalError(std::string("non-finite result in ") + what);
}

inline double checked(double v, const char* what) {
    if (!std::isfinite(v)) [[unlikely]] non_finite(what);
    return v;
}

double power(double base, double exponent) {
    if (exponent == 2.0) return checked(base * base, "^");
    if (base > 0.0) return checked(std::pow(base, exponent), "^");
    if (base == 0.0) {
        if (exponent > 0.0) return 0.0;
        if (exponent == 0.0) return 1.0;
        throw EvalError("zero raised to a negative power");
    }
    if (std::nearbyint(exponent) != exponent) throw EvalError("negative base with non-integer exponent");
    return checked(std::pow(base, exponent), "^");
}

struct Evaluator {
    std::span<const double> x;
    double radius;

    double operator()(const Expr::Node& n) const {
        switch (n.kind) {
            case Expr::Kind::Number:
            case Expr::Kind::Constant: return n.value;
            case Expr::Kind::Variable: return x[n.index];
            case Expr::Kind::Radius: return radius;
            case Expr::Kind::Negate: return -(*this)(*n.args[0]);
            case Expr::Kind::Binary: {
                const double a = (*this)(*n.args[0]);
                const double b = (*this)(*n.args[1]);
                switch (n.op) {
                    case '+': return checked(a + b, "+");
                    case '-': return checked(a - b, "-");
                    case '*': return checked(a * b, "*");
                    case '/':
                        if (b == 0.0) throw EvalError("division by zero");
                        return checked(a / b, "/");
                    default: return power(a, b);
                }
            }
            case Expr::Kind::Call: {
                const double a = (*this)(*n.args[0]);
                switch (n.func) {
                    case Func::Exp: return checked(std::exp(a), "exp");
                    case Func::Log:
                        if (a <= 0.0) throw EvalError("log of a non-positive number");
                        return std::log(a);
                    case Func::Abs: return std::abs(a);
                    case Func::Sqrt:
                        if (a < 0.0) throw EvalError("sqrt of a negative number");
                        return std::sqrt(a);
                    case Func::Min: return std::min(a, (*this)(*n.args[1]));
                    case Func::Max: return std::max(a, (*this)(*n.args[1]));
                }
            }
        }
        throw EvalError("corrupt expression node");
    }
};

// Forward-mode evaluation: value and gradient together.
constexpr std::size_t kMaxDual = 8;

struct Dual {
    double v = 0.0;
    std::array<double, kMaxDual> g{};
};

struct DualEvaluator {
    std::span<const double> x;
    double radius;
    std::size_t n;

    Dual constant(double v) const { return Dual{v, {}}; }

    bool flat(const Dual& d) const {
        for (std::size_t i = 0; i < n; ++i)
            if (d.g[i] != 0.0) return false;
        return true;
    }

    Dual scaled(const Dual& d, double v, double factor) const {
        Dual out{v, {}};
        for (std::size_t i = 0; i < n; ++i) out.g[i] = checked(factor * d.g[i], "derivative");
        return out;
    }

    Dual pow_rule(const Dual& a, const Dual& b) const {
        const double v = power(a.v, b.v);
        if (flat(b)) {
            if (flat(a)) return constant(v);
            double f;
            if (a.v != 0.0) f = b.v * power(a.v, b.v - 1.0);
            else if (b.v == 1.0) f = 1.0;
            else if (b.v > 1.0) f = 0.0;
            else throw EvalError("derivative of a power at a zero base");
            return scaled(a, v, f);
        }
        if (!(a.v > 0.0)) throw EvalError("derivative of a^b needs a positive base");
        Dual out{v, {}};
        const double la = std::log(a.v);
        for (std::size_t i = 0; i < n; ++i) out.g[i] = checked(v * (b.g[i] * la + b.v * a.g[i] / a.v), "derivative");
        return out;
    }

    Dual operator()(const Expr::Node& node) const {
        switch (node.kind) {
            case Expr::Kind::Number:
            case Expr::Kind::Constant: return constant(node.value);
            case Expr::Kind::Variable: {
                Dual d{x[node.index], {}};
                d.g[node.index] = 1.0;
                return d;
            }
            case Expr::Kind::Radius: {
                Dual d{radius, {}};
                if (radius > 0.0)
                    for (std::size_t i = 0; i < n; ++i) d.g[i] = x[i] / radius;
                return d;
            }
            case Expr::Kind::Negate: {
                const Dual a = (*this)(*node.args[0]);
                return scaled(a, -a.v, -1.0);
            }
            case Expr::Kind::Binary: {
                const Dual a = (*this)(*node.args[0]);
                const Dual b = (*this)(*node.args[1]);
                Dual out;
                switch (node.op) {
                    case '+':
                    case '-': {
                        const double s = node.op == '+' ? 1.0 : -1.0;
                        out.v = checked(a.v + s * b.v, "+");
                        for (std::size_t i = 0; i < n; ++i) out.g[i] = a.g[i] + s * b.g[i];
                        return out;
                    }
                    case '*':
                        out.v = checked(a.v * b.v, "*");
                        for (std::size_t i = 0; i < n; ++i) out.g[i] = checked(a.g[i] * b.v + a.v * b.g[i], "derivative");
                        return out;
                    case '/':
                        if (b.v == 0.0) throw EvalError("division by zero");
                        out.v = checked(a.v / b.v, "/");
                        for (std::size_t i = 0; i < n; ++i)
                            out.g[i] = checked((a.g[i] - out.v * b.g[i]) / b.v, "derivative");
                        return out;
                    default: return pow_rule(a, b);
                }
            }
            case Expr::Kind::Call: {
                const Dual a = (*this)(*node.args[0]);
                switch (node.func) {
                    case Func::Exp: {
                        const double v = checked(std::exp(a.v), "exp");
                        return scaled(a, v, v);
                    }
                    case Func::Log:
                        if (a.v <= 0.0) throw EvalError("log of a non-positive number");
                        return scaled(a, std::log(a.v), 1.0 / a.v);
                    case Func::Abs: return scaled(a, std::abs(a.v), a.v > 0.0 ? 1.0 : (a.v < 0.0 ? -1.0 : 0.0));
                    case Func::Sqrt: {
                        if (a.v < 0.0) throw EvalError("sqrt of a negative number");
                        const double v = std::sqrt(a.v);
                        if (v == 0.0) {
                            if (flat(a)) return constant(0.0);
                            throw EvalError("derivative of sqrt at zero");
                        }
                        return scaled(a, v, 0.5 / v);
                    }
                    case Func::Min:
                    case Func::Max: {
                        const Dual b = (*this)(*node.args[1]);
                        const bool first = node.func == Func::Min ? a.v <= b.v : a.v >= b.v;
                        return first ? a : b;
                    }
                }
            }
        }
        throw EvalError("corrupt expression node");
    }
};

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

const char* func_name(Func f) {
    switch (f) {
        case Func::Exp: return "exp";
        case Func::Log: return "log";
        case Func::Abs: return "abs";
        case Func::Sqrt: return "sqrt";
        case Func::Min: return "min";
        case Func::Max: return "max";
    }
    return "?";
}

void print(const Expr::Node& n, std::string& out) {
    switch (n.kind) {
        case Expr::Kind::Number: out += format_number(n.value); break;
        case Expr::Kind::Constant: out += n.name; break;
        case Expr::Kind::Variable: out += "x" + std::to_string(n.index + 1); break;
        case Expr::Kind::Radius: out += "r"; break;
        case Expr::Kind::Negate:
            out += "(-";
            print(*n.args[0], out);
            out += ")";
            break;
        case Expr::Kind::Binary:
            out += "(";
            print(*n.args[0], out);
            out += ' ';
            out += n.op;
            out += ' ';
            print(*n.args[1], out);
            out += ")";
            break;
        case Expr::Kind::Call:
            out += func_name(n.func);
            out += "(";
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i) out += ", ";
                print(*n.args[i], out);
            }
            out += ")";
            break;
    }
}

bool same(const Expr::Node& a, const Expr::Node& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
        case Expr::Kind::Number:
            if (a.value != b.value) return false;
            break;
        case Expr::Kind::Constant:
            if (a.name != b.name) return false;
            break;
        case Expr::Kind::Variable:
            if (a.index != b.index) return false;
            break;
        case Expr::Kind::Binary:
            if (a.op != b.op) return false;
            break;
        case Expr::Kind::Call:
            if (a.func != b.func) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same(*a.args[i], *b.args[i])) return false;
    return true;
}

}  // namespace

Expr::Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {
    if (root_) scan(*root_, dimension_, uses_radius_);
}

double Expr::eval(std::span<const double> point) const {
    if (!root_) throw EvalError("empty expression");
    if (point.size() < dimension_)
        throw DimensionError("expression needs " + std::to_string(dimension_) + " coordinates, point has " +
                             std::to_string(point.size()));
    double radius = 0.0;
    if (uses_radius_) {
        for (double c : point) radius += c * c;
        radius = std::sqrt(radius);
    }
    return Evaluator{point, radius}(*root_);
}

double Expr::eval_gradient(std::span<const double> point, std::span<double> grad) const {
    if (grad.size() != point.size()) throw DimensionError("gradient buffer and point sizes differ");
    if (point.size() > kMaxDual) {
        const double v = eval(point);
        const auto g = grad_numeric(*this, point);
        std::copy(g.begin(), g.end(), grad.begin());
        return v;
    }
    if (!root_) throw EvalError("empty expression");
    if (point.size() < dimension_)
        throw DimensionError("expression needs " + std::to_string(dimension_) + " coordinates, point has " +
                             std::to_string(point.size()));
    double radius = 0.0;
    if (uses_radius_) {
        for (double c : point) radius += c * c;
        radius = std::sqrt(radius);
    }
    const Dual d = DualEvaluator{point, radius, point.size()}(*root_);
    std::copy(d.g.begin(), d.g.begin() + static_cast<std::ptrdiff_t>(point.size()), grad.begin());
    return d.v;
}

std::vector<double> Expr::gradient(std::span<const double> point) const {
    std::vector<double> g(point.size());
    eval_gradient(point, g);
    return g;
}

std::string Expr::to_string() const {
    std::string out;
    if (root_) print(*root_, out);
    return out;
}

bool operator==(const Expr& a, const Expr& b) {
    if (!a.root_ || !b.root_) return !a.root_ && !b.root_;
    return same(*a.root_, *b.root_);
}

Expr parse(std::string_view text) { return Expr(Parser(text).parse_all()); }

std::vector<double> grad_numeric(const Expr& e, std::span<const double> point, std::optional<double> h) {
    return central_gradient([&](std::span<const double> y) { return e.eval(y); }, point, h);
}

}  // namespace pxhardy
