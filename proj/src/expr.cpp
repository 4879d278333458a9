#include "otslab/expr.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace otslab {

struct Expression::Node {
    enum class Kind { number, variable, add, sub, mul, div, pow, neg, sin, cos, exp } kind;
    double value = 0.0;
    std::unique_ptr<Node> lhs, rhs;

    double eval(double x) const {
        switch (kind) {
            case Kind::number: return value;
            case Kind::variable: return x;
            case Kind::add: return lhs->eval(x) + rhs->eval(x);
            case Kind::sub: return lhs->eval(x) - rhs->eval(x);
            case Kind::mul: return lhs->eval(x) * rhs->eval(x);
            case Kind::div: return lhs->eval(x) / rhs->eval(x);
            case Kind::pow: return std::pow(lhs->eval(x), rhs->eval(x));
            case Kind::neg: return -lhs->eval(x);
            case Kind::sin: return std::sin(lhs->eval(x));
            case Kind::cos: return std::cos(lhs->eval(x));
            case Kind::exp: return std::exp(lhs->eval(x));
        }
        return 0.0;
    }
};

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;

std::unique_ptr<Node> make(Kind k, std::unique_ptr<Node> l = nullptr,
                           std::unique_ptr<Node> r = nullptr) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    std::unique_ptr<Node> run() {
        auto e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression: " + what + " at position " +
                                    std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::unique_ptr<Node> expr() {
        auto lhs = term();
        for (;;) {
            if (consume('+')) lhs = make(Kind::add, std::move(lhs), term());
            else if (consume('-')) lhs = make(Kind::sub, std::move(lhs), term());
            else return lhs;
        }
    }

    std::unique_ptr<Node> term() {
        auto lhs = factor();
        for (;;) {
            if (consume('*')) lhs = make(Kind::mul, std::move(lhs), factor());
            else if (consume('/')) lhs = make(Kind::div, std::move(lhs), factor());
            else return lhs;
        }
    }

    std::unique_ptr<Node> factor() {
        if (consume('-')) return make(Kind::neg, factor());
        auto base = primary();
        if (consume('^')) return make(Kind::pow, std::move(base), factor());
        return base;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    std::unique_ptr<Node> primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                fail("bad number");
            }
            pos_ += used;
            auto n = make(Kind::number);
            n->value = v;
            return n;
        }
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            if (!consume(')')) fail("missing ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::string id = identifier();
            if (id == "x") return make(Kind::variable);
            if (id == "pi") {
                auto n = make(Kind::number);
                n->value = kPi;
                return n;
            }
            if (id == "e") {
                auto n = make(Kind::number);
                n->value = 2.718281828459045235360287471352;
                return n;
            }
            Kind k;
            if (id == "sin") k = Kind::sin;
            else if (id == "cos") k = Kind::cos;
            else if (id == "exp") k = Kind::exp;
            else fail("unknown identifier '" + id + "'");
            if (!consume('(')) fail("expected '(' after function name");
            auto arg = expr();
            if (!consume(')')) fail("missing ')'");
            return make(k, std::move(arg));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

Expression::Expression(std::unique_ptr<Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}
Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;
Expression::~Expression() = default;

Expression Expression::parse(const std::string& text) {
    Parser p(text);
    return Expression(p.run(), text);
}

double Expression::eval(double x) const { return root_->eval(x); }

Field Expression::evaluate_on(Grid grid) const {
    Field f(grid);
    for (int j = 0; j < grid.n; ++j) f.samples[j] = eval(grid.x(j));
    return f;
}

} // namespace otslab
