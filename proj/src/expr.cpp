#include "circq/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include "circq/error.hpp"

namespace circq::expr {

const char* func_name(Func f) noexcept {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Exp: return "exp";
        case Func::Log: return "log";
        case Func::Sqrt: return "sqrt";
    }
    return "?";
}

NodePtr make_constant(double v) {
    auto n = std::make_shared<Node>(Node{NodeKind::Constant});
    n->constant = v;
    return n;
}

NodePtr make_variable(int index) {
    auto n = std::make_shared<Node>(Node{NodeKind::Variable});
    n->variable = index;
    return n;
}

NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>(Node{kind});
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_pow(NodePtr base, int exponent) {
    auto n = std::make_shared<Node>(Node{NodeKind::Pow});
    n->exponent = exponent;
    n->lhs = std::move(base);
    return n;
}

NodePtr make_neg(NodePtr operand) {
    auto n = std::make_shared<Node>(Node{NodeKind::Neg});
    n->lhs = std::move(operand);
    return n;
}

NodePtr make_func(Func f, NodePtr arg) {
    auto n = std::make_shared<Node>(Node{NodeKind::Func});
    n->func = f;
    n->lhs = std::move(arg);
    return n;
}

bool structurally_equal(const Node& a, const Node& b) noexcept {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Constant: return a.constant == b.constant;
        case NodeKind::Variable: return a.variable == b.variable;
        case NodeKind::Pow:
            return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
        case NodeKind::Neg: return structurally_equal(*a.lhs, *b.lhs);
        case NodeKind::Func: return a.func == b.func && structurally_equal(*a.lhs, *b.lhs);
        default:
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Grammar levels: 0 expr, 1 term, 2 factor, 3 base.
int level(const Node& n) noexcept {
    switch (n.kind) {
        case NodeKind::Add:
        case NodeKind::Sub: return 0;
        case NodeKind::Mul:
        case NodeKind::Div: return 1;
        case NodeKind::Neg:
        case NodeKind::Pow: return 2;
        case NodeKind::Constant: return n.constant < 0 || std::signbit(n.constant) ? 0 : 3;
        default: return 3;
    }
}

void print_to(const Node& n, std::string& out);

void print_at(const Node& n, int min_level, std::string& out) {
    if (level(n) < min_level) {
        out += '(';
        print_to(n, out);
        out += ')';
    } else {
        print_to(n, out);
    }
}

void print_number(double v, std::string& out) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

void print_to(const Node& n, std::string& out) {
    switch (n.kind) {
        case NodeKind::Constant: print_number(n.constant, out); return;
        case NodeKind::Variable:
            out += 'x';
            out += static_cast<char>('1' + n.variable);
            return;
        case NodeKind::Add:
        case NodeKind::Sub:
            print_at(*n.lhs, 0, out);
            out += n.kind == NodeKind::Add ? " + " : " - ";
            print_at(*n.rhs, 1, out);
            return;
        case NodeKind::Mul:
        case NodeKind::Div:
            print_at(*n.lhs, 1, out);
            out += n.kind == NodeKind::Mul ? "*" : "/";
            print_at(*n.rhs, 2, out);
            return;
        case NodeKind::Pow:
            print_at(*n.lhs, 3, out);
            out += '^';
            out += std::to_string(n.exponent);
            return;
        case NodeKind::Neg:
            out += '-';
            // The grammar allows "-base" and "-base^n" only.
            if (n.lhs->kind == NodeKind::Pow)
                print_to(*n.lhs, out);
            else
                print_at(*n.lhs, 3, out);
            return;
        case NodeKind::Func:
            out += func_name(n.func);
            out += '(';
            print_to(*n.lhs, out);
            out += ')';
            return;
    }
}

}  // namespace

std::string print(const Node& n) {
    std::string out;
    print_to(n, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse_all() {
        skip_ws();
        if (at_end()) throw ParseError("empty expression", pos_);
        NodePtr e = parse_expr();
        skip_ws();
        if (!at_end())
            throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return e;
    }

private:
    bool at_end() const noexcept { return pos_ >= src_.size(); }
    char peek() const noexcept { return at_end() ? '\0' : src_[pos_]; }

    void skip_ws() noexcept {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            NodePtr rhs = parse_term();
            lhs = make_binary(c == '+' ? NodeKind::Add : NodeKind::Sub, std::move(lhs), std::move(rhs));
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            NodePtr rhs = parse_factor();
            lhs = make_binary(c == '*' ? NodeKind::Mul : NodeKind::Div, std::move(lhs), std::move(rhs));
        }
    }

    NodePtr parse_factor() {
        skip_ws();
        bool negate = false;
        if (peek() == '-') {
            negate = true;
            ++pos_;
        }
        NodePtr base = parse_base();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            base = make_pow(std::move(base), parse_exponent());
        }
        return negate ? make_neg(std::move(base)) : base;
    }

    int parse_exponent() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start || peek() == '.' || peek() == 'e' || peek() == 'E')
            throw ParseError("exponent must be a non-negative integer literal", start);
        int value = 0;
        auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (res.ec != std::errc{}) throw ParseError("exponent out of range", start);
        return value;
    }

    NodePtr parse_base() {
        skip_ws();
        if (at_end()) throw ParseError("expected operand", pos_);
        const char c = peek();
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (peek() == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw ParseError("malformed number", start);
        if (peek() == 'e' || peek() == 'E') {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double value = 0.0;
        auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (res.ec != std::errc{} || res.ptr != src_.data() + pos_ || !std::isfinite(value))
            throw ParseError("number out of range", start);
        return make_constant(value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
        const std::string_view id = src_.substr(start, pos_ - start);
        if (id.size() == 2 && id[0] == 'x' && id[1] >= '1' && id[1] <= '4')
            return make_variable(id[1] - '1');
        static constexpr Func funcs[] = {Func::Sin, Func::Cos, Func::Exp, Func::Log, Func::Sqrt};
        for (Func f : funcs) {
            if (id == func_name(f)) {
                expect('(');
                NodePtr arg = parse_expr();
                expect(')');
                return make_func(f, std::move(arg));
            }
        }
        throw ParseError("unknown identifier '" + std::string(id) + "'", start);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

ScalarField parse(std::string_view source) {
    Parser p(source);
    NodePtr root = p.parse_all();
    return ScalarField(std::move(root), std::string(source));
}

// ---------------------------------------------------------------------------
// Evaluation

ScalarField::ScalarField(NodePtr root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

namespace {

double ipow(double v, int n) noexcept {
    double result = 1.0;
    double base = v;
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

[[noreturn]] void domain_fail(const char* why, const Node& n) {
    throw DomainError(std::string(why) + " in '" + print(n) + "'");
}

FieldJet eval_node(const Node& n, const Point& p) {
    FieldJet r;
    switch (n.kind) {
        case NodeKind::Constant: return FieldJet::constant(n.constant);
        case NodeKind::Variable: return FieldJet::variable(n.variable, p[static_cast<std::size_t>(n.variable)]);
        case NodeKind::Add: r = eval_node(*n.lhs, p) + eval_node(*n.rhs, p); break;
        case NodeKind::Sub: r = eval_node(*n.lhs, p) - eval_node(*n.rhs, p); break;
        case NodeKind::Mul: r = eval_node(*n.lhs, p) * eval_node(*n.rhs, p); break;
        case NodeKind::Div: {
            const FieldJet num = eval_node(*n.lhs, p);
            const FieldJet den = eval_node(*n.rhs, p);
            const double v = den.value;
            if (v == 0.0) domain_fail("division by zero", *n.rhs);
            r = num * compose(den, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
            break;
        }
        case NodeKind::Neg: r = -eval_node(*n.lhs, p); break;
        case NodeKind::Pow: {
            const FieldJet a = eval_node(*n.lhs, p);
            const int k = n.exponent;
            if (k == 0) return FieldJet::constant(1.0);
            const double v = a.value;
            const double d1 = k * ipow(v, k - 1);
            const double d2 = k >= 2 ? static_cast<double>(k) * (k - 1) * ipow(v, k - 2) : 0.0;
            r = compose(a, ipow(v, k), d1, d2);
            break;
        }
        case NodeKind::Func: {
            const FieldJet a = eval_node(*n.lhs, p);
            const double v = a.value;
            switch (n.func) {
                case Func::Sin: r = compose(a, std::sin(v), std::cos(v), -std::sin(v)); break;
                case Func::Cos: r = compose(a, std::cos(v), -std::sin(v), -std::cos(v)); break;
                case Func::Exp: {
                    const double e = std::exp(v);
                    r = compose(a, e, e, e);
                    break;
                }
                case Func::Log:
                    if (!(v > 0.0)) domain_fail("log of non-positive argument", n);
                    r = compose(a, std::log(v), 1.0 / v, -1.0 / (v * v));
                    break;
                case Func::Sqrt: {
                    if (!(v > 0.0)) domain_fail("sqrt of non-positive argument", n);
                    const double s = std::sqrt(v);
                    r = compose(a, s, 0.5 / s, -0.25 / (s * v));
                    break;
                }
            }
            break;
        }
    }
    if (!r.finite()) domain_fail("non-finite result", n);
    return r;
}

}  // namespace

FieldJet ScalarField::eval_jet(const Point& p) const {
    if (!p.finite()) throw DomainError("point has non-finite coordinates");
    return eval_node(*root_, p);
}

}  // namespace circq::expr
