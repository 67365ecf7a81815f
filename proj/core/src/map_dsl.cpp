#include "ivs/map_dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace ivs {

namespace {

// ---- dual numbers -------------------------------------------------------

struct Dual {
    double val = 0.0;
    double der = 0.0;
};

Dual operator+(Dual a, Dual b) { return {a.val + b.val, a.der + b.der}; }
Dual operator-(Dual a, Dual b) { return {a.val - b.val, a.der - b.der}; }
Dual operator-(Dual a) { return {-a.val, -a.der}; }
Dual operator*(Dual a, Dual b) { return {a.val * b.val, a.val * b.der + a.der * b.val}; }
Dual operator/(Dual a, Dual b) {
    return {a.val / b.val, (a.der * b.val - a.val * b.der) / (b.val * b.val)};
}
Dual sin(Dual a) { return {std::sin(a.val), std::cos(a.val) * a.der}; }
Dual cos(Dual a) { return {std::cos(a.val), -std::sin(a.val) * a.der}; }
Dual exp(Dual a) { const double e = std::exp(a.val); return {e, e * a.der}; }
Dual tanh(Dual a) { const double t = std::tanh(a.val); return {t, (1.0 - t * t) * a.der}; }
Dual log(Dual a) { return {std::log(a.val), a.der / a.val}; }

inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.val; }

// ---- tokenizer ----------------------------------------------------------

struct Token {
    enum class Type { Ident, Number, Symbol, End };
    Type type = Type::End;
    std::string text;
    double number = 0.0;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) step();
        current_ = Token{};
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= src_.size()) {
            current_.type = Token::Type::End;
            current_.text = "end of input";
            return;
        }
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            current_.type = Token::Type::Ident;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_])))
                current_.text += src_[pos_], step();
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            current_.type = Token::Type::Number;
            while (pos_ < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
                current_.text += src_[pos_], step();
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                size_t save = pos_;
                std::string tail;
                tail += src_[pos_];
                step();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                    tail += src_[pos_], step();
                if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                        tail += src_[pos_], step();
                    current_.text += tail;
                } else {
                    pos_ = save;  // bare 'e' belongs to the next token
                }
            }
            try {
                current_.number = std::stod(current_.text);
            } catch (const std::exception&) {
                throw ParseError("malformed number '" + current_.text + "'", current_.line,
                                 current_.column);
            }
            return;
        }
        current_.type = Token::Type::Symbol;
        current_.text = std::string(1, c);
        step();
    }
    void step() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
};

// ---- parser -------------------------------------------------------------

ExprPtr make_node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
    Parser(const std::string& src) : lex_(src) {}

    MapSpec parse(const std::string& name) {
        MapSpec m;
        m.name = name;
        expect_ident("n");
        expect_symbol("=");
        m.n = expect_int();
        if (m.n != 2 && m.n != 3) fail("map dimension must be 2 or 3");
        expect_symbol(";");
        std::map<int, ExprPtr> lines;
        while (lex_.peek().type != Token::Type::End) {
            const Token head = lex_.take();
            int idx = 0;
            if (head.type != Token::Type::Ident || head.text.size() < 2 || head.text.size() > 8 ||
                head.text[0] != 'f' || !all_digits(head.text.substr(1)))
                fail_at(head, "expected component definition 'f<k> = ...'");
            idx = std::stoi(head.text.substr(1));
            if (idx < 1 || idx > m.n) fail_at(head, "component index out of range");
            if (lines.contains(idx)) fail_at(head, "component defined twice");
            expect_symbol("=");
            lines[idx] = parse_expr(m.n);
            expect_symbol(";");
        }
        for (int i = 1; i <= m.n; ++i) {
            if (!lines.contains(i)) fail("missing component f" + std::to_string(i));
            m.components.push_back(lines[i]);
        }
        m.has_partial_ops = false;
        for (const auto& c : m.components) m.has_partial_ops |= has_partial(*c);
        return m;
    }

private:
    static bool all_digits(const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    }
    static bool has_partial(const Expr& e) {
        if (e.kind == Expr::Kind::Div || (e.kind == Expr::Kind::Func && e.fn == Expr::Fn::Ln) ||
            (e.kind == Expr::Kind::Pow && e.exponent < 0))
            return true;
        if (e.lhs && has_partial(*e.lhs)) return true;
        if (e.rhs && has_partial(*e.rhs)) return true;
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { fail_at(lex_.peek(), msg); }
    [[noreturn]] void fail_at(const Token& t, const std::string& msg) {
        throw ParseError(msg + " (near '" + t.text + "')", t.line, t.column);
    }

    void expect_ident(const std::string& name) {
        const Token t = lex_.take();
        if (t.type != Token::Type::Ident || t.text != name) fail_at(t, "expected '" + name + "'");
    }
    void expect_symbol(const std::string& sym) {
        const Token t = lex_.take();
        if (t.type != Token::Type::Symbol || t.text != sym) fail_at(t, "expected '" + sym + "'");
    }
    int expect_int() {
        const Token t = lex_.take();
        if (t.type != Token::Type::Number || t.text.find('.') != std::string::npos)
            fail_at(t, "expected integer");
        return static_cast<int>(t.number);
    }

    ExprPtr parse_expr(int n) {
        ExprPtr left = parse_term(n);
        while (lex_.peek().type == Token::Type::Symbol &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            const bool add = lex_.take().text == "+";
            Expr e;
            e.kind = add ? Expr::Kind::Add : Expr::Kind::Sub;
            e.lhs = left;
            e.rhs = parse_term(n);
            left = make_node(std::move(e));
        }
        return left;
    }

    ExprPtr parse_term(int n) {
        ExprPtr left = parse_factor(n);
        while (lex_.peek().type == Token::Type::Symbol &&
               (lex_.peek().text == "*" || lex_.peek().text == "/")) {
            const bool mul = lex_.take().text == "*";
            Expr e;
            e.kind = mul ? Expr::Kind::Mul : Expr::Kind::Div;
            e.lhs = left;
            e.rhs = parse_factor(n);
            left = make_node(std::move(e));
        }
        return left;
    }

    ExprPtr parse_factor(int n) {
        if (lex_.peek().type == Token::Type::Symbol && lex_.peek().text == "-") {
            lex_.take();
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.lhs = parse_factor(n);
            return make_node(std::move(e));
        }
        ExprPtr base = parse_atom(n);
        while (lex_.peek().type == Token::Type::Symbol && lex_.peek().text == "^") {
            lex_.take();
            int sign = 1;
            if (lex_.peek().type == Token::Type::Symbol && lex_.peek().text == "-") {
                lex_.take();
                sign = -1;
            }
            Expr e;
            e.kind = Expr::Kind::Pow;
            e.exponent = sign * expect_int();
            e.lhs = base;
            base = make_node(std::move(e));
        }
        return base;
    }

    ExprPtr parse_atom(int n) {
        const Token t = lex_.take();
        if (t.type == Token::Type::Number) {
            Expr e;
            e.kind = Expr::Kind::Number;
            e.number = t.number;
            return make_node(std::move(e));
        }
        if (t.type == Token::Type::Ident) {
            if (t.text.size() >= 2 && t.text.size() <= 8 && t.text[0] == 'x' &&
                all_digits(t.text.substr(1))) {
                const int idx = std::stoi(t.text.substr(1));
                if (idx < 1 || idx > n) fail_at(t, "variable index out of range");
                Expr e;
                e.kind = Expr::Kind::Var;
                e.var = idx;
                return make_node(std::move(e));
            }
            static const std::map<std::string, Expr::Fn> fns = {{"sin", Expr::Fn::Sin},
                                                                {"cos", Expr::Fn::Cos},
                                                                {"exp", Expr::Fn::Exp},
                                                                {"tanh", Expr::Fn::Tanh},
                                                                {"ln", Expr::Fn::Ln}};
            auto it = fns.find(t.text);
            if (it == fns.end()) fail_at(t, "unknown function or variable");
            expect_symbol("(");
            Expr e;
            e.kind = Expr::Kind::Func;
            e.fn = it->second;
            e.lhs = parse_expr(n);
            expect_symbol(")");
            return make_node(std::move(e));
        }
        if (t.type == Token::Type::Symbol && t.text == "(") {
            ExprPtr inner = parse_expr(n);
            expect_symbol(")");
            return inner;
        }
        fail_at(t, "expected expression");
    }

    Lexer lex_;
};

// ---- evaluation ---------------------------------------------------------

double sin(double x) { return std::sin(x); }  // scalar twins of the Dual overloads
double cos(double x) { return std::cos(x); }
double exp(double x) { return std::exp(x); }
double tanh(double x) { return std::tanh(x); }
double log(double x) { return std::log(x); }

template <class T>
T int_pow(const Expr& node, T base, int exponent) {
    const int mag = exponent < 0 ? -exponent : exponent;
    T acc = T{1.0};
    for (int i = 0; i < mag; ++i) acc = acc * base;
    if (exponent < 0) {
        if (value_of(acc) == 0.0) throw EvalError("division by zero in '" + print_expr(node) + "'");
        return T{1.0} / acc;
    }
    return acc;
}

template <class T>
T eval_node(const Expr& e, const std::vector<T>& vars) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return T{e.number};
        case Expr::Kind::Var:
            return vars[static_cast<size_t>(e.var - 1)];
        case Expr::Kind::Add:
            return eval_node(*e.lhs, vars) + eval_node(*e.rhs, vars);
        case Expr::Kind::Sub:
            return eval_node(*e.lhs, vars) - eval_node(*e.rhs, vars);
        case Expr::Kind::Mul:
            return eval_node(*e.lhs, vars) * eval_node(*e.rhs, vars);
        case Expr::Kind::Div: {
            T num = eval_node(*e.lhs, vars);
            T den = eval_node(*e.rhs, vars);
            if (value_of(den) == 0.0)
                throw EvalError("division by zero in '" + print_expr(*e.rhs) + "'");
            return num / den;
        }
        case Expr::Kind::Neg:
            return -eval_node(*e.lhs, vars);
        case Expr::Kind::Pow:
            return int_pow(e, eval_node(*e.lhs, vars), e.exponent);
        case Expr::Kind::Func: {
            T arg = eval_node(*e.lhs, vars);
            switch (e.fn) {
                case Expr::Fn::Sin:
                    return sin(arg);
                case Expr::Fn::Cos:
                    return cos(arg);
                case Expr::Fn::Exp:
                    return exp(arg);
                case Expr::Fn::Tanh:
                    return tanh(arg);
                case Expr::Fn::Ln:
                    if (value_of(arg) <= 0.0)
                        throw EvalError("ln of non-positive value in '" + print_expr(e) + "'");
                    return log(arg);
            }
        }
    }
    throw std::logic_error("unreachable");
}

void check_point(const MapSpec& m, const Vec& x) {
    if (x.dim() != m.n) throw std::invalid_argument("point dimension does not match map");
}

}  // namespace

ParseError::ParseError(const std::string& message, int line_, int column_)
    : std::runtime_error("parse error at line " + std::to_string(line_) + ", column " +
                         std::to_string(column_) + ": " + message),
      line(line_),
      column(column_) {}

MapSpec parse_map(const std::string& source, const std::string& name) {
    Parser p(source);
    return p.parse(name);
}

namespace {

constexpr int kPrecAdd = 1, kPrecMul = 2, kPrecNeg = 3, kPrecPow = 4, kPrecAtom = 5;

void print_node(const Expr& e, int parent_prec, std::string& out) {
    const auto wrap = [&](int prec, auto&& body) {
        const bool parens = prec < parent_prec;
        if (parens) out += "(";
        body();
        if (parens) out += ")";
    };
    switch (e.kind) {
        case Expr::Kind::Number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", e.number);
            out += buf;
            break;
        }
        case Expr::Kind::Var:
            out += "x" + std::to_string(e.var);
            break;
        case Expr::Kind::Add:
            wrap(kPrecAdd, [&] {
                print_node(*e.lhs, kPrecAdd, out);
                out += " + ";
                print_node(*e.rhs, kPrecAdd + 1, out);
            });
            break;
        case Expr::Kind::Sub:
            wrap(kPrecAdd, [&] {
                print_node(*e.lhs, kPrecAdd, out);
                out += " - ";
                print_node(*e.rhs, kPrecAdd + 1, out);
            });
            break;
        case Expr::Kind::Mul:
            wrap(kPrecMul, [&] {
                print_node(*e.lhs, kPrecMul, out);
                out += "*";
                print_node(*e.rhs, kPrecMul + 1, out);
            });
            break;
        case Expr::Kind::Div:
            wrap(kPrecMul, [&] {
                print_node(*e.lhs, kPrecMul, out);
                out += "/";
                print_node(*e.rhs, kPrecMul + 1, out);
            });
            break;
        case Expr::Kind::Neg:
            wrap(kPrecNeg, [&] {
                out += "-";
                print_node(*e.lhs, kPrecNeg, out);
            });
            break;
        case Expr::Kind::Pow:
            wrap(kPrecPow, [&] {
                print_node(*e.lhs, kPrecAtom, out);
                out += "^" + std::to_string(e.exponent);
            });
            break;
        case Expr::Kind::Func: {
            static const char* names[] = {"sin", "cos", "exp", "tanh", "ln"};
            out += names[static_cast<int>(e.fn)];
            out += "(";
            print_node(*e.lhs, 0, out);
            out += ")";
            break;
        }
    }
}

}  // namespace

std::string print_expr(const Expr& e) {
    std::string out;
    print_node(e, 0, out);
    return out;
}

std::string print_map(const MapSpec& m) {
    std::string out = "n=" + std::to_string(m.n) + ";";
    for (int i = 0; i < m.n; ++i)
        out += " f" + std::to_string(i + 1) + " = " + print_expr(*m.components[static_cast<size_t>(i)]) + ";";
    return out;
}

Vec eval(const MapSpec& m, const Vec& x) {
    check_point(m, x);
    std::vector<double> vars = x.to_vector();
    Vec y = Vec::zero(m.n);
    for (int i = 0; i < m.n; ++i) y[i] = eval_node(*m.components[static_cast<size_t>(i)], vars);
    return y;
}

Mat jacobian(const MapSpec& m, const Vec& x) {
    check_point(m, x);
    Mat j(m.n);
    std::vector<Dual> vars(static_cast<size_t>(m.n));
    for (int col = 0; col < m.n; ++col) {
        for (int i = 0; i < m.n; ++i) vars[static_cast<size_t>(i)] = {x[i], i == col ? 1.0 : 0.0};
        for (int row = 0; row < m.n; ++row)
            j(row, col) = eval_node(*m.components[static_cast<size_t>(row)], vars).der;
    }
    return j;
}

Vec directional_gradient(const MapSpec& m, const Vec& x, const Vec& v) {
    check_point(m, x);
    if (v.dim() != m.n) throw std::invalid_argument("direction dimension does not match map");
    Vec grad = Vec::zero(m.n);
    std::vector<Dual> vars(static_cast<size_t>(m.n));
    for (int col = 0; col < m.n; ++col) {
        for (int i = 0; i < m.n; ++i) vars[static_cast<size_t>(i)] = {x[i], i == col ? 1.0 : 0.0};
        Dual g{0.0, 0.0};
        for (int row = 0; row < m.n; ++row)
            g = g + Dual{v[row], 0.0} * eval_node(*m.components[static_cast<size_t>(row)], vars);
        grad[col] = g.der;
    }
    return grad;
}

double jacobian_det(const MapSpec& m, const Vec& x) { return jacobian(m, x).det(); }

const std::vector<MapSpec>& corpus() {
    static const std::vector<MapSpec> maps = [] {
        std::vector<MapSpec> out;
        out.push_back(parse_map("n=2; f1 = x1; f2 = x2;", "identity"));
        out.push_back(parse_map("n=2; f1 = 2*x1; f2 = 2*x2;", "linear2I"));
        out.push_back(parse_map("n=2; f1 = exp(x1)*cos(x2); f2 = exp(x1)*sin(x2);", "exp-polar"));
        out.push_back(parse_map("n=2; f1 = x1; f2 = tanh(x2);", "slab"));
        out.push_back(parse_map("n=2; f1 = 0.86602540378443865*x1 - 0.5*x2;"
                                " f2 = 0.5*x1 + 0.86602540378443865*x2;",
                                "rotation"));
        out.push_back(parse_map("n=2; f1 = x1 + 2*x2; f2 = x2;", "shear"));
        return out;
    }();
    return maps;
}

const MapSpec& corpus_map(const std::string& name) {
    for (const MapSpec& m : corpus())
        if (m.name == name) return m;
    throw std::invalid_argument("unknown corpus map '" + name + "'");
}

}  // namespace ivs
