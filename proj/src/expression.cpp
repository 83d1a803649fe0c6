#include "diskflow/expression.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace diskflow {

namespace {

struct Node {
    enum class Op { Constant, Variable, Add, Sub, Mul, Div, Neg, Log, Exp, Sqrt };
    Op op = Op::Constant;
    Complex constant{0.0, 0.0};
    int lhs = -1;
    int rhs = -1;
};

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    std::vector<Node> nodes;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    }

    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression error at position " + std::to_string(pos) + ": " +
                                    what);
    }

    int add(Node n) {
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            if (consume('+')) {
                lhs = add({Node::Op::Add, {}, lhs, parse_term()});
            } else if (consume('-')) {
                lhs = add({Node::Op::Sub, {}, lhs, parse_term()});
            } else {
                return lhs;
            }
        }
    }

    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            if (consume('*')) {
                lhs = add({Node::Op::Mul, {}, lhs, parse_unary()});
            } else if (consume('/')) {
                lhs = add({Node::Op::Div, {}, lhs, parse_unary()});
            } else {
                return lhs;
            }
        }
    }

    int parse_unary() {
        if (consume('-')) {
            return add({Node::Op::Neg, {}, parse_unary(), -1});
        }
        return parse_primary();
    }

    int parse_primary() {
        skip_ws();
        if (pos >= text.size()) {
            fail("unexpected end of input");
        }
        const char c = text[pos];
        if (c == '(') {
            ++pos;
            const int inner = parse_expr();
            if (!consume(')')) {
                fail("missing closing parenthesis");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            const double v = std::stod(text.substr(pos), &used);
            pos += used;
            return add({Node::Op::Constant, Complex(v, 0.0), -1, -1});
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos;
            while (end < text.size() &&
                   std::isalpha(static_cast<unsigned char>(text[end]))) {
                ++end;
            }
            const std::string word = text.substr(pos, end - pos);
            pos = end;
            if (word == "z") {
                return add({Node::Op::Variable, {}, -1, -1});
            }
            if (word == "i") {
                return add({Node::Op::Constant, Complex(0.0, 1.0), -1, -1});
            }
            Node::Op op;
            if (word == "log") {
                op = Node::Op::Log;
            } else if (word == "exp") {
                op = Node::Op::Exp;
            } else if (word == "sqrt") {
                op = Node::Op::Sqrt;
            } else {
                fail("unknown identifier '" + word + "'");
            }
            if (!consume('(')) {
                fail("expected '(' after function name");
            }
            const int arg = parse_expr();
            if (!consume(')')) {
                fail("missing closing parenthesis");
            }
            return add({op, {}, arg, -1});
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

Complex evaluate(const std::vector<Node>& nodes, int root, Complex z) {
    const Node& n = nodes[root];
    switch (n.op) {
        case Node::Op::Constant:
            return n.constant;
        case Node::Op::Variable:
            return z;
        case Node::Op::Add:
            return evaluate(nodes, n.lhs, z) + evaluate(nodes, n.rhs, z);
        case Node::Op::Sub:
            return evaluate(nodes, n.lhs, z) - evaluate(nodes, n.rhs, z);
        case Node::Op::Mul:
            return evaluate(nodes, n.lhs, z) * evaluate(nodes, n.rhs, z);
        case Node::Op::Div:
            return evaluate(nodes, n.lhs, z) / evaluate(nodes, n.rhs, z);
        case Node::Op::Neg:
            return -evaluate(nodes, n.lhs, z);
        case Node::Op::Log:
            return std::log(evaluate(nodes, n.lhs, z));
        case Node::Op::Exp:
            return std::exp(evaluate(nodes, n.lhs, z));
        case Node::Op::Sqrt:
            return std::sqrt(evaluate(nodes, n.lhs, z));
    }
    throw std::logic_error("unreachable expression node");
}

}  // namespace

std::function<Complex(Complex)> compile_expression(const std::string& text) {
    Parser p(text);
    const int root = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) {
        p.fail("trailing input");
    }
    return [nodes = std::move(p.nodes), root](Complex z) { return evaluate(nodes, root, z); };
}

Complex parse_complex(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("empty complex literal");
    }
    // Accept forms: "a", "bi", "i", "-i", "a+bi", "a-bi".
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += c;
        }
    }
    const bool has_i = s.back() == 'i';
    if (!has_i) {
        std::size_t used = 0;
        const double re = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument("bad complex literal: " + text);
        }
        return Complex(re, 0.0);
    }
    s.pop_back();  // drop the trailing i
    if (s.empty() || s == "+") {
        return Complex(0.0, 1.0);
    }
    if (s == "-") {
        return Complex(0.0, -1.0);
    }
    // Split at the sign that separates real and imaginary parts (skip a
    // leading sign and exponent signs).
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
        }
    }
    if (split == std::string::npos) {
        std::size_t used = 0;
        const double im = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument("bad complex literal: " + text);
        }
        return Complex(0.0, im);
    }
    std::size_t used = 0;
    const double re = std::stod(s.substr(0, split), &used);
    if (used != split) {
        throw std::invalid_argument("bad complex literal: " + text);
    }
    std::string imag_part = s.substr(split);
    if (imag_part == "+") {
        return Complex(re, 1.0);
    }
    if (imag_part == "-") {
        return Complex(re, -1.0);
    }
    const double im = std::stod(imag_part, &used);
    if (used != imag_part.size()) {
        throw std::invalid_argument("bad complex literal: " + text);
    }
    return Complex(re, im);
}

}  // namespace diskflow
