#include "eigencurve/expr.hpp"

#include <cctype>
#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <memory>
#include <vector>

#include "eigencurve/errors.hpp"

namespace eigencurve {

namespace {

// Compiled form: a flat postfix program, evaluated on a small stack.
enum class Op : int { push_const, push_x, add, sub, mul, div, neg, fmin, fmax, fsin, fcos, fexp };

struct Instr {
    Op op;
    double value = 0.0;
};

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    std::vector<Instr> out;

    explicit Parser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression error at column " + std::to_string(pos + 1) + ": " + what +
                          " in \"" + s + "\"");
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    void expr() {
        term();
        for (;;) {
            if (eat('+')) {
                term();
                out.push_back({Op::add});
            } else if (eat('-')) {
                term();
                out.push_back({Op::sub});
            } else
                return;
        }
    }

    void term() {
        factor();
        for (;;) {
            if (eat('*')) {
                factor();
                out.push_back({Op::mul});
            } else if (eat('/')) {
                factor();
                out.push_back({Op::div});
            } else
                return;
        }
    }

    void factor() {
        skip_ws();
        if (eat('-')) {
            factor();
            out.push_back({Op::neg});
            return;
        }
        if (eat('+')) {
            factor();
            return;
        }
        char c = peek();
        if (c == '(') {
            eat('(');
            expr();
            if (!eat(')')) fail("expected ')'");
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            identifier();
            return;
        }
        fail("unexpected character");
    }

    void number() {
        skip_ws();
        const char* begin = s.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("bad number");
        pos += static_cast<std::size_t>(end - begin);
        out.push_back({Op::push_const, v});
    }

    void identifier() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string name = s.substr(start, pos - start);
        if (name == "x") {
            out.push_back({Op::push_x});
            return;
        }
        if (name == "pi") {
            out.push_back({Op::push_const, M_PI});
            return;
        }
        Op op;
        int arity = 1;
        if (name == "sin")
            op = Op::fsin;
        else if (name == "cos")
            op = Op::fcos;
        else if (name == "exp")
            op = Op::fexp;
        else if (name == "min") {
            op = Op::fmin;
            arity = 2;
        } else if (name == "max") {
            op = Op::fmax;
            arity = 2;
        } else
            fail("unknown identifier '" + name + "'");
        if (!eat('(')) fail("expected '(' after '" + name + "'");
        expr();
        if (arity == 2) {
            if (!eat(',')) fail("expected ',' in '" + name + "'");
            expr();
        }
        if (!eat(')')) fail("expected ')'");
        out.push_back({op});
    }
};

} // namespace

std::function<double(double)> compile_expression(const std::string& text) {
    Parser p(text);
    p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    // bound the evaluation stack
    int depth = 0, max_depth = 0;
    for (const Instr& in : p.out) {
        if (in.op == Op::push_const || in.op == Op::push_x)
            ++depth;
        else if (in.op != Op::neg && in.op != Op::fsin && in.op != Op::fcos && in.op != Op::fexp)
            --depth;
        max_depth = std::max(max_depth, depth);
    }
    if (max_depth > 60) throw ConfigError("expression too deeply nested");
    auto prog = std::make_shared<std::vector<Instr>>(std::move(p.out));
    return [prog](double x) {
        double stack[64];
        int top = 0;
        for (const Instr& in : *prog) {
            switch (in.op) {
            case Op::push_const: stack[top++] = in.value; break;
            case Op::push_x: stack[top++] = x; break;
            case Op::add: --top; stack[top - 1] += stack[top]; break;
            case Op::sub: --top; stack[top - 1] -= stack[top]; break;
            case Op::mul: --top; stack[top - 1] *= stack[top]; break;
            case Op::div: --top; stack[top - 1] /= stack[top]; break;
            case Op::neg: stack[top - 1] = -stack[top - 1]; break;
            case Op::fmin: --top; stack[top - 1] = std::fmin(stack[top - 1], stack[top]); break;
            case Op::fmax: --top; stack[top - 1] = std::fmax(stack[top - 1], stack[top]); break;
            case Op::fsin: stack[top - 1] = std::sin(stack[top - 1]); break;
            case Op::fcos: stack[top - 1] = std::cos(stack[top - 1]); break;
            case Op::fexp: stack[top - 1] = std::exp(stack[top - 1]); break;
            }
        }
        return stack[0];
    };
}

double eval_expression(const std::string& text, double x) { return compile_expression(text)(x); }

} // namespace eigencurve
