// Copyright 2026 The Quell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quell/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace quell {

namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw validation_error("qasm:" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_space() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_space();
        return pos >= text.size();
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool try_consume(char c) {
        skip_space();
        if (pos < text.size() && text[pos] == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!try_consume(c)) fail(std::string("expected '") + c + "'");
    }

    std::string ident() {
        skip_space();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '.'))
            advance();
        if (pos == start) fail("expected identifier");
        return text.substr(start, pos - start);
    }

    long integer() {
        skip_space();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) advance();
        if (pos == start) fail("expected integer");
        return std::stol(text.substr(start, pos - start));
    }

    double number() {
        skip_space();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' || text[pos] == 'e' ||
                text[pos] == 'E' ||
                ((text[pos] == '+' || text[pos] == '-') && pos > start &&
                 (text[pos - 1] == 'e' || text[pos - 1] == 'E'))))
            advance();
        if (pos == start) fail("expected number");
        return std::stod(text.substr(start, pos - start));
    }

    std::string string_lit() {
        skip_space();
        if (pos >= text.size() || text[pos] != '"') fail("expected string literal");
        advance();
        size_t start = pos;
        while (pos < text.size() && text[pos] != '"') advance();
        if (pos >= text.size()) fail("unterminated string literal");
        std::string s = text.substr(start, pos - start);
        advance();
        return s;
    }
};

// Grammar for angle expressions:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := number | 'pi' | '-' factor | '(' expr ')'
double parse_expr(Lexer& lx);

double parse_factor(Lexer& lx) {
    char c = lx.peek();
    if (c == '-') {
        lx.advance();
        return -parse_factor(lx);
    }
    if (c == '+') {
        lx.advance();
        return parse_factor(lx);
    }
    if (c == '(') {
        lx.advance();
        double v = parse_expr(lx);
        lx.expect(')');
        return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lx.number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string id = lx.ident();
        if (id == "pi") return M_PI;
        lx.fail("unknown symbol '" + id + "' in angle expression");
    }
    lx.fail("malformed angle expression");
}

double parse_term(Lexer& lx) {
    double v = parse_factor(lx);
    while (true) {
        char c = lx.peek();
        if (c == '*') {
            lx.advance();
            v *= parse_factor(lx);
        } else if (c == '/') {
            lx.advance();
            double d = parse_factor(lx);
            if (d == 0.0) lx.fail("division by zero in angle expression");
            v /= d;
        } else {
            return v;
        }
    }
}

double parse_expr(Lexer& lx) {
    double v = parse_term(lx);
    while (true) {
        char c = lx.peek();
        if (c == '+') {
            lx.advance();
            v += parse_term(lx);
        } else if (c == '-') {
            lx.advance();
            v -= parse_term(lx);
        } else {
            return v;
        }
    }
}

struct Parser {
    Lexer lx;
    Circuit circuit;
    std::string qreg_name, creg_name;

    explicit Parser(const std::string& text) : lx(text) {}

    int qubit_arg() {
        std::string name = lx.ident();
        if (name != qreg_name) lx.fail("unknown quantum register '" + name + "'");
        lx.expect('[');
        long idx = lx.integer();
        lx.expect(']');
        if (idx < 0 || idx >= circuit.num_qubits) lx.fail("qubit index " + std::to_string(idx) + " out of range");
        return static_cast<int>(idx);
    }

    int clbit_arg() {
        std::string name = lx.ident();
        if (name != creg_name) lx.fail("unknown classical register '" + name + "'");
        lx.expect('[');
        long idx = lx.integer();
        lx.expect(']');
        if (idx < 0 || idx >= circuit.num_clbits) lx.fail("clbit index " + std::to_string(idx) + " out of range");
        return static_cast<int>(idx);
    }

    Circuit run() {
        std::string kw = lx.ident();
        if (kw != "OPENQASM") lx.fail("file must start with OPENQASM 2.0");
        if (lx.number() != 2.0) lx.fail("only OPENQASM version 2.0 is supported");
        lx.expect(';');
        while (!lx.eof()) statement();
        if (qreg_name.empty()) lx.fail("missing qreg declaration");
        circuit.validate();
        return circuit;
    }

    void statement() {
        std::string kw = lx.ident();
        if (kw == "include") {
            lx.string_lit();
            lx.expect(';');
        } else if (kw == "qreg") {
            if (!qreg_name.empty()) lx.fail("only one qreg is supported");
            qreg_name = lx.ident();
            lx.expect('[');
            circuit.num_qubits = static_cast<int>(lx.integer());
            lx.expect(']');
            lx.expect(';');
            if (circuit.num_qubits <= 0) lx.fail("qreg must have positive size");
        } else if (kw == "creg") {
            if (!creg_name.empty()) lx.fail("only one creg is supported");
            creg_name = lx.ident();
            lx.expect('[');
            circuit.num_clbits = static_cast<int>(lx.integer());
            lx.expect(']');
            lx.expect(';');
        } else if (kw == "h" || kw == "x" || kw == "sx") {
            int q = qubit_arg();
            lx.expect(';');
            circuit.add(kw == "h" ? Gate::h(q) : kw == "x" ? Gate::x(q) : Gate::sx(q));
        } else if (kw == "rz") {
            lx.expect('(');
            double angle = parse_expr(lx);
            lx.expect(')');
            int q = qubit_arg();
            lx.expect(';');
            circuit.add(Gate::rz(q, angle));
        } else if (kw == "cx") {
            int a = qubit_arg();
            lx.expect(',');
            int b = qubit_arg();
            lx.expect(';');
            if (a == b) lx.fail("cx control and target must differ");
            circuit.add(Gate::cx(a, b));
        } else if (kw == "barrier") {
            // Qubit lists are accepted but every barrier is normalized to a
            // full-width synchronization point.
            if (lx.peek() != ';')
                do {
                    qubit_arg();
                } while (lx.try_consume(','));
            lx.expect(';');
            circuit.add(Gate::barrier());
        } else if (kw == "measure") {
            int q = qubit_arg();
            lx.expect('-');
            lx.expect('>');
            int c = clbit_arg();
            lx.expect(';');
            circuit.add(Gate::measure(q, c));
        } else {
            lx.fail("unsupported gate or statement '" + kw + "'");
        }
    }
};

}  // namespace

Circuit parse_qasm(const std::string& text) {
    Parser p(text);
    return p.run();
}

std::string emit_qasm(const Circuit& circuit) {
    circuit.validate();
    std::ostringstream out;
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.num_qubits << "];\n";
    if (circuit.num_clbits > 0) out << "creg c[" << circuit.num_clbits << "];\n";
    char buf[64];
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::RZ:
                std::snprintf(buf, sizeof buf, "%.17g", g.angle);
                out << "rz(" << buf << ") q[" << g.qubits[0] << "];\n";
                break;
            case GateKind::SX:
            case GateKind::X:
            case GateKind::H:
                out << gate_kind_name(g.kind) << " q[" << g.qubits[0] << "];\n";
                break;
            case GateKind::CX:
                out << "cx q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
                break;
            case GateKind::BARRIER:
                out << "barrier;\n";
                break;
            case GateKind::MEASURE:
                out << "measure q[" << g.qubits[0] << "] -> c[" << g.clbit << "];\n";
                break;
            case GateKind::U2Q:
                throw validation_error("emit_qasm: U2Q gates have no QASM form; synthesize first");
        }
    }
    return out.str();
}

}  // namespace quell
