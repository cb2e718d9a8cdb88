#include "tscmon/printer.hpp"

#include <string>

#include "tscmon/util.hpp"

namespace tscmon {
namespace {

// Binding strength: additive 1, multiplicative 2, unary/atomic 3.
void print_into(const Expr& e, std::string& out, int min_prec);

void print_binary(const Expr& e, std::string& out, const char* op, int prec, int min_prec) {
    bool parens = prec < min_prec;
    if (parens) out.push_back('(');
    print_into(e.children[0], out, prec);
    out.push_back(' ');
    out += op;
    out.push_back(' ');
    // left-associative grammar: a right child at equal precedence needs parens
    print_into(e.children[1], out, prec + 1);
    if (parens) out.push_back(')');
}

void print_into(const Expr& e, std::string& out, int min_prec) {
    switch (e.kind) {
    case ExprKind::Number:
        out += format_double(e.number);
        return;
    case ExprKind::Attr:
        out += e.role;
        out.push_back('.');
        out += e.name;
        return;
    case ExprKind::Role:
        out += e.role;
        return;
    case ExprKind::Call: {
        out += e.name;
        out.push_back('(');
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            if (i > 0) out += ", ";
            print_into(e.children[i], out, 0);
        }
        out.push_back(')');
        return;
    }
    case ExprKind::Neg:
        out.push_back('-');
        print_into(e.children[0], out, 3);
        return;
    case ExprKind::Add: print_binary(e, out, "+", 1, min_prec); return;
    case ExprKind::Sub: print_binary(e, out, "-", 1, min_prec); return;
    case ExprKind::Mul: print_binary(e, out, "*", 2, min_prec); return;
    case ExprKind::Div: print_binary(e, out, "/", 2, min_prec); return;
    }
}

} // namespace

std::string print_expr(const Expr& e) {
    std::string out;
    print_into(e, out, 0);
    return out;
}

std::string print_constraint(const Constraint& c) {
    std::string out = print_expr(c.lhs);
    out.push_back(' ');
    out += relop_symbol(c.op);
    out.push_back(' ');
    out += print_expr(c.rhs);
    return out;
}

std::string print_tsc(const TscSpec& spec) {
    std::string out;
    out += "tsc \"" + spec.name + "\" {\n";
    out += "  activation: initial;\n";
    out += "  quantifier: exists;\n";
    if (spec.header.hourglass) {
        const auto& hg = *spec.header.hourglass;
        out += "  hourglass: ";
        out += hg.comparator == BoundCmp::LessThan ? "<" : "<=";
        out += " " + format_double(hg.bound) + " s;\n";
    }
    out += "  sequence {\n";
    for (const auto& view : spec.views) {
        out += "    view " + view.id + " {\n";
        for (const auto& c : view.constraints)
            out += "      " + print_constraint(c) + ";\n";
        out += "    }\n";
    }
    out += "  }\n";
    out += "}\n";
    return out;
}

} // namespace tscmon
