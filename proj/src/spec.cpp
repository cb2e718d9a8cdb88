#include "tscmon/spec.hpp"

#include <utility>

namespace tscmon {

Expr Expr::num(double v) {
    Expr e;
    e.kind = ExprKind::Number;
    e.number = v;
    return e;
}

Expr Expr::attr(std::string role, std::string name) {
    Expr e;
    e.kind = ExprKind::Attr;
    e.role = std::move(role);
    e.name = std::move(name);
    return e;
}

Expr Expr::role_ref(std::string role) {
    Expr e;
    e.kind = ExprKind::Role;
    e.role = std::move(role);
    return e;
}

Expr Expr::call(std::string name, std::vector<Expr> args) {
    Expr e;
    e.kind = ExprKind::Call;
    e.name = std::move(name);
    e.children = std::move(args);
    return e;
}

Expr Expr::neg(Expr operand) {
    Expr e;
    e.kind = ExprKind::Neg;
    e.children.push_back(std::move(operand));
    return e;
}

Expr Expr::binary(ExprKind op, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = op;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case ExprKind::Number: return a.number == b.number;
    case ExprKind::Attr: return a.role == b.role && a.name == b.name;
    case ExprKind::Role: return a.role == b.role;
    case ExprKind::Call:
        if (a.name != b.name) return false;
        break;
    default: break;
    }
    return a.children == b.children;
}

const char* relop_symbol(RelOp op) {
    switch (op) {
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
    case RelOp::Eq: return "==";
    case RelOp::Ne: return "!=";
    }
    return "?";
}

bool operator==(const Constraint& a, const Constraint& b) {
    return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
}

bool operator==(const SpatialView& a, const SpatialView& b) {
    return a.id == b.id && a.index == b.index && a.constraints == b.constraints;
}

bool operator==(const HourglassBound& a, const HourglassBound& b) {
    return a.comparator == b.comparator && a.bound == b.bound;
}

bool operator==(const Header& a, const Header& b) {
    return a.activation == b.activation && a.quantifier == b.quantifier && a.hourglass == b.hourglass;
}

bool operator==(const TscSpec& a, const TscSpec& b) {
    return a.name == b.name && a.header == b.header && a.views == b.views;
}

} // namespace tscmon
