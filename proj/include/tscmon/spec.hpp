// spec.hpp — abstract model of a textual Traffic Sequence Chart requirement.
//
// A TscSpec is a named header (activation mode, time quantification,
// optional hourglass bound) plus an ordered sequence of Spatial Views.
// Each Spatial View is a conjunction of arithmetic constraints over
// real-valued object attributes; constraints compare expression trees
// built from constants, attribute references (role.attr), builtin calls
// and the usual arithmetic operators.
//
// Values are plain data: immutable after construction, freely copyable,
// safe to share across threads. Structural equality is the identity used
// by the parse/print round-trip tests.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tscmon {

enum class ExprKind : std::uint8_t {
    Number,  // literal constant
    Attr,    // role.attribute reference
    Role,    // bare object reference, only valid as a builtin argument
    Call,    // builtin function call
    Neg,     // unary minus
    Add,
    Sub,
    Mul,
    Div,
};

struct Expr {
    ExprKind kind = ExprKind::Number;
    double number = 0.0;        // Number
    std::string role;           // Attr, Role
    std::string name;           // Attr: attribute name; Call: builtin name
    std::vector<Expr> children; // Call arguments, Neg operand, binary lhs/rhs

    static Expr num(double v);
    static Expr attr(std::string role, std::string name);
    static Expr role_ref(std::string role);
    static Expr call(std::string name, std::vector<Expr> args);
    static Expr neg(Expr e);
    static Expr binary(ExprKind op, Expr lhs, Expr rhs);
};

bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

enum class RelOp : std::uint8_t { Lt, Le, Gt, Ge, Eq, Ne };

const char* relop_symbol(RelOp op);

struct Constraint {
    Expr lhs;
    RelOp op = RelOp::Lt;
    Expr rhs;
};

bool operator==(const Constraint& a, const Constraint& b);
inline bool operator!=(const Constraint& a, const Constraint& b) { return !(a == b); }

struct SpatialView {
    std::string id;
    int index = 0; // 1-based position within the chart sequence
    std::vector<Constraint> constraints;
};

bool operator==(const SpatialView& a, const SpatialView& b);
inline bool operator!=(const SpatialView& a, const SpatialView& b) { return !(a == b); }

enum class Activation : std::uint8_t { Initial };
enum class Quantifier : std::uint8_t { Exists };
enum class BoundCmp : std::uint8_t { LessThan, LessOrEqual };

struct HourglassBound {
    BoundCmp comparator = BoundCmp::LessThan;
    double bound = 0.0; // seconds, > 0
};

bool operator==(const HourglassBound& a, const HourglassBound& b);
inline bool operator!=(const HourglassBound& a, const HourglassBound& b) { return !(a == b); }

struct Header {
    Activation activation = Activation::Initial;
    Quantifier quantifier = Quantifier::Exists;
    std::optional<HourglassBound> hourglass;
};

bool operator==(const Header& a, const Header& b);
inline bool operator!=(const Header& a, const Header& b) { return !(a == b); }

struct TscSpec {
    std::string name;
    Header header;
    std::vector<SpatialView> views; // length n >= 1

    int view_count() const { return static_cast<int>(views.size()); }
    // 1-based lookup mirroring the chart's node numbering
    const SpatialView& view_at(int index) const { return views[static_cast<std::size_t>(index - 1)]; }
};

bool operator==(const TscSpec& a, const TscSpec& b);
inline bool operator!=(const TscSpec& a, const TscSpec& b) { return !(a == b); }

} // namespace tscmon
