#include "tscmon/eval.hpp"

#include <cmath>
#include <stdexcept>

namespace tscmon {

const char* eval_status_name(EvalStatus s) {
    switch (s) {
    case EvalStatus::Ok: return "Ok";
    case EvalStatus::UnknownRole: return "UnknownRole";
    case EvalStatus::OffRoad: return "OffRoad";
    case EvalStatus::DivisionByZero: return "DivisionByZero";
    case EvalStatus::NonFinite: return "NonFinite";
    }
    return "?";
}

const ObjectState* WorldSample::find(std::string_view role) const {
    for (const auto& obj : objects)
        if (obj.role == role) return &obj;
    return nullptr;
}

double lon_gap(const ObjectState& a, const ObjectState& b) {
    return (b.x - b.length / 2.0) - (a.x + a.length / 2.0);
}

std::optional<double> lane_index(const ObjectState& o, const RoadGeometry& road) {
    if (o.y < 0.0 || o.y >= road.lane_count * road.lane_width) return std::nullopt;
    return std::floor(o.y / road.lane_width);
}

namespace {

EvalOutcome finite_or_fault(double v) {
    if (!std::isfinite(v)) return EvalOutcome::err(EvalStatus::NonFinite);
    return EvalOutcome::ok(v);
}

EvalOutcome eval_call(const Expr& e, const WorldSample& sample, const RoadGeometry& road) {
    auto resolve = [&](const Expr& arg) -> const ObjectState* {
        if (arg.kind != ExprKind::Role)
            throw std::logic_error("builtin argument is not an object reference");
        return sample.find(arg.role);
    };
    if (e.name == "lon_gap") {
        const ObjectState* a = resolve(e.children[0]);
        const ObjectState* b = resolve(e.children[1]);
        if (!a || !b) return EvalOutcome::err(EvalStatus::UnknownRole);
        return finite_or_fault(lon_gap(*a, *b));
    }
    if (e.name == "lane_index") {
        const ObjectState* o = resolve(e.children[0]);
        if (!o) return EvalOutcome::err(EvalStatus::UnknownRole);
        auto lane = lane_index(*o, road);
        if (!lane) return EvalOutcome::err(EvalStatus::OffRoad);
        return EvalOutcome::ok(*lane);
    }
    if (e.name == "lat_pos") {
        const ObjectState* o = resolve(e.children[0]);
        if (!o) return EvalOutcome::err(EvalStatus::UnknownRole);
        return EvalOutcome::ok(lat_pos(*o));
    }
    if (e.name == "abs") {
        EvalOutcome arg = eval_expr(e.children[0], sample, road);
        if (arg.status != EvalStatus::Ok) return arg;
        return EvalOutcome::ok(std::fabs(arg.value));
    }
    throw std::logic_error("unknown builtin '" + e.name + "'");
}

} // namespace

EvalOutcome eval_expr(const Expr& e, const WorldSample& sample, const RoadGeometry& road) {
    switch (e.kind) {
    case ExprKind::Number:
        return EvalOutcome::ok(e.number);
    case ExprKind::Attr: {
        const ObjectState* o = sample.find(e.role);
        if (!o) return EvalOutcome::err(EvalStatus::UnknownRole);
        if (e.name == "x") return EvalOutcome::ok(o->x);
        if (e.name == "y") return EvalOutcome::ok(o->y);
        if (e.name == "yaw") return EvalOutcome::ok(o->yaw);
        if (e.name == "v") return EvalOutcome::ok(o->v);
        if (e.name == "length") return EvalOutcome::ok(o->length);
        if (e.name == "width") return EvalOutcome::ok(o->width);
        throw std::logic_error("unknown attribute '" + e.name + "'");
    }
    case ExprKind::Role:
        throw std::logic_error("object reference evaluated outside a builtin argument");
    case ExprKind::Call:
        return eval_call(e, sample, road);
    case ExprKind::Neg: {
        EvalOutcome operand = eval_expr(e.children[0], sample, road);
        if (operand.status != EvalStatus::Ok) return operand;
        return EvalOutcome::ok(-operand.value);
    }
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
        EvalOutcome lhs = eval_expr(e.children[0], sample, road);
        if (lhs.status != EvalStatus::Ok) return lhs;
        EvalOutcome rhs = eval_expr(e.children[1], sample, road);
        if (rhs.status != EvalStatus::Ok) return rhs;
        switch (e.kind) {
        case ExprKind::Add: return finite_or_fault(lhs.value + rhs.value);
        case ExprKind::Sub: return finite_or_fault(lhs.value - rhs.value);
        case ExprKind::Mul: return finite_or_fault(lhs.value * rhs.value);
        default:
            if (rhs.value == 0.0) return EvalOutcome::err(EvalStatus::DivisionByZero);
            return finite_or_fault(lhs.value / rhs.value);
        }
    }
    }
    throw std::logic_error("unhandled expression kind");
}

ConstraintOutcome eval_constraint(const Constraint& c, const WorldSample& sample, const RoadGeometry& road) {
    EvalOutcome lhs = eval_expr(c.lhs, sample, road);
    if (lhs.status != EvalStatus::Ok) return {lhs.status, false};
    EvalOutcome rhs = eval_expr(c.rhs, sample, road);
    if (rhs.status != EvalStatus::Ok) return {rhs.status, false};
    bool sat = false;
    switch (c.op) {
    case RelOp::Lt: sat = lhs.value < rhs.value; break;
    case RelOp::Le: sat = lhs.value <= rhs.value; break;
    case RelOp::Gt: sat = lhs.value > rhs.value; break;
    case RelOp::Ge: sat = lhs.value >= rhs.value; break;
    case RelOp::Eq: sat = lhs.value == rhs.value; break;
    case RelOp::Ne: sat = lhs.value != rhs.value; break;
    }
    return {EvalStatus::Ok, sat};
}

} // namespace tscmon
