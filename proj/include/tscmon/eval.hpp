#pragma once

#include <cstdint>
#include <optional>

#include "tscmon/spec.hpp"
#include "tscmon/world.hpp"

namespace tscmon {

// UnknownRole and OffRoad are soft outcomes: any constraint containing
// them evaluates to "not satisfied". DivisionByZero and NonFinite are
// hard faults that abort evaluation of the whole sample.
enum class EvalStatus : std::uint8_t {
    Ok,
    UnknownRole,
    OffRoad,
    DivisionByZero,
    NonFinite,
};

const char* eval_status_name(EvalStatus s);

inline bool is_soft(EvalStatus s) {
    return s == EvalStatus::UnknownRole || s == EvalStatus::OffRoad;
}

struct EvalOutcome {
    EvalStatus status = EvalStatus::Ok;
    double value = 0.0; // valid iff status == Ok

    static EvalOutcome ok(double v) { return {EvalStatus::Ok, v}; }
    static EvalOutcome err(EvalStatus s) { return {s, 0.0}; }
};

// Bumper-to-bumper longitudinal gap from a's front to b's rear.
// Negative iff the bounding intervals overlap or b is behind a.
// lon_gap(a,b) + lon_gap(b,a) == -(a.length + b.length).
double lon_gap(const ObjectState& a, const ObjectState& b);

// Lane of the object's center, or nullopt when the center is off the
// carriageway (y < 0 or y >= lane_count * lane_width).
std::optional<double> lane_index(const ObjectState& o, const RoadGeometry& road);

inline double lat_pos(const ObjectState& o) { return o.y; }

// Evaluates a validated expression against one sample. Left-to-right,
// short-circuiting on the first non-Ok status. Throws std::logic_error
// for trees the validator would have rejected.
EvalOutcome eval_expr(const Expr& e, const WorldSample& sample, const RoadGeometry& road);

// Constraint truth value: `satisfied` is meaningful only when status == Ok.
struct ConstraintOutcome {
    EvalStatus status = EvalStatus::Ok;
    bool satisfied = false;
};

ConstraintOutcome eval_constraint(const Constraint& c, const WorldSample& sample, const RoadGeometry& road);

} // namespace tscmon
