// world.hpp — trace data model: a straight multi-lane road and timestamped
// snapshots of the objects on it. Lane k spans the lateral interval
// [k*lane_width, (k+1)*lane_width); lane 0 is the rightmost lane.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tscmon {

struct RoadGeometry {
    int lane_count = 2;
    double lane_width = 3.5; // meters
    double length = 500.0;   // meters
};

struct ObjectState {
    std::string role;
    double x = 0.0;      // longitudinal center, meters
    double y = 0.0;      // lateral center, meters
    double yaw = 0.0;    // radians, 0 = road direction, positive = toward leftmost lane
    double v = 0.0;      // speed, m/s, >= 0
    double length = 1.0; // meters, > 0
    double width = 1.0;  // meters, > 0
};

struct WorldSample {
    double t = 0.0; // absolute trace time, seconds
    std::vector<ObjectState> objects;

    const ObjectState* find(std::string_view role) const;
};

} // namespace tscmon
