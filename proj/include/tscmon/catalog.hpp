#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tscmon {

enum class ArgKind : std::uint8_t { Role, Real };

struct BuiltinSig {
    std::string name;
    std::vector<ArgKind> args;
};

// The attribute names every object role exposes, plus the builtin
// function signatures the expression language knows about. Fixed in v1.
struct AttributeCatalog {
    std::vector<std::string> attributes;
    std::vector<BuiltinSig> builtins;

    bool has_attribute(std::string_view name) const;
    const BuiltinSig* find_builtin(std::string_view name) const;

    // {x, y, yaw, v, length, width} and
    // lon_gap(role, role), lane_index(role), lat_pos(role), abs(real).
    static const AttributeCatalog& standard();
};

} // namespace tscmon
