#include "tscmon/catalog.hpp"

#include <algorithm>

namespace tscmon {

bool AttributeCatalog::has_attribute(std::string_view name) const {
    return std::find(attributes.begin(), attributes.end(), name) != attributes.end();
}

const BuiltinSig* AttributeCatalog::find_builtin(std::string_view name) const {
    for (const auto& b : builtins)
        if (b.name == name) return &b;
    return nullptr;
}

const AttributeCatalog& AttributeCatalog::standard() {
    static const AttributeCatalog catalog = [] {
        AttributeCatalog c;
        c.attributes = {"x", "y", "yaw", "v", "length", "width"};
        c.builtins = {
            {"lon_gap", {ArgKind::Role, ArgKind::Role}},
            {"lane_index", {ArgKind::Role}},
            {"lat_pos", {ArgKind::Role}},
            {"abs", {ArgKind::Real}},
        };
        return c;
    }();
    return catalog;
}

} // namespace tscmon
