#include "tscmon/svr.hpp"

#include <algorithm>
#include <stdexcept>

namespace tscmon {

ViewCatalog ViewCatalog::build(std::span<const TscSpec> specs) {
    ViewCatalog catalog;
    std::set<std::string> seen;
    for (std::uint32_t si = 0; si < specs.size(); ++si) {
        for (std::uint32_t sj = 0; sj < si; ++sj)
            if (specs[sj].name == specs[si].name)
                throw std::invalid_argument("duplicate spec name '" + specs[si].name + "'");
        const TscSpec& spec = specs[si];
        for (std::uint32_t vi = 0; vi < spec.views.size(); ++vi) {
            ViewRef ref;
            ref.spec = &spec;
            ref.view = &spec.views[vi];
            ref.spec_index = si;
            ref.view_index = vi;
            ref.qualified_id = spec.name + "." + spec.views[vi].id;
            if (!seen.insert(ref.qualified_id).second)
                throw std::invalid_argument("duplicate view id '" + ref.qualified_id + "'");
            catalog.entries_.push_back(std::move(ref));
        }
    }
    return catalog;
}

const ViewRef* ViewCatalog::find(std::string_view qualified_id) const {
    for (const auto& e : entries_)
        if (e.qualified_id == qualified_id) return &e;
    return nullptr;
}

ViewCatalog relevant_views(const ViewCatalog& catalog, const std::set<std::string>& active_specs) {
    for (const auto& name : active_specs) {
        bool known = false;
        for (const auto& e : catalog.entries())
            if (e.spec->name == name) {
                known = true;
                break;
            }
        if (!known) throw std::invalid_argument("unknown spec name '" + name + "'");
    }
    ViewCatalog out;
    for (const auto& e : catalog.entries())
        if (active_specs.count(e.spec->name)) out.entries_.push_back(e);
    return out;
}

bool ViewSatSet::contains(std::uint32_t ordinal) const {
    return std::binary_search(ordinals.begin(), ordinals.end(), ordinal);
}

std::set<std::string> ViewSatSet::ids(const ViewCatalog& catalog) const {
    std::set<std::string> out;
    for (auto ord : ordinals) out.insert(catalog.entries()[ord].qualified_id);
    return out;
}

std::variant<ViewSatSet, SvrFault>
evaluate_views(const WorldSample& sample, const RoadGeometry& road, const ViewCatalog& catalog) {
    ViewSatSet out;
    out.t = sample.t;
    const auto& entries = catalog.entries();
    for (std::uint32_t ord = 0; ord < entries.size(); ++ord) {
        const SpatialView& view = *entries[ord].view;
        bool satisfied = true;
        for (std::size_t ci = 0; ci < view.constraints.size(); ++ci) {
            ConstraintOutcome res = eval_constraint(view.constraints[ci], sample, road);
            if (res.status != EvalStatus::Ok) {
                if (is_soft(res.status)) {
                    satisfied = false;
                    break;
                }
                return SvrFault{entries[ord].qualified_id, static_cast<int>(ci), res.status};
            }
            if (!res.satisfied) {
                satisfied = false;
                break;
            }
        }
        if (satisfied) out.ordinals.push_back(ord);
    }
    return out;
}

} // namespace tscmon
