// svr.hpp — Spatial View Recognition: per sample, decide which Spatial
// Views across all loaded requirements are satisfied and emit the
// timestamped ID set.

#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tscmon/eval.hpp"
#include "tscmon/spec.hpp"
#include "tscmon/world.hpp"

namespace tscmon {

struct ViewRef {
    const TscSpec* spec = nullptr;
    const SpatialView* view = nullptr;
    std::uint32_t spec_index = 0; // position of the owning spec in the build order
    std::uint32_t view_index = 0; // 0-based position within the owning spec
    std::string qualified_id;     // "specname.viewname"
};

// Merged, ordered collection of every Spatial View of every loaded spec,
// keyed by globally unique qualified ID. Entry order is spec declaration
// order, then chart order; it is the deterministic evaluation order.
class ViewCatalog {
  public:
    ViewCatalog() = default;

    // Throws std::invalid_argument on duplicate spec names.
    // The specs must outlive the catalog.
    static ViewCatalog build(std::span<const TscSpec> specs);

    const std::vector<ViewRef>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const ViewRef* find(std::string_view qualified_id) const;

  private:
    std::vector<ViewRef> entries_;

    friend ViewCatalog relevant_views(const ViewCatalog&, const std::set<std::string>&);
};

// Restriction of the catalog to views owned by the given specs.
// Throws std::invalid_argument if a name matches no spec in the catalog.
ViewCatalog relevant_views(const ViewCatalog& catalog, const std::set<std::string>& active_specs);

struct ViewSatSet {
    double t = 0.0;
    // Indices into catalog.entries(), ascending. Kept as ordinals so the
    // per-sample hot path does not materialize strings.
    std::vector<std::uint32_t> ordinals;

    bool contains(std::uint32_t ordinal) const;
    std::set<std::string> ids(const ViewCatalog& catalog) const;
};

// Hard evaluation fault; aborts the whole sample.
struct SvrFault {
    std::string qualified_id;
    int constraint_index = 0; // 0-based within the view
    EvalStatus status = EvalStatus::NonFinite;
};

// A view ID is in the output iff every one of its constraints holds on
// the sample. Constraints that evaluate to UnknownRole or OffRoad make
// their view unsatisfied; DivisionByZero / NonFinite abort the sample.
std::variant<ViewSatSet, SvrFault>
evaluate_views(const WorldSample& sample, const RoadGeometry& road, const ViewCatalog& catalog);

} // namespace tscmon
