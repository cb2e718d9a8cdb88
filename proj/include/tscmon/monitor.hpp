// monitor.hpp — composes SVR and TER into the runtime monitor: one shared
// view evaluation per fed sample, one TER instance per requirement,
// per-spec activation, and a deterministic verdict event stream.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tscmon/svr.hpp"
#include "tscmon/ter.hpp"
#include "tscmon/world.hpp"

namespace tscmon {

enum class EventKind : std::uint8_t { Activated, Progress, Concluded };

// Verdicts plus the distinguished outcome for specs killed by a hard
// evaluation fault, so harnesses can tell spec bugs from violations.
enum class Outcome : std::uint8_t { Satisfying, Violating, Inconclusive, MonitorError };

const char* event_kind_name(EventKind k);
const char* outcome_name(Outcome o);
Outcome outcome_from_verdict(Verdict v);

struct VerdictEvent {
    std::string spec;
    double t = 0.0;
    EventKind kind = EventKind::Progress;
    Outcome outcome = Outcome::Inconclusive;
    std::string note; // optional annotation, e.g. "never activated"
};

// Event record as exported to CSV: spec,t,kind,verdict
std::string event_csv_row(const VerdictEvent& ev);

class MonitorSession {
  public:
    // activation maps spec name -> view id within that spec; specs without
    // an entry activate at the first fed sample. Throws
    // std::invalid_argument on duplicate spec names, empty spec list or
    // unknown activation views.
    MonitorSession(std::vector<TscSpec> specs, RoadGeometry road,
                   const std::map<std::string, std::string>& activation = {});

    // Internal state points back into the owned spec list.
    MonitorSession(const MonitorSession&) = delete;
    MonitorSession& operator=(const MonitorSession&) = delete;
    MonitorSession(MonitorSession&&) = default;
    MonitorSession& operator=(MonitorSession&&) = default;

    // Feeds one sample (strictly increasing t, or std::invalid_argument is
    // thrown and the session is unchanged) and returns the events it
    // produced, in spec declaration order.
    std::vector<VerdictEvent> feed(const WorldSample& sample);

    // Concludes every spec that is still pending: running specs finish
    // Inconclusive unless already latched, idle specs conclude
    // Inconclusive with a "never activated" note.
    std::vector<VerdictEvent> end(double last_t);

    bool all_concluded() const;
    const std::vector<TscSpec>& specs() const { return specs_; }
    const RoadGeometry& road() const { return road_; }

    struct SpecStatus {
        std::string name;
        bool concluded = false;
        Outcome outcome = Outcome::Inconclusive;
        double concluded_at = 0.0;
    };
    std::vector<SpecStatus> status() const;

  private:
    enum class Phase : std::uint8_t { Idle, Running, Concluded };

    struct SpecRuntime {
        Phase phase = Phase::Idle;
        std::optional<std::uint32_t> activation_view; // 0-based view index within the spec
        TerState ter;
        Outcome outcome = Outcome::Inconclusive;
        double concluded_at = 0.0;
        std::string note;
        bool fault_event_pending = false;
        std::vector<std::uint8_t> sat_mask; // 1-based by chart index, reused per sample
    };

    std::vector<TscSpec> specs_;
    RoadGeometry road_;
    ViewCatalog full_catalog_;
    ViewCatalog active_catalog_; // views of not-yet-concluded specs
    std::vector<SpecRuntime> runtime_;
    double last_t_ = 0.0;
    bool have_last_ = false;

    void rebuild_active_catalog();
    void conclude(std::size_t spec_idx, Outcome outcome, double t, std::string note);
};

} // namespace tscmon
