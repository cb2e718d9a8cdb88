#include "tscmon/monitor.hpp"

#include <algorithm>
#include <stdexcept>

#include "tscmon/util.hpp"

namespace tscmon {

const char* event_kind_name(EventKind k) {
    switch (k) {
    case EventKind::Activated: return "Activated";
    case EventKind::Progress: return "Progress";
    case EventKind::Concluded: return "Concluded";
    }
    return "?";
}

const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Satisfying: return "Satisfying";
    case Outcome::Violating: return "Violating";
    case Outcome::Inconclusive: return "Inconclusive";
    case Outcome::MonitorError: return "MonitorError";
    }
    return "?";
}

Outcome outcome_from_verdict(Verdict v) {
    switch (v) {
    case Verdict::Satisfying: return Outcome::Satisfying;
    case Verdict::Violating: return Outcome::Violating;
    case Verdict::Inconclusive: return Outcome::Inconclusive;
    }
    return Outcome::Inconclusive;
}

std::string event_csv_row(const VerdictEvent& ev) {
    return ev.spec + "," + format_double(ev.t) + "," + event_kind_name(ev.kind) + "," +
           outcome_name(ev.outcome);
}

MonitorSession::MonitorSession(std::vector<TscSpec> specs, RoadGeometry road,
                               const std::map<std::string, std::string>& activation)
    : specs_(std::move(specs)), road_(road) {
    if (specs_.empty()) throw std::invalid_argument("no specs loaded");
    full_catalog_ = ViewCatalog::build(specs_); // rejects duplicate spec names
    active_catalog_ = full_catalog_;
    runtime_.resize(specs_.size());

    for (const auto& [spec_name, view_id] : activation) {
        std::size_t idx = specs_.size();
        for (std::size_t i = 0; i < specs_.size(); ++i)
            if (specs_[i].name == spec_name) idx = i;
        if (idx == specs_.size())
            throw std::invalid_argument("activation refers to unknown spec '" + spec_name + "'");
        bool found = false;
        for (std::size_t vi = 0; vi < specs_[idx].views.size(); ++vi)
            if (specs_[idx].views[vi].id == view_id) {
                runtime_[idx].activation_view = static_cast<std::uint32_t>(vi);
                found = true;
            }
        if (!found)
            throw std::invalid_argument("unknown activation view '" + spec_name + "." + view_id + "'");
    }
    for (std::size_t i = 0; i < specs_.size(); ++i)
        runtime_[i].sat_mask.assign(specs_[i].views.size() + 1, 0);
}

void MonitorSession::rebuild_active_catalog() {
    std::set<std::string> active;
    for (std::size_t i = 0; i < specs_.size(); ++i)
        if (runtime_[i].phase != Phase::Concluded) active.insert(specs_[i].name);
    active_catalog_ = relevant_views(full_catalog_, active);
}

void MonitorSession::conclude(std::size_t spec_idx, Outcome outcome, double t, std::string note) {
    SpecRuntime& rt = runtime_[spec_idx];
    rt.phase = Phase::Concluded;
    rt.outcome = outcome;
    rt.concluded_at = t;
    rt.note = std::move(note);
}

std::vector<VerdictEvent> MonitorSession::feed(const WorldSample& sample) {
    if (have_last_ && !(sample.t > last_t_))
        throw std::invalid_argument("non-increasing timestamp");

    // One shared view evaluation per sample. A hard fault concludes the
    // owning spec with MonitorError, drops its views and re-evaluates so
    // the remaining specs keep progressing; each spec can fault at most
    // once per run, so this loop is bounded.
    ViewSatSet sat;
    for (;;) {
        auto result = evaluate_views(sample, road_, active_catalog_);
        if (auto* ok = std::get_if<ViewSatSet>(&result)) {
            sat = std::move(*ok);
            break;
        }
        const SvrFault& fault = std::get<SvrFault>(result);
        const ViewRef* ref = active_catalog_.find(fault.qualified_id);
        if (!ref) throw std::logic_error("fault names a view missing from the active catalog");
        std::size_t owner = ref->spec_index;
        conclude(owner, Outcome::MonitorError, sample.t,
                 "evaluation fault in " + fault.qualified_id + " constraint " +
                     std::to_string(fault.constraint_index) + ": " + eval_status_name(fault.status));
        runtime_[owner].fault_event_pending = true;
        rebuild_active_catalog();
    }

    // Per-spec satisfaction masks, 1-based by chart index.
    for (std::size_t i = 0; i < specs_.size(); ++i)
        std::fill(runtime_[i].sat_mask.begin(), runtime_[i].sat_mask.end(), 0);
    for (auto ord : sat.ordinals) {
        const ViewRef& ref = active_catalog_.entries()[ord];
        runtime_[ref.spec_index].sat_mask[ref.view_index + 1] = 1;
    }

    std::vector<VerdictEvent> events;
    bool concluded_any = false;
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        SpecRuntime& rt = runtime_[i];
        const std::string& name = specs_[i].name;
        switch (rt.phase) {
        case Phase::Concluded:
            if (rt.fault_event_pending) {
                rt.fault_event_pending = false;
                events.push_back({name, sample.t, EventKind::Concluded, Outcome::MonitorError, rt.note});
                concluded_any = true;
            }
            break;
        case Phase::Idle: {
            bool activate = !rt.activation_view ||
                            rt.sat_mask[*rt.activation_view + 1] != 0;
            if (!activate) break;
            rt.ter = ter_init(specs_[i], sample.t, rt.sat_mask);
            rt.phase = Phase::Running;
            Verdict v = rt.ter.current;
            events.push_back({name, sample.t, EventKind::Activated, outcome_from_verdict(v), ""});
            if (is_conclusive(v)) {
                conclude(i, outcome_from_verdict(v), sample.t, "");
                events.push_back({name, sample.t, EventKind::Concluded, outcome_from_verdict(v), ""});
                concluded_any = true;
            } else {
                events.push_back({name, sample.t, EventKind::Progress, Outcome::Inconclusive, ""});
            }
            break;
        }
        case Phase::Running: {
            ter_step(rt.ter, sample.t, rt.sat_mask);
            Verdict v = rt.ter.current;
            if (is_conclusive(v)) {
                conclude(i, outcome_from_verdict(v), sample.t, "");
                events.push_back({name, sample.t, EventKind::Concluded, outcome_from_verdict(v), ""});
                concluded_any = true;
            } else {
                events.push_back({name, sample.t, EventKind::Progress, Outcome::Inconclusive, ""});
            }
            break;
        }
        }
    }
    if (concluded_any) rebuild_active_catalog();

    last_t_ = sample.t;
    have_last_ = true;
    return events;
}

std::vector<VerdictEvent> MonitorSession::end(double last_t) {
    std::vector<VerdictEvent> events;
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        SpecRuntime& rt = runtime_[i];
        const std::string& name = specs_[i].name;
        if (rt.phase == Phase::Concluded) continue;
        if (rt.phase == Phase::Running) {
            Outcome outcome = outcome_from_verdict(ter_finalize(rt.ter));
            conclude(i, outcome, last_t, "");
            events.push_back({name, last_t, EventKind::Concluded, outcome, ""});
        } else {
            conclude(i, Outcome::Inconclusive, last_t, "never activated");
            events.push_back({name, last_t, EventKind::Concluded, Outcome::Inconclusive, "never activated"});
        }
    }
    if (!events.empty()) rebuild_active_catalog();
    return events;
}

bool MonitorSession::all_concluded() const {
    for (const auto& rt : runtime_)
        if (rt.phase != Phase::Concluded) return false;
    return true;
}

std::vector<MonitorSession::SpecStatus> MonitorSession::status() const {
    std::vector<SpecStatus> out;
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        SpecStatus s;
        s.name = specs_[i].name;
        s.concluded = runtime_[i].phase == Phase::Concluded;
        s.outcome = runtime_[i].outcome;
        s.concluded_at = runtime_[i].concluded_at;
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace tscmon
