#include "tscmon/ter.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tscmon {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Satisfying: return "Satisfying";
    case Verdict::Violating: return "Violating";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const FrontierEntry* TerState::entry_for(int index) const {
    for (const auto& e : frontier)
        if (e.index == index) return &e;
    return nullptr;
}

std::vector<std::uint8_t> sat_mask_from_ids(const TscSpec& spec, const std::vector<std::string>& sat_ids) {
    std::vector<std::uint8_t> mask(spec.views.size() + 1, 0);
    for (std::size_t i = 0; i < spec.views.size(); ++i)
        if (std::find(sat_ids.begin(), sat_ids.end(), spec.views[i].id) != sat_ids.end())
            mask[i + 1] = 1;
    return mask;
}

Verdict ter_verdict(const TerState& state) {
    const int n = state.spec->view_count();
    double bound = std::numeric_limits<double>::infinity();
    bool strict = true;
    if (state.spec->header.hourglass) {
        bound = state.spec->header.hourglass->bound;
        strict = state.spec->header.hourglass->comparator == BoundCmp::LessThan;
    }
    // interval n can still be closed at any instant in (e, bound)
    for (const auto& e : state.frontier)
        if (e.index == n && e.entry_time < bound) return Verdict::Satisfying;
    if (state.frontier.empty()) return Verdict::Violating;
    if (strict ? state.elapsed >= bound : state.elapsed > bound) return Verdict::Violating;
    return Verdict::Inconclusive;
}

namespace {

void settle(TerState& state) {
    state.current = ter_verdict(state);
    if (is_conclusive(state.current)) state.latched = state.current;
}

void check_mask(const TscSpec& spec, std::span<const std::uint8_t> sat) {
    if (sat.size() != spec.views.size() + 1)
        throw std::invalid_argument("satisfaction mask size does not match view count");
}

} // namespace

TerState ter_init(const TscSpec& spec, double activation_time, std::span<const std::uint8_t> sat) {
    check_mask(spec, sat);
    TerState state;
    state.spec = &spec;
    state.activation_time = activation_time;
    state.elapsed = 0.0;
    // t0 is pinned to activation: view 1 either starts now or never
    if (sat[1]) state.frontier.push_back({1, 0.0});
    settle(state);
    return state;
}

TerState ter_init(const TscSpec& spec, double activation_time, const std::vector<std::string>& sat_ids) {
    auto mask = sat_mask_from_ids(spec, sat_ids);
    return ter_init(spec, activation_time, mask);
}

TerState& ter_step(TerState& state, double t, std::span<const std::uint8_t> sat) {
    if (state.latched) return state;
    check_mask(*state.spec, sat);
    const double prev_t = state.activation_time + state.elapsed;
    if (!(t > prev_t)) throw std::invalid_argument("non-increasing timestamp");

    const int n = state.spec->view_count();
    const double d = t - state.activation_time;
    std::vector<FrontierEntry> next;
    next.reserve(state.frontier.size() + 1);
    for (int i = 1; i <= n; ++i) {
        if (!sat[static_cast<std::size_t>(i)]) continue;
        const FrontierEntry* self = state.entry_for(i);
        if (self) {
            // (stay) view i remains satisfied; earliest entry wins
            next.push_back({i, self->entry_time});
        } else if (i > 1 && state.entry_for(i - 1)) {
            // (advance) predecessor's interval closes exactly now
            next.push_back({i, d});
        }
    }
    state.frontier = std::move(next);
    state.elapsed = d;
    settle(state);
    return state;
}

TerState& ter_step(TerState& state, double t, const std::vector<std::string>& sat_ids) {
    if (state.latched) return state;
    auto mask = sat_mask_from_ids(*state.spec, sat_ids);
    return ter_step(state, t, mask);
}

Verdict ter_finalize(const TerState& state) {
    return state.latched.value_or(Verdict::Inconclusive);
}

} // namespace tscmon
