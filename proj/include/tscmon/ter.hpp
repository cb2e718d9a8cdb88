// ter.hpp — Temporal Evolution Recognition.
//
// Consumes the per-sample set of satisfied Spatial Views for one
// requirement and decides, at every sample, whether the observed prefix
// is satisfying, violating or inconclusive. Conclusive verdicts latch.
//
// Semantics: the set reported at sample time t_k is taken to hold on
// [t_k, t_{k+1}) (piecewise-constant, right-continuous). The monitor
// tracks a frontier of candidate segmentations: at most one entry per
// chart index j, holding the earliest time at which view j's interval
// can begin. Per step an entry survives while its view stays satisfied
// and spawns the next index when the successor view is satisfied, so the
// state never exceeds n entries — one clock value per index.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tscmon/spec.hpp"

namespace tscmon {

enum class Verdict : std::uint8_t { Satisfying, Violating, Inconclusive };

const char* verdict_name(Verdict v);

inline bool is_conclusive(Verdict v) { return v != Verdict::Inconclusive; }

struct FrontierEntry {
    int index = 0;           // chart index j in 1..n
    double entry_time = 0.0; // seconds since activation (the witness t_{j-1})
};

struct TerState {
    const TscSpec* spec = nullptr;
    double activation_time = 0.0;
    double elapsed = 0.0;               // d, relative to activation
    std::vector<FrontierEntry> frontier; // ascending index, at most one entry per index
    std::optional<Verdict> latched;
    Verdict current = Verdict::Inconclusive;

    const FrontierEntry* entry_for(int index) const;
};

// `sat` is indexed by chart index (1-based; slot 0 unused) and must have
// size spec.view_count() + 1. The overloads taking view-ID lists are
// conveniences for tests and offline use.
TerState ter_init(const TscSpec& spec, double activation_time, std::span<const std::uint8_t> sat);
TerState ter_init(const TscSpec& spec, double activation_time, const std::vector<std::string>& sat_ids);

// Advances the monitor to the sample at absolute time t. Latched states
// are returned unchanged. Throws std::invalid_argument when t does not
// strictly increase.
TerState& ter_step(TerState& state, double t, std::span<const std::uint8_t> sat);
TerState& ter_step(TerState& state, double t, const std::vector<std::string>& sat_ids);

// Verdict of the current state:
//   Satisfying   iff the frontier holds (n, e) with e < B,
//   else Violating iff the frontier is empty or the bound is exhausted
//                    (elapsed >= B for "<", elapsed > B for "<="),
//   else Inconclusive.                       (B = +inf without hourglass)
Verdict ter_verdict(const TerState& state);

// End-of-trace verdict: the latched one, otherwise Inconclusive.
Verdict ter_finalize(const TerState& state);

std::vector<std::uint8_t> sat_mask_from_ids(const TscSpec& spec, const std::vector<std::string>& sat_ids);

} // namespace tscmon
