// testkit.hpp — independent brute-force oracle for prefix classification,
// plus deterministic generators: random satisfaction streams, random valid
// specs, and kinematic pass-by scenario traces.
//
// The oracle explores every index segmentation of the sampled prefix
// (levelwise, merging duplicate states so exploration terminates on the
// tractability bound) and is deliberately separate from the online
// frontier construction it is used to check.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tscmon/spec.hpp"
#include "tscmon/ter.hpp"
#include "tscmon/world.hpp"

namespace tscmon {

// One SVR output: timestamp plus the set of satisfied view IDs.
using SatSample = std::pair<double, std::vector<std::string>>;

struct PrefixClassification {
    Verdict verdict = Verdict::Inconclusive;
    // Largest j with a live witness (n when satisfying, 0 when none).
    int fits_up_to = 0;
    // Witness boundaries a_1..a_{j-1} as sample indices: view i holds on
    // samples [a_{i-1}, a_i) with a_0 = 0, and view j from a_{j-1} on.
    std::vector<int> boundaries;
    // Entry time of view fits_up_to, relative to activation.
    std::optional<double> entry_time;
};

// Classifies the prefix by exhaustive segmentation search under the same
// piecewise-constant semantics as the online monitor. The first stream
// entry is the activation sample. Throws std::invalid_argument when the
// stream is empty, timestamps fail to increase, or the tractability
// bounds (n <= 6, length <= 200) are exceeded.
PrefixClassification oracle_classify(const TscSpec& spec, std::span<const SatSample> stream);

// Classification of every prefix stream[0..k], k = 0..len-1.
std::vector<PrefixClassification> oracle_classify_prefixes(const TscSpec& spec,
                                                           std::span<const SatSample> stream);

// For every index j with a live witness at the last sample, the earliest
// possible entry time of view j (relative to activation). This is the
// ground truth the online frontier must agree with.
std::map<int, double> oracle_live_entries(const TscSpec& spec, std::span<const SatSample> stream);

// Reproducible random satisfaction stream at 1 Hz: every view present
// independently with probability `density` per sample; view 1 is forced
// present at the first sample with probability 1/2 so both activation
// branches get exercised.
std::vector<SatSample> gen_random_sat_stream(int n_views, int length, double density,
                                             std::uint64_t seed);

// Minimal valid spec with views V1..Vn, used to pair with generated
// satisfaction streams.
TscSpec make_stream_spec(int n_views, std::optional<HourglassBound> hourglass);

// Random valid spec (validates cleanly against the standard catalog);
// drives the parse/print round-trip properties.
TscSpec gen_random_spec(std::uint64_t seed);

struct ScenarioParams {
    std::string scenario; // pass-by-nominal | pass-by-unsafe-gap | pass-by-timeout | pass-by-no-return
    std::uint64_t seed = 0;
    double dt = 0.1;                   // seconds, > 0
    double initial_gap = 40.0;         // meters
    double car_speed = 10.0;           // m/s
    double lane_change_duration = 4.0; // seconds
    double pass_duration = 6.0;        // cruise time in the left lane, seconds

    // Scenario-specific defaults for the shape parameters above.
    static ScenarioParams defaults_for(const std::string& scenario, std::uint64_t seed, double dt);
};

extern const std::vector<std::string> kScenarioNames;

RoadGeometry scenario_road(const ScenarioParams& params);

// Deterministic kinematic trace: a car approaching a stationary obstacle
// in the right lane of a two-lane road, with the maneuver shape picked by
// params.scenario. Throws std::invalid_argument on bad parameters.
std::vector<WorldSample> gen_trace(const ScenarioParams& params, const RoadGeometry& road);

} // namespace tscmon
