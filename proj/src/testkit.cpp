#include "tscmon/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace tscmon {

namespace {

constexpr int kMaxOracleViews = 6;
constexpr int kMaxOracleLength = 200;
constexpr double kPi = 3.14159265358979323846;

// hold[i][k]: view i (1-based) satisfied at sample k.
struct StreamTable {
    int n = 0;
    int m = 0; // last sample index
    std::vector<double> times;
    std::vector<std::vector<std::uint8_t>> hold;
};

StreamTable build_table(const TscSpec& spec, std::span<const SatSample> stream) {
    if (stream.empty()) throw std::invalid_argument("empty satisfaction stream");
    if (spec.view_count() > kMaxOracleViews)
        throw std::invalid_argument("oracle tractability bound exceeded: too many views");
    if (stream.size() > kMaxOracleLength)
        throw std::invalid_argument("oracle tractability bound exceeded: stream too long");

    StreamTable table;
    table.n = spec.view_count();
    table.m = static_cast<int>(stream.size()) - 1;
    table.times.reserve(stream.size());
    table.hold.assign(static_cast<std::size_t>(table.n) + 1, {});
    for (auto& row : table.hold) row.assign(stream.size(), 0);

    for (std::size_t k = 0; k < stream.size(); ++k) {
        if (k > 0 && !(stream[k].first > stream[k - 1].first))
            throw std::invalid_argument("satisfaction stream timestamps must strictly increase");
        table.times.push_back(stream[k].first);
        for (const auto& id : stream[k].second)
            for (int i = 1; i <= table.n; ++i)
                if (spec.view_at(i).id == id) table.hold[static_cast<std::size_t>(i)][k] = 1;
    }
    return table;
}

// run_end[k]: first index >= k at which the view stops holding (m+1 if it
// holds through the end of the prefix).
std::vector<int> run_ends(const std::vector<std::uint8_t>& hold, int m) {
    std::vector<int> run(static_cast<std::size_t>(m) + 2, 0);
    run[static_cast<std::size_t>(m) + 1] = m + 1;
    for (int k = m; k >= 0; --k)
        run[static_cast<std::size_t>(k)] = hold[static_cast<std::size_t>(k)] ? run[static_cast<std::size_t>(k) + 1] : k;
    return run;
}

// Exhaustive exploration of all index segmentations, levelwise, with
// duplicate states merged: reach[i][s] marks that views 1..i-1 can tile
// samples [0, s) contiguously. parent[i][s] records the first witness.
struct Reach {
    std::vector<std::vector<std::uint8_t>> reach;
    std::vector<std::vector<int>> parent;
    std::vector<std::vector<int>> run; // run ends per view
};

Reach explore(const StreamTable& t) {
    Reach r;
    r.reach.assign(static_cast<std::size_t>(t.n) + 2, std::vector<std::uint8_t>(static_cast<std::size_t>(t.m) + 1, 0));
    r.parent.assign(static_cast<std::size_t>(t.n) + 2, std::vector<int>(static_cast<std::size_t>(t.m) + 1, -1));
    r.run.assign(static_cast<std::size_t>(t.n) + 1, {});
    for (int i = 1; i <= t.n; ++i) r.run[static_cast<std::size_t>(i)] = run_ends(t.hold[static_cast<std::size_t>(i)], t.m);

    r.reach[1][0] = 1;
    for (int i = 1; i < t.n; ++i) {
        for (int s = 0; s <= t.m; ++s) {
            if (!r.reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]) continue;
            int limit = std::min(r.run[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)], t.m);
            for (int e = s + 1; e <= limit; ++e) {
                if (!r.reach[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(e)]) {
                    r.reach[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(e)] = 1;
                    r.parent[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(e)] = s;
                }
            }
        }
    }
    return r;
}

std::vector<int> witness_boundaries(const Reach& r, int j, int s) {
    std::vector<int> bounds;
    int idx = j, cur = s;
    while (idx > 1) {
        bounds.push_back(cur);
        cur = r.parent[static_cast<std::size_t>(idx)][static_cast<std::size_t>(cur)];
        --idx;
    }
    std::reverse(bounds.begin(), bounds.end());
    return bounds;
}

struct BoundRule {
    double bound = std::numeric_limits<double>::infinity();
    bool strict = true;
};

BoundRule bound_rule(const TscSpec& spec) {
    BoundRule rule;
    if (spec.header.hourglass) {
        rule.bound = spec.header.hourglass->bound;
        rule.strict = spec.header.hourglass->comparator == BoundCmp::LessThan;
    }
    return rule;
}

} // namespace

PrefixClassification oracle_classify(const TscSpec& spec, std::span<const SatSample> stream) {
    StreamTable table = build_table(spec, stream);
    Reach r = explore(table);
    BoundRule rule = bound_rule(spec);
    const double t0 = table.times[0];
    const double elapsed = table.times[static_cast<std::size_t>(table.m)] - t0;

    PrefixClassification out;

    // Satisfying: some full segmentation enters view n before the bound.
    for (int s = 0; s <= table.m; ++s) {
        if (!r.reach[static_cast<std::size_t>(table.n)][static_cast<std::size_t>(s)]) continue;
        if (!table.hold[static_cast<std::size_t>(table.n)][static_cast<std::size_t>(s)]) continue;
        double entry = table.times[static_cast<std::size_t>(s)] - t0;
        if (entry < rule.bound) {
            out.verdict = Verdict::Satisfying;
            out.fits_up_to = table.n;
            out.boundaries = witness_boundaries(r, table.n, s);
            out.entry_time = entry;
            return out;
        }
    }

    // Live witnesses: view j in progress at the last sample. Any live
    // index keeps the prefix inconclusive while the bound allows it; this
    // mirrors the monitor's frontier rule exactly (a live index n whose
    // entry reached the bound can no longer complete, but is only ruled
    // out once the bound itself is exhausted).
    int best_j = 0, best_s = -1;
    for (int j = table.n; j >= 1 && best_j == 0; --j) {
        for (int s = 0; s <= table.m; ++s) {
            if (r.reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] &&
                r.run[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] == table.m + 1) {
                best_j = j;
                best_s = s;
                break;
            }
        }
    }

    bool bound_exhausted = rule.strict ? elapsed >= rule.bound : elapsed > rule.bound;
    if (best_j > 0) {
        out.fits_up_to = best_j;
        out.boundaries = witness_boundaries(r, best_j, best_s);
        out.entry_time = table.times[static_cast<std::size_t>(best_s)] - t0;
    }
    out.verdict = (best_j > 0 && !bound_exhausted) ? Verdict::Inconclusive : Verdict::Violating;
    return out;
}

std::vector<PrefixClassification> oracle_classify_prefixes(const TscSpec& spec,
                                                           std::span<const SatSample> stream) {
    std::vector<PrefixClassification> out;
    out.reserve(stream.size());
    for (std::size_t k = 1; k <= stream.size(); ++k)
        out.push_back(oracle_classify(spec, stream.subspan(0, k)));
    return out;
}

std::map<int, double> oracle_live_entries(const TscSpec& spec, std::span<const SatSample> stream) {
    StreamTable table = build_table(spec, stream);
    Reach r = explore(table);
    const double t0 = table.times[0];
    std::map<int, double> out;
    for (int j = 1; j <= table.n; ++j) {
        for (int s = 0; s <= table.m; ++s) {
            if (r.reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] &&
                r.run[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] == table.m + 1) {
                out[j] = table.times[static_cast<std::size_t>(s)] - t0;
                break; // smallest s first
            }
        }
    }
    return out;
}

std::vector<SatSample> gen_random_sat_stream(int n_views, int length, double density,
                                             std::uint64_t seed) {
    if (length > kMaxOracleLength) throw std::invalid_argument("stream length exceeds oracle bound");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool force_first = unit(rng) < 0.5;

    std::vector<SatSample> stream;
    stream.reserve(static_cast<std::size_t>(std::max(length, 0)));
    for (int k = 0; k < length; ++k) {
        SatSample sample;
        sample.first = static_cast<double>(k);
        for (int i = 1; i <= n_views; ++i)
            if (unit(rng) < density) sample.second.push_back("V" + std::to_string(i));
        if (k == 0 && force_first && n_views >= 1 &&
            std::find(sample.second.begin(), sample.second.end(), "V1") == sample.second.end())
            sample.second.insert(sample.second.begin(), "V1");
        stream.push_back(std::move(sample));
    }
    return stream;
}

TscSpec make_stream_spec(int n_views, std::optional<HourglassBound> hourglass) {
    TscSpec spec;
    spec.name = "stream";
    spec.header.hourglass = hourglass;
    for (int i = 1; i <= n_views; ++i) {
        SpatialView view;
        view.id = "V" + std::to_string(i);
        view.index = i;
        Constraint c;
        c.lhs = Expr::attr("car", "v");
        c.op = RelOp::Ge;
        c.rhs = Expr::num(0.0);
        view.constraints.push_back(std::move(c));
        spec.views.push_back(std::move(view));
    }
    return spec;
}

namespace {

const std::vector<std::string> kRoles = {"car", "obstacle", "truck", "ego"};
const std::vector<std::string> kAttrs = {"x", "y", "yaw", "v", "length", "width"};

Expr gen_expr(std::mt19937_64& rng, int depth) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto pick_role = [&] { return kRoles[rng() % kRoles.size()]; };
    double r = depth <= 0 ? unit(rng) * 0.55 : unit(rng);
    if (r < 0.30) {
        static const double pool[] = {0.0, 1.0, 2.0, 0.5, 45.0, 0.05, 3.14159, 1e-7, 2.5e6, 123.456};
        double v = (rng() % 3 == 0) ? pool[rng() % (sizeof pool / sizeof *pool)]
                                    : std::floor(unit(rng) * 1000.0) / 8.0;
        return Expr::num(v);
    }
    if (r < 0.55) return Expr::attr(pick_role(), kAttrs[rng() % kAttrs.size()]);
    if (r < 0.70) {
        switch (rng() % 4) {
        case 0: return Expr::call("lon_gap", {Expr::role_ref(pick_role()), Expr::role_ref(pick_role())});
        case 1: return Expr::call("lane_index", {Expr::role_ref(pick_role())});
        case 2: return Expr::call("lat_pos", {Expr::role_ref(pick_role())});
        default: return Expr::call("abs", {gen_expr(rng, depth - 1)});
        }
    }
    if (r < 0.80) return Expr::neg(gen_expr(rng, depth - 1));
    static const ExprKind ops[] = {ExprKind::Add, ExprKind::Sub, ExprKind::Mul, ExprKind::Div};
    return Expr::binary(ops[rng() % 4], gen_expr(rng, depth - 1), gen_expr(rng, depth - 1));
}

} // namespace

TscSpec gen_random_spec(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    TscSpec spec;
    spec.name = "gen_" + std::to_string(rng() % 100000);
    switch (rng() % 3) {
    case 0: break; // no hourglass
    case 1: spec.header.hourglass = HourglassBound{BoundCmp::LessThan, 0.5 + std::floor(unit(rng) * 800.0) / 8.0}; break;
    default: spec.header.hourglass = HourglassBound{BoundCmp::LessOrEqual, 0.5 + std::floor(unit(rng) * 800.0) / 8.0}; break;
    }
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 1; i <= n; ++i) {
        SpatialView view;
        view.id = "v" + std::to_string(i) + "_" + std::to_string(rng() % 100);
        view.index = i;
        int n_constraints = 1 + static_cast<int>(rng() % 3);
        for (int c = 0; c < n_constraints; ++c) {
            Constraint constraint;
            constraint.lhs = gen_expr(rng, 3);
            static const RelOp relops[] = {RelOp::Lt, RelOp::Le, RelOp::Gt, RelOp::Ge, RelOp::Eq, RelOp::Ne};
            constraint.op = relops[rng() % 6];
            constraint.rhs = gen_expr(rng, 3);
            view.constraints.push_back(std::move(constraint));
        }
        spec.views.push_back(std::move(view));
    }
    return spec;
}

const std::vector<std::string> kScenarioNames = {
    "pass-by-nominal",
    "pass-by-unsafe-gap",
    "pass-by-timeout",
    "pass-by-no-return",
};

ScenarioParams ScenarioParams::defaults_for(const std::string& scenario, std::uint64_t seed, double dt) {
    if (std::find(kScenarioNames.begin(), kScenarioNames.end(), scenario) == kScenarioNames.end())
        throw std::invalid_argument("unknown scenario '" + scenario + "'");
    ScenarioParams p;
    p.scenario = scenario;
    p.seed = seed;
    p.dt = dt;
    if (scenario == "pass-by-unsafe-gap") p.initial_gap = 2.0 * p.car_speed;
    if (scenario == "pass-by-timeout") p.pass_duration = 50.0;
    if (scenario == "pass-by-no-return") p.pass_duration = 30.0;
    return p;
}

namespace {

struct ScenarioShape {
    bool returns = true;   // whether the car changes back to the right lane
    double lead = 0.0;     // maneuver time already elapsed at the first sample
    double lc1_end = 0.0;  // emission-time phase boundaries
    double cruise_end = 0.0;
    double lc2_end = 0.0;
    double duration = 0.0;
};

ScenarioShape shape_of(const ScenarioParams& p) {
    ScenarioShape s;
    s.returns = p.scenario != "pass-by-no-return";
    // emission starts a quarter into the first lane change so the car is
    // already visibly steering left at the activation sample
    s.lead = 0.25 * p.lane_change_duration;
    s.lc1_end = p.lane_change_duration - s.lead;
    s.cruise_end = s.lc1_end + p.pass_duration;
    s.lc2_end = s.returns ? s.cruise_end + p.lane_change_duration : s.cruise_end;
    double tail = s.returns ? 3.0 : 7.0;
    s.duration = s.lc2_end + tail;
    return s;
}

void check_params(const ScenarioParams& p) {
    if (std::find(kScenarioNames.begin(), kScenarioNames.end(), p.scenario) == kScenarioNames.end())
        throw std::invalid_argument("unknown scenario '" + p.scenario + "'");
    if (!(p.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(p.car_speed > 0.0)) throw std::invalid_argument("car speed must be positive");
    if (!(p.initial_gap > 0.0)) throw std::invalid_argument("initial gap must be positive");
    if (!(p.lane_change_duration > 0.0)) throw std::invalid_argument("lane-change duration must be positive");
    if (p.pass_duration < 0.0) throw std::invalid_argument("pass duration must be non-negative");
}

} // namespace

RoadGeometry scenario_road(const ScenarioParams& p) {
    check_params(p);
    ScenarioShape s = shape_of(p);
    RoadGeometry road;
    road.lane_count = 2;
    road.lane_width = 3.5;
    road.length = std::ceil((p.car_speed * s.duration + p.initial_gap + 400.0) / 100.0) * 100.0;
    return road;
}

std::vector<WorldSample> gen_trace(const ScenarioParams& p, const RoadGeometry& road) {
    check_params(p);
    const double lane_w = road.lane_width;
    const double y_right = 0.5 * lane_w;
    const double y_left = 1.5 * lane_w;
    const double dy = y_left - y_right;
    const double t_lc = p.lane_change_duration;
    const double v = p.car_speed;
    // peak lateral speed of the sinusoidal profile must stay below the speed
    if (2.0 * dy / t_lc >= v)
        throw std::invalid_argument("lane change too aggressive for the car speed");

    const ScenarioShape shape = shape_of(p);
    const double car_len = 4.5, car_wid = 2.0;
    const double obs_len = 1.0, obs_wid = 1.0;
    // dyadic scene offset: pure translation, so the seed never affects labels
    const double x0 = static_cast<double>(p.seed % 4096) * 0.25;
    const double obs_x = x0 + car_len / 2.0 + p.initial_gap + obs_len / 2.0;

    auto s_curve = [&](double w, double from, double direction) {
        double frac = w / t_lc;
        double offset = dy * (frac - std::sin(2.0 * kPi * frac) / (2.0 * kPi));
        double rate = (dy / t_lc) * (1.0 - std::cos(2.0 * kPi * frac));
        return std::pair<double, double>{from + direction * offset, direction * rate};
    };

    auto lateral = [&](double t) -> std::pair<double, double> {
        if (t < shape.lc1_end) return s_curve(t + shape.lead, y_right, 1.0);
        if (t < shape.cruise_end) return {y_left, 0.0};
        if (shape.returns && t < shape.lc2_end) return s_curve(t - shape.cruise_end, y_left, -1.0);
        return {shape.returns ? y_right : y_left, 0.0};
    };

    const int count = static_cast<int>(std::floor(shape.duration / p.dt + 1e-9)) + 1;
    std::vector<WorldSample> trace;
    trace.reserve(static_cast<std::size_t>(count));

    double x = x0;
    for (int k = 0; k < count; ++k) {
        double t = static_cast<double>(k) * p.dt;
        auto [y, yp] = lateral(t);
        double ratio = std::clamp(yp / v, -1.0, 1.0);

        WorldSample sample;
        sample.t = t;
        sample.objects.push_back({"car", x, y, std::asin(ratio), v, car_len, car_wid});
        sample.objects.push_back({"obstacle", obs_x, y_right, 0.0, 0.0, obs_len, obs_wid});
        trace.push_back(std::move(sample));

        x += p.dt * std::sqrt(std::max(v * v - yp * yp, 0.0));
    }
    return trace;
}

} // namespace tscmon
