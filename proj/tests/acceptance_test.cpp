// Acceptance suite: each criterion prints exactly one PASS/FAIL line.
// The binary exits non-zero if any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tscmon/monitor.hpp"
#include "tscmon/parser.hpp"
#include "tscmon/printer.hpp"
#include "tscmon/svr.hpp"
#include "tscmon/ter.hpp"
#include "tscmon/testkit.hpp"
#include "tscmon/trace_io.hpp"
#include "tscmon/validate.hpp"

namespace fs = std::filesystem;
using namespace tscmon;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::cout << "[" << index << "] " << name << ": " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("tscmon-accept-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

TscSpec load_fixture(const std::string& name) {
    std::ifstream in(std::string(TSCMON_FIXTURE_DIR) + "/" + name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::get<TscSpec>(parse_tsc(ss.str()));
}

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    fs::path out_file = work_dir() / "cli_stdout.txt";
    std::string cmd = std::string("\"") + TSCMON_CLI_PATH + "\" " + args + " > \"" +
                      out_file.string() + "\" 2> /dev/null";
    int status = std::system(cmd.c_str());
    CmdResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    result.out = ss.str();
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

std::vector<SatSample> svr_stream(const TscSpec& spec, const RoadGeometry& road,
                                  const std::vector<WorldSample>& trace) {
    std::vector<TscSpec> specs{spec};
    ViewCatalog catalog = ViewCatalog::build(specs);
    std::vector<SatSample> stream;
    for (const auto& sample : trace) {
        auto result = evaluate_views(sample, road, catalog);
        const ViewSatSet& sat = std::get<ViewSatSet>(result);
        SatSample entry{sample.t, {}};
        for (auto ord : sat.ordinals) entry.second.push_back(catalog.entries()[ord].view->id);
        stream.push_back(std::move(entry));
    }
    return stream;
}

std::optional<HourglassBound> hourglass_variant(int i) {
    switch (i % 4) {
    case 0: return std::nullopt;
    case 1: return HourglassBound{BoundCmp::LessThan, 45.0};
    case 2: return HourglassBound{BoundCmp::LessOrEqual, 45.0};
    default: return HourglassBound{BoundCmp::LessThan, 30.0};
    }
}

// Shared between criteria 1 and 6.
struct EquivalenceStats {
    long streams = 0;
    long prefixes = 0;
    long mismatches = 0;
    long conclusion_mismatches = 0;
    double elapsed = 0.0;
};

EquivalenceStats run_equivalence() {
    EquivalenceStats stats;
    auto start = Clock::now();
    const double densities[] = {0.2, 0.5, 0.9};
    std::uint64_t seed = 0;
    for (int n = 1; n <= 5; ++n) {
        for (double density : densities) {
            for (int rep = 0; rep < 70; ++rep) {
                ++seed;
                int length = 20 + int((seed * 7) % 41); // 20..60
                TscSpec spec = make_stream_spec(n, hourglass_variant(int(seed)));
                auto stream = gen_random_sat_stream(n, length, density, seed);

                TerState st = ter_init(spec, stream[0].first, stream[0].second);
                std::vector<Verdict> online;
                online.push_back(st.current);
                for (std::size_t k = 1; k < stream.size(); ++k) {
                    ter_step(st, stream[k].first, stream[k].second);
                    online.push_back(st.current);
                }

                auto offline = oracle_classify_prefixes(spec, stream);
                long first_online = -1, first_offline = -1;
                for (std::size_t k = 0; k < stream.size(); ++k) {
                    ++stats.prefixes;
                    if (online[k] != offline[k].verdict) ++stats.mismatches;
                    if (first_online < 0 && is_conclusive(online[k])) first_online = long(k);
                    if (first_offline < 0 && is_conclusive(offline[k].verdict)) first_offline = long(k);
                }
                if (first_online != first_offline) ++stats.conclusion_mismatches;
                ++stats.streams;
            }
        }
    }
    stats.elapsed = seconds_since(start);
    return stats;
}

void criterion_1_and_6_part1(EquivalenceStats& stats) {
    stats = run_equivalence();
    std::ostringstream detail;
    detail << stats.streams << " streams, " << stats.prefixes << " prefixes, " << stats.mismatches
           << " mismatches, " << stats.elapsed << "s";
    report(1, "monitor/oracle verdict equivalence at every prefix", stats.mismatches == 0 && stats.streams >= 1000 && stats.elapsed < 30.0, detail.str());
}

struct ScenarioOutcome {
    bool ok = true;
    std::string detail;
    // for criterion 6
    bool conclusion_matches = true;
};

ScenarioOutcome run_scenario_case(const TscSpec& pass_by, const std::string& scenario, double dt,
                                  Verdict expected, int expected_exit) {
    ScenarioOutcome out;
    ScenarioParams params = ScenarioParams::defaults_for(scenario, 42, dt);
    RoadGeometry road = scenario_road(params);
    auto trace = gen_trace(params, road);

    // 1. oracle confirms the advertised label
    auto stream = svr_stream(pass_by, road, trace);
    auto verdicts = oracle_classify_prefixes(pass_by, stream);
    if (verdicts.back().verdict != expected) {
        out.ok = false;
        out.detail += scenario + ": oracle says " + verdict_name(verdicts.back().verdict) + "; ";
        return out;
    }
    long first_conclusive = -1;
    for (std::size_t k = 0; k < verdicts.size(); ++k)
        if (is_conclusive(verdicts[k].verdict)) {
            first_conclusive = long(k);
            break;
        }

    // 2. the CLI agrees
    fs::path trace_path = work_dir() / (scenario + ".jsonl");
    {
        std::ofstream f(trace_path, std::ios::binary);
        write_trace(f, road, trace);
    }
    CmdResult res = run_cli("check --spec \"" + std::string(TSCMON_FIXTURE_DIR) +
                            "/pass_by.tsc\" --trace \"" + trace_path.string() + "\"");
    if (res.exit_code != expected_exit) {
        out.ok = false;
        out.detail += scenario + ": exit " + std::to_string(res.exit_code) + " != " +
                      std::to_string(expected_exit) + "; ";
    }

    // concluded event timestamp
    double concluded_t = -1.0;
    for (const auto& line : lines_of(res.out)) {
        auto fields = split_csv(line);
        if (fields.size() == 4 && fields[0] == "pass_by" && fields[2] == "Concluded")
            concluded_t = std::strtod(fields[1].c_str(), nullptr);
    }
    double expected_t = first_conclusive >= 0 ? trace[std::size_t(first_conclusive)].t : trace.back().t;
    if (concluded_t != expected_t) {
        out.ok = false;
        out.conclusion_matches = false;
        out.detail += scenario + ": concluded at " + std::to_string(concluded_t) + " expected " +
                      std::to_string(expected_t) + "; ";
    }

    if (scenario == "pass-by-timeout") {
        // violating exactly at the first sample with elapsed >= 45
        double first_at_bound = -1.0;
        for (const auto& s : trace)
            if (s.t - trace[0].t >= 45.0) {
                first_at_bound = s.t;
                break;
            }
        if (concluded_t != first_at_bound || first_conclusive < 0 ||
            verdicts[std::size_t(first_conclusive)].verdict != Verdict::Violating) {
            out.ok = false;
            out.detail += "timeout not concluded exactly at elapsed >= 45; ";
        }
    }
    if (scenario == "pass-by-no-return") {
        if (trace.back().t - trace.front().t >= 45.0) {
            out.ok = false;
            out.detail += "no-return trace does not end before the bound; ";
        }
    }
    return out;
}

void criterion_2_and_6_part2(bool& conclusion_ok) {
    TscSpec pass_by = load_fixture("pass_by.tsc");
    struct Case {
        const char* scenario;
        double dt;
        Verdict expected;
        int exit_code;
    };
    const Case cases[] = {
        {"pass-by-nominal", 0.1, Verdict::Satisfying, 0},
        {"pass-by-unsafe-gap", 0.1, Verdict::Violating, 1},
        {"pass-by-timeout", 0.5, Verdict::Violating, 1},
        {"pass-by-no-return", 0.25, Verdict::Inconclusive, 2},
    };
    bool ok = true;
    std::string detail;
    conclusion_ok = true;
    for (const auto& c : cases) {
        ScenarioOutcome so = run_scenario_case(pass_by, c.scenario, c.dt, c.expected, c.exit_code);
        ok = ok && so.ok;
        conclusion_ok = conclusion_ok && so.conclusion_matches;
        detail += so.detail;
    }
    if (detail.empty())
        detail = "nominal=Satisfying unsafe-gap=Violating timeout=Violating@45 no-return=Inconclusive";
    report(2, "pass-by scenario suite, oracle-confirmed then CLI-checked", ok, detail);
}

void criterion_3() {
    ScenarioParams params = ScenarioParams::defaults_for("pass-by-nominal", 42, 0.1);
    RoadGeometry road = scenario_road(params);
    auto trace = gen_trace(params, road);
    fs::path trace_path = work_dir() / "plot_nominal.jsonl";
    {
        std::ofstream f(trace_path, std::ios::binary);
        write_trace(f, road, trace);
    }
    fs::path csv_path = work_dir() / "plot.csv";
    CmdResult res = run_cli("export-plot --spec \"" + std::string(TSCMON_FIXTURE_DIR) +
                            "/pass_by.tsc\" --trace \"" + trace_path.string() + "\" --out \"" +
                            csv_path.string() + "\"");
    bool ok = res.exit_code == 0;
    std::string detail;

    std::ifstream csv(csv_path, std::ios::binary);
    std::ostringstream ss;
    ss << csv.rdbuf();
    auto lines = lines_of(ss.str());
    if (lines.empty() || split_csv(lines[0]).size() != 9) {
        ok = false;
        detail = "bad csv header";
    } else {
        // per view: exactly one contiguous block of 1s
        int starts[4] = {-1, -1, -1, -1};
        int ends[4] = {-1, -1, -1, -1};
        for (int v = 0; v < 4 && ok; ++v) {
            int col = 5 + v;
            int blocks = 0;
            bool inside = false;
            for (std::size_t row = 1; row < lines.size(); ++row) {
                auto fields = split_csv(lines[row]);
                bool one = fields[std::size_t(col)] == "1";
                if (one && !inside) {
                    ++blocks;
                    inside = true;
                    starts[v] = int(row);
                } else if (!one && inside) {
                    inside = false;
                    ends[v] = int(row);
                }
            }
            if (blocks != 1) {
                ok = false;
                detail = "view " + std::to_string(v + 1) + " has " + std::to_string(blocks) + " blocks";
            }
        }
        if (ok) {
            if (!(starts[0] == 1)) {
                ok = false;
                detail = "V1 block does not start at the activation sample";
            }
            for (int v = 0; v + 1 < 4 && ok; ++v)
                if (!(starts[v] < starts[v + 1])) {
                    ok = false;
                    detail = "block starts out of order";
                }
            if (ok)
                detail = "blocks start at rows " + std::to_string(starts[0]) + "," +
                         std::to_string(starts[1]) + "," + std::to_string(starts[2]) + "," +
                         std::to_string(starts[3]);
        }
    }
    report(3, "plot export reproduces ordered contiguous view windows", ok, detail);
}

void criterion_4() {
    long sequences = 0, violations = 0;
    std::uint64_t seed = 9000;
    for (int round = 0; round < 10000; ++round) {
        ++seed;
        int n = 1 + int(seed % 5);
        double density = (round % 3 == 0) ? 0.2 : (round % 3 == 1 ? 0.5 : 0.9);
        TscSpec spec = make_stream_spec(n, hourglass_variant(round));
        auto stream = gen_random_sat_stream(n, 30, density, seed);

        TerState st = ter_init(spec, stream[0].first, stream[0].second);
        std::optional<Verdict> latched;
        if (is_conclusive(st.current)) latched = st.current;
        for (std::size_t k = 1; k < stream.size(); ++k) {
            ter_step(st, stream[k].first, stream[k].second);
            if (latched && st.current != *latched) ++violations;
            if (!latched && is_conclusive(st.current)) latched = st.current;
        }
        ++sequences;
    }
    report(4, "conclusive verdicts latch over random step sequences", violations == 0,
           std::to_string(sequences) + " sequences, " + std::to_string(violations) + " latch breaks");
}

void criterion_5() {
    long checked = 0, failures = 0;
    for (const char* fixture : {"pass_by.tsc", "lane_keep.tsc"}) {
        TscSpec spec = load_fixture(fixture);
        auto reparsed = parse_tsc(print_tsc(spec));
        ++checked;
        if (!std::holds_alternative<TscSpec>(reparsed) || !(std::get<TscSpec>(reparsed) == spec))
            ++failures;
    }
    for (std::uint64_t seed = 0; seed < 600; ++seed) {
        TscSpec spec = gen_random_spec(seed);
        if (!validate(spec, AttributeCatalog::standard()).empty()) {
            ++failures;
            continue;
        }
        auto reparsed = parse_tsc(print_tsc(spec));
        ++checked;
        if (!std::holds_alternative<TscSpec>(reparsed) || !(std::get<TscSpec>(reparsed) == spec))
            ++failures;
    }
    report(5, "parse/print round-trip on fixtures and random specs", failures == 0,
           std::to_string(checked) + " specs, " + std::to_string(failures) + " failures");
}

void criterion_6(const EquivalenceStats& stats, bool scenario_conclusions_ok) {
    bool ok = stats.conclusion_mismatches == 0 && scenario_conclusions_ok;
    report(6, "online conclusion happens at the oracle's earliest conclusive prefix", ok,
           std::to_string(stats.streams) + " streams + 4 scenario traces, " +
               std::to_string(stats.conclusion_mismatches) + " mismatches");
}

void criterion_7() {
    // ~100k samples: pass-by-no-return lasts 40 s
    ScenarioParams params = ScenarioParams::defaults_for("pass-by-no-return", 1, 0.0004);
    RoadGeometry road = scenario_road(params);
    auto trace = gen_trace(params, road);
    fs::path trace_path = work_dir() / "throughput.jsonl";
    {
        std::ofstream f(trace_path, std::ios::binary);
        write_trace(f, road, trace);
    }

    // four concurrent specs, ~10 constraints each, none of which concludes
    std::string spec_args;
    for (int i = 0; i < 4; ++i) {
        std::string name = "load_" + std::to_string(i);
        std::string text =
            "tsc \"" + name + "\" {\n"
            "  activation: initial;\n"
            "  quantifier: exists;\n"
            "  sequence {\n"
            "    view approach {\n"
            "      lon_gap(car, obstacle) > 2.0 * car.v;\n"
            "      car.yaw > 0.05;\n"
            "      car.v >= 0.0;\n"
            "      car.length > 0.1;\n"
            "      abs(car.yaw) < 3.2;\n"
            "      lat_pos(car) >= 0.0;\n"
            "    }\n"
            "    view left_lane {\n"
            "      lane_index(car) == 1.0;\n"
            "      car.v <= 1000.0;\n"
            "      car.width > " + std::to_string(0.1 + 0.01 * i) + ";\n"
            "    }\n"
            "    view back_right { car.yaw < -0.05; }\n"
            "  }\n"
            "}\n";
        fs::path p = work_dir() / (name + ".tsc");
        std::ofstream f(p, std::ios::binary);
        f << text;
        spec_args += " --spec \"" + p.string() + "\"";
    }

    auto start = Clock::now();
    CmdResult res = run_cli("check" + spec_args + " --trace \"" + trace_path.string() + "\"");
    double elapsed = seconds_since(start);

    bool ok = res.exit_code == 2 && elapsed < 1.0;
    std::ostringstream detail;
    detail << trace.size() << " samples x 4 specs in " << elapsed << "s, exit " << res.exit_code
           << ", single pass";
    report(7, "100k-sample trace against 4 specs checked in < 1 s", ok, detail.str());
}

} // namespace

int main() {
    std::cout << "acceptance suite\n";
    EquivalenceStats stats;
    criterion_1_and_6_part1(stats);
    bool scenario_conclusions_ok = true;
    criterion_2_and_6_part2(scenario_conclusions_ok);
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6(stats, scenario_conclusions_ok);
    criterion_7();
    std::cout << (g_failures == 0 ? "ACCEPTANCE: all criteria passed\n"
                                  : "ACCEPTANCE: " + std::to_string(g_failures) + " criteria FAILED\n");
    return g_failures == 0 ? 0 : 1;
}
