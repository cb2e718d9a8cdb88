// tscmon — checks JSON-lines traffic traces against textual TSC
// requirements, generates scenario traces, classifies prefixes with the
// reference oracle and exports plot data.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "tscmon/catalog.hpp"
#include "tscmon/monitor.hpp"
#include "tscmon/parser.hpp"
#include "tscmon/printer.hpp"
#include "tscmon/svr.hpp"
#include "tscmon/testkit.hpp"
#include "tscmon/trace_io.hpp"
#include "tscmon/util.hpp"
#include "tscmon/validate.hpp"

namespace {

using namespace tscmon;

constexpr int kExitSatisfying = 0;
constexpr int kExitViolating = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;
constexpr int kExitRuntime = 4;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

// Parses and validates one spec file; prints diagnostics and returns
// nullopt on any error.
std::optional<TscSpec> load_spec(const std::string& path) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read spec file '" << path << "'\n";
        return std::nullopt;
    }
    auto result = parse_tsc(*text);
    if (auto* err = std::get_if<ParseError>(&result)) {
        std::cerr << path << ":" << err->loc.line << ":" << err->loc.column << ": error: "
                  << err->message << "\n";
        return std::nullopt;
    }
    TscSpec spec = std::move(std::get<TscSpec>(result));
    auto diags = validate(spec, AttributeCatalog::standard());
    if (has_errors(diags)) {
        for (const auto& d : diags)
            std::cerr << path << ": " << (d.severity == Severity::Error ? "error" : "warning")
                      << " at " << d.where << ": " << d.message << "\n";
        return std::nullopt;
    }
    return spec;
}

bool lenient_from_env() {
    const char* env = std::getenv("TSCMON_LENIENT");
    return env && std::string(env) == "1";
}

struct CheckOptions {
    std::vector<std::string> spec_paths;
    std::string trace_path;
    std::vector<std::string> activate_on;
    std::string emit_verdicts;
    bool stop_on_verdict = false;
    bool lenient = false;
};

int run_check(const CheckOptions& opt) {
    std::vector<TscSpec> specs;
    for (const auto& path : opt.spec_paths) {
        auto spec = load_spec(path);
        if (!spec) return kExitUsage;
        specs.push_back(std::move(*spec));
    }

    std::map<std::string, std::string> activation;
    for (const auto& entry : opt.activate_on) {
        auto dot = entry.find('.');
        if (dot == std::string::npos || dot == 0 || dot + 1 == entry.size()) {
            std::cerr << "error: --activate-on expects SPEC.VIEW, got '" << entry << "'\n";
            return kExitUsage;
        }
        activation[entry.substr(0, dot)] = entry.substr(dot + 1);
    }

    std::ifstream trace_file(opt.trace_path, std::ios::binary);
    if (!trace_file) {
        std::cerr << "error: cannot read trace file '" << opt.trace_path << "'\n";
        return kExitRuntime;
    }

    std::vector<VerdictEvent> all_events;
    std::optional<MonitorSession> session;
    double last_t = 0.0;
    bool lenient = opt.lenient || lenient_from_env();
    try {
        TraceReader reader(trace_file, !lenient);
        session.emplace(std::move(specs), reader.road(), activation);
        while (auto sample = reader.next()) {
            last_t = sample->t;
            for (auto& ev : session->feed(*sample)) {
                if (ev.kind != EventKind::Progress) {
                    std::cout << event_csv_row(ev) << "\n" << std::flush;
                    if (!ev.note.empty()) std::cerr << ev.spec << ": " << ev.note << "\n";
                }
                if (!opt.emit_verdicts.empty()) all_events.push_back(std::move(ev));
            }
            if (opt.stop_on_verdict && session->all_concluded()) break;
        }
    } catch (const IngestError& e) {
        std::cerr << "error: " << opt.trace_path << ": " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    for (auto& ev : session->end(last_t)) {
        std::cout << event_csv_row(ev) << "\n" << std::flush;
        if (!ev.note.empty()) std::cerr << ev.spec << ": " << ev.note << "\n";
        if (!opt.emit_verdicts.empty()) all_events.push_back(std::move(ev));
    }

    if (!opt.emit_verdicts.empty()) {
        std::ofstream csv(opt.emit_verdicts, std::ios::binary);
        if (!csv) {
            std::cerr << "error: cannot write '" << opt.emit_verdicts << "'\n";
            return kExitRuntime;
        }
        csv << "spec,t,kind,verdict\n";
        for (const auto& ev : all_events) csv << event_csv_row(ev) << "\n";
    }

    bool any_error = false, any_violating = false, any_inconclusive = false;
    for (const auto& st : session->status()) {
        switch (st.outcome) {
        case Outcome::MonitorError: any_error = true; break;
        case Outcome::Violating: any_violating = true; break;
        case Outcome::Inconclusive: any_inconclusive = true; break;
        case Outcome::Satisfying: break;
        }
    }
    if (any_error) return kExitRuntime;
    if (any_violating) return kExitViolating;
    if (any_inconclusive) return kExitInconclusive;
    return kExitSatisfying;
}

int run_gen(const std::string& scenario, std::uint64_t seed, double dt, const std::string& out_path) {
    try {
        ScenarioParams params = ScenarioParams::defaults_for(scenario, seed, dt);
        RoadGeometry road = scenario_road(params);
        std::vector<WorldSample> trace = gen_trace(params, road);
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitRuntime;
        }
        write_trace(out, road, trace);
        return kExitSatisfying;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run_export_plot(const std::string& spec_path, const std::string& trace_path,
                    const std::string& out_path, bool lenient) {
    auto spec = load_spec(spec_path);
    if (!spec) return kExitUsage;

    std::ifstream trace_file(trace_path, std::ios::binary);
    if (!trace_file) {
        std::cerr << "error: cannot read trace file '" << trace_path << "'\n";
        return kExitRuntime;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitRuntime;
    }

    std::vector<TscSpec> specs;
    specs.push_back(std::move(*spec));
    ViewCatalog catalog = ViewCatalog::build(specs);

    out << "t,gap,yaw,v,safe_dist";
    for (const auto& view : specs[0].views) out << "," << view.id;
    out << "\n";

    std::size_t rows = 0;
    try {
        TraceReader reader(trace_file, !lenient);
        while (auto sample = reader.next()) {
            const ObjectState* car = sample->find("car");
            const ObjectState* obstacle = sample->find("obstacle");
            if (!car || !obstacle) {
                std::cerr << "error: sample at t=" << format_double(sample->t)
                          << " lacks role '" << (car ? "obstacle" : "car") << "'\n";
                return kExitRuntime;
            }
            auto result = evaluate_views(*sample, reader.road(), catalog);
            if (auto* fault = std::get_if<SvrFault>(&result)) {
                std::cerr << "error: evaluation fault in " << fault->qualified_id << "\n";
                return kExitRuntime;
            }
            const ViewSatSet& sat = std::get<ViewSatSet>(result);
            out << format_double(sample->t) << "," << format_double(lon_gap(*car, *obstacle)) << ","
                << format_double(car->yaw) << "," << format_double(car->v) << ","
                << format_double(2.0 * car->v);
            for (std::uint32_t ord = 0; ord < catalog.size(); ++ord)
                out << "," << (sat.contains(ord) ? '1' : '0');
            out << "\n";
            ++rows;
        }
    } catch (const IngestError& e) {
        std::cerr << "error: " << trace_path << ": " << e.what() << "\n";
        return kExitRuntime;
    }
    return rows == 0 ? kExitInconclusive : kExitSatisfying;
}

int run_oracle(const std::string& spec_path, const std::string& trace_path, bool lenient) {
    auto spec = load_spec(spec_path);
    if (!spec) return kExitUsage;

    std::ifstream trace_file(trace_path, std::ios::binary);
    if (!trace_file) {
        std::cerr << "error: cannot read trace file '" << trace_path << "'\n";
        return kExitRuntime;
    }

    std::vector<TscSpec> specs;
    specs.push_back(std::move(*spec));
    ViewCatalog catalog = ViewCatalog::build(specs);

    std::vector<SatSample> stream;
    try {
        TraceReader reader(trace_file, !lenient);
        while (auto sample = reader.next()) {
            if (stream.size() >= 200) {
                std::cerr << "error: oracle tractability bound exceeded (more than 200 samples)\n";
                return kExitUsage;
            }
            auto result = evaluate_views(*sample, reader.road(), catalog);
            if (auto* fault = std::get_if<SvrFault>(&result)) {
                std::cerr << "error: evaluation fault in " << fault->qualified_id << "\n";
                return kExitRuntime;
            }
            const ViewSatSet& sat = std::get<ViewSatSet>(result);
            SatSample entry;
            entry.first = sample->t;
            for (auto ord : sat.ordinals)
                entry.second.push_back(catalog.entries()[ord].view->id);
            stream.push_back(std::move(entry));
        }
    } catch (const IngestError& e) {
        std::cerr << "error: " << trace_path << ": " << e.what() << "\n";
        return kExitRuntime;
    }

    try {
        auto classifications = oracle_classify_prefixes(specs[0], stream);
        std::cout << "prefix,t,verdict,fits\n";
        for (std::size_t k = 0; k < classifications.size(); ++k)
            std::cout << k << "," << format_double(stream[k].first) << ","
                      << verdict_name(classifications[k].verdict) << ","
                      << classifications[k].fits_up_to << "\n";
        Verdict final_verdict = classifications.back().verdict;
        std::cout << "final," << verdict_name(final_verdict) << "\n";
        switch (final_verdict) {
        case Verdict::Satisfying: return kExitSatisfying;
        case Verdict::Violating: return kExitViolating;
        case Verdict::Inconclusive: return kExitInconclusive;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitInconclusive;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Runtime monitoring of textual Traffic Sequence Charts over traffic traces"};
    app.require_subcommand(1);

    CheckOptions check;
    auto* cmd_check = app.add_subcommand("check", "Monitor a trace against one or more specs");
    cmd_check->add_option("--spec", check.spec_paths, "TSC spec file (repeatable)")->required();
    cmd_check->add_option("--trace", check.trace_path, "JSON-lines trace file")->required();
    cmd_check->add_option("--activate-on", check.activate_on,
                          "SPEC.VIEW: activate SPEC at the first sample where VIEW is satisfied");
    cmd_check->add_option("--emit-verdicts", check.emit_verdicts, "write all verdict events as CSV");
    cmd_check->add_flag("--stop-on-verdict", check.stop_on_verdict,
                        "stop reading once every spec has concluded");
    cmd_check->add_flag("--lenient", check.lenient, "ignore unknown trace fields");

    std::string gen_scenario, gen_out;
    std::uint64_t gen_seed = 0;
    double gen_dt = 0.1;
    auto* cmd_gen = app.add_subcommand("gen", "Generate a synthetic scenario trace");
    cmd_gen->add_option("--scenario", gen_scenario, "scenario name")->required();
    cmd_gen->add_option("--seed", gen_seed, "generator seed");
    cmd_gen->add_option("--dt", gen_dt, "sample period in seconds");
    cmd_gen->add_option("--out", gen_out, "output trace file")->required();

    std::string plot_spec, plot_trace, plot_out;
    bool plot_lenient = false;
    auto* cmd_plot = app.add_subcommand("export-plot", "Export per-sample plot data as CSV");
    cmd_plot->add_option("--spec", plot_spec, "TSC spec file")->required();
    cmd_plot->add_option("--trace", plot_trace, "JSON-lines trace file")->required();
    cmd_plot->add_option("--out", plot_out, "output CSV file")->required();
    cmd_plot->add_flag("--lenient", plot_lenient, "ignore unknown trace fields");

    std::string oracle_spec, oracle_trace;
    bool oracle_lenient = false;
    auto* cmd_oracle = app.add_subcommand("oracle", "Classify every trace prefix by exhaustive search");
    cmd_oracle->add_option("--spec", oracle_spec, "TSC spec file")->required();
    cmd_oracle->add_option("--trace", oracle_trace, "JSON-lines trace file")->required();
    cmd_oracle->add_flag("--lenient", oracle_lenient, "ignore unknown trace fields");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitUsage;
    }

    bool env_lenient = lenient_from_env();
    if (cmd_check->parsed()) return run_check(check);
    if (cmd_gen->parsed()) return run_gen(gen_scenario, gen_seed, gen_dt, gen_out);
    if (cmd_plot->parsed()) return run_export_plot(plot_spec, plot_trace, plot_out, plot_lenient || env_lenient);
    if (cmd_oracle->parsed()) return run_oracle(oracle_spec, oracle_trace, oracle_lenient || env_lenient);
    return kExitUsage;
}
