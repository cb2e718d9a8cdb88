#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "tscmon/world.hpp"

namespace tscmon {

struct IngestError : std::runtime_error {
    std::size_t line;
    IngestError(std::size_t line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Streaming reader for the JSON-lines trace format.
//
//   {"road": {"lanes": 2, "lane_width": 3.5, "length": 500.0}}
//   {"t": 0.0, "objects": [{"role": "car", "x": ..., "y": ..., "yaw": ...,
//                           "v": ..., "length": ..., "width": ...}, ...]}
//
// The first record must be the road header. Field order is irrelevant;
// unknown fields are rejected in strict mode and skipped otherwise.
// Timestamps must be strictly increasing, all numeric fields finite,
// v >= 0, length/width > 0, role names unique within a sample. The
// stream is rejected with an IngestError at the first malformed record.
class TraceReader {
  public:
    explicit TraceReader(std::istream& in, bool strict = true);

    const RoadGeometry& road() const { return road_; }

    // Next sample in timestamp order, or nullopt at end of stream.
    std::optional<WorldSample> next();

  private:
    std::istream& in_;
    bool strict_;
    RoadGeometry road_;
    double last_t_ = 0.0;
    bool have_last_ = false;
    std::size_t line_no_ = 0;
    std::string line_;

    bool read_line();
};

void write_trace_header(std::ostream& out, const RoadGeometry& road);
void write_trace_sample(std::ostream& out, const WorldSample& sample);
void write_trace(std::ostream& out, const RoadGeometry& road, std::span<const WorldSample> samples);

} // namespace tscmon
