#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tscmon {

// 1-based position inside a spec source text.
struct SourceLoc {
    int line = 1;
    int column = 1;
};

struct ParseError {
    SourceLoc loc;
    std::string message;
};

enum class Severity : std::uint8_t { Error, Warning };

// Validator finding. `where` is a path into the spec value
// (e.g. "views[2].constraints[0]"), not a source position, so that
// programmatically built specs get usable diagnostics too.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string where;
    std::string message;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

} // namespace tscmon
