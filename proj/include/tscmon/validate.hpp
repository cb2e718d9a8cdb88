#pragma once

#include <vector>

#include "tscmon/catalog.hpp"
#include "tscmon/diagnostics.hpp"
#include "tscmon/spec.hpp"

namespace tscmon {

// Checks every invariant of the spec model against the attribute catalog:
// non-empty chart, unique view ids, sequential 1-based indices, non-empty
// conjunctions, resolvable attribute/builtin references, builtin arity and
// argument kinds, positive hourglass bound. A spec with no error
// diagnostics is accepted everywhere downstream (SVR, TER, monitor).
std::vector<Diagnostic> validate(const TscSpec& spec, const AttributeCatalog& catalog);

} // namespace tscmon
