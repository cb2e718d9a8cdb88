#pragma once

#include <string>

#include "tscmon/spec.hpp"

namespace tscmon {

// Canonical text form: parse_tsc(print_tsc(s)) is structurally equal to s.
// Numbers use shortest round-trip formatting; parentheses are emitted
// only where the expression tree requires them.
std::string print_tsc(const TscSpec& spec);

std::string print_expr(const Expr& e);
std::string print_constraint(const Constraint& c);

} // namespace tscmon
