#pragma once

#include <string_view>
#include <variant>

#include "tscmon/diagnostics.hpp"
#include "tscmon/spec.hpp"

namespace tscmon {

// Parses the textual TSC DSL. Grammar (whitespace-insensitive, // comments):
//
//   spec       = "tsc" STRING "{" header chart "}" ;
//   header     = "activation" ":" "initial" ";"
//                "quantifier" ":" "exists" ";"
//                [ "hourglass" ":" ("<" | "<=") NUMBER "s" ";" ] ;
//   chart      = "sequence" "{" view { view } "}" ;
//   view       = "view" IDENT "{" constraint { constraint } "}" ;
//   constraint = expr relop expr ";" ;
//   expr       = term { ("+"|"-") term } ;
//   term       = factor { ("*"|"/") factor } ;
//   factor     = NUMBER | attr | call | "(" expr ")" | "-" factor ;
//   attr       = IDENT "." IDENT ;
//   call       = IDENT "(" [ arg { "," arg } ] ")" ;  arg = IDENT | expr ;
//
// Unknown builtins and attribute names are rejected here against the
// standard catalog; headers other than initial/exists and non-positive
// hourglass bounds are rejected with targeted messages.
std::variant<TscSpec, ParseError> parse_tsc(std::string_view text);

} // namespace tscmon
