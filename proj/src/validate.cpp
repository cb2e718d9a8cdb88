#include "tscmon/validate.hpp"

#include <cmath>
#include <set>
#include <string>

namespace tscmon {
namespace {

void error(std::vector<Diagnostic>& out, std::string where, std::string message) {
    out.push_back({Severity::Error, std::move(where), std::move(message)});
}

// Checks a real-valued expression tree; Role nodes are only legal where a
// builtin signature asks for one.
void check_expr(const Expr& e, const AttributeCatalog& catalog, const std::string& where,
                std::vector<Diagnostic>& out) {
    switch (e.kind) {
    case ExprKind::Number:
        if (!std::isfinite(e.number)) error(out, where, "non-finite constant");
        return;
    case ExprKind::Attr:
        if (!catalog.has_attribute(e.name))
            error(out, where, "unknown attribute '" + e.name + "'");
        return;
    case ExprKind::Role:
        error(out, where, "object reference '" + e.role + "' outside a builtin argument");
        return;
    case ExprKind::Call: {
        const BuiltinSig* sig = catalog.find_builtin(e.name);
        if (!sig) {
            error(out, where, "unknown builtin '" + e.name + "'");
            return;
        }
        if (e.children.size() != sig->args.size()) {
            error(out, where,
                  "builtin '" + e.name + "' expects " + std::to_string(sig->args.size()) +
                      " argument(s), got " + std::to_string(e.children.size()));
            return;
        }
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            const Expr& arg = e.children[i];
            if (sig->args[i] == ArgKind::Role) {
                if (arg.kind != ExprKind::Role)
                    error(out, where,
                          "argument " + std::to_string(i + 1) + " of '" + e.name +
                              "' must be an object reference");
            } else {
                check_expr(arg, catalog, where, out);
            }
        }
        return;
    }
    case ExprKind::Neg:
        if (e.children.size() != 1) {
            error(out, where, "malformed negation node");
            return;
        }
        check_expr(e.children[0], catalog, where, out);
        return;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
        if (e.children.size() != 2) {
            error(out, where, "malformed binary node");
            return;
        }
        check_expr(e.children[0], catalog, where, out);
        check_expr(e.children[1], catalog, where, out);
        return;
    }
}

} // namespace

std::vector<Diagnostic> validate(const TscSpec& spec, const AttributeCatalog& catalog) {
    std::vector<Diagnostic> out;
    if (spec.name.empty()) error(out, "name", "spec name is empty");
    if (spec.views.empty()) error(out, "views", "chart has no Spatial Views");
    if (spec.header.hourglass && !(spec.header.hourglass->bound > 0.0))
        error(out, "header.hourglass", "bound must be positive");

    std::set<std::string> seen_ids;
    for (std::size_t vi = 0; vi < spec.views.size(); ++vi) {
        const SpatialView& view = spec.views[vi];
        std::string where = "views[" + std::to_string(vi) + "]";
        if (view.id.empty()) error(out, where, "view id is empty");
        if (!seen_ids.insert(view.id).second)
            error(out, where, "duplicate view id '" + view.id + "'");
        if (view.index != static_cast<int>(vi) + 1)
            error(out, where,
                  "view index " + std::to_string(view.index) + " does not match position " +
                      std::to_string(vi + 1));
        if (view.constraints.empty()) error(out, where, "view has no constraints");
        for (std::size_t ci = 0; ci < view.constraints.size(); ++ci) {
            std::string cwhere = where + ".constraints[" + std::to_string(ci) + "]";
            check_expr(view.constraints[ci].lhs, catalog, cwhere, out);
            check_expr(view.constraints[ci].rhs, catalog, cwhere, out);
        }
    }
    return out;
}

} // namespace tscmon
