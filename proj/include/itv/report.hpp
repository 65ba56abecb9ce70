#pragma once

// JSON views of points, signatures and sweeps. All output goes through
// canonical_dump: sorted keys, floats as %.12e, no whitespace.

#include "itv/scanner.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace itv {

using Json = nlohmann::json;

std::string canonical_dump(const Json& j);

/// {"plucker": "<literal>"} or {"v1": [...], "v2": [...]}.
OpsPoint ops_from_json(std::string_view text);
Json ops_to_json(const OpsPoint& p);

Json moment_json(const MomentPoint& m);

/// {"norms": {...}, "active": [...], "rank": r, "residual": y}
Json signature_json(const ClassSignature& sig, int rank, double residual);

/// Everything known about one point: signature, rank, (m,n), integrability,
/// rho, J1-invariance and the moment point.
Json classify_json(const OpsPoint& p, const ConnectionTable<double>& c, const StructureTable<double>& s, double tol);

Json family_json(const FamilySpec& f);
Json sweep_json(const SweepReport& r);

} // namespace itv
