#pragma once

// JSON forms of algebras, group specs and reports. Objects use sorted keys, so
// dumping the same value twice gives identical bytes.

#include <json.hpp>

#include "koszulkit/cocycle.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/progroup.hpp"
#include "koszulkit/quadalg.hpp"

namespace koszulkit {

using Json = nlohmann::json;

/// {"p": 3, "generators": ["x1", "x2"], "relations": [...]} where each relation
/// is either a list of d^2 integers (coordinate i*d + j for X_{i+1}X_{j+1}) or
/// a string such as "X1X2 - X2X1 + 2*X1X1". "d" may replace "generators".
/// Schema violations throw ParseError.
QuadraticPresentation algebra_from_json(const Json& j);
/// Relations are written as strings, one per reduced echelon basis vector.
Json algebra_to_json(const QuadraticPresentation& a);

/// Parses one quadratic relation string over X1..Xd.
std::vector<std::int64_t> parse_quadratic(std::string_view text, std::size_t d);
std::string quadratic_to_string(const SparseVector& v, const PrimeField& field, std::size_t d);

/// {"p": 3, "group": {"kind": ..., ...}}. Kinds: free {d}; demushkin {d, q,
/// variant: "i"|"ii"|"iii", f: int|"inf", alpha}; theta_abelian {d, q};
/// fibre {c, inner}; free_product {a, b}; presentation {generators,
/// relations, theta}.
GroupSpec group_spec_from_json(const Json& j);
Json group_spec_to_json(const GroupSpec& s);

Json presentation_to_json(const GroupPresentation& g);
Json dims_to_json(const GradedDims& dims);
Json tor_to_json(const TorTable& t);
Json koszul_report_to_json(const KoszulReport& r);
Json duality_report_to_json(const DualityReport& r);
Json invariants_to_json(const GroupInvariants& inv);
Json obstruction_to_json(const ObstructionTable& t);
Json padic_to_json(const PadicApprox& a);

}  // namespace koszulkit
