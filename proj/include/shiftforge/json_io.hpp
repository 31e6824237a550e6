#pragma once

// JSON formats for inputs (SFT specs, handles, shape systems, periodic
// tilings, sofic presentations) and for every report the CLI writes.

#include <string>
#include <vector>

#include <json.hpp>

#include "shiftforge/combing.hpp"
#include "shiftforge/counterexample.hpp"
#include "shiftforge/sofic.hpp"
#include "shiftforge/tiling.hpp"

namespace shiftforge {

using Json = nlohmann::ordered_json;

/// Parses text; malformed input raises InputError with the byte offset.
Json parse_json(const std::string& text, const std::string& origin = "<input>");
Json read_json_file(const std::string& path);
/// Two-space indented dump with a trailing newline.
std::string dump_json(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

Json to_json(const Site& s);
Site site_from_json(const Json& j, int dim);
Json to_json(const FiniteSet& f);
FiniteSet finite_set_from_json(const Json& j);
Json to_json(const Pattern& p);
Json bigint_json(const BigInt& n);

/// {dim, alphabet, window, allowed} or {dim, alphabet, window, forbidden};
/// pattern entries are symbol indices or tokens.
SftSpec sft_from_json(const Json& j);
Json to_json(const SftSpec& x);
/// An SftSpec with optional extra_forbidden: [{shape, pattern}, ...].
SubshiftHandle handle_from_json(const Json& j);
Json to_json(const SubshiftHandle& h);

ShapeSystem shapes_from_json(const Json& j);
Json to_json(const ShapeSystem& s);
/// {shapes, lattice, tiles: [{shape, center}, ...]}.
PeriodicTiling tiling_from_json(const Json& j);
Json to_json(const PeriodicTiling& t);

/// {cover: <SftSpec>, code: {map: {token: token}, target?: [...]}}; a
/// code with {neighborhood, rule: [[word, token], ...]} is recoded.
SoficPresentation sofic_from_json(const Json& j);
Json to_json(const SoficPresentation& w);

/// Every violation of the invariants of whichever object the document
/// describes; warnings are prefixed with "warning:".
std::vector<std::string> validate_document(const Json& j);

Json to_json(const CountResult& r);
Json to_json(const Hypotheses& h);
Json to_json(const ChainReport& r);
Json to_json(const ProjectedStep& p);
Json to_json(const GapReport& g);
Json to_json(const Refutation& r);
Json to_json(const LiftEntropy& e);

}  // namespace shiftforge
