#pragma once

#include "plf/classify.hpp"
#include "plf/construct.hpp"

#include <json.hpp>

#include <string>

namespace plf {

using Json = nlohmann::ordered_json;

// Canonical map file format: {"breakpoints": [{"x": "num/den", "y": ...}]}.
// Reading is strict by default: every rational must be in lowest terms with
// positive denominator and the vertex list must already be in normalized
// form. normalize = true accepts any valid monotone list and canonicalizes.
Json map_to_json(const PLMap& f);
PLMap map_from_json(const Json& j, bool normalize = false);

Json orbitals_report(const std::vector<Orbital>& orbs);

Json verdict_report(const Verdict& v, const PLMap& f0);

Json step_to_json(const PerturbationStep& st);
PerturbationStep step_from_json(const Json& j, bool normalize = false);

Json trace_to_json(const DecompositionTrace& tr);
DecompositionTrace trace_from_json(const Json& j, bool normalize = false);

// Nice pair spec: {"f0": <map or {"word": "..."}>, "choices": [...],
// "commuting": [...]}.
NicePairSpec nice_spec_from_json(const Json& j, bool normalize = false);

Json parse_json_text(const std::string& text);
Json load_json_file(const std::string& path);
std::string dump_json(const Json& j);

} // namespace plf
