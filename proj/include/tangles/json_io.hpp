#pragma once

#include <json.hpp>
#include <string>

#include "tangles/cuts.hpp"
#include "tangles/gamma.hpp"
#include "tangles/topology.hpp"

namespace tangles {

using Json = nlohmann::ordered_json;

// Presentation files: {"kind": "...", ...}; see docs/schema.md.
Presentation presentation_from_json(const Json& doc);
Presentation presentation_from_file(const std::string& path);

std::string side_handle(const ComponentSpace& space, int desc_index);
Json side_json(const ComponentSpace& space, const SideSel& side);
Json space_json(const Presentation& p, const ComponentSpace& space);
Json sep_json(const Presentation& p, const OrientedSeparation& s);
Json ends_json(const Presentation& p, const EndsResult& e);
Json critical_json(const CriticalResult& c);
Json tangle_space_json(const Presentation& p, const TangleSpaceResult& t);
Json cut_json(const CutResult& r);
Json neighbours_json(const NeighbourSet& nb);

// Full analysis report (ends + critical sets + tangle space + parameters).
Json analysis_report(const Presentation& p, const TangleSpaceResult& t);

// DOT renderings.
std::string inverse_system_dot(const Presentation& p, std::int64_t depth);
Json inverse_system_json(const Presentation& p, std::int64_t depth);
std::string gamma_limit_dot(const Presentation& p, const LimitResult& lim);
Json gamma_limit_json(const Presentation& p, const LimitResult& lim);
std::string cut_dot(const CutResult& r);

}  // namespace tangles
