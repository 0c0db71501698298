#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tangles/engine.hpp"
#include "tangles/presentation.hpp"

namespace tangles::detail {

EnginePtr make_finite_engine(std::int64_t n,
                             const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                             const std::vector<std::string>& names);
EnginePtr make_ray_engine();
EnginePtr make_double_ray_engine();
EnginePtr make_star_engine(Card size);
EnginePtr make_spider_engine(Card legs);
EnginePtr make_dominated_ray_engine();
EnginePtr make_comb_engine();
EnginePtr make_grid_engine();
EnginePtr make_binary_tree_engine();
EnginePtr make_union_engine(std::vector<EnginePtr> parts);
EnginePtr make_attach_leaves_engine(EnginePtr child, const VertexId& host, Card count);
EnginePtr make_identify_engine(EnginePtr child, const Presentation::IdentifySpec& spec);

}  // namespace tangles::detail
