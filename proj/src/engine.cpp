#include "tangles/engine.hpp"

#include "tangles/errors.hpp"

namespace tangles {

bool Engine::residue_contains(const std::string& tag, const VertexId&) const {
  throw DomainError("unknown residue tag: " + tag);
}

VertexId Engine::residue_probe(const std::string& tag) const {
  throw DomainError("unknown residue tag: " + tag);
}

bool Engine::residue_bears_ends(const std::string& tag) const {
  throw DomainError("unknown residue tag: " + tag);
}

std::optional<std::pair<std::string, std::int64_t>> Engine::family_of(
    const VertexId&) const {
  return std::nullopt;
}

VertexId Engine::family_member_probe(const std::string& fam, std::int64_t) const {
  throw DomainError("unknown family: " + fam);
}

VertexList Engine::family_member_vertices(const std::string& fam, std::int64_t) const {
  throw DomainError("unknown family: " + fam);
}

VertexId Engine::end_ray_at(const EndRef& e, std::int64_t) const {
  throw DomainError("unknown end: " + e.display());
}

std::optional<std::int64_t> Engine::end_ray_pos(const EndRef& e, const VertexId&) const {
  throw DomainError("unknown end: " + e.display());
}

}  // namespace tangles
