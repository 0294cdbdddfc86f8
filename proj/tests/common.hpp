#pragma once

#include <map>
#include <memory>

#include "tnorm/parse.hpp"

namespace tnorm::test {

/// Towers are expensive to build; share one per (p, bound).
inline std::shared_ptr<const TowerConfig> tower(std::uint32_t p, std::uint32_t bound = 12) {
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const TowerConfig>> cache;
  auto& slot = cache[{p, bound}];
  if (!slot) slot = std::make_shared<const TowerConfig>(p, bound);
  return slot;
}

inline Setting setting(FieldsConfig cfg = {}) { return Setting::build(cfg, tower(cfg.p, cfg.level_bound)); }

inline Setting prime_base_setting(std::uint32_t p = 2) {
  FieldsConfig cfg;
  cfg.p = p;
  cfg.base = BaseField::finite(1);
  cfg.k_constants = 2;
  cfg.l_constants = 2;
  return setting(cfg);
}

/// All elements of a level, in enumeration order.
inline std::vector<ClosureElem> elements(const TowerConfig& t, std::uint32_t level) {
  std::vector<ClosureElem> out;
  for (std::uint64_t i = 0; i < t.field_order(level); ++i) out.push_back(t.from_enumeration_index(level, i));
  return out;
}

}  // namespace tnorm::test
