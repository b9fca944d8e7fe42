#pragma once

#include <optional>

#include "hcv/groups.hpp"

namespace hcv::groups::detail {

// 64-bit FNV-1a of the group descriptor; names the cache file.
std::uint64_t descriptor_hash(const std::string& descriptor);

std::optional<CharacterTable> load_table(const CacheOptions& cache, const FiniteGroup& g, const ConjClasses& cls);
void store_table(const CacheOptions& cache, const FiniteGroup& g, const ConjClasses& cls, const CharacterTable& t);

}  // namespace hcv::groups::detail
