#pragma once

// Group catalogs from JSON files and an on-disk cache of action tables.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "metab/fingrp.hpp"
#include "metab/nielsen.hpp"

namespace metab {

inline constexpr const char* kVersion = "1.0.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);

/// Entries from a JSON file holding one object {name, degree, gen1, gen2}
/// or an array of them. Throws ParseError on malformed JSON (offset in
/// bytes) and std::invalid_argument on missing fields or duplicate names.
std::vector<CatalogEntry> load_catalog_file(const std::filesystem::path& path);

/// Looks the name up in `extra` first, then in the built-in catalog. Throws
/// std::invalid_argument listing every known name when absent.
CatalogEntry resolve_group(const std::string& name, const std::vector<CatalogEntry>& extra = {});
FinGroup make_group(const CatalogEntry& e, std::size_t max_order);

/// Hex key over the code version, the generators and the level.
std::string table_cache_key(const FinGroup& g, Int level);

/// METAB_CACHE_DIR, else $XDG_CACHE_HOME/metab, else $HOME/.cache/metab;
/// empty when none is set.
std::filesystem::path default_cache_dir();

struct CachedTable {
  ActionTable table;
  bool hit = false;
  std::string note;  // why a cache entry was rejected, if one was
};

/// The action table at the given level, read from `dir` when a valid entry
/// exists and written back otherwise. An empty dir disables caching. Corrupt
/// or stale entries are recomputed and overwritten.
CachedTable cached_action_table(const FinGroup& g, Int level, std::size_t max_order, const std::filesystem::path& dir);

}  // namespace metab
