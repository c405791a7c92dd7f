#include "metab/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "metab/errors.hpp"

namespace metab {

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

CatalogEntry entry_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("catalog entry is not an object");
  for (const char* key : {"name", "degree", "gen1", "gen2"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("catalog entry lacks \"") + key + "\"");
  CatalogEntry e;
  try {
    e.name = j.at("name").get<std::string>();
    e.degree = j.at("degree").get<int>();
    e.gen1 = j.at("gen1").get<std::string>();
    e.gen2 = j.at("gen2").get<std::string>();
  } catch (const nlohmann::json::type_error& err) {
    throw std::invalid_argument(std::string("catalog entry has a field of the wrong type: ") + err.what());
  }
  if (e.name.empty()) throw std::invalid_argument("catalog entry has an empty name");
  return e;
}

}  // namespace

std::vector<CatalogEntry> load_catalog_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read catalog file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("catalog file " + path.string() + ": malformed JSON", err.byte > 0 ? err.byte - 1 : 0);
  }
  std::vector<CatalogEntry> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(entry_from_json(x));
  } else {
    out.push_back(entry_from_json(j));
  }
  std::set<std::string> names;
  for (const auto& e : out)
    if (!names.insert(e.name).second) throw std::invalid_argument("catalog file repeats the name " + e.name);
  return out;
}

CatalogEntry resolve_group(const std::string& name, const std::vector<CatalogEntry>& extra) {
  for (const auto& e : extra)
    if (e.name == name) return e;
  if (auto e = find_catalog_entry(name)) return *e;
  std::string known;
  for (const auto& e : extra) known += " " + e.name;
  for (const auto& e : builtin_catalog()) known += " " + e.name;
  throw std::invalid_argument("unknown group \"" + name + "\"; known groups:" + known);
}

FinGroup make_group(const CatalogEntry& e, std::size_t max_order) {
  return FinGroup(e.name, e.degree, parse_cycles(e.gen1, e.degree), parse_cycles(e.gen2, e.degree), max_order);
}

std::string table_cache_key(const FinGroup& g, Int level) {
  std::string content = std::string(kVersion) + '\n' + std::to_string(g.degree()) + '\n' +
                        to_cycles(g.perm(g.gen1())) + '\n' + to_cycles(g.perm(g.gen2())) + '\n' +
                        std::to_string(level);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(content)));
  return hex;
}

std::filesystem::path default_cache_dir() {
  if (const char* d = std::getenv("METAB_CACHE_DIR"); d && *d) return d;
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return std::filesystem::path(d) / "metab";
  if (const char* d = std::getenv("HOME"); d && *d) return std::filesystem::path(d) / ".cache" / "metab";
  return {};
}

CachedTable cached_action_table(const FinGroup& g, Int level, std::size_t max_order, const std::filesystem::path& dir) {
  if (dir.empty()) return {ActionTable(g, level, max_order), false, ""};
  const Int e = level == 0 ? g.exponent() : level;
  const auto file = dir / (table_cache_key(g, e) + ".json");
  std::string note;
  if (std::filesystem::exists(file)) {
    try {
      std::ifstream in(file, std::ios::binary);
      auto j = nlohmann::json::parse(in);
      if (j.at("version").get<std::string>() != kVersion) throw std::runtime_error("version stamp differs");
      auto t = ActionTable::from_json(g, j.at("table"));
      if (t.level() != e) throw std::runtime_error("level differs");
      return {std::move(t), true, ""};
    } catch (const std::exception& err) {
      note = "ignored cache entry " + file.string() + ": " + err.what();
    }
  }
  ActionTable t(g, e, max_order);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) out << nlohmann::json{{"version", kVersion}, {"table", t.to_json()}}.dump() << '\n';
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) note += (note.empty() ? "" : "; ") + std::string("could not write cache entry: ") + ec.message();
  return {std::move(t), false, note};
}

}  // namespace metab
