#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "doctest.h"
#include "metab/cache.hpp"
#include "metab/errors.hpp"

using namespace metab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("metab_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("catalog files") {
  auto dir = scratch_dir("catalog");
  write_file(dir / "one.json", R"j({"name": "C3b", "degree": 3, "gen1": "(1 2 3)", "gen2": "()"})j");
  auto one = load_catalog_file(dir / "one.json");
  REQUIRE(one.size() == 1);
  CHECK(one[0].name == "C3b");
  auto g = make_group(resolve_group("C3b", one), 100);
  CHECK(g.order() == 3);
  CHECK(resolve_group("S3", one).degree == 3);

  write_file(dir / "many.json",
             R"j([{"name": "A", "degree": 3, "gen1": "(1 2)", "gen2": "(2 3)"},
                 {"name": "B", "degree": 4, "gen1": "(1 2 3 4)", "gen2": "(1 3)"}])j");
  CHECK(load_catalog_file(dir / "many.json").size() == 2);

  write_file(dir / "bad.json", R"j({"name": "A", )j");
  CHECK_THROWS_AS(load_catalog_file(dir / "bad.json"), ParseError);
  write_file(dir / "missing.json", R"j({"name": "A", "degree": 3})j");
  CHECK_THROWS_AS(load_catalog_file(dir / "missing.json"), std::invalid_argument);
  write_file(dir / "dup.json", R"j([{"name": "A", "degree": 2, "gen1": "(1 2)", "gen2": "()"},
                                   {"name": "A", "degree": 2, "gen1": "(1 2)", "gen2": "()"}])j");
  CHECK_THROWS_AS(load_catalog_file(dir / "dup.json"), std::invalid_argument);
  CHECK_THROWS_AS(load_catalog_file(dir / "absent.json"), std::invalid_argument);
  CHECK_THROWS_AS(resolve_group("nope"), std::invalid_argument);
  CHECK_THROWS_AS(make_group(*find_catalog_entry("S4"), 10), BudgetExceeded);
  fs::remove_all(dir);
}

TEST_CASE("action table cache") {
  auto dir = scratch_dir("cache");
  auto g = make_group(*find_catalog_entry("D4"), 100);
  auto first = cached_action_table(g, 0, 1024, dir);
  CHECK_FALSE(first.hit);
  CHECK(first.note.empty());
  auto file = dir / (table_cache_key(g, 4) + ".json");
  REQUIRE(fs::exists(file));
  auto second = cached_action_table(g, 0, 1024, dir);
  CHECK(second.hit);
  CHECK(second.table.to_json() == first.table.to_json());

  write_file(file, "{ not json");
  auto third = cached_action_table(g, 0, 1024, dir);
  CHECK_FALSE(third.hit);
  CHECK_FALSE(third.note.empty());
  CHECK(third.table.to_json() == first.table.to_json());
  CHECK(cached_action_table(g, 0, 1024, dir).hit);

  CHECK(table_cache_key(g, 4) != table_cache_key(g, 8));
  auto s3 = make_group(*find_catalog_entry("S3"), 100);
  CHECK(table_cache_key(g, 4) != table_cache_key(s3, 4));
  CHECK_FALSE(cached_action_table(g, 0, 1024, {}).hit);
  fs::remove_all(dir);
}
