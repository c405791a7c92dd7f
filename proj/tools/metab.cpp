#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "metab/cache.hpp"
#include "metab/congruence.hpp"
#include "metab/errors.hpp"
#include "metab/iacalc.hpp"
#include "metab/magnus.hpp"
#include "metab/modcurve.hpp"
#include "metab/parallel.hpp"
#include "metab/ringexpr.hpp"

using namespace metab;

namespace {

constexpr int kExitBudget = 2;
constexpr int kExitConfig = 3;
constexpr int kExitInvariant = 4;

struct RunConfig {
  std::string group;
  std::string catalog_file;
  Int level = 0;
  std::size_t max_group = FinGroup::kDefaultMaxOrder;
  std::uint64_t max_ring = 1'000'000;
  std::size_t max_classes = 200'000;
  std::string output;
  std::string cache_dir;
  bool no_cache = false;
  int threads = 0;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw std::invalid_argument("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_json(const RunConfig& cfg, const nlohmann::json& j) {
  Output out(cfg.output);
  out.stream() << j.dump(2) << '\n';
}

FinGroup load_group(const RunConfig& cfg) {
  std::vector<CatalogEntry> extra;
  if (!cfg.catalog_file.empty()) extra = load_catalog_file(cfg.catalog_file);
  return make_group(resolve_group(cfg.group, extra), cfg.max_group);
}

ActionTable load_table(const RunConfig& cfg, const FinGroup& g, Int level) {
  std::filesystem::path dir;
  if (!cfg.no_cache) dir = cfg.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(cfg.cache_dir);
  auto res = cached_action_table(g, level, cfg.max_group, dir);
  if (!res.note.empty()) std::cerr << "metab: " << res.note << '\n';
  if (static_cast<std::size_t>(res.table.size()) > cfg.max_classes)
    throw BudgetExceeded(std::to_string(res.table.size()) + " classes exceed --max-classes");
  return std::move(res.table);
}

RingCtx make_ring(int n, int m, const RunConfig& cfg) {
  if (n < 2 || m < 2) throw std::invalid_argument("ring parameters must be at least 2");
  if (static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m) > cfg.max_ring)
    throw BudgetExceeded("ring dimension exceeds --max-ring");
  return RingCtx(n, m);
}

std::string coefficient_table(const RingElem& x) {
  const auto& c = x.ctx();
  std::ostringstream os;
  int width = 4;
  for (int j = 0; j < c.m(); ++j) width = std::max(width, static_cast<int>(("a2^" + std::to_string(j)).size()));
  os << std::setw(width + 2) << "";
  for (int j = 0; j < c.m(); ++j) os << ' ' << std::setw(width) << ("a2^" + std::to_string(j));
  os << '\n';
  for (int i = 0; i < c.m(); ++i) {
    os << "  " << std::setw(width) << ("a1^" + std::to_string(i));
    for (int j = 0; j < c.m(); ++j) os << ' ' << std::setw(width) << x.coeff(i, j);
    os << '\n';
  }
  return os.str();
}

nlohmann::json coefficients_json(const RingElem& x) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < x.ctx().m(); ++i) {
    std::vector<Int> row;
    for (int j = 0; j < x.ctx().m(); ++j) row.push_back(x.coeff(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string exp_string(Exp2 v) { return "(" + std::to_string(v.v1) + "," + std::to_string(v.v2) + ")"; }

// ---------------------------------------------------------------------------

int cmd_ring(const RunConfig& cfg, int n, int m, const std::string& expr, bool json) {
  auto ring = make_ring(n, m, cfg);
  auto x = parse_ring_expr(ring, expr);
  auto mono = monomial_part(x);
  bool unit = try_invert(x).has_value();
  Output out(cfg.output);
  if (json) {
    nlohmann::json j = {{"n", n}, {"m", m}, {"element", x.to_string()}, {"coefficients", coefficients_json(x)},
                        {"augmentation", augmentation(x)}, {"unit", unit}};
    j["monomial"] = mono ? nlohmann::json{mono->v1, mono->v2} : nlohmann::json(nullptr);
    out.stream() << j.dump(2) << '\n';
    return 0;
  }
  auto& os = out.stream();
  os << "R(" << n << "," << m << ") element: " << x.to_string() << '\n';
  os << "coefficients (rows a1^i, columns a2^j):\n" << coefficient_table(x);
  os << "augmentation: " << augmentation(x) << '\n';
  os << "unit: " << (unit ? "yes" : "no") << '\n';
  os << "monomial: " << (mono ? "a1^" + std::to_string(mono->v1) + "*a2^" + std::to_string(mono->v2) : "no") << '\n';
  return 0;
}

std::string verdict_string(const IAClassification& c) {
  auto s = to_string(c.verdict);
  if (c.inner_exponent) s += exp_string(*c.inner_exponent);
  return s;
}

int cmd_classify(const RunConfig& cfg, int n, int m, const std::vector<std::string>& params, bool exhaustive,
                 bool json) {
  auto ring = make_ring(n, m, cfg);
  Output out(cfg.output);
  auto& os = out.stream();
  if (!exhaustive) {
    if (params.size() != 2) throw std::invalid_argument("classify needs two ring elements r1 r2 or --exhaustive");
    IAEndo e{parse_ring_expr(ring, params[0]), parse_ring_expr(ring, params[1])};
    auto mat = ia_matrix(e);
    auto c = ia_classify(e);
    if (json) {
      nlohmann::json j = {{"n", n}, {"m", m}, {"r1", e.r1.to_string()}, {"r2", e.r2.to_string()},
                          {"matrix", {{mat.a11.to_string(), mat.a12.to_string()}, {mat.a21.to_string(), mat.a22.to_string()}}},
                          {"det", c.det.to_string()}, {"verdict", to_string(c.verdict)}};
      j["monomial"] = c.inner_exponent ? nlohmann::json{c.inner_exponent->v1, c.inner_exponent->v2} : nlohmann::json(nullptr);
      os << j.dump(2) << '\n';
      return 0;
    }
    os << "r = (" << e.r1.to_string() << ", " << e.r2.to_string() << ") in R(" << n << "," << m << ")\n";
    os << "matrix:\n  [" << mat.a11.to_string() << ", " << mat.a12.to_string() << "]\n  [" << mat.a21.to_string()
       << ", " << mat.a22.to_string() << "]\n";
    os << "det: " << c.det.to_string() << '\n';
    os << "verdict: " << verdict_string(c) << '\n';
    return 0;
  }
  auto size = ring.order();
  if (!size || *size > cfg.max_ring / *size)
    throw BudgetExceeded("exhaustive classification needs |R|^2 <= --max-ring");
  MagnusModel model(ring);
  auto elements = model.enumerate();
  auto relations = model.enumerate_relations();
  InnerCensus census(ring, elements);
  std::uint64_t agree = 0, total = 0;
  nlohmann::json rows = nlohmann::json::array();
  if (!json) os << "r1\tr2\tdet\tverdict\tbrute_bijective\tbrute_inner\tagree\n";
  for (std::uint64_t i = 0; i < *size; ++i)
    for (std::uint64_t k = 0; k < *size; ++k) {
      IAEndo e{ring_from_index(ring, i), ring_from_index(ring, k)};
      auto c = ia_classify(e);
      bool bij = ia_bijective_brute(model, e, relations);
      bool inner = census.is_inner(ia_as_endo(e));
      bool ok = (c.verdict != IAVerdict::NotAutomorphism) == bij && (c.verdict == IAVerdict::Inner) == inner;
      ++total;
      if (ok) ++agree;
      if (json) {
        rows.push_back({{"r1", e.r1.to_string()}, {"r2", e.r2.to_string()}, {"det", c.det.to_string()},
                        {"verdict", to_string(c.verdict)}, {"brute_bijective", bij}, {"brute_inner", inner},
                        {"agree", ok}});
      } else {
        os << e.r1.to_string() << '\t' << e.r2.to_string() << '\t' << c.det.to_string() << '\t' << verdict_string(c)
           << '\t' << (bij ? "yes" : "no") << '\t' << (inner ? "yes" : "no") << '\t' << (ok ? "yes" : "no") << '\n';
      }
    }
  if (json) os << nlohmann::json{{"n", n}, {"m", m}, {"rows", rows}, {"agree", agree}, {"total", total}}.dump(2) << '\n';
  else os << "agree: " << agree << "/" << total << '\n';
  return agree == total ? 0 : kExitInvariant;
}

int cmd_orbits(const RunConfig& cfg, bool gl2, bool with_out) {
  auto g = load_group(cfg);
  const Int exp = g.exponent();
  const Int table_level = cfg.level > 0 ? lcm(exp, cfg.level) : exp;
  auto t = load_table(cfg, g, table_level);
  const auto ambient = gl2 ? Ambient::GL2 : Ambient::SL2;
  auto orbs = orbits(t, ambient);
  std::vector<MatrixSubgroup> stabs;
  int code = 0;
  nlohmann::json cert_json;
  if (cfg.level > 0) {
    auto cert = certify(t, cfg.level);
    cert_json = to_json(cert);
    if (cert.verdict) {
      for (const auto& o : orbs) stabs.push_back(stabilizer_mod(t, o.front(), cfg.level, ambient, cert));
    } else if (g.is_metabelian() && cfg.level % exp == 0) {
      code = kExitInvariant;
    }
  }
  auto j = orbit_json(t, orbs, stabs);
  j["ambient"] = to_string(ambient);
  j["metabelian"] = g.is_metabelian();
  if (cfg.level > 0) j["certificate"] = cert_json;
  if (with_out) {
    if (!g.is_metabelian()) throw std::invalid_argument(g.name() + " is not metabelian; --out needs the module structure");
    auto out = out_action_on_orbits(t, ambient);
    j["out"] = {{"perms", out.perms}, {"orbit_count", out.orbit_count}, {"transitive", out.transitive}};
    if (ambient == Ambient::GL2 && !out.transitive) code = kExitInvariant;
  }
  write_json(cfg, j);
  return code;
}

int cmd_components(const RunConfig& cfg, bool force, const std::string& format, const std::string& csv_path) {
  auto g = load_group(cfg);
  if (!g.is_metabelian() && !force)
    throw std::invalid_argument(g.name() + " is not metabelian; pass --force to compute the orbit data only");
  ReportOptions opts;
  opts.level = cfg.level;
  opts.force = force;
  opts.max_order = cfg.max_group;
  auto t = load_table(cfg, g, cfg.level > 0 ? lcm(g.exponent(), cfg.level) : 0);
  auto r = component_report(t, opts);
  Output out(cfg.output);
  if (format == "csv") out.stream() << to_csv(r);
  else out.stream() << to_json(r).dump(2) << '\n';
  if (!csv_path.empty()) {
    std::ofstream f(csv_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("cannot write " + csv_path);
    f << to_csv(r);
  }
  for (const auto& v : r.violations) std::cerr << "metab: invariant violation: " << v << '\n';
  return r.violations.empty() ? 0 : kExitInvariant;
}

int cmd_certify(const RunConfig& cfg) {
  auto g = load_group(cfg);
  const Int e = cfg.level > 0 ? cfg.level : g.exponent();
  auto t = load_table(cfg, g, lcm(g.exponent(), e));
  auto cert = certify(t, e);
  write_json(cfg, to_json(cert));
  return !cert.verdict && g.is_metabelian() && e % g.exponent() == 0 ? kExitInvariant : 0;
}

int cmd_catalog(const RunConfig& cfg, bool json) {
  std::vector<CatalogEntry> entries;
  if (!cfg.catalog_file.empty()) entries = load_catalog_file(cfg.catalog_file);
  for (const auto& e : builtin_catalog()) entries.push_back(e);
  nlohmann::json rows = nlohmann::json::array();
  Output out(cfg.output);
  auto& os = out.stream();
  if (!json) os << std::left << std::setw(16) << "name" << std::setw(8) << "order" << std::setw(10) << "exponent"
                << "metabelian\n";
  for (const auto& e : entries) {
    auto g = make_group(e, cfg.max_group);
    if (json) {
      rows.push_back({{"name", e.name}, {"degree", e.degree}, {"gen1", e.gen1}, {"gen2", e.gen2},
                      {"order", g.order()}, {"exponent", g.exponent()}, {"metabelian", g.is_metabelian()}});
    } else {
      os << std::left << std::setw(16) << e.name << std::setw(8) << g.order() << std::setw(10) << g.exponent()
         << (g.is_metabelian() ? "yes" : "no") << '\n';
    }
  }
  if (json) os << rows.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nielsen-move actions of SL2(Z) on generating pairs of finite metabelian groups"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--threads", cfg.threads, "Worker threads for parallel stages (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("-o,--output", cfg.output, "Write the report to this file instead of stdout");
  app.add_option("--max-group", cfg.max_group, "Largest group order to build")->check(CLI::PositiveNumber);
  app.add_option("--max-ring", cfg.max_ring, "Largest ring dimension, or |R|^2 for exhaustive runs")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-classes", cfg.max_classes, "Largest number of generating-pair classes")
      ->check(CLI::PositiveNumber);
  app.add_option("--catalog", cfg.catalog_file, "JSON file with extra groups {name, degree, gen1, gen2}");
  app.add_option("--cache-dir", cfg.cache_dir, "Action-table cache directory (default: $METAB_CACHE_DIR)");
  app.add_flag("--no-cache", cfg.no_cache, "Do not read or write the action-table cache");

  int n = 2, m = 2;
  bool json = false;
  auto* ring = app.add_subcommand("ring", "Evaluate an expression in R(n,m) = Z/n[Z/m x Z/m]");
  std::string expr;
  ring->add_option("-n", n, "Coefficient modulus")->check(CLI::PositiveNumber);
  ring->add_option("-m", m, "Order of each cyclic factor")->check(CLI::PositiveNumber);
  ring->add_option("expr", expr, "Expression in a1, a2, integers, + - * ^ and parentheses")->required();
  ring->add_flag("--json", json, "JSON output");

  auto* classify = app.add_subcommand("classify", "Classify the IA-endomorphism x_i -> [x1,x2]^{r_i} x_i");
  std::vector<std::string> params;
  bool exhaustive = false;
  classify->add_option("-n", n, "Coefficient modulus")->check(CLI::PositiveNumber);
  classify->add_option("-m", m, "Order of each cyclic factor")->check(CLI::PositiveNumber);
  classify->add_option("r", params, "r1 r2 as ring expressions");
  classify->add_flag("--exhaustive", exhaustive, "Every pair (r1, r2), checked against brute force");
  classify->add_flag("--json", json, "JSON output");

  bool gl2 = false, with_out = false, force = false;
  std::string format = "json", csv_path;
  auto* orbits_cmd = app.add_subcommand("orbits", "Orbits of the Nielsen moves on Epi^ext(F2, G)");
  orbits_cmd->add_option("group", cfg.group, "Catalog name")->required();
  orbits_cmd->add_flag("--gl2", gl2, "Include the twists U(u) (GL2 action)");
  orbits_cmd->add_flag("--out", with_out, "Include the action of Out(G) on the orbits");
  orbits_cmd->add_option("--level", cfg.level, "Certify level e and report stabilizers mod e")
      ->check(CLI::PositiveNumber);

  auto* components = app.add_subcommand("components", "Component report: stabilizers, degrees, genus");
  components->add_option("group", cfg.group, "Catalog name")->required();
  components->add_option("--level", cfg.level, "Level e (default exp G)")->check(CLI::PositiveNumber);
  components->add_flag("--force", force, "Run the orbit part on a non-metabelian group");
  components->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  components->add_option("--csv", csv_path, "Also write the CSV summary to this file");

  auto* certify_cmd = app.add_subcommand("certify", "Congruence certificate for level e");
  certify_cmd->add_option("group", cfg.group, "Catalog name")->required();
  certify_cmd->add_option("--level", cfg.level, "Level e (default exp G)")->check(CLI::PositiveNumber);

  auto* catalog = app.add_subcommand("catalog", "List the built-in groups");
  catalog->add_flag("--json", json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    set_worker_threads(cfg.threads);
    if ((orbits_cmd->parsed() || components->parsed() || certify_cmd->parsed()) && !convention_self_test())
      throw InvariantViolation("matrix convention self-test failed");
    if (ring->parsed()) return cmd_ring(cfg, n, m, expr, json);
    if (classify->parsed()) return cmd_classify(cfg, n, m, params, exhaustive, json);
    if (orbits_cmd->parsed()) return cmd_orbits(cfg, gl2, with_out);
    if (components->parsed()) return cmd_components(cfg, force, format, csv_path);
    if (certify_cmd->parsed()) return cmd_certify(cfg);
    if (catalog->parsed()) return cmd_catalog(cfg, json);
  } catch (const BudgetExceeded& e) {
    std::cerr << "metab: budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "metab: parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvariantViolation& e) {
    std::cerr << "metab: invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "metab: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "metab: error: " << e.what() << '\n';
    return 1;
  }
  return kExitConfig;
}
