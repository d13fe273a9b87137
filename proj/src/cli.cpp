#include "tforge/cli.hpp"

#include "tforge/json_io.hpp"
#include "tforge/lemmalab.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tforge {

using nlohmann::json;

void Config::validate() const {
  if (node_budget == 0) throw std::invalid_argument("node budget must be positive");
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
}

void Config::apply_environment() {
  const char* env = std::getenv("TILING_FORGE_WORKERS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long w = std::strtol(env, &end, 10);
  if (*end != '\0' || w < 1 || w > 1024)
    throw std::invalid_argument(std::string("TILING_FORGE_WORKERS must be a positive integer, got '") + env + "'");
  workers = static_cast<int>(w);
}

std::vector<QRoot3> parse_exact_list(const std::string& text, std::size_t expected) {
  std::vector<QRoot3> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(QRoot3::parse(item));
  if (out.size() != expected || (!text.empty() && text.back() == ','))
    throw std::invalid_argument("expected " + std::to_string(expected) + " comma-separated numbers, got '" + text + "'");
  return out;
}

TriangleSpec parse_target(const TileShape& tile, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("target must be equilateral:S or triangle:X,Y,Z");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "equilateral") return make_equilateral(tile, parse_exact_list(rest, 1)[0]);
  if (kind == "triangle") {
    const auto s = parse_exact_list(rest, 3);
    return make_triangle(tile, s[0], s[1], s[2]);
  }
  throw std::invalid_argument("unknown target kind '" + kind + "'");
}

std::optional<std::pair<long, long>> eisenstein_parameters(const TileShape& tile) {
  const QRoot3 pa = tile.a / tile.c, pb = tile.b / tile.c;
  if (!pa.is_rational() || !pb.is_rational()) return std::nullopt;
  const mpz_class den = lcm(pa.r().den(), pb.r().den());
  if (!den.fits_slong_p() || den > 1'000'000) return std::nullopt;
  // m^2 + m n + n^2 is at most three times the primitive c.
  const long bound = static_cast<long>(std::sqrt(3.0 * den.get_d())) + 2;
  for (long m = 2; m <= bound; ++m)
    for (long n = 1; n < m; ++n) {
      const auto e = eisenstein_triple(m, n);
      const Rational x(e.a, e.c), y(e.b, e.c);
      if ((x == pa.r() && y == pb.r()) || (x == pb.r() && y == pa.r())) return std::pair{m, n};
    }
  return std::nullopt;
}

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f || !(f << text)) throw std::runtime_error("cannot write " + path.string());
}

std::string rel_list(const std::vector<EdgeRelation>& rels) {
  std::string s = "[";
  for (std::size_t i = 0; i < rels.size(); ++i) s += (i ? ", " : "") + rels[i].to_string();
  return s + "]";
}

std::string angle_text(const AngleCombo& c) {
  std::string s;
  auto add = [&](long k, const char* name) {
    if (k == 0) return;
    if (!s.empty()) s += " + ";
    s += (k == 1 ? "" : std::to_string(k)) + name;
  };
  add(c.i, "alpha");
  add(c.j, "beta");
  add(c.k, "gamma");
  return s.empty() ? "0" : s;
}

void emit(std::ostream& out, OutputFormat fmt, json j, const std::string& text) {
  if (fmt == OutputFormat::Json) {
    j["schema"] = "v1";
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

Certificate load_certificate(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return certificate_from_json(j);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------- commands

int cmd_tile_analyze(const std::string& sides_text, OutputFormat fmt, std::ostream& out) {
  const auto s = parse_exact_list(sides_text, 3);
  const TileShape t = tile_from_sides(s[0], s[1], s[2]);
  const TileClass cls = classify_tile(t);
  const auto rels = relations_of_tile(t, 12);
  const auto eis = eisenstein_parameters(t);
  std::optional<Rational> ratio;
  try {
    ratio = cos_ratio(t);
  } catch (const std::domain_error&) {
  }

  json j = {{"command", "tile analyze"},
            {"tile", t},
            {"cos_alpha", t.cos_alpha},
            {"cos_beta", t.cos_beta},
            {"area", t.area},
            {"isosceles", t.is_isosceles()},
            {"integer_similar", cls.integer_similar},
            {"alpha_rational_multiple_of_pi", cls.alpha_rational_multiple_of_pi},
            {"alpha_over_pi", cls.alpha_over_pi ? json(*cls.alpha_over_pi) : json(nullptr)},
            {"classification_decided", cls.decided},
            {"cos_ratio", ratio ? json(*ratio) : json(nullptr)},
            {"relations", rels}};
  j["eisenstein"] = eis ? json{{"m", eis->first}, {"n", eis->second}} : json(nullptr);

  std::ostringstream os;
  os << "tile a=" << t.a << " b=" << t.b << " c=" << t.c << (t.is_isosceles() ? " (isosceles)" : "") << "\n";
  os << "cos alpha = " << t.cos_alpha << "\n";
  os << "cos beta = " << t.cos_beta << "\n";
  os << "area = " << t.area << "\n";
  os << "integer_similar = " << (cls.integer_similar ? "true" : "false") << "\n";
  if (cls.alpha_over_pi)
    os << "alpha = " << cls.alpha_over_pi->to_pretty() << "*pi (rational multiple of pi)\n";
  else
    os << "alpha is not a rational multiple of pi\n";
  if (ratio) os << "cos alpha / cos beta = " << ratio->to_pretty() << "\n";
  if (eis) os << "eisenstein parameters m=" << eis->first << " n=" << eis->second << "\n";
  os << "edge relations (j <= 12): " << rel_list(rels) << "\n";
  emit(out, fmt, j, os.str());
  return kExitOk;
}

int cmd_constraints_derive(const std::string& sides_text, const std::string& target_text, OutputFormat fmt,
                           std::ostream& out) {
  const auto s = parse_exact_list(sides_text, 3);
  const TileShape t = tile_from_sides(s[0], s[1], s[2]);
  const TriangleSpec tri = parse_target(t, target_text);
  const TileClass cls = classify_tile(t);

  std::optional<Rational> n;
  try {
    n = area_count(t, tri);
  } catch (const std::domain_error&) {
  }
  const auto splits = enumerate_vertex_splits(cls.alpha_over_pi);
  const auto dms = enumerate_dmatrices(t, tri);
  const bool c_cond = c_edge_condition_applies(t, tri);
  const auto usable = std::count_if(dms.begin(), dms.end(), [](const DMatrix& m) { return !m.missing_c_edge; });

  json j = {{"command", "constraints derive"},
            {"tile", t},
            {"target", tri},
            {"similar_to_tile", similar_to_tile(tri)},
            {"tile_count", n ? json(*n) : json(nullptr)},
            {"vertex_splits", splits},
            {"c_edge_condition", c_cond},
            {"dmatrices", dms}};

  std::ostringstream os;
  os << "target X=" << tri.X << " Y=" << tri.Y << " Z=" << tri.Z << "\n";
  os << "angles A=" << angle_text(tri.angles[0]) << ", B=" << angle_text(tri.angles[1])
     << ", C=" << angle_text(tri.angles[2]) << "\n";
  os << "tile count N = " << (n ? n->to_pretty() : std::string("irrational")) << "\n";
  os << "vertex splits:";
  for (const auto& v : splits) os << " (" << v.P << "," << v.Q << "," << v.R << ")";
  os << (splits.empty() ? " none\n" : "\n");
  os << "c-edge condition " << (c_cond ? "applies" : "does not apply") << "\n";
  os << "boundary matrices: " << dms.size() << " (" << usable << " with a c edge on every side)\n";
  for (const auto& m : dms) {
    os << "  X(" << m.rows[0][0] << "," << m.rows[0][1] << "," << m.rows[0][2] << ") Y(" << m.rows[1][0] << ","
       << m.rows[1][1] << "," << m.rows[1][2] << ") Z(" << m.rows[2][0] << "," << m.rows[2][1] << ","
       << m.rows[2][2] << ")" << (m.missing_c_edge ? " missing c edge" : "") << "\n";
  }
  emit(out, fmt, j, os.str());
  return kExitOk;
}

int cmd_lemmas_verify(const std::string& ids_text, OutputFormat fmt, std::ostream& out) {
  std::vector<std::string> ids;
  std::stringstream ss(ids_text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) ids.push_back(item);
  const auto checks = run_lemma_checks(ids);
  std::vector<std::string> failed;
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.id << "\n";
    if (!c.pass) failed.push_back(c.id);
  }
  os << checks.size() - failed.size() << "/" << checks.size() << " passed\n";
  if (!failed.empty()) {
    os << "failed:";
    for (const auto& f : failed) os << " " << f;
    os << "\n";
  }
  json j = {{"command", "lemmas verify"}, {"checks", checks}, {"failed", failed}};
  if (fmt == OutputFormat::Text) {
    // Details are bulky; text mode shows them only for failures.
    for (const auto& c : checks)
      if (!c.pass) os << c.id << ": " << c.details.dump() << "\n";
  }
  emit(out, fmt, j, os.str());
  return failed.empty() ? kExitOk : kExitFailure;
}

struct SearchArgs {
  std::string sides, target;
  std::optional<std::string> resume;
  std::string cert_path = "certificate.json";
  std::string stats_path = "stats.json";
  std::optional<std::string> svg_path;
  int partition_depth = 3;
};

int cmd_search(const SearchArgs& a, const Config& cfg, std::ostream& out) {
  cfg.validate();
  const auto s = parse_exact_list(a.sides, 3);
  const TileShape t = tile_from_sides(s[0], s[1], s[2]);
  const TriangleSpec tri = parse_target(t, a.target);

  SearchConfig sc;
  sc.node_budget = cfg.node_budget;
  sc.workers = cfg.workers;
  sc.allow_mirror = cfg.allow_mirror;
  sc.paper_pruning = cfg.paper_pruning;
  sc.partition_depth = a.partition_depth;
  sc.checkpoint_path = cfg.checkpoint_path;
  if (a.resume) sc.resume = read_json_file(*a.resume);

  const SearchResult res = search(t, tri, sc);

  json stats = {{"schema", "v1"},
                {"kind", "search-stats"},
                {"tile", t},
                {"target", tri},
                {"outcome", outcome_name(res.outcome)},
                {"nodes", res.stats.nodes},
                {"nodes_total", res.stats.nodes_total},
                {"tasks", res.stats.tasks},
                {"tasks_run", res.stats.tasks_run},
                {"memo_hits", res.stats.memo_hits},
                {"seconds", res.stats.seconds},
                {"node_budget", cfg.node_budget},
                {"workers", cfg.workers},
                {"allow_mirror", cfg.allow_mirror},
                {"paper_pruning", cfg.paper_pruning},
                {"conditional", res.conditional},
                {"notes", res.notes}};

  std::ostringstream os;
  os << "outcome: " << outcome_name(res.outcome) << (res.conditional ? " (conditional on paper lemmas)" : "") << "\n";
  os << "nodes: " << res.stats.nodes << " (total " << res.stats.nodes_total << ")\n";
  for (const auto& n : res.notes) os << "note: " << n << "\n";

  int code = kExitExhausted;
  if (res.outcome == SearchOutcome::Found) {
    const Certificate& cert = *res.certificate;
    const CheckReport rep = check_certificate(cert);
    const auto rels = extract_edge_relations(cert);
    write_text_file(a.cert_path, json(cert).dump(1) + "\n");
    if (a.svg_path) render_svg(cert, *a.svg_path);
    stats["N"] = cert.N();
    stats["certificate"] = a.cert_path;
    stats["check"] = rep.valid() ? "valid" : "invalid";
    stats["edge_relations"] = rels;
    stats["warnings"] = rep.warnings;
    os << "N: " << cert.N() << "\n";
    os << "certificate: " << a.cert_path << " (" << (rep.valid() ? "valid" : "invalid") << ")\n";
    os << "relations: " << rel_list(rels) << "\n";
    for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
    code = kExitOk;
  } else if (res.outcome == SearchOutcome::BudgetExceeded) {
    std::filesystem::path cp = cfg.checkpoint_path
                                   ? *cfg.checkpoint_path
                                   : std::filesystem::path(a.stats_path).parent_path() / "checkpoint.json";
    if (!cfg.checkpoint_path) write_text_file(cp, res.checkpoint->dump(1) + "\n");
    stats["checkpoint"] = cp.string();
    os << "checkpoint: " << cp.string() << " (resume with --resume)\n";
    code = kExitBudget;
  }
  write_text_file(a.stats_path, stats.dump(1) + "\n");
  os << "stats: " << a.stats_path << "\n";
  emit(out, cfg.output_format, stats, os.str());
  return code;
}

int cmd_check(const std::string& path, OutputFormat fmt, std::ostream& out) {
  const Certificate cert = load_certificate(path);
  const CheckReport rep = check_certificate(cert);
  std::ostringstream os;
  json j = {{"command", "check"}, {"valid", rep.valid()}, {"N", cert.N()}, {"warnings", rep.warnings}};
  if (rep.valid()) {
    const auto rels = extract_edge_relations(cert);
    j["relations"] = rels;
    os << "valid N=" << cert.N() << "\n";
    os << "relations: " << rel_list(rels) << "\n";
  } else {
    json v = json::array();
    os << "invalid\n";
    for (const auto& x : rep.violations) {
      v.push_back(x.to_string());
      os << x.to_string() << "\n";
    }
    j["violations"] = v;
  }
  for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  emit(out, fmt, j, os.str());
  return rep.valid() ? kExitOk : kExitFailure;
}

int cmd_render(const std::string& path, const std::string& svg_path, std::ostream& out, std::ostream& err) {
  const Certificate cert = load_certificate(path);
  if (!check_certificate(cert).valid()) err << "warning: rendering a certificate that does not check\n";
  render_svg(cert, svg_path);
  out << "wrote " << svg_path << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "tiling-forge: exact tools for N-tilings of a triangle by a tile with a 120 degree angle.\n"
      "Exact numbers: INT, INT/INT, sqrt3, RAT*sqrt3 and sums such as 1+2*sqrt3.",
      "tiling-forge"};
  app.require_subcommand(1);
  app.fallthrough();  // inherited, so --format works after any subcommand
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  Config cfg;
  std::string sides, target, ids, cert_path, svg_out;
  SearchArgs sa;
  std::string checkpoint;
  bool no_mirror = false;

  auto* tile = app.add_subcommand("tile", "Tile shape reports");
  tile->require_subcommand(1);
  auto* analyze = tile->add_subcommand("analyze", "Shape data, classification and edge relations");
  analyze->add_option("--sides", sides, "Side lengths a,b,c")->required();

  auto* cons = app.add_subcommand("constraints", "Necessary conditions for a tiling");
  cons->require_subcommand(1);
  auto* derive = cons->add_subcommand("derive", "Tile count, vertex splits and boundary matrices");
  derive->add_option("--sides", sides, "Side lengths a,b,c")->required();
  derive->add_option("--target", target, "equilateral:S or triangle:X,Y,Z")->required();

  auto* lemmas = app.add_subcommand("lemmas", "Exact algebraic checks");
  lemmas->require_subcommand(1);
  auto* verify = lemmas->add_subcommand("verify", "Run all checks or those named by --id");
  verify->add_option("--id", ids, "Comma-separated check ids");

  auto* srch = app.add_subcommand("search", "Exhaustive search for a tiling");
  srch->add_option("--sides", sa.sides, "Side lengths a,b,c")->required();
  srch->add_option("--target", sa.target, "equilateral:S or triangle:X,Y,Z (absolute side lengths)")->required();
  srch->add_option("--node-budget", cfg.node_budget, "Nodes to expand in this run")->capture_default_str();
  srch->add_option("--workers", cfg.workers, "Worker threads (TILING_FORGE_WORKERS overrides)")->capture_default_str();
  srch->add_flag("--no-mirror", no_mirror, "Use copies of one handedness only");
  srch->add_flag("--paper-pruning", cfg.paper_pruning, "Prune with the published boundary lemmas (conditional)");
  srch->add_option("--partition-depth", sa.partition_depth, "Depth at which the tree is split into tasks")
      ->capture_default_str();
  srch->add_option("--checkpoint", checkpoint, "Checkpoint file, written periodically");
  srch->add_option("--resume", sa.resume, "Continue from a checkpoint file");
  srch->add_option("--cert", sa.cert_path, "Certificate output")->capture_default_str();
  srch->add_option("--stats", sa.stats_path, "Statistics output")->capture_default_str();
  srch->add_option("--svg", sa.svg_path, "Also render a found tiling");

  auto* check = app.add_subcommand("check", "Verify a certificate and list its edge relations");
  check->add_option("certificate", cert_path, "Certificate JSON")->required();

  auto* render = app.add_subcommand("render", "Draw a certificate as SVG");
  render->add_option("certificate", cert_path, "Certificate JSON")->required();
  render->add_option("--out", svg_out, "SVG output")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto* sub : app.get_subcommands()) err << sub->help();
    return kExitUsage;
  }

  const OutputFormat fmt = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  cfg.output_format = fmt;
  cfg.allow_mirror = !no_mirror;
  if (!checkpoint.empty()) cfg.checkpoint_path = checkpoint;
  try {
    if (analyze->parsed()) return cmd_tile_analyze(sides, fmt, out);
    if (derive->parsed()) return cmd_constraints_derive(sides, target, fmt, out);
    if (verify->parsed()) return cmd_lemmas_verify(ids, fmt, out);
    if (srch->parsed()) {
      cfg.apply_environment();
      return cmd_search(sa, cfg, out);
    }
    if (check->parsed()) return cmd_check(cert_path, fmt, out);
    if (render->parsed()) return cmd_render(cert_path, svg_out, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace tforge
