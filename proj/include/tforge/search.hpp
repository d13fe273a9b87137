#ifndef TFORGE_SEARCH_HPP
#define TFORGE_SEARCH_HPP

#include "tforge/constraints.hpp"
#include "tforge/geometry.hpp"
#include "tforge/tile.hpp"

#include <json.hpp>

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace tforge {

// A copy of the tile, vertices counterclockwise.  `mirrored` marks copies
// whose angle order alpha, beta, gamma runs clockwise.
struct Placement {
  std::array<Point, 3> v;
  bool mirrored = false;
  friend bool operator==(const Placement&, const Placement&) = default;
};

// Simple polygon, counterclockwise, no two consecutive edges collinear.
// dirs[i] is the exact unit direction of the edge boundary[i] -> boundary[i+1].
struct Region {
  std::vector<Point> boundary;
  std::vector<Vec2> dirs;

  std::size_t size() const { return boundary.size(); }
  QRoot3 twice_area() const { return twice_signed_area(boundary); }
  // Interior angle at vertex i as an exact unit direction.
  Vec2 angle_dir(std::size_t i) const;
  friend bool operator==(const Region& a, const Region& b) { return a.boundary == b.boundary; }
};

// Region of a triangle given counterclockwise; throws std::invalid_argument
// if an edge length is not in Q(sqrt3).
Region region_from_polygon(const std::vector<Point>& pts);
Region region_from_target(const TriangleSpec& target);

struct Certificate {
  TileShape tile;
  TriangleSpec target;
  bool allow_mirror = true;
  std::vector<Placement> placements;
  std::size_t N() const { return placements.size(); }
};

// Which copies a search may place.  Without mirror images every copy has
// the same handedness, but either handedness may be used for the whole tiling.
enum class Chirality { Any, Direct, Mirrored };

// Precomputed tile data shared by candidate generation and pruning.
class TilingContext {
 public:
  // max_length bounds the edge lengths whose representability is tabulated.
  // With prune off only angle fit and containment filter the candidates.
  TilingContext(const TileShape& tile, const QRoot3& max_length, Chirality chirality, bool prune = true);

  const TileShape& tile() const { return tile_; }
  Chirality chirality() const { return chirality_; }
  bool prune() const { return prune_; }
  const Vec2& angle_dir(int k) const { return angle_dir_[static_cast<std::size_t>(k)]; }
  // True when the angle with unit direction d in (0, 2pi) is a nonnegative
  // integer combination of the tile angles.
  bool angle_representable(const Vec2& d) const { return angles_.contains(d); }
  // True when L is a nonnegative integer combination of a, b, c.  Lengths
  // beyond the tabulated bound are reported representable.
  bool length_representable(const QRoot3& L) const;
  // Area / tile area when it is a positive integer.
  std::optional<long> tile_count(const QRoot3& twice_area) const;

 private:
  TileShape tile_;
  Chirality chirality_;
  bool prune_;
  std::array<Vec2, 3> angle_dir_;
  std::unordered_set<Vec2> angles_;
  std::unordered_set<QRoot3> lengths_;
  QRoot3 max_length_;
  QRoot3 inv_twice_tile_area_;
};

// Vertex with the smallest interior angle, ties broken by (x, y).
std::size_t choose_corner(const Region& region);

struct Expansion {
  Placement placement;
  std::vector<Region> components;  // what remains of the region, in canonical order
};

// All ways to fill the corner with the tile copy adjacent to its outgoing
// edge that survive the exact filters: angle fit, containment, and
// representable angles, edge runs and areas in every remaining component.
std::vector<Expansion> expand_corner(const Region& region, std::size_t corner, const TilingContext& ctx);

// Without mirror images only direct copies are offered.
std::vector<Placement> candidate_placements(const Region& region, std::size_t corner, const TileShape& tile,
                                            bool allow_mirror);

// Region minus a triangle contained in it, as simple counterclockwise
// components.  The triangle must share at least one boundary edge segment.
std::vector<Region> subtract_triangle(const Region& region, const Placement& tri,
                                      const std::array<Vec2, 3>& tri_dirs);

struct SearchConfig {
  std::uint64_t node_budget = 100'000'000;
  int workers = 1;
  bool allow_mirror = true;
  bool paper_pruning = false;
  int partition_depth = 3;
  std::optional<std::filesystem::path> checkpoint_path;
  double checkpoint_interval_seconds = 30.0;
  std::optional<nlohmann::json> resume;  // checkpoint document to continue from
  bool verify_invariants = false;        // asserts area conservation at every node
};

enum class SearchOutcome { Found, ExhaustedNone, BudgetExceeded };
const char* outcome_name(SearchOutcome o);

struct SearchStats {
  std::uint64_t nodes = 0;        // nodes expanded in this invocation
  std::uint64_t nodes_total = 0;  // including earlier invocations
  std::uint64_t tasks = 0;
  std::uint64_t tasks_run = 0;
  std::uint64_t memo_hits = 0;
  double seconds = 0;
};

struct SearchResult {
  SearchOutcome outcome;
  std::optional<Certificate> certificate;
  SearchStats stats;
  // Set when paper_pruning contributed to an ExhaustedNone.
  bool conditional = false;
  std::optional<nlohmann::json> checkpoint;  // on BudgetExceeded
  std::vector<std::string> notes;
};

// Throws std::invalid_argument when the tile count is not an integer.
SearchResult search(const TileShape& tile, const TriangleSpec& target, const SearchConfig& config);

struct Violation {
  std::string kind;
  std::vector<std::size_t> indices;
  std::string to_string() const;
};

struct CheckReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  bool valid() const { return violations.empty(); }
};

CheckReport check_certificate(const Certificate& cert);

// Maximal interior segments whose two sides carry different edge multisets.
std::vector<EdgeRelation> extract_edge_relations(const Certificate& cert);

std::string render_svg(const Certificate& cert);
void render_svg(const Certificate& cert, const std::filesystem::path& path);

void to_json(nlohmann::json& j, const Placement& p);
void from_json(const nlohmann::json& j, Placement& p);
void to_json(nlohmann::json& j, const Region& r);
void from_json(const nlohmann::json& j, Region& r);
void to_json(nlohmann::json& j, const Certificate& c);
// Rebuilds the target from its sides; throws on schema errors.
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace tforge

#endif  // TFORGE_SEARCH_HPP
