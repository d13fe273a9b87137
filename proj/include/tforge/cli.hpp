#ifndef TFORGE_CLI_HPP
#define TFORGE_CLI_HPP

#include "tforge/constraints.hpp"
#include "tforge/search.hpp"
#include "tforge/tile.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tforge {

enum class OutputFormat { Text, Json };

struct Config {
  std::uint64_t node_budget = 100'000'000;
  int workers = 1;
  bool allow_mirror = true;
  bool paper_pruning = false;
  std::optional<std::filesystem::path> checkpoint_path;
  OutputFormat output_format = OutputFormat::Text;

  // Throws std::invalid_argument when node_budget or workers is out of range.
  void validate() const;
  // Applies TILING_FORGE_WORKERS when set to a positive integer; throws
  // std::invalid_argument for any other value.
  void apply_environment();
};

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitExhausted = 4;

// "3,5,7" or "1,1,sqrt3".
std::vector<QRoot3> parse_exact_list(const std::string& text, std::size_t expected);

// "equilateral:S" or "triangle:X,Y,Z", sides absolute.
TriangleSpec parse_target(const TileShape& tile, const std::string& text);

// (m, n) with eisenstein_triple(m, n) proportional to the tile, when the
// tile is similar to an integer triangle.
std::optional<std::pair<long, long>> eisenstein_parameters(const TileShape& tile);

// Entry point of the tiling-forge tool.  args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tforge

#endif  // TFORGE_CLI_HPP
