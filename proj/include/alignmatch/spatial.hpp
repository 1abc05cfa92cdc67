#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alignmatch/instance.hpp"

namespace alignmatch {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(Point, Point) = default;
};

/// Students and schools on the unit square with u_ij = sqrt(2) - d_ij.
struct SpatialInstance {
  std::vector<Point> students;
  std::vector<Point> schools;
  std::vector<std::int64_t> capacities;
  // Side of the lattice when students sit at cell centers; empty for
  // randomly drawn students.
  std::optional<std::size_t> grid;
  Instance instance;
};

enum class CapacityMode {
  Proportional,  // heterogeneous random weights, rounded to sum n_students
  Even,          // n_students split as evenly as possible
  Explicit,
};

struct SpatialParams {
  // Exactly one of grid / random_students is used; grid wins if set.
  std::optional<std::size_t> grid;
  std::size_t random_students = 0;
  std::size_t n_schools = 1;
  CapacityMode capacity_mode = CapacityMode::Proportional;
  std::vector<std::int64_t> capacities;  // Explicit mode only
  // Fixed school positions; drawn from the stream when empty.
  std::vector<Point> school_points;
  std::uint64_t seed = 0;
  Strictness strictness = Strictness::Strict;
};

/// Draw order on the seeded stream: student points (random mode), then
/// school points, then capacity weights (proportional mode). School points
/// are redrawn while the utility matrix has a tie or a non-positive entry.
SpatialInstance generate_spatial(const SpatialParams& params);

/// Rebuilds the derived utility matrix from coordinates.
SpatialInstance spatial_from_points(std::vector<Point> students,
                                    std::vector<Point> schools,
                                    std::vector<std::int64_t> capacities,
                                    std::optional<std::size_t> grid,
                                    Strictness strictness);

/// Coordinates sidecar (JSON), enough to rebuild the SpatialInstance.
std::string serialize_spatial(const SpatialInstance& spatial);
SpatialInstance parse_spatial(std::string_view text,
                              Strictness strictness = Strictness::Strict);

/// `x,y,school_index` per student (empty index when unassigned), a blank
/// line, then `school_index,x,y,capacity` per school.
std::string export_territories_csv(const SpatialInstance& spatial,
                                   const Allocation& allocation);

/// One tile per lattice cell colored by school, schools as black dots.
/// Throws NotAGrid for randomly drawn students.
std::string render_territories_svg(const SpatialInstance& spatial,
                                   const Allocation& allocation,
                                   double cell_size_px);

/// Fill palette, indexed by school index modulo its size.
extern const std::vector<std::string_view> kTerritoryPalette;
inline constexpr std::string_view kUnassignedFill = "#ffffff";

}  // namespace alignmatch
