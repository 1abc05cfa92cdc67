#include "alignmatch/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "alignmatch/random.hpp"
#include "json_support.hpp"

namespace alignmatch {

const std::vector<std::string_view> kTerritoryPalette = {
    "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c",
    "#98df8a", "#d62728", "#ff9896", "#9467bd", "#c5b0d5",
    "#8c564b", "#c49c94", "#e377c2", "#f7b6d2", "#7f7f7f",
    "#c7c7c7", "#bcbd22", "#dbdb8d", "#17becf", "#9edae5",
};

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr int kMaxSchoolDraws = 1000;

void check_unit_square(const std::vector<Point>& points, const char* what) {
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point& p = points[k];
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0))
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + " " + std::to_string(k) +
                      " lies outside the unit square");
  }
}

std::vector<Point> grid_points(std::size_t side) {
  std::vector<Point> points;
  points.reserve(side * side);
  const double s = static_cast<double>(side);
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t c = 0; c < side; ++c)
      points.push_back({(static_cast<double>(c) + 0.5) / s,
                        (static_cast<double>(r) + 0.5) / s});
  return points;
}

std::vector<Point> draw_points(Rng& rng, std::size_t count) {
  std::vector<Point> points(count);
  for (auto& p : points) {
    p.x = rng.uniform01();
    p.y = rng.uniform01();
  }
  return points;
}

std::vector<std::int64_t> even_capacities(std::size_t n_students,
                                          std::size_t n_schools) {
  std::vector<std::int64_t> caps(n_schools,
                                 static_cast<std::int64_t>(n_students / n_schools));
  for (std::size_t j = 0; j < n_students % n_schools; ++j) ++caps[j];
  return caps;
}

// Weights in [0.5, 1.5), rounded by largest remainder so the capacities sum
// to exactly n_students with every school keeping at least one seat.
std::vector<std::int64_t> proportional_capacities(Rng& rng,
                                                  std::size_t n_students,
                                                  std::size_t n_schools) {
  std::vector<double> weight(n_schools);
  for (auto& w : weight) w = 0.5 + rng.uniform01();
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);

  std::vector<std::int64_t> caps(n_schools);
  std::vector<double> remainder(n_schools);
  std::int64_t assigned = 0;
  for (std::size_t j = 0; j < n_schools; ++j) {
    double ideal = static_cast<double>(n_students) * weight[j] / total;
    caps[j] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(ideal)));
    remainder[j] = ideal - std::floor(ideal);
    assigned += caps[j];
  }
  std::vector<std::size_t> by_remainder(n_schools);
  std::iota(by_remainder.begin(), by_remainder.end(), std::size_t{0});
  std::stable_sort(by_remainder.begin(), by_remainder.end(),
                   [&](std::size_t a, std::size_t b) {
                     return remainder[a] > remainder[b];
                   });
  const auto target = static_cast<std::int64_t>(n_students);
  for (std::size_t k = 0; assigned < target; k = (k + 1) % n_schools) {
    ++caps[by_remainder[k]];
    ++assigned;
  }
  while (assigned > target) {
    auto largest = std::max_element(caps.begin(), caps.end());
    --*largest;
    --assigned;
  }
  return caps;
}

}  // namespace

SpatialInstance spatial_from_points(std::vector<Point> students,
                                    std::vector<Point> schools,
                                    std::vector<std::int64_t> capacities,
                                    std::optional<std::size_t> grid,
                                    Strictness strictness) {
  check_unit_square(students, "student");
  check_unit_square(schools, "school");
  if (grid && *grid * *grid != students.size())
    throw Error(ErrorCode::DimensionMismatch,
                "a grid of side " + std::to_string(*grid) + " needs " +
                    std::to_string(*grid * *grid) + " students");
  if (capacities.size() != schools.size())
    throw Error(ErrorCode::CapacityMismatch,
                std::to_string(capacities.size()) + " capacities for " +
                    std::to_string(schools.size()) + " schools");
  std::vector<double> utilities;
  utilities.reserve(students.size() * schools.size());
  for (const Point& s : students)
    for (const Point& c : schools)
      utilities.push_back(kSqrt2 - std::hypot(s.x - c.x, s.y - c.y));
  Instance instance = Instance::from_row_major(
      students.size(), schools.size(), capacities, std::move(utilities),
      strictness);
  return SpatialInstance{std::move(students), std::move(schools),
                         std::move(capacities), grid, std::move(instance)};
}

SpatialInstance generate_spatial(const SpatialParams& params) {
  const std::size_t n_students =
      params.grid ? *params.grid * *params.grid : params.random_students;
  const std::size_t n_schools = params.n_schools;
  if (n_students == 0 || n_schools == 0)
    throw Error(ErrorCode::InvalidArgument,
                "need at least one student and one school");
  if (n_schools > n_students)
    throw Error(ErrorCode::TooManySchools,
                std::to_string(n_schools) + " schools but only " +
                    std::to_string(n_students) + " students");
  if (params.capacity_mode == CapacityMode::Explicit &&
      params.capacities.size() != n_schools)
    throw Error(ErrorCode::CapacityMismatch,
                std::to_string(params.capacities.size()) +
                    " explicit capacities for " + std::to_string(n_schools) +
                    " schools");
  if (!params.school_points.empty() && params.school_points.size() != n_schools)
    throw Error(ErrorCode::InvalidArgument,
                std::to_string(params.school_points.size()) +
                    " school positions for " + std::to_string(n_schools) +
                    " schools");

  Rng rng(params.seed);
  std::vector<Point> students =
      params.grid ? grid_points(*params.grid) : draw_points(rng, n_students);

  // Placeholder capacities while placing schools; the real ones come from
  // the stream afterwards and do not affect utilities.
  std::vector<Point> schools;
  std::optional<SpatialInstance> built;
  std::vector<std::int64_t> placeholder(n_schools, 1);
  if (!params.school_points.empty()) {
    schools = params.school_points;
    built = spatial_from_points(students, schools, placeholder, params.grid,
                                params.strictness);
  } else {
    for (int attempt = 0; attempt < kMaxSchoolDraws && !built; ++attempt) {
      schools = draw_points(rng, n_schools);
      try {
        built = spatial_from_points(students, schools, placeholder, params.grid,
                                    params.strictness);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IndifferenceViolation &&
            e.code() != ErrorCode::NonPositiveUtility)
          throw;
      }
    }
    if (!built)
      throw Error(ErrorCode::InvalidArgument,
                  "could not place schools without utility ties");
  }

  std::vector<std::int64_t> capacities;
  switch (params.capacity_mode) {
    case CapacityMode::Explicit: capacities = params.capacities; break;
    case CapacityMode::Even:
      capacities = even_capacities(n_students, n_schools);
      break;
    case CapacityMode::Proportional:
      capacities = proportional_capacities(rng, n_students, n_schools);
      break;
  }
  return spatial_from_points(std::move(built->students),
                             std::move(built->schools), std::move(capacities),
                             params.grid, params.strictness);
}

std::string serialize_spatial(const SpatialInstance& spatial) {
  auto points = [](const std::vector<Point>& ps) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Point& p : ps) arr.push_back({p.x, p.y});
    return arr;
  };
  nlohmann::ordered_json doc;
  doc["grid"] = spatial.grid ? nlohmann::ordered_json(*spatial.grid)
                             : nlohmann::ordered_json(nullptr);
  doc["capacities"] = spatial.capacities;
  doc["schools"] = points(spatial.schools);
  doc["students"] = points(spatial.students);
  return doc.dump(2) + "\n";
}

SpatialInstance parse_spatial(std::string_view text, Strictness strictness) {
  auto doc = detail::parse_json(text);
  auto points = [&](const char* key) {
    std::vector<Point> out;
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_array())
      throw SyntaxError(std::string("missing array \"") + key + "\"", 0, 0);
    for (const auto& p : *it) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
          !p[1].is_number())
        throw SyntaxError(std::string("\"") + key + "\" entries must be [x, y]",
                          0, 0);
      out.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return out;
  };
  if (!doc.is_object()) throw SyntaxError("sidecar must be a JSON object", 1, 1);
  std::optional<std::size_t> grid;
  if (auto it = doc.find("grid"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_unsigned())
      throw SyntaxError("\"grid\" must be a non-negative integer or null", 0, 0);
    grid = it->get<std::size_t>();
  }
  std::vector<std::int64_t> capacities;
  auto caps = doc.find("capacities");
  if (caps == doc.end() || !caps->is_array())
    throw SyntaxError("missing array \"capacities\"", 0, 0);
  for (const auto& q : *caps) {
    if (!q.is_number_integer())
      throw SyntaxError("capacities must be integers", 0, 0);
    capacities.push_back(q.get<std::int64_t>());
  }
  return spatial_from_points(points("students"), points("schools"),
                             std::move(capacities), grid, strictness);
}

std::string export_territories_csv(const SpatialInstance& spatial,
                                   const Allocation& allocation) {
  require_feasible(spatial.instance, allocation);
  std::string out = "x,y,school_index\n";
  for (std::size_t i = 0; i < spatial.students.size(); ++i) {
    const Point& p = spatial.students[i];
    out += format_double(p.x) + "," + format_double(p.y) + ",";
    if (auto j = allocation.school_of(StudentId{i}))
      out += std::to_string(j->index);
    out += "\n";
  }
  out += "\nschool_index,x,y,capacity\n";
  for (std::size_t j = 0; j < spatial.schools.size(); ++j) {
    const Point& p = spatial.schools[j];
    out += std::to_string(j) + "," + format_double(p.x) + "," +
           format_double(p.y) + "," + std::to_string(spatial.capacities[j]) +
           "\n";
  }
  return out;
}

std::string render_territories_svg(const SpatialInstance& spatial,
                                   const Allocation& allocation,
                                   double cell_size_px) {
  if (!spatial.grid)
    throw Error(ErrorCode::NotAGrid,
                "students were drawn at random; only lattice instances can be "
                "rendered as tiles (use the CSV export for point data)");
  if (!(cell_size_px > 0.0) || !std::isfinite(cell_size_px))
    throw Error(ErrorCode::InvalidArgument, "cell size must be positive");
  require_feasible(spatial.instance, allocation);

  const std::size_t side = *spatial.grid;
  const double s = static_cast<double>(side);
  const std::string size_px = format_double(s * cell_size_px);
  const std::string side_text = std::to_string(side);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         size_px + "\" height=\"" + size_px + "\" viewBox=\"0 0 " + side_text +
         " " + side_text + "\">\n";
  out += "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < spatial.students.size(); ++i) {
    std::size_t col = i % side;
    std::size_t row = side - 1 - i / side;  // y grows upward in the square
    auto j = allocation.school_of(StudentId{i});
    std::string_view fill =
        j ? kTerritoryPalette[j->index % kTerritoryPalette.size()]
          : kUnassignedFill;
    out += "<rect x=\"" + std::to_string(col) + "\" y=\"" +
           std::to_string(row) + "\" width=\"1\" height=\"1\" fill=\"" +
           std::string(fill) + "\"/>\n";
  }
  out += "</g>\n";
  const std::string radius = format_double(std::max(0.35, s / 100.0));
  for (const Point& p : spatial.schools) {
    out += "<circle cx=\"" + format_double(p.x * s) + "\" cy=\"" +
           format_double((1.0 - p.y) * s) + "\" r=\"" + radius +
           "\" fill=\"#000000\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace alignmatch
