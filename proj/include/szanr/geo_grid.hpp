#ifndef SZANR_GEO_GRID_HPP
#define SZANR_GEO_GRID_HPP

#include <string>
#include <vector>

#include "szanr/errors.hpp"

namespace szanr {

// Indian seismic zoning: four hazard levels II (lowest) through V (highest).
// Zero marks cells with no zone data (ocean or foreign territory); such
// cells are forbidden for node placement.
enum class ZoneLevel : int {
  None = 0,
  II = 2,
  III = 3,
  IV = 4,
  V = 5,
};

inline int zone_rank(ZoneLevel z) { return static_cast<int>(z); }
inline bool is_no_data(ZoneLevel z) { return z == ZoneLevel::None; }

// Expected maximum Modified Mercalli shaking intensity for a zone.
const char* mm_intensity_label(ZoneLevel z);

// Roman-numeral style name ("II".."V", "-" for no data).
const char* zone_name(ZoneLevel z);

ZoneLevel zone_from_int(int value);  // throws Error on values outside {0,2,3,4,5}

constexpr double kEarthRadiusKm = 6371.0;

// Square grid laid over a geographic bounding box. The origin is the
// south-west corner; rows count northward, columns eastward.
struct GridSpec {
  double origin_lat = 0.0;
  double origin_lon = 0.0;
  int rows = 60;
  int cols = 60;
  double cell_km = 54.0;

  double width_km() const { return cols * cell_km; }
  double height_km() const { return rows * cell_km; }

  void validate() const;  // throws Error on rows/cols < 1 or cell_km <= 0
};

// Kilometre-plane coordinates relative to the grid origin.
struct PlanePoint {
  double x = 0.0;  // km east of origin
  double y = 0.0;  // km north of origin
};

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

int chebyshev_distance(const Cell& a, const Cell& b);

// Equirectangular projection about the grid origin, with the standard
// parallel pinned at origin_lat. Throws InvalidCoordinateError on
// non-finite input or |lat| > 90.
PlanePoint project(double lat, double lon, const GridSpec& spec);

GeoPoint inverse_project(const PlanePoint& p, const GridSpec& spec);

// Maps a plane point to its grid cell. Points exactly on the outer
// boundary clamp to the last row/column; points strictly outside the
// extent raise OutOfGridError.
Cell cell_of(const PlanePoint& p, const GridSpec& spec);

PlanePoint cell_center(const Cell& cell, const GridSpec& spec);

bool in_grid(const Cell& cell, const GridSpec& spec);

// Immutable raster of zone levels. Row 0 is the southernmost row
// (adjacent to the origin); the CSV on disk is stored north-to-south
// and flipped on load/save.
class SeismicGrid {
public:
  SeismicGrid(GridSpec spec, std::vector<ZoneLevel> cells);

  const GridSpec& spec() const { return spec_; }

  ZoneLevel zone_at(int row, int col) const;  // throws OutOfGridError
  ZoneLevel zone_at(const Cell& cell) const { return zone_at(cell.row, cell.col); }

  static SeismicGrid load_csv(const std::string& path);
  void save_csv(const std::string& path) const;

private:
  GridSpec spec_;
  std::vector<ZoneLevel> cells_;  // row-major, row 0 = southernmost
};

}  // namespace szanr

#endif  // SZANR_GEO_GRID_HPP
