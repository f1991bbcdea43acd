#include "szanr/geo_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "text_util.hpp"

namespace szanr {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

}  // namespace

const char* mm_intensity_label(ZoneLevel z) {
  switch (z) {
    case ZoneLevel::II: return "VI or less";
    case ZoneLevel::III: return "VII";
    case ZoneLevel::IV: return "VIII";
    case ZoneLevel::V: return "IX or above";
    case ZoneLevel::None: return "none";
  }
  return "none";
}

const char* zone_name(ZoneLevel z) {
  switch (z) {
    case ZoneLevel::II: return "II";
    case ZoneLevel::III: return "III";
    case ZoneLevel::IV: return "IV";
    case ZoneLevel::V: return "V";
    case ZoneLevel::None: return "-";
  }
  return "-";
}

ZoneLevel zone_from_int(int value) {
  switch (value) {
    case 0: return ZoneLevel::None;
    case 2: return ZoneLevel::II;
    case 3: return ZoneLevel::III;
    case 4: return ZoneLevel::IV;
    case 5: return ZoneLevel::V;
    default:
      throw Error("invalid zone level " + std::to_string(value) +
                  " (expected 0, 2, 3, 4 or 5)");
  }
}

void GridSpec::validate() const {
  if (rows < 1 || cols < 1)
    throw Error("grid must have at least one row and one column");
  if (!(cell_km > 0.0) || !std::isfinite(cell_km))
    throw Error("cell_km must be positive and finite");
  if (!std::isfinite(origin_lat) || !std::isfinite(origin_lon) ||
      std::abs(origin_lat) > 90.0)
    throw Error("grid origin must be a valid coordinate");
}

int chebyshev_distance(const Cell& a, const Cell& b) {
  return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col));
}

PlanePoint project(double lat, double lon, const GridSpec& spec) {
  if (!std::isfinite(lat) || !std::isfinite(lon))
    throw InvalidCoordinateError("non-finite coordinate");
  if (std::abs(lat) > 90.0)
    throw InvalidCoordinateError("latitude " + detail::fmt_g(lat) +
                                 " outside [-90, 90]");
  const double x = kEarthRadiusKm * (lon - spec.origin_lon) * kDegToRad *
                   std::cos(spec.origin_lat * kDegToRad);
  const double y = kEarthRadiusKm * (lat - spec.origin_lat) * kDegToRad;
  return {x, y};
}

GeoPoint inverse_project(const PlanePoint& p, const GridSpec& spec) {
  const double lat = spec.origin_lat + (p.y / kEarthRadiusKm) * kRadToDeg;
  const double lon =
      spec.origin_lon +
      (p.x / (kEarthRadiusKm * std::cos(spec.origin_lat * kDegToRad))) *
          kRadToDeg;
  return {lat, lon};
}

Cell cell_of(const PlanePoint& p, const GridSpec& spec) {
  const double w = spec.width_km();
  const double h = spec.height_km();
  if (p.x < 0.0 || p.y < 0.0 || p.x > w || p.y > h) {
    std::ostringstream os;
    os << "point (" << detail::fmt_g(p.x) << ", " << detail::fmt_g(p.y)
       << ") km outside grid extent " << detail::fmt_g(w) << " x "
       << detail::fmt_g(h) << " km";
    throw OutOfGridError(os.str());
  }
  int col = static_cast<int>(std::floor(p.x / spec.cell_km));
  int row = static_cast<int>(std::floor(p.y / spec.cell_km));
  // Only the outer boundary clamps; interior points are exact.
  col = std::min(col, spec.cols - 1);
  row = std::min(row, spec.rows - 1);
  return {row, col};
}

PlanePoint cell_center(const Cell& cell, const GridSpec& spec) {
  return {(cell.col + 0.5) * spec.cell_km, (cell.row + 0.5) * spec.cell_km};
}

bool in_grid(const Cell& cell, const GridSpec& spec) {
  return cell.row >= 0 && cell.row < spec.rows && cell.col >= 0 &&
         cell.col < spec.cols;
}

SeismicGrid::SeismicGrid(GridSpec spec, std::vector<ZoneLevel> cells)
    : spec_(spec), cells_(std::move(cells)) {
  spec_.validate();
  const std::size_t expected =
      static_cast<std::size_t>(spec_.rows) * static_cast<std::size_t>(spec_.cols);
  if (cells_.size() != expected)
    throw Error("zone matrix has " + std::to_string(cells_.size()) +
                " cells, expected " + std::to_string(expected));
}

ZoneLevel SeismicGrid::zone_at(int row, int col) const {
  if (row < 0 || row >= spec_.rows || col < 0 || col >= spec_.cols)
    throw OutOfGridError("cell (" + std::to_string(row) + ", " +
                         std::to_string(col) + ") outside " +
                         std::to_string(spec_.rows) + "x" +
                         std::to_string(spec_.cols) + " grid");
  return cells_[static_cast<std::size_t>(row) * spec_.cols + col];
}

namespace {

// Header: # gridspec origin_lat=<f> origin_lon=<f> rows=<n> cols=<n> cell_km=<f>
GridSpec parse_gridspec_header(const std::string& line, const std::string& path) {
  GridSpec spec;
  std::istringstream is(line);
  std::string hash, tag;
  is >> hash >> tag;
  if (hash != "#" || tag != "gridspec")
    throw ParseError(path, 1, "expected '# gridspec ...' header");
  std::string kv;
  bool got_lat = false, got_lon = false, got_rows = false, got_cols = false,
       got_cell = false;
  while (is >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ParseError(path, 1, "malformed header field '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    try {
      if (key == "origin_lat") { spec.origin_lat = std::stod(val); got_lat = true; }
      else if (key == "origin_lon") { spec.origin_lon = std::stod(val); got_lon = true; }
      else if (key == "rows") { spec.rows = std::stoi(val); got_rows = true; }
      else if (key == "cols") { spec.cols = std::stoi(val); got_cols = true; }
      else if (key == "cell_km") { spec.cell_km = std::stod(val); got_cell = true; }
      else throw ParseError(path, 1, "unknown header field '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ParseError(path, 1, "bad value for '" + key + "': " + val);
    } catch (const std::out_of_range&) {
      throw ParseError(path, 1, "value out of range for '" + key + "': " + val);
    }
  }
  if (!(got_lat && got_lon && got_rows && got_cols && got_cell))
    throw ParseError(path, 1, "header is missing gridspec fields");
  try {
    spec.validate();
  } catch (const Error& e) {
    throw ParseError(path, 1, e.what());
  }
  return spec;
}

}  // namespace

SeismicGrid SeismicGrid::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open zone grid file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path, 1, "empty zone grid file");
  const GridSpec spec = parse_gridspec_header(line, path);

  std::vector<ZoneLevel> cells(
      static_cast<std::size_t>(spec.rows) * static_cast<std::size_t>(spec.cols),
      ZoneLevel::None);
  long line_no = 1;
  // File rows run north to south; in-memory row 0 is the southernmost.
  for (int file_row = 0; file_row < spec.rows; ++file_row) {
    ++line_no;
    if (!std::getline(in, line))
      throw ParseError(path, line_no, "expected " + std::to_string(spec.rows) +
                                          " data rows, file ended early");
    const auto fields = detail::split(detail::trim(line), ',');
    if (static_cast<int>(fields.size()) != spec.cols)
      throw ParseError(path, line_no,
                       "expected " + std::to_string(spec.cols) + " columns, got " +
                           std::to_string(fields.size()));
    const int mem_row = spec.rows - 1 - file_row;
    for (int col = 0; col < spec.cols; ++col) {
      const std::string f = detail::trim(fields[col]);
      char* end = nullptr;
      const long v = std::strtol(f.c_str(), &end, 10);
      if (f.empty() || end == nullptr || *end != '\0')
        throw ParseError(path, line_no, "bad zone value '" + f + "' in column " +
                                            std::to_string(col + 1));
      try {
        cells[static_cast<std::size_t>(mem_row) * spec.cols + col] =
            zone_from_int(static_cast<int>(v));
      } catch (const Error& e) {
        throw ParseError(path, line_no, e.what());
      }
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::trim(line).empty())
      throw ParseError(path, line_no, "unexpected trailing content");
  }
  return SeismicGrid(spec, std::move(cells));
}

void SeismicGrid::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write zone grid file: " + path);
  out << "# gridspec origin_lat=" << detail::fmt_g(spec_.origin_lat)
      << " origin_lon=" << detail::fmt_g(spec_.origin_lon)
      << " rows=" << spec_.rows << " cols=" << spec_.cols
      << " cell_km=" << detail::fmt_g(spec_.cell_km) << "\n";
  for (int file_row = 0; file_row < spec_.rows; ++file_row) {
    const int mem_row = spec_.rows - 1 - file_row;
    for (int col = 0; col < spec_.cols; ++col) {
      if (col) out << ',';
      out << zone_rank(cells_[static_cast<std::size_t>(mem_row) * spec_.cols + col]);
    }
    out << "\n";
  }
}

}  // namespace szanr
