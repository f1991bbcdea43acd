#include "szanr/quake_sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "text_util.hpp"

namespace szanr {

FailureModel::FailureModel(std::vector<FailureBand> bands)
    : bands_(std::move(bands)) {
  if (bands_.empty()) throw Error("failure model needs at least one band");
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    const FailureBand& b = bands_[i];
    if (!(b.mag_low < b.mag_high))
      throw Error("band magnitude bounds must satisfy low < high");
    if (b.realization_radius_km < 0.0 || b.failure_radius_km < 0.0)
      throw Error("band radii must be non-negative");
    if (i > 0 && bands_[i - 1].mag_high > b.mag_low)
      throw Error("bands must be ascending and non-overlapping");
  }
}

FailureModel FailureModel::default_model() {
  return FailureModel({
      {4.5, 5.5, 100.0, 50.0},
      {5.5, 6.5, 200.0, 100.0},
      {6.5, 7.5, 300.0, 150.0},
      {7.5, 8.5, 400.0, 200.0},
      {8.5, 9.5, 500.0, 250.0},
  });
}

std::optional<FailureBand> FailureModel::band_for(double magnitude) const {
  if (!std::isfinite(magnitude))
    throw Error("magnitude must be finite");
  if (magnitude < bands_.front().mag_low) return std::nullopt;
  if (magnitude >= bands_.back().mag_high)
    throw OutOfModelError("magnitude " + detail::fmt_g(magnitude) +
                          " is at or above the model's upper bound " +
                          detail::fmt_g(bands_.back().mag_high));
  for (const FailureBand& b : bands_)
    if (magnitude >= b.mag_low && magnitude < b.mag_high) return b;
  return std::nullopt;  // gap between bands
}

std::optional<double> FailureModel::failure_radius(double magnitude) const {
  const auto band = band_for(magnitude);
  if (!band) return std::nullopt;
  return band->failure_radius_km;
}

std::optional<double> FailureModel::realization_radius(double magnitude) const {
  const auto band = band_for(magnitude);
  if (!band) return std::nullopt;
  return band->realization_radius_km;
}

double segment_distance(const PlanePoint& epicenter, const PlanePoint& a,
                        const PlanePoint& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return std::hypot(epicenter.x - a.x, epicenter.y - a.y);
  double u = ((epicenter.x - a.x) * dx + (epicenter.y - a.y) * dy) / len2;
  u = std::clamp(u, 0.0, 1.0);
  return std::hypot(epicenter.x - (a.x + u * dx), epicenter.y - (a.y + u * dy));
}

FailureSet apply_event(const Topology& t, const GridSpec& spec,
                       const FailureModel& model, const EarthquakeEvent& e) {
  FailureSet fs;
  fs.event_id = e.id;
  fs.topo_sig = signature_of(t);

  std::optional<double> radius;
  try {
    radius = model.failure_radius(e.magnitude);
  } catch (const OutOfModelError& ex) {
    throw OutOfModelError(std::string(ex.what()) + " (event '" + e.id + "')");
  }
  if (!radius) return fs;  // below the model's lowest band

  const PlanePoint epi = project(e.epicenter_lat, e.epicenter_lon, spec);
  for (const Link& l : t.links()) {
    const Node& na = t.node(l.a);
    const Node& nb = t.node(l.b);
    const PlanePoint pa = project(na.lat, na.lon, spec);
    const PlanePoint pb = project(nb.lat, nb.lon, spec);
    if (segment_distance(epi, pa, pb) <= *radius) fs.failed_links.insert(l.id);
  }
  for (const Node& n : t.nodes()) {
    const auto& incident = t.incident_links(n.id);
    if (incident.empty()) continue;
    const bool all_gone =
        std::all_of(incident.begin(), incident.end(), [&](std::size_t li) {
          return fs.failed_links.count(t.link(li).id) != 0;
        });
    if (all_gone) fs.isolated_nodes.insert(n.id);
  }
  return fs;
}

std::vector<DemandVerdict> surviving_connections(const LightpathSet& lp,
                                                 const FailureSet& f) {
  if (!(lp.topo_sig == f.topo_sig))
    throw TopologyError(
        "lightpaths and failure set were computed on different topologies");

  const auto intact = [&](const std::vector<LinkId>& links) {
    return std::none_of(links.begin(), links.end(), [&](const LinkId& id) {
      return f.failed_links.count(id) != 0;
    });
  };

  std::vector<DemandVerdict> verdicts;
  for (std::size_t i = 0; i < lp.assignments.size(); ++i) {
    const Assignment& a = lp.assignments[i];
    if (a.status != AssignmentStatus::Established) continue;
    bool survived = intact(a.working_links);
    if (!survived && a.backup_links) survived = intact(*a.backup_links);
    verdicts.push_back({i, survived});
  }
  return verdicts;
}

namespace {

bool iso_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  const int month = std::stoi(s.substr(5, 2));
  const int day = std::stoi(s.substr(8, 2));
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

double parse_double(const std::string& s, const std::string& path, long line,
                    const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, line, "bad " + field + " value '" + s + "'");
  }
}

}  // namespace

std::vector<EarthquakeEvent> load_catalog_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open catalog file: " + path);

  std::vector<EarthquakeEvent> events;
  std::set<std::string> ids;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s == "id,date,lat,lon,magnitude") continue;  // header
    const auto fields = detail::split(s, ',');
    if (fields.size() != 5)
      throw ParseError(path, line_no, "expected 5 fields, got " +
                                          std::to_string(fields.size()));
    EarthquakeEvent e;
    e.id = detail::trim(fields[0]);
    e.date = detail::trim(fields[1]);
    if (e.id.empty()) throw ParseError(path, line_no, "empty event id");
    if (!ids.insert(e.id).second)
      throw ParseError(path, line_no, "duplicate event id '" + e.id + "'");
    if (!iso_date(e.date))
      throw ParseError(path, line_no, "date '" + e.date + "' is not ISO-8601");
    e.epicenter_lat = parse_double(detail::trim(fields[2]), path, line_no, "lat");
    e.epicenter_lon = parse_double(detail::trim(fields[3]), path, line_no, "lon");
    e.magnitude = parse_double(detail::trim(fields[4]), path, line_no, "magnitude");
    if (!std::isfinite(e.epicenter_lat) || std::abs(e.epicenter_lat) > 90.0)
      throw ParseError(path, line_no, "latitude out of range");
    if (!std::isfinite(e.epicenter_lon))
      throw ParseError(path, line_no, "longitude must be finite");
    if (!std::isfinite(e.magnitude) || e.magnitude < 0.0)
      throw ParseError(path, line_no, "magnitude must be finite and non-negative");
    events.push_back(std::move(e));
  }
  return events;
}

}  // namespace szanr
