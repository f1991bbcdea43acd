#ifndef SZANR_QUAKE_SIM_HPP
#define SZANR_QUAKE_SIM_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "szanr/geo_grid.hpp"
#include "szanr/lightpath.hpp"
#include "szanr/topology.hpp"

namespace szanr {

struct EarthquakeEvent {
  std::string id;
  std::string date;  // ISO-8601 calendar date
  double epicenter_lat = 0.0;
  double epicenter_lon = 0.0;
  double magnitude = 0.0;  // Richter
};

// Magnitude band mapped to the radius of minimum felt effect and the
// radius within which fiber links are assumed cut.
struct FailureBand {
  double mag_low = 0.0;    // inclusive
  double mag_high = 0.0;   // exclusive
  double realization_radius_km = 0.0;
  double failure_radius_km = 0.0;
};

class FailureModel {
public:
  explicit FailureModel(std::vector<FailureBand> bands);

  // Bands 4.5..9.5 with realization radii 100..500 km and failure radii
  // at half of those, 50..250 km.
  static FailureModel default_model();

  const std::vector<FailureBand>& bands() const { return bands_; }

  // Nullopt below the lowest band (no failures); OutOfModelError at or
  // above the highest band's upper bound. Never clamps.
  std::optional<FailureBand> band_for(double magnitude) const;
  std::optional<double> failure_radius(double magnitude) const;
  std::optional<double> realization_radius(double magnitude) const;

private:
  std::vector<FailureBand> bands_;  // ascending, non-overlapping
};

struct FailureSet {
  std::string event_id;
  std::set<LinkId> failed_links;
  std::set<NodeId> isolated_nodes;  // every incident link failed
  TopologySignature topo_sig;
};

// Euclidean distance from a point to the closed segment ab.
double segment_distance(const PlanePoint& epicenter, const PlanePoint& a,
                        const PlanePoint& b);

// A link fails when any point of its straight segment lies within the
// event's failure radius. Epicenters may project outside the grid.
FailureSet apply_event(const Topology& t, const GridSpec& spec,
                       const FailureModel& model, const EarthquakeEvent& e);

struct DemandVerdict {
  std::size_t assignment_index = 0;  // into LightpathSet::assignments
  bool survived = false;
};

// Verdicts for established demands only. An unprotected demand survives
// when its working path kept every link; a protected demand survives when
// working or backup did. Throws TopologyError on a signature mismatch.
std::vector<DemandVerdict> surviving_connections(const LightpathSet& lp,
                                                 const FailureSet& f);

// Catalog CSV: id,date,lat,lon,magnitude (header and '#' comments allowed).
std::vector<EarthquakeEvent> load_catalog_csv(const std::string& path);

}  // namespace szanr

#endif  // SZANR_QUAKE_SIM_HPP
