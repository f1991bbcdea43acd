#ifndef SZANR_METRICS_HPP
#define SZANR_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "szanr/lightpath.hpp"
#include "szanr/quake_sim.hpp"

namespace szanr {

constexpr double kWdmChannelGhz = 50.0;
constexpr double kEonSlotGhz = 12.5;

struct EventMetrics {
  std::string event_id;
  std::size_t established = 0;
  std::size_t survived = 0;
  double esr = 1.0;
  double bandwidth_lost_thz = 0.0;
};

struct ScenarioReport {
  std::string scenario;  // e.g. "szanr-eon-dpp"
  std::vector<EventMetrics> events;
  std::optional<double> mean_esr;  // absent for an empty catalog
  double total_bandwidth_lost_thz = 0.0;
};

// survived / established; vacuously 1 when nothing was established.
// Throws Error on survived > established.
double esr(std::size_t established, std::size_t survived);

// Working bandwidth of disrupted established demands, in THz.
double bandwidth_lost_thz(const LightpathSet& lp,
                          const std::vector<DemandVerdict>& verdicts);

EventMetrics event_metrics(const std::string& event_id, const LightpathSet& lp,
                           const std::vector<DemandVerdict>& verdicts);

ScenarioReport make_scenario_report(const std::string& scenario,
                                    std::vector<EventMetrics> events);

struct ScenarioAggregate {
  std::string scenario;
  std::optional<double> mean_esr;
  double total_bandwidth_lost_thz = 0.0;
  // Deltas against the baseline (first) report.
  std::optional<double> mean_esr_delta;
  double bandwidth_delta_thz = 0.0;
  std::optional<double> bandwidth_reduction_ratio;  // this / baseline, when baseline > 0
};

struct Comparison {
  std::vector<std::string> scenarios;
  std::vector<std::string> event_ids;
  // esr[s][e] and loss[s][e] indexed by scenario then event.
  std::vector<std::vector<double>> esr;
  std::vector<std::vector<double>> loss_thz;
  std::vector<ScenarioAggregate> aggregates;
};

// Aligned per-event and aggregate comparison; the first report is the
// baseline. Throws Error when fewer than two reports are given or their
// event sequences differ.
Comparison compare(const std::vector<ScenarioReport>& reports);

// Per-event CSV: event_id,scenario,established,survived,esr,bandwidth_lost_thz
void write_event_csv(const ScenarioReport& report, const std::string& path,
                     const std::string& meta_spec_hash, unsigned long long meta_seed);

void write_report_json(const ScenarioReport& report, const std::string& path,
                       const std::string& meta_spec_hash, unsigned long long meta_seed);

ScenarioReport load_report_json(const std::string& path);

void write_comparison_csv(const Comparison& cmp, const std::string& path,
                          const std::string& meta_spec_hash, unsigned long long meta_seed);

void write_comparison_json(const Comparison& cmp, const std::string& path,
                           const std::string& meta_spec_hash, unsigned long long meta_seed);

}  // namespace szanr

#endif  // SZANR_METRICS_HPP
