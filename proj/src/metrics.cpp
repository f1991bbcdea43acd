#include "szanr/metrics.hpp"

#include <fstream>

#include <json.hpp>

#include "text_util.hpp"

namespace szanr {

using nlohmann::json;
using nlohmann::ordered_json;

double esr(std::size_t established, std::size_t survived) {
  if (survived > established)
    throw Error("survived count exceeds established count");
  if (established == 0) return 1.0;  // vacuous survival
  return static_cast<double>(survived) / static_cast<double>(established);
}

double bandwidth_lost_thz(const LightpathSet& lp,
                          const std::vector<DemandVerdict>& verdicts) {
  double ghz = 0.0;
  for (const DemandVerdict& v : verdicts) {
    if (v.survived) continue;
    const Assignment& a = lp.assignments.at(v.assignment_index);
    ghz += lp.regime == Regime::Eon
               ? a.demand.slots_required * kEonSlotGhz
               : a.demand.wavelengths_required * kWdmChannelGhz;
  }
  return ghz / 1000.0;
}

EventMetrics event_metrics(const std::string& event_id, const LightpathSet& lp,
                           const std::vector<DemandVerdict>& verdicts) {
  EventMetrics em;
  em.event_id = event_id;
  em.established = lp.established_count();
  em.survived = 0;
  for (const DemandVerdict& v : verdicts)
    if (v.survived) ++em.survived;
  em.esr = esr(em.established, em.survived);
  em.bandwidth_lost_thz = bandwidth_lost_thz(lp, verdicts);
  return em;
}

ScenarioReport make_scenario_report(const std::string& scenario,
                                    std::vector<EventMetrics> events) {
  ScenarioReport report;
  report.scenario = scenario;
  report.events = std::move(events);
  double esr_sum = 0.0;
  for (const EventMetrics& em : report.events) {
    esr_sum += em.esr;
    report.total_bandwidth_lost_thz += em.bandwidth_lost_thz;
  }
  if (!report.events.empty())
    report.mean_esr = esr_sum / static_cast<double>(report.events.size());
  return report;
}

Comparison compare(const std::vector<ScenarioReport>& reports) {
  if (reports.size() < 2)
    throw Error("comparison needs at least two scenario reports");
  for (std::size_t s = 1; s < reports.size(); ++s) {
    if (reports[s].events.size() != reports[0].events.size())
      throw Error("scenario reports cover different catalogs");
    for (std::size_t e = 0; e < reports[0].events.size(); ++e)
      if (reports[s].events[e].event_id != reports[0].events[e].event_id)
        throw Error("scenario reports cover different catalogs");
  }

  Comparison cmp;
  for (const EventMetrics& em : reports[0].events)
    cmp.event_ids.push_back(em.event_id);
  for (const ScenarioReport& r : reports) {
    cmp.scenarios.push_back(r.scenario);
    std::vector<double> esr_row, loss_row;
    for (const EventMetrics& em : r.events) {
      esr_row.push_back(em.esr);
      loss_row.push_back(em.bandwidth_lost_thz);
    }
    cmp.esr.push_back(std::move(esr_row));
    cmp.loss_thz.push_back(std::move(loss_row));

    ScenarioAggregate agg;
    agg.scenario = r.scenario;
    agg.mean_esr = r.mean_esr;
    agg.total_bandwidth_lost_thz = r.total_bandwidth_lost_thz;
    const ScenarioReport& base = reports[0];
    if (r.mean_esr && base.mean_esr)
      agg.mean_esr_delta = *r.mean_esr - *base.mean_esr;
    agg.bandwidth_delta_thz =
        r.total_bandwidth_lost_thz - base.total_bandwidth_lost_thz;
    if (base.total_bandwidth_lost_thz > 0.0)
      agg.bandwidth_reduction_ratio =
          r.total_bandwidth_lost_thz / base.total_bandwidth_lost_thz;
    cmp.aggregates.push_back(std::move(agg));
  }
  return cmp;
}

namespace {

std::string num(double v) { return detail::fmt_g(v, 12); }

}  // namespace

void write_event_csv(const ScenarioReport& report, const std::string& path,
                     const std::string& meta_spec_hash, unsigned long long meta_seed) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write metrics file: " + path);
  out << "# spec_hash=" << meta_spec_hash << " seed=" << meta_seed << "\n";
  out << "event_id,scenario,established,survived,esr,bandwidth_lost_thz\n";
  for (const EventMetrics& em : report.events) {
    out << em.event_id << ',' << report.scenario << ',' << em.established << ','
        << em.survived << ',' << num(em.esr) << ',' << num(em.bandwidth_lost_thz)
        << "\n";
  }
}

void write_report_json(const ScenarioReport& report, const std::string& path,
                       const std::string& meta_spec_hash, unsigned long long meta_seed) {
  ordered_json doc;
  doc["meta"] = {{"spec_hash", meta_spec_hash}, {"seed", meta_seed}};
  doc["scenario"] = report.scenario;
  doc["events"] = ordered_json::array();
  for (const EventMetrics& em : report.events) {
    ordered_json je;
    je["event_id"] = em.event_id;
    je["established"] = em.established;
    je["survived"] = em.survived;
    je["esr"] = em.esr;
    je["bandwidth_lost_thz"] = em.bandwidth_lost_thz;
    doc["events"].push_back(std::move(je));
  }
  // No mean over an empty catalog.
  if (report.mean_esr) doc["mean_esr"] = *report.mean_esr;
  doc["total_bandwidth_lost_thz"] = report.total_bandwidth_lost_thz;
  std::ofstream out(path);
  if (!out) throw Error("cannot write report file: " + path);
  out << doc.dump(2) << "\n";
}

ScenarioReport load_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open report file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
  ScenarioReport report;
  try {
    report.scenario = doc.at("scenario").get<std::string>();
    for (const auto& je : doc.at("events")) {
      EventMetrics em;
      em.event_id = je.at("event_id").get<std::string>();
      em.established = je.at("established").get<std::size_t>();
      em.survived = je.at("survived").get<std::size_t>();
      em.esr = je.at("esr").get<double>();
      em.bandwidth_lost_thz = je.at("bandwidth_lost_thz").get<double>();
      report.events.push_back(std::move(em));
    }
    if (doc.contains("mean_esr")) report.mean_esr = doc.at("mean_esr").get<double>();
    report.total_bandwidth_lost_thz =
        doc.at("total_bandwidth_lost_thz").get<double>();
  } catch (const json::exception& e) {
    throw ParseError(path, 0, std::string("bad report document: ") + e.what());
  }
  return report;
}

void write_comparison_csv(const Comparison& cmp, const std::string& path,
                          const std::string& meta_spec_hash, unsigned long long meta_seed) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write comparison file: " + path);
  out << "# spec_hash=" << meta_spec_hash << " seed=" << meta_seed << "\n";

  out << "# per-event esr\nevent_id";
  for (const auto& s : cmp.scenarios) out << ',' << s;
  out << "\n";
  for (std::size_t e = 0; e < cmp.event_ids.size(); ++e) {
    out << cmp.event_ids[e];
    for (std::size_t s = 0; s < cmp.scenarios.size(); ++s)
      out << ',' << num(cmp.esr[s][e]);
    out << "\n";
  }

  out << "# per-event bandwidth_lost_thz\nevent_id";
  for (const auto& s : cmp.scenarios) out << ',' << s;
  out << "\n";
  for (std::size_t e = 0; e < cmp.event_ids.size(); ++e) {
    out << cmp.event_ids[e];
    for (std::size_t s = 0; s < cmp.scenarios.size(); ++s)
      out << ',' << num(cmp.loss_thz[s][e]);
    out << "\n";
  }

  out << "# aggregate (deltas vs baseline '" << cmp.scenarios.front() << "')\n";
  out << "scenario,mean_esr,total_bandwidth_lost_thz,mean_esr_delta,"
         "bandwidth_delta_thz,bandwidth_reduction_ratio\n";
  for (const ScenarioAggregate& a : cmp.aggregates) {
    out << a.scenario << ',' << (a.mean_esr ? num(*a.mean_esr) : "") << ','
        << num(a.total_bandwidth_lost_thz) << ','
        << (a.mean_esr_delta ? num(*a.mean_esr_delta) : "") << ','
        << num(a.bandwidth_delta_thz) << ','
        << (a.bandwidth_reduction_ratio ? num(*a.bandwidth_reduction_ratio) : "")
        << "\n";
  }
}

void write_comparison_json(const Comparison& cmp, const std::string& path,
                           const std::string& meta_spec_hash, unsigned long long meta_seed) {
  ordered_json doc;
  doc["meta"] = {{"spec_hash", meta_spec_hash}, {"seed", meta_seed}};
  doc["baseline"] = cmp.scenarios.front();
  doc["scenarios"] = cmp.scenarios;
  doc["event_ids"] = cmp.event_ids;
  doc["esr"] = cmp.esr;
  doc["bandwidth_lost_thz"] = cmp.loss_thz;
  doc["aggregates"] = ordered_json::array();
  for (const ScenarioAggregate& a : cmp.aggregates) {
    ordered_json ja;
    ja["scenario"] = a.scenario;
    if (a.mean_esr) ja["mean_esr"] = *a.mean_esr;
    ja["total_bandwidth_lost_thz"] = a.total_bandwidth_lost_thz;
    if (a.mean_esr_delta) ja["mean_esr_delta"] = *a.mean_esr_delta;
    ja["bandwidth_delta_thz"] = a.bandwidth_delta_thz;
    if (a.bandwidth_reduction_ratio)
      ja["bandwidth_reduction_ratio"] = *a.bandwidth_reduction_ratio;
    doc["aggregates"].push_back(std::move(ja));
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write comparison file: " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace szanr
