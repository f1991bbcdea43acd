#include "szanr/lightpath.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>

#include <json.hpp>

namespace szanr {

using nlohmann::ordered_json;

const char* regime_name(Regime r) { return r == Regime::Wdm ? "wdm" : "eon"; }

const char* protection_name(Protection p) {
  return p == Protection::None ? "none" : "dpp";
}

SpectrumBitmap::SpectrumBitmap(int size) : size_(size) {
  if (size < 1) throw Error("spectrum bitmap needs at least one position");
  words_.assign((static_cast<std::size_t>(size) + 63) / 64, 0);
}

bool SpectrumBitmap::test(int i) const {
  if (i < 0 || i >= size_) throw Error("bitmap index out of range");
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void SpectrumBitmap::set(int i) {
  if (i < 0 || i >= size_) throw Error("bitmap index out of range");
  words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void SpectrumBitmap::set_range(int start, int count) {
  for (int i = start; i < start + count; ++i) set(i);
}

bool SpectrumBitmap::any_in_range(int start, int count) const {
  for (int i = start; i < start + count; ++i)
    if (test(i)) return true;
  return false;
}

SpectrumBitmap& SpectrumBitmap::operator|=(const SpectrumBitmap& other) {
  if (other.size_ != size_) throw Error("bitmap size mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

std::optional<int> first_fit(const SpectrumBitmap& occupancy, int n) {
  if (n < 1) throw Error("window size must be at least 1");
  int run = 0;
  for (int i = 0; i < occupancy.size(); ++i) {
    run = occupancy.test(i) ? 0 : run + 1;
    if (run == n) return i - n + 1;
  }
  return std::nullopt;
}

int uniform_int(std::mt19937_64& gen, int lo, int hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection below 2^64 mod range keeps the draw exactly uniform.
  const std::uint64_t min = (0 - range) % range;
  std::uint64_t x;
  do {
    x = gen();
  } while (x < min);
  return lo + static_cast<int>(x % range);
}

TopologySignature signature_of(const Topology& t) {
  TopologySignature sig;
  sig.node_count = t.nodes().size();
  sig.link_count = t.links().size();
  std::vector<LinkId> ids;
  for (const Link& l : t.links()) ids.push_back(l.id);
  std::sort(ids.begin(), ids.end());
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (const LinkId& id : ids) {
    for (char c : id) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= 0xffu;
    h *= 1099511628211ull;
  }
  sig.link_id_hash = h;
  sig.total_length_km = total_link_length(t);
  return sig;
}

std::size_t LightpathSet::established_count() const {
  std::size_t n = 0;
  for (const Assignment& a : assignments)
    if (a.status == AssignmentStatus::Established) ++n;
  return n;
}

std::vector<Demand> generate_demands(const Topology& t, std::uint64_t seed) {
  if (t.nodes().size() < 2) throw TopologyError("need at least two nodes");
  std::vector<NodeId> ids;
  for (const Node& n : t.nodes()) ids.push_back(n.id);
  std::sort(ids.begin(), ids.end());

  std::mt19937_64 gen(seed);
  std::vector<Demand> demands;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      Demand d;
      d.src = ids[i];
      d.dst = ids[j];
      d.slots_required = uniform_int(gen, 2, 10);
      d.wavelengths_required = 1;
      demands.push_back(std::move(d));
    }
  }
  return demands;
}

namespace {

std::vector<LinkId> path_link_ids(const Topology& t,
                                  const std::vector<NodeId>& nodes) {
  std::vector<LinkId> ids;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto li = t.find_link(nodes[i], nodes[i + 1]);
    if (!li) throw TopologyError("path uses a nonexistent link");
    ids.push_back(t.link(*li).id);
  }
  return ids;
}

bool link_disjoint(const std::vector<LinkId>& a, const std::vector<LinkId>& b) {
  const std::set<LinkId> sa(a.begin(), a.end());
  for (const LinkId& id : b)
    if (sa.count(id)) return false;
  return true;
}

SpectrumBitmap union_occupancy(const std::map<LinkId, SpectrumBitmap>& spectrum,
                               const std::vector<LinkId>& links, int capacity) {
  SpectrumBitmap u(capacity);
  for (const LinkId& id : links) u |= spectrum.at(id);
  return u;
}

}  // namespace

LightpathSet establish(const Topology& t, const std::vector<Demand>& demands,
                       Regime regime, Protection protection, int capacity,
                       int k) {
  if (capacity < 1) throw Error("capacity must be at least 1");
  if (k < 1) throw Error("k must be at least 1");

  LightpathSet lp;
  lp.regime = regime;
  lp.protection = protection;
  lp.capacity = capacity;
  lp.topo_sig = signature_of(t);
  for (const Link& l : t.links()) lp.spectrum.emplace(l.id, SpectrumBitmap(capacity));

  for (const Demand& d : demands) {
    Assignment as;
    as.demand = d;
    as.status = AssignmentStatus::Blocked;

    const int need =
        regime == Regime::Wdm ? d.wavelengths_required : d.slots_required;
    if (need < 1) throw Error("demand needs at least one channel or slot");

    const auto paths = k_shortest_paths(t, d.src, d.dst, k);
    std::vector<std::vector<LinkId>> path_links;
    path_links.reserve(paths.size());
    for (const Path& p : paths) path_links.push_back(path_link_ids(t, p.nodes));

    for (std::size_t i = 0; i < paths.size() && as.status != AssignmentStatus::Established; ++i) {
      const auto start =
          first_fit(union_occupancy(lp.spectrum, path_links[i], capacity), need);
      if (!start) continue;

      if (protection == Protection::None) {
        as.status = AssignmentStatus::Established;
        as.working_path = paths[i].nodes;
        as.working_links = path_links[i];
        as.working = {*start, need};
        break;
      }

      // DPP: a link-disjoint backup with its own first-fit window among
      // the other candidate paths; without one, the next working
      // candidate is tried.
      for (std::size_t j = 0; j < paths.size(); ++j) {
        if (j == i || !link_disjoint(path_links[i], path_links[j])) continue;
        const auto bstart = first_fit(
            union_occupancy(lp.spectrum, path_links[j], capacity), need);
        if (!bstart) continue;
        as.status = AssignmentStatus::Established;
        as.working_path = paths[i].nodes;
        as.working_links = path_links[i];
        as.working = {*start, need};
        as.backup_path = paths[j].nodes;
        as.backup_links = path_links[j];
        as.backup = ChannelRange{*bstart, need};
        break;
      }
    }

    if (as.status == AssignmentStatus::Established) {
      for (const LinkId& id : as.working_links)
        lp.spectrum.at(id).set_range(as.working.start, as.working.count);
      if (as.backup_links)
        for (const LinkId& id : *as.backup_links)
          lp.spectrum.at(id).set_range(as.backup->start, as.backup->count);
    }
    lp.assignments.push_back(std::move(as));
  }
  return lp;
}

void save_lightpaths_json(const LightpathSet& lp, const std::string& path,
                          const std::string& meta_spec_hash,
                          unsigned long long meta_seed) {
  ordered_json doc;
  doc["meta"] = {{"spec_hash", meta_spec_hash}, {"seed", meta_seed}};
  doc["regime"] = regime_name(lp.regime);
  doc["protection"] = protection_name(lp.protection);
  doc["capacity"] = lp.capacity;
  doc["established"] = lp.established_count();
  doc["blocked"] = lp.assignments.size() - lp.established_count();
  doc["assignments"] = ordered_json::array();
  for (const Assignment& a : lp.assignments) {
    ordered_json ja;
    ja["src"] = a.demand.src;
    ja["dst"] = a.demand.dst;
    ja["slots_required"] = a.demand.slots_required;
    ja["wavelengths_required"] = a.demand.wavelengths_required;
    ja["status"] =
        a.status == AssignmentStatus::Established ? "established" : "blocked";
    if (a.status == AssignmentStatus::Established) {
      ja["working_path"] = a.working_path;
      ja["working_start"] = a.working.start;
      ja["working_count"] = a.working.count;
      if (a.backup_path) {
        ja["backup_path"] = *a.backup_path;
        ja["backup_start"] = a.backup->start;
        ja["backup_count"] = a.backup->count;
      }
    }
    doc["assignments"].push_back(std::move(ja));
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write lightpath file: " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace szanr
