#pragma once

// JSON serialization for table rows, golden-table loading and diffing, and
// the on-disk class-representative cache.

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "classify.hpp"
#include "outer.hpp"

namespace vinberg {

using nlohmann::json;

inline json to_json(const GradingRecord& r) {
  json j;
  j["type"] = r.type;
  j["twist"] = r.twist;
  j["m"] = r.m;
  j["kac"] = r.kac;
  j["rank"] = r.rank;
  j["degrees"] = r.degrees;
  j["stable"] = r.stable;
  if (r.degrees_source != "computed") j["degrees_source"] = r.degrees_source;
  if (r.isotropy) {
    j["isotropy"] = {{"det", r.isotropy->det_value},
                     {"divisors", r.isotropy->elementary_divisors},
                     {"s0_order", r.isotropy->s0_order}};
  }
  j["witness"] = {{"fingerprint_hash", r.witness_hash}, {"levi", r.witness_levi}};
  if (r.fallback_only) j["fallback_only"] = true;
  return j;
}

inline json to_json(const OuterRecord& r, const std::string& type) {
  json j;
  j["type"] = type;
  j["twist"] = 2;
  j["m"] = r.m;
  j["kac"] = r.kac;
  j["rank"] = r.rank;
  j["degrees"] = r.degrees;
  j["stable"] = r.stable;
  if (r.degrees_source != "computed") j["degrees_source"] = r.degrees_source;
  if (r.isotropy) {
    j["isotropy"] = {{"det", r.isotropy->det_value},
                     {"divisors", r.isotropy->elementary_divisors},
                     {"s0_order", r.isotropy->s0_order}};
  }
  j["witness"] = {{"fingerprint_hash", r.witness_hash}};
  return j;
}

inline json to_json(const StableRow& r, const std::string& type, int twist) {
  json j;
  j["type"] = type;
  j["twist"] = twist;
  j["m"] = r.m;
  j["unnormalized"] = r.unnormalized;
  j["kac"] = r.normalized;
  j["isotropy"] = {{"det", r.isotropy.det_value},
                   {"divisors", r.isotropy.elementary_divisors},
                   {"s0_order", r.isotropy.s0_order}};
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

// Golden rows are compared modulo annotations: only the fields below count,
// and Kac labels are compared through their canonical forms.
struct RowKey {
  Int m;
  std::vector<Int> kac;
  int rank;
  std::vector<Int> degrees;
  Int s0;
  friend bool operator<(const RowKey& a, const RowKey& b) {
    return std::tie(a.m, a.kac, a.rank, a.degrees, a.s0) < std::tie(b.m, b.kac, b.rank, b.degrees, b.s0);
  }
  friend bool operator==(const RowKey& a, const RowKey& b) {
    return std::tie(a.m, a.kac, a.rank, a.degrees, a.s0) == std::tie(b.m, b.kac, b.rank, b.degrees, b.s0);
  }
};

inline RowKey row_key_from_json(const json& row, const TwistedAffineDiagram& tad, bool with_rank, bool with_degrees,
                                bool with_s0) {
  RowKey k;
  k.m = row.at("m").get<Int>();
  std::vector<Int> kac = row.at("kac").get<std::vector<Int>>();
  k.kac = canonicalize(KacVector{&tad, kac}).s;
  k.rank = with_rank && row.contains("rank") ? row.at("rank").get<int>() : -1;
  if (with_degrees && row.contains("degrees")) k.degrees = row.at("degrees").get<std::vector<Int>>();
  k.s0 = with_s0 && row.contains("isotropy") ? row.at("isotropy").at("s0_order").get<Int>() : -1;
  return k;
}

struct TableDiff {
  std::vector<std::string> missing;  // in golden, not computed
  std::vector<std::string> extra;    // computed, not in golden
  bool identical() const { return missing.empty() && extra.empty(); }
};

inline std::string describe_key(const RowKey& k) {
  std::string s = "m=" + std::to_string(k.m) + " kac=";
  for (Int x : k.kac) s += std::to_string(x) + " ";
  if (k.rank >= 0) s += "rank=" + std::to_string(k.rank) + " ";
  if (!k.degrees.empty()) {
    s += "degrees=";
    for (Int d : k.degrees) s += std::to_string(d) + ",";
  }
  if (k.s0 >= 0) s += " s0=" + std::to_string(k.s0);
  return s;
}

inline TableDiff diff_rows(const std::vector<RowKey>& golden, const std::vector<RowKey>& computed) {
  std::multiset<RowKey> g(golden.begin(), golden.end()), c(computed.begin(), computed.end());
  TableDiff d;
  for (const auto& k : g)
    if (!c.count(k)) d.missing.push_back(describe_key(k));
  for (const auto& k : c)
    if (!g.count(k)) d.extra.push_back(describe_key(k));
  return d;
}

// ---------------------------------------------------------------------------
// Class-representative cache: one versioned record per elliptic class,
// validated on load by recomputing fingerprints.

inline std::string& cache_directory() {
  static std::string dir;
  return dir;
}

inline int cache_schema_version() { return 1; }

inline bool load_component_classes_cache(const TypeLabel& t, std::vector<ComponentClass>* out) {
  if (cache_directory().empty()) return false;
  std::filesystem::path p = std::filesystem::path(cache_directory()) / ("classes_" + t.str() + ".json");
  if (!std::filesystem::exists(p)) return false;
  json j;
  try {
    j = load_json_file(p.string());
  } catch (...) {
    return false;
  }
  if (!j.contains("schema") || j["schema"].get<int>() != cache_schema_version()) return false;
  if (j["type"].get<std::string>() != t.str()) return false;
  const RootSystem& rs = root_system(t.family, t.rank);
  std::vector<ComponentClass> classes;
  for (auto& row : j["classes"]) {
    ComponentClass c;
    c.type = t;
    for (auto& rj : row["reflection_roots"]) c.refl_roots.push_back(rj.get<Vec>());
    WeylAutomorphism w{&rs, class_matrix(rs, c.refl_roots)};
    c.print = fingerprint(w);
    c.order = c.print.order;
    if (c.print.hash() != row["fingerprint_hash"].get<std::uint64_t>()) return false;
    if (row["order"].get<Int>() != c.order) return false;
    if (row["char_poly"].get<std::vector<Int>>() != std::get<1>(c.print.powers.front())) return false;
    c.z_regular = is_z_regular(w);
    classes.push_back(std::move(c));
  }
  *out = std::move(classes);
  return true;
}

inline void save_component_classes_cache(const TypeLabel& t, const std::vector<ComponentClass>& classes) {
  if (cache_directory().empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(cache_directory(), ec);
  json rows = json::array();
  for (const auto& c : classes) {
    json row;
    row["order"] = c.order;
    row["char_poly"] = std::get<1>(c.print.powers.front());
    row["fingerprint_hash"] = c.print.hash();
    row["reflection_roots"] = c.refl_roots;
    rows.push_back(std::move(row));
  }
  json j;
  j["schema"] = cache_schema_version();
  j["type"] = t.str();
  j["classes"] = std::move(rows);
  std::filesystem::path p = std::filesystem::path(cache_directory()) / ("classes_" + t.str() + ".json");
  std::ofstream out(p);
  out << j.dump(1) << "\n";
}

inline void install_class_cache(const std::string& dir) {
  cache_directory() = dir;
  class_cache_loader() = load_component_classes_cache;
  class_cache_saver() = save_component_classes_cache;
}

}  // namespace vinberg
