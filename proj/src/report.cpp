#include "dgforge/report.hpp"

#include <algorithm>
#include <ostream>

namespace dgforge {

Json table_json(const CohomologyTable& t) {
  Json rows = Json::array();
  for (auto& [n, e] : t.entries) rows.push_back({{"degree", n}, {"dim", e.dim}, {"certified", e.certified}});
  return rows;
}

Json betti_json(const BettiTable& b) {
  Json j;
  j["per_stage"] = b.per_stage;
  j["final_stage"] = b.final_stage;
  j["complete"] = b.complete;
  Json rows = Json::array();
  for (auto& [key, count] : b.entries) rows.push_back({{"stage", key.first}, {"degree", key.second}, {"count", count}});
  j["generators"] = rows;
  return j;
}

Json window_json(DegreeWindow w) { return Json::array({w.lo, w.hi}); }

Json verdict_json(const Verdict& v) {
  Json j;
  j["status"] = status_name(v.status);
  j["reason"] = v.reason;
  j["window"] = window_json(v.window);
  if (v.betti) j["betti"] = betti_json(*v.betti);
  if (!v.bettis.empty()) {
    Json b;
    for (auto& [name, t] : v.bettis) b[name] = betti_json(t);
    j["bettis"] = b;
  }
  if (!v.tables.empty()) {
    Json t;
    for (auto& [name, table] : v.tables) t[name] = table_json(table);
    j["tables"] = t;
  }
  return j;
}

template <class K> Json graded_dims_json(const FdDga<K>& a, const Subspace<K>& s) {
  Json j = Json::object();
  for (int n : a.degrees()) {
    auto idx = a.indices_in_degree(n);
    Mat<K> block(s.dim(), static_cast<Index>(idx.size()));
    for (Index r = 0; r < s.dim(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) block(r, static_cast<Index>(c)) = s.basis()(r, idx[c]);
    // s is graded, so its part in degree n has the rank of the projection
    Index d = Subspace<K>::from_rows(block).dim();
    if (d) j[std::to_string(n)] = d;
  }
  return j;
}

template <class K> Json algebra_summary(const FdDga<K>& a) {
  Json j;
  j["field"] = a.field().is_rational() ? "Q" : "Fp:" + std::to_string(a.field().prime);
  j["dim"] = a.dim();
  Json degs = Json::object();
  for (int n : a.degrees()) degs[std::to_string(n)] = a.indices_in_degree(n).size();
  j["dims"] = degs;
  return j;
}

template <class K> Json module_summary(const DgModule<K>& m) {
  Json j;
  j["dim"] = m.dim();
  Json degs = Json::object();
  for (int n : m.degrees()) degs[std::to_string(n)] = m.indices_in_degree(n).size();
  j["dims"] = degs;
  j["cohomology"] = table_json(m.cohomology().compact());
  return j;
}

Json violations_json(const std::vector<Violation>& v) {
  Json rows = Json::array();
  for (auto& x : v) rows.push_back({{"axiom", x.axiom}, {"detail", x.detail}});
  return rows;
}

namespace {

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool flat_object(const Json& j) {
  if (!j.is_object()) return false;
  return std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
}

bool is_table(const Json& j) {
  if (!j.is_array() || j.empty() || !flat_object(j.front())) return false;
  std::vector<std::string> keys;
  for (auto& [k, v] : j.front().items()) keys.push_back(k);
  for (auto& row : j) {
    if (!flat_object(row) || row.size() != keys.size()) return false;
    std::size_t i = 0;
    for (auto& [k, v] : row.items())
      if (k != keys[i++]) return false;
  }
  return true;
}

void render_table(const Json& rows, std::ostream& os, int indent) {
  std::vector<std::string> keys;
  for (auto& [k, v] : rows.front().items()) keys.push_back(k);
  std::vector<std::vector<std::string>> cells{keys};
  for (auto& row : rows) {
    std::vector<std::string> line;
    for (auto& k : keys) line.push_back(scalar_text(row[k]));
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(keys.size(), 0);
  for (auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  for (auto& line : cells) {
    os << std::string(indent, ' ');
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) os << "  ";
      os << std::string(width[c] - line[c].size(), ' ') << line[c];
    }
    os << "\n";
  }
}

}  // namespace

void render_human(const Json& j, std::ostream& os, int indent) {
  const std::string pad(indent, ' ');
  if (!j.is_object()) {
    os << pad << scalar_text(j) << "\n";
    return;
  }
  for (auto& [key, value] : j.items()) {
    if (value.is_primitive() ||
        (value.is_array() && std::all_of(value.begin(), value.end(), [](const Json& x) { return x.is_primitive(); }))) {
      os << pad << key << ": " << (value.is_array() ? value.dump() : scalar_text(value)) << "\n";
    } else if (is_table(value)) {
      os << pad << key << ":\n";
      render_table(value, os, indent + 2);
    } else if (value.is_array()) {
      os << pad << key << ":\n";
      for (auto& x : value) {
        render_human(x, os, indent + 2);
        if (x.is_object()) os << "\n";
      }
    } else {
      os << pad << key << ":\n";
      render_human(value, os, indent + 2);
    }
  }
}

#define DGFORGE_INSTANTIATE(K)                                                \
  template Json graded_dims_json<K>(const FdDga<K>&, const Subspace<K>&);     \
  template Json algebra_summary<K>(const FdDga<K>&);                          \
  template Json module_summary<K>(const DgModule<K>&);

DGFORGE_INSTANTIATE(Rational)
DGFORGE_INSTANTIATE(Fp)

}  // namespace dgforge
