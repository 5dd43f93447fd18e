#include "groupfix/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace groupfix {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
}

cplx parse_cplx(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json cplx_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

Matrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix must be a non-empty array of rows");
  const int n = static_cast<int>(j.size());
  Matrix m(n);
  for (int r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw Error("matrix row " + std::to_string(r) + " has wrong length");
    for (int c = 0; c < n; ++c) m(r, c) = parse_cplx(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(cplx_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Vector parse_cvector(const json& j) {
  if (!j.is_array()) throw Error("vector must be an array of [re, im] pairs");
  Vector v;
  v.reserve(j.size());
  for (const json& e : j) v.push_back(parse_cplx(e));
  return v;
}

json cvector_to_json(const Vector& v) {
  json a = json::array();
  for (const cplx& z : v) a.push_back(cplx_to_json(z));
  return a;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace

MultiplicationTable parse_table_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("order") || !j.contains("table"))
    throw Error("table file must be an object with 'order' and 'table'");
  const int order = j["order"].get<int>();
  const json& rows = j["table"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != order)
    throw Error("table must have 'order' rows");
  std::vector<int> entries;
  entries.reserve(static_cast<std::size_t>(order) * order);
  for (const json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != order)
      throw Error("table rows must have 'order' entries");
    for (const json& e : row) entries.push_back(e.get<int>());
  }
  MultiplicationTable t(order, std::move(entries));
  require_valid(t);
  if (j.contains("identity") && j["identity"].get<int>() != t.identity())
    throw TableError("stored identity index does not match the table");
  return t;
}

std::string table_to_json(const MultiplicationTable& t) {
  json rows = json::array();
  for (int i = 0; i < t.order(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < t.order(); ++j2) row.push_back(t(i, j2));
    rows.push_back(std::move(row));
  }
  json j{{"order", t.order()}, {"table", std::move(rows)}, {"identity", t.identity()}};
  return j.dump(2) + "\n";
}

std::vector<Matrix> parse_matrices_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_array() || j.empty()) throw Error("matrices file must be a non-empty array");
  std::vector<Matrix> ms;
  ms.reserve(j.size());
  for (const json& m : j) ms.push_back(parse_matrix(m));
  return ms;
}

std::string matrices_to_json(const std::vector<Matrix>& ms) {
  json j = json::array();
  for (const Matrix& m : ms) j.push_back(matrix_to_json(m));
  return j.dump(2) + "\n";
}

VectorPairs parse_vector_pairs_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("pairs"))
    throw Error("pairs file must be an object with 'pairs'");
  const json& elems = j["pairs"];
  if (!elems.is_array()) throw Error("'pairs' must be an array (one entry per group element)");
  VectorPairs v;
  v.per_element.reserve(elems.size());
  for (const json& list : elems) {
    if (!list.is_array()) throw Error("per-element pair lists must be arrays");
    std::vector<VectorPairs::Pair> pairs;
    pairs.reserve(list.size());
    for (const json& p : list) {
      if (!p.is_array() || p.size() != 2) throw Error("each pair must be [a, b]");
      pairs.push_back({parse_cvector(p[0]), parse_cvector(p[1])});
    }
    v.per_element.push_back(std::move(pairs));
  }
  return v;
}

std::string vector_pairs_to_json(const VectorPairs& v) {
  json elems = json::array();
  for (const auto& list : v.per_element) {
    json jl = json::array();
    for (const VectorPairs::Pair& p : list)
      jl.push_back(json::array({cvector_to_json(p.a), cvector_to_json(p.b)}));
    elems.push_back(std::move(jl));
  }
  json j{{"pairs", std::move(elems)}};
  return j.dump(2) + "\n";
}

std::string permutations_to_json(const std::vector<Permutation>& perms) {
  json j = json::array();
  for (const Permutation& p : perms) j.push_back(p);
  return j.dump(2) + "\n";
}

std::string operation_report_to_json(const ApproxGroup& g) {
  json j = json::array();
  for (int i = 0; i < g.order(); ++i) {
    const OperationInfo info = classify_operation(g.elements[static_cast<std::size_t>(i)]);
    json entry{{"kind", info.kind == OperationKind::proper ? "proper" : "improper"},
               {"angle_deg", info.angle_deg},
               {"order_of_element", g.table.element_order(i)}};
    if (info.axis_defined)
      entry["axis"] = json::array({info.axis[0], info.axis[1], info.axis[2]});
    else
      entry["axis"] = nullptr;
    j.push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

std::string multab_trace_to_csv(const std::vector<MultabTraceRow>& trace) {
  std::string s = "iteration,S_M\n";
  for (const MultabTraceRow& r : trace)
    s += std::to_string(r.iteration) + "," + fmt17(r.s_m) + "\n";
  return s;
}

std::string fit_trace_to_csv(const std::vector<FitTraceRow>& trace) {
  std::string s = "iteration,S_M,S_Q,delta_S_Q,norm_R\n";
  for (const FitTraceRow& r : trace)
    s += std::to_string(r.iteration) + "," + fmt17(r.s_m) + "," + fmt17(r.s_q) + "," +
         fmt17(r.delta_s_q) + "," + fmt17(r.norm_r) + "\n";
  return s;
}

std::string RunManifest::to_json() const {
  char stamp[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

  json j{{"command", command},
         {"inputs", inputs},
         {"thresholds", thresholds},
         {"timestamp", stamp}};
  if (!algo.empty()) j["algo"] = algo;
  if (seeded) j["seed"] = seed;
  return j.dump(2) + "\n";
}

}  // namespace groupfix
