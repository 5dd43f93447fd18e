#ifndef GROUPFIX_IO_HPP
#define GROUPFIX_IO_HPP

#include <cstdint>
#include <map>
#include <string>

#include "groupfix/group.hpp"
#include "groupfix/molsym.hpp"
#include "groupfix/multab.hpp"
#include "groupfix/rotfit.hpp"

// File formats (all indices 0-based, all complex numbers [re, im] pairs):
//   table:    {"order": N, "table": [[...], ...], "identity": e}
//   matrices: [ M_0, ..., M_{N-1} ], each an n x n array of rows of [re, im]
//   pairs:    {"pairs": [ [ [a, b], ... ] per element ]}, a and b vectors
//   perms:    [ [p(0), ..., p(m-1)], ... ]
//   report:   [ {"kind", "axis", "angle_deg", "order_of_element"}, ... ]
// Traces are CSV with a header row and %.16e floats.

namespace groupfix {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

MultiplicationTable parse_table_json(const std::string& text);
std::string table_to_json(const MultiplicationTable& t);

std::vector<Matrix> parse_matrices_json(const std::string& text);
std::string matrices_to_json(const std::vector<Matrix>& ms);

VectorPairs parse_vector_pairs_json(const std::string& text);
std::string vector_pairs_to_json(const VectorPairs& v);

std::string permutations_to_json(const std::vector<Permutation>& perms);

std::string operation_report_to_json(const ApproxGroup& g);

std::string multab_trace_to_csv(const std::vector<MultabTraceRow>& trace);
std::string fit_trace_to_csv(const std::vector<FitTraceRow>& trace);

// Written alongside every CLI output; records what produced it. The
// timestamp field is the only non-reproducible content a run emits.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> inputs;
  std::map<std::string, double> thresholds;
  std::string algo;
  std::uint64_t seed = 0;
  bool seeded = false;

  std::string to_json() const;  // adds a UTC timestamp
};

}  // namespace groupfix

#endif
