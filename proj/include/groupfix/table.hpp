#ifndef GROUPFIX_TABLE_HPP
#define GROUPFIX_TABLE_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "groupfix/errors.hpp"

namespace groupfix {

// Permutation of 0..m-1; p[i] is the image of point i.
using Permutation = std::vector<int>;

bool is_permutation(const Permutation& p);
Permutation identity_permutation(int m);
// Apply g first, then f: (f.g)[i] = f[g[i]].
Permutation compose(const Permutation& f, const Permutation& g);

// N x N index table, entry (i,j) = index of the product of elements i and j
// under the fixed convention "apply element j, then element i" (operator
// composition G_i G_j). Indices are 0-based everywhere, including files.
class MultiplicationTable {
 public:
  MultiplicationTable(int order, std::vector<int> entries_row_major);

  int order() const { return order_; }
  int operator()(int i, int j) const {
    return t_[static_cast<std::size_t>(i) * order_ + j];
  }

  // Index of the identity element; throws TableError if there is none.
  int identity() const;
  // Index k with (ik) = (ki) = identity; throws TableError if there is none.
  int inverse(int i) const;
  // Smallest k >= 1 with i^k = identity.
  int element_order(int i) const;

  const std::vector<int>& entries() const { return t_; }

 private:
  int order_;
  std::vector<int> t_;
};

struct TableViolation {
  std::string axiom;             // "latin-square", "identity", "inverse", "associativity"
  std::array<int, 3> witness;    // offending indices; unused slots are -1
  std::string detail;
};

struct ValidationReport {
  std::vector<TableViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

// Checks the four group-table axioms and reports each violation with a
// witness. The associativity scan is O(N^3); it always runs for N <= 512 and
// is skippable above that via check_associativity = false.
ValidationReport validate_table(const MultiplicationTable& t, bool check_associativity = true);

// Throws TableError if the report is non-empty (associativity checked per
// the N <= 512 rule unless forced).
void require_valid(const MultiplicationTable& t);

// Builds the table with (ij) = index of perms[i] . perms[j] (apply j first).
// Throws ClosureError if a composition is missing from the list, TableError
// on duplicates or a missing identity.
std::pair<MultiplicationTable, int> table_from_permutations(const std::vector<Permutation>& perms);

}  // namespace groupfix

#endif
