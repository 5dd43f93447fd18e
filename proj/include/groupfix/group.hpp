#ifndef GROUPFIX_GROUP_HPP
#define GROUPFIX_GROUP_HPP

#include "groupfix/matrix.hpp"
#include "groupfix/table.hpp"

namespace groupfix {

// A finite group given as a list of approximate matrices bound to a
// multiplication table. Elements are not required to be unitary; the
// correction drivers re-unitarize them.
struct ApproxGroup {
  ApproxGroup(MultiplicationTable table, std::vector<Matrix> elements);

  int order() const { return table.order(); }
  int dim() const { return elements.front().dim(); }

  MultiplicationTable table;
  std::vector<Matrix> elements;
};

// Re-unitarizes every element in place (polar factor).
void reunitarize_elements(ApproxGroup& g);

// S_M of the group's violation matrices; 0 iff the matrices exactly satisfy
// the table.
double group_closure_error(const ApproxGroup& g);

}  // namespace groupfix

#endif
