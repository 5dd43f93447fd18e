#include "groupfix/group.hpp"

#include "groupfix/linalg.hpp"
#include "groupfix/multab.hpp"

namespace groupfix {

ApproxGroup::ApproxGroup(MultiplicationTable t, std::vector<Matrix> els)
    : table(std::move(t)), elements(std::move(els)) {
  if (static_cast<int>(elements.size()) != table.order())
    throw DimensionError("element count does not match table order");
  const int n = elements.front().dim();
  for (const Matrix& m : elements) {
    if (m.dim() != n) throw DimensionError("group elements have mixed dimensions");
    if (!m.all_finite()) throw Error("group element contains non-finite entries");
  }
}

void reunitarize_elements(ApproxGroup& g) {
  for (Matrix& m : g.elements) m = reunitarize(m).mat();
}

double group_closure_error(const ApproxGroup& g) {
  return multab_error(violation_matrices(g));
}

}  // namespace groupfix
