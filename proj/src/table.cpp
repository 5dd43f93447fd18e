#include "groupfix/table.hpp"

#include <algorithm>
#include <map>

namespace groupfix {

bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)])
      return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

Permutation identity_permutation(int m) {
  Permutation p(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  if (f.size() != g.size()) throw DimensionError("permutation sizes do not match");
  Permutation r(f.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    r[i] = f[static_cast<std::size_t>(g[i])];
  return r;
}

MultiplicationTable::MultiplicationTable(int order, std::vector<int> entries_row_major)
    : order_(order), t_(std::move(entries_row_major)) {
  if (order <= 0) throw TableError("table order must be positive");
  if (t_.size() != static_cast<std::size_t>(order) * order)
    throw TableError("table has wrong number of entries");
  for (int v : t_)
    if (v < 0 || v >= order) throw TableError("table entry out of range");
}

int MultiplicationTable::identity() const {
  for (int e = 0; e < order_; ++e) {
    bool ok = true;
    for (int j = 0; j < order_ && ok; ++j)
      ok = (*this)(e, j) == j && (*this)(j, e) == j;
    if (ok) return e;
  }
  throw TableError("table has no identity element");
}

int MultiplicationTable::inverse(int i) const {
  const int e = identity();
  for (int k = 0; k < order_; ++k)
    if ((*this)(i, k) == e && (*this)(k, i) == e) return k;
  throw TableError("element " + std::to_string(i) + " has no inverse");
}

int MultiplicationTable::element_order(int i) const {
  const int e = identity();
  int acc = i;
  for (int k = 1; k <= order_; ++k) {
    if (acc == e) return k;
    acc = (*this)(acc, i);
  }
  throw TableError("element order not found (table is not a group)");
}

std::string ValidationReport::str() const {
  if (ok()) return "valid";
  std::string s;
  for (const TableViolation& v : violations) {
    if (!s.empty()) s += "; ";
    s += v.axiom + " (" + v.detail + ")";
  }
  return s;
}

ValidationReport validate_table(const MultiplicationTable& t, bool check_associativity) {
  ValidationReport rep;
  const int n = t.order();

  // Latin square: each row and column is a permutation of 0..N-1
  for (int i = 0; i < n; ++i) {
    std::vector<bool> row(static_cast<std::size_t>(n), false), col(row);
    for (int j = 0; j < n; ++j) {
      const int rv = t(i, j), cv = t(j, i);
      if (row[static_cast<std::size_t>(rv)])
        rep.violations.push_back({"latin-square", {i, j, rv},
                                  "row " + std::to_string(i) + " repeats entry " + std::to_string(rv)});
      if (col[static_cast<std::size_t>(cv)])
        rep.violations.push_back({"latin-square", {j, i, cv},
                                  "column " + std::to_string(i) + " repeats entry " + std::to_string(cv)});
      row[static_cast<std::size_t>(rv)] = true;
      col[static_cast<std::size_t>(cv)] = true;
    }
  }

  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = t(c, j) == j && t(j, c) == j;
    if (ok) e = c;
  }
  if (e < 0) {
    rep.violations.push_back({"identity", {-1, -1, -1}, "no two-sided identity element"});
  } else {
    for (int i = 0; i < n; ++i) {
      bool has_inverse = false;
      for (int k = 0; k < n && !has_inverse; ++k)
        has_inverse = t(i, k) == e && t(k, i) == e;
      if (!has_inverse)
        rep.violations.push_back({"inverse", {i, -1, -1},
                                  "element " + std::to_string(i) + " has no two-sided inverse"});
    }
  }

  if (check_associativity) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (t(t(i, j), k) != t(i, t(j, k))) {
            rep.violations.push_back({"associativity", {i, j, k},
                                      "((" + std::to_string(i) + " " + std::to_string(j) + ") " +
                                          std::to_string(k) + ") != (" + std::to_string(i) + " (" +
                                          std::to_string(j) + " " + std::to_string(k) + "))"});
            // one witness per (i,j) pair keeps the report readable
            break;
          }
  }
  return rep;
}

void require_valid(const MultiplicationTable& t) {
  const ValidationReport rep = validate_table(t, t.order() <= 512);
  if (!rep.ok()) throw TableError("invalid multiplication table: " + rep.str());
}

std::pair<MultiplicationTable, int> table_from_permutations(const std::vector<Permutation>& perms) {
  const int n = static_cast<int>(perms.size());
  if (n == 0) throw TableError("empty permutation list");
  const std::size_t m = perms.front().size();

  std::map<Permutation, int> index;
  for (int i = 0; i < n; ++i) {
    const Permutation& p = perms[static_cast<std::size_t>(i)];
    if (p.size() != m || !is_permutation(p))
      throw TableError("entry " + std::to_string(i) + " is not a permutation of the point set");
    if (!index.emplace(p, i).second)
      throw TableError("duplicate permutation at index " + std::to_string(i));
  }

  const auto id_it = index.find(identity_permutation(static_cast<int>(m)));
  if (id_it == index.end()) throw TableError("identity permutation missing from the list");

  std::vector<int> entries(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Permutation prod =
          compose(perms[static_cast<std::size_t>(i)], perms[static_cast<std::size_t>(j)]);
      const auto it = index.find(prod);
      if (it == index.end())
        throw ClosureError("composition of permutations " + std::to_string(i) + " and " +
                           std::to_string(j) + " is not in the list");
      entries[static_cast<std::size_t>(i) * n + j] = it->second;
    }

  return {MultiplicationTable(n, std::move(entries)), id_it->second};
}

}  // namespace groupfix
