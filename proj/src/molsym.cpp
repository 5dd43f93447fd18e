#include "groupfix/molsym.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <cctype>
#include <sstream>

namespace groupfix {

std::array<double, 3> MolecularGeometry::centroid() const {
  if (atoms.empty()) throw GeometryError("geometry has no atoms");
  std::array<double, 3> c{0, 0, 0};
  for (const Atom& a : atoms)
    for (int k = 0; k < 3; ++k) c[static_cast<std::size_t>(k)] += a.pos[static_cast<std::size_t>(k)];
  for (double& v : c) v /= static_cast<double>(atoms.size());
  return c;
}

MolecularGeometry MolecularGeometry::centered() const {
  const std::array<double, 3> c = centroid();
  MolecularGeometry out = *this;
  for (Atom& a : out.atoms)
    for (int k = 0; k < 3; ++k) a.pos[static_cast<std::size_t>(k)] -= c[static_cast<std::size_t>(k)];
  return out;
}

MolecularGeometry load_xyz(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++lineno;
  long count = 0;
  try {
    std::size_t pos = 0;
    count = std::stol(line, &pos);
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos != line.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError("malformed atom count '" + line + "'", lineno);
  }
  if (count <= 0) throw ParseError("atom count must be positive", lineno);

  if (!std::getline(in, line)) throw ParseError("missing comment line", 2);
  ++lineno;

  MolecularGeometry geom;
  geom.atoms.reserve(static_cast<std::size_t>(count));
  while (static_cast<long>(geom.atoms.size()) < count) {
    if (!std::getline(in, line))
      throw ParseError("expected " + std::to_string(count) + " atoms, found " +
                           std::to_string(geom.atoms.size()),
                       lineno + 1);
    ++lineno;
    std::istringstream ls(line);
    Atom a;
    std::string sx, sy, sz;
    if (!(ls >> a.element >> sx >> sy >> sz))
      throw ParseError("malformed atom line '" + line + "'", lineno);
    const std::array<const std::string*, 3> fields{&sx, &sy, &sz};
    for (int k = 0; k < 3; ++k) {
      try {
        std::size_t pos = 0;
        a.pos[static_cast<std::size_t>(k)] = std::stod(*fields[static_cast<std::size_t>(k)], &pos);
        if (pos != fields[static_cast<std::size_t>(k)]->size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("bad coordinate '" + *fields[static_cast<std::size_t>(k)] + "'", lineno);
      }
      if (!std::isfinite(a.pos[static_cast<std::size_t>(k)]))
        throw ParseError("non-finite coordinate", lineno);
    }
    geom.atoms.push_back(std::move(a));
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") != std::string::npos)
      throw ParseError("unexpected content after " + std::to_string(count) + " atoms", lineno);
  }
  return geom;
}

std::string save_xyz(const MolecularGeometry& geom, const std::string& comment) {
  std::string out = std::to_string(geom.atoms.size()) + "\n" + comment + "\n";
  char buf[128];
  for (const Atom& a : geom.atoms) {
    std::snprintf(buf, sizeof buf, "%s %.10f %.10f %.10f\n", a.element.c_str(), a.pos[0],
                  a.pos[1], a.pos[2]);
    out += buf;
  }
  return out;
}

namespace {

std::vector<double> distance_matrix(const MolecularGeometry& g) {
  const int m = g.size();
  std::vector<double> d(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double t = g.atoms[static_cast<std::size_t>(i)].pos[static_cast<std::size_t>(k)] -
                         g.atoms[static_cast<std::size_t>(j)].pos[static_cast<std::size_t>(k)];
        acc += t * t;
      }
      const double dist = std::sqrt(acc);
      d[static_cast<std::size_t>(i) * m + j] = dist;
      d[static_cast<std::size_t>(j) * m + i] = dist;
    }
  return d;
}

struct PermSearch {
  const MolecularGeometry& geom;
  const std::vector<double>& dist;
  int m;
  double tol;
  std::uint64_t node_budget;
  std::uint64_t nodes = 0;

  std::vector<std::vector<int>> candidates;  // fingerprint-compatible images
  std::vector<int> assign;
  std::vector<bool> used;
  std::vector<Permutation> found;

  double d(int i, int j) const { return dist[static_cast<std::size_t>(i) * m + j]; }

  void build_candidates() {
    // Sorted distance fingerprints; a valid image must match entrywise
    // within tol (bottleneck matching of two multisets is achieved in
    // sorted order, so this never discards a true image).
    std::vector<std::vector<double>> fp(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      auto& f = fp[static_cast<std::size_t>(i)];
      f.reserve(static_cast<std::size_t>(m) - 1);
      for (int j = 0; j < m; ++j)
        if (j != i) f.push_back(d(i, j));
      std::sort(f.begin(), f.end());
    }
    candidates.assign(static_cast<std::size_t>(m), {});
    for (int i = 0; i < m; ++i)
      for (int c = 0; c < m; ++c) {
        if (geom.atoms[static_cast<std::size_t>(i)].element !=
            geom.atoms[static_cast<std::size_t>(c)].element)
          continue;
        bool ok = true;
        const auto& fi = fp[static_cast<std::size_t>(i)];
        const auto& fc = fp[static_cast<std::size_t>(c)];
        for (std::size_t k = 0; k < fi.size() && ok; ++k)
          ok = std::abs(fi[k] - fc[k]) <= tol;
        if (ok) candidates[static_cast<std::size_t>(i)].push_back(c);
      }
  }

  void run() {
    build_candidates();
    assign.assign(static_cast<std::size_t>(m), -1);
    used.assign(static_cast<std::size_t>(m), false);
    extend(0);
  }

  void extend(int depth) {
    if (depth == m) {
      found.emplace_back(assign.begin(), assign.end());
      return;
    }
    for (int c : candidates[static_cast<std::size_t>(depth)]) {
      if (used[static_cast<std::size_t>(c)]) continue;
      if (++nodes > node_budget)
        throw SearchLimitError("permutation search exceeded " + std::to_string(node_budget) +
                               " nodes; geometry too ambiguous at this tolerance");
      bool ok = true;
      for (int j = 0; j < depth && ok; ++j)
        ok = std::abs(d(depth, j) - d(c, assign[static_cast<std::size_t>(j)])) <= tol;
      if (!ok) continue;
      assign[static_cast<std::size_t>(depth)] = c;
      used[static_cast<std::size_t>(c)] = true;
      extend(depth + 1);
      used[static_cast<std::size_t>(c)] = false;
      assign[static_cast<std::size_t>(depth)] = -1;
    }
  }
};

}  // namespace

SymmetryPermutations find_symmetry_permutations(const MolecularGeometry& geom, double tol,
                                                const SearchLimits& limits) {
  if (tol <= 0) throw Error("tolerance must be positive");
  if (geom.atoms.empty()) throw GeometryError("geometry has no atoms");

  const MolecularGeometry c = geom.centered();
  const std::vector<double> dist = distance_matrix(c);
  PermSearch search{c, dist, c.size(), tol, limits.max_nodes, 0, {}, {}, {}, {}};
  search.run();

  std::sort(search.found.begin(), search.found.end());
  const std::set<Permutation> all(search.found.begin(), search.found.end());
  for (const Permutation& p : search.found)
    for (const Permutation& q : search.found)
      if (!all.count(compose(p, q)))
        throw ClosureError(
            "permutation set of order " + std::to_string(search.found.size()) +
            " is not closed under composition at tol " + std::to_string(tol) +
            "; adjust the tolerance to the distortion level");

  return {std::move(search.found), tol};
}

VectorPairs vector_pairs_from_permutations(const MolecularGeometry& geom,
                                           const SymmetryPermutations& s) {
  const MolecularGeometry c = geom.centered();
  const int m = c.size();
  VectorPairs v;
  v.per_element.reserve(s.perms.size());
  for (const Permutation& p : s.perms) {
    std::vector<VectorPairs::Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      VectorPairs::Pair pr;
      pr.a.resize(3);
      pr.b.resize(3);
      for (int k = 0; k < 3; ++k) {
        pr.a[static_cast<std::size_t>(k)] =
            c.atoms[static_cast<std::size_t>(j)].pos[static_cast<std::size_t>(k)];
        pr.b[static_cast<std::size_t>(k)] =
            c.atoms[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])].pos[static_cast<std::size_t>(k)];
      }
      pairs.push_back(std::move(pr));
    }
    v.per_element.push_back(std::move(pairs));
  }
  return v;
}

ApproxGroup initial_group_guess(const MolecularGeometry& geom, const SymmetryPermutations& s) {
  const MolecularGeometry c = geom.centered();

  Matrix moment(3);
  for (const Atom& a : c.atoms)
    for (int r = 0; r < 3; ++r)
      for (int col = 0; col < 3; ++col)
        moment(r, col) += a.pos[static_cast<std::size_t>(r)] * a.pos[static_cast<std::size_t>(col)];
  const Svd f = svd(moment);
  if (f.sigma.back() <= 1e-10 * f.sigma.front())
    throw GeometryError("degenerate geometry: atom positions do not span 3 dimensions");

  const TargetMatrices q = q_from_vector_pairs(vector_pairs_from_permutations(c, s));
  std::vector<Matrix> elements;
  elements.reserve(q.q.size());
  for (const Matrix& qi : q.q) elements.push_back(reunitarize(qi).mat());

  auto [table, identity] = table_from_permutations(s.perms);
  (void)identity;
  return ApproxGroup(std::move(table), std::move(elements));
}

MolecularGeometry symmetrize_geometry(const MolecularGeometry& geom, const ApproxGroup& g,
                                      const SymmetryPermutations& s) {
  if (s.order() != g.order()) throw DimensionError("permutation count does not match group order");
  const double s_m = group_closure_error(g);
  if (s_m > 1e-8)
    throw Error("symmetrize_geometry: group is not table-consistent (S_M = " +
                std::to_string(s_m) + ")");

  const MolecularGeometry c = geom.centered();
  const int m = c.size();
  MolecularGeometry out = c;
  for (int j = 0; j < m; ++j) {
    Vector acc(3, cplx{});
    for (int i = 0; i < g.order(); ++i) {
      const int pj = s.perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      Vector r(3);
      for (int k = 0; k < 3; ++k)
        r[static_cast<std::size_t>(k)] = c.atoms[static_cast<std::size_t>(pj)].pos[static_cast<std::size_t>(k)];
      const Vector mapped = g.elements[static_cast<std::size_t>(i)].adjoint() * r;
      for (int k = 0; k < 3; ++k) acc[static_cast<std::size_t>(k)] += mapped[static_cast<std::size_t>(k)];
    }
    for (int k = 0; k < 3; ++k)
      out.atoms[static_cast<std::size_t>(j)].pos[static_cast<std::size_t>(k)] =
          acc[static_cast<std::size_t>(k)].real() / g.order();
  }
  return out;
}

namespace {

double max_imag(const Matrix& m) {
  double v = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) v = std::max(v, std::abs(m(r, c).imag()));
  return v;
}

std::array<double, 3> unit_axis_with_sign(std::array<double, 3> a) {
  double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  for (double& v : a) v /= n;
  for (double v : a) {
    if (std::abs(v) > 1e-10) {
      if (v < 0)
        for (double& w : a) w = -w;
      break;
    }
  }
  return a;
}

// Unit null vector of the real 3x3 (M - lambda I), lambda = +-1, via SVD.
std::array<double, 3> eigen_axis(const Matrix& m, double lambda) {
  Matrix shifted = m;
  shifted -= lambda * Matrix::identity(3);
  const Svd f = svd(shifted);
  // right singular vector of the smallest singular value = last row of Vh
  std::array<double, 3> axis;
  for (int k = 0; k < 3; ++k) axis[static_cast<std::size_t>(k)] = std::real(std::conj(f.vh(2, k)));
  return unit_axis_with_sign(axis);
}

}  // namespace

OperationInfo classify_operation(const Matrix& m, double orth_tol) {
  if (m.dim() != 3) throw DimensionError("classify_operation expects a 3x3 matrix");
  if (max_imag(m) > orth_tol) throw Error("classify_operation expects a real matrix");
  const double orth_err = unitarity_error(m);
  if (orth_err > orth_tol)
    throw NotUnitaryError("matrix is not orthogonal (error " + std::to_string(orth_err) + ")");

  const double tr = m.trace().real();
  double det = 0.0;
  {
    auto e = [&](int r, int c) { return m(r, c).real(); };
    det = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
          e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
          e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  }

  OperationInfo info{};
  info.kind = det > 0 ? OperationKind::proper : OperationKind::improper;

  const Matrix eye = Matrix::identity(3);
  if (info.kind == OperationKind::proper) {
    Matrix d = m;
    d -= eye;
    if (frobenius_norm(d) <= orth_tol) {  // identity
      info.axis_defined = false;
      info.angle_deg = 0.0;
      return info;
    }
    const double c = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
    info.angle_deg = std::acos(c) * 180.0 / M_PI;
    info.axis_defined = true;
    info.axis = eigen_axis(m, 1.0);
  } else {
    Matrix d = m;
    d += eye;
    if (frobenius_norm(d) <= orth_tol) {  // inversion
      info.axis_defined = false;
      info.angle_deg = 0.0;
      return info;
    }
    const double c = std::clamp((tr + 1.0) / 2.0, -1.0, 1.0);
    info.angle_deg = std::acos(c) * 180.0 / M_PI;
    info.axis_defined = true;
    info.axis = eigen_axis(m, -1.0);
  }
  return info;
}

MolecularGeometry distort_geometry(const MolecularGeometry& geom, double sigma, Rng& rng) {
  MolecularGeometry out = geom;
  for (Atom& a : out.atoms)
    for (int k = 0; k < 3; ++k)
      a.pos[static_cast<std::size_t>(k)] += rng.uniform(-sigma, sigma);
  return out;
}

std::array<double, 3> Rng::unit_axis() {
  const double z = uniform(-1.0, 1.0);
  const double phi = uniform(0.0, 2.0 * M_PI);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

Matrix rotation_matrix3(const std::array<double, 3>& axis, double angle_deg) {
  double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (n == 0.0) throw Error("rotation axis must be nonzero");
  const double ux = axis[0] / n, uy = axis[1] / n, uz = axis[2] / n;
  const double t = angle_deg * M_PI / 180.0;
  const double c = std::cos(t), s = std::sin(t), v = 1.0 - c;
  Matrix r(3);
  r(0, 0) = c + ux * ux * v;
  r(0, 1) = ux * uy * v - uz * s;
  r(0, 2) = ux * uz * v + uy * s;
  r(1, 0) = uy * ux * v + uz * s;
  r(1, 1) = c + uy * uy * v;
  r(1, 2) = uy * uz * v - ux * s;
  r(2, 0) = uz * ux * v - uy * s;
  r(2, 1) = uz * uy * v + ux * s;
  r(2, 2) = c + uz * uz * v;
  return r;
}

RotationSample random_rotation(Rng& rng, double min_deg, double max_deg) {
  if (!(min_deg >= 0 && max_deg > min_deg))
    throw Error("rotation angle range must satisfy 0 <= min < max");
  RotationSample s;
  s.axis = rng.unit_axis();
  s.angle_deg = rng.uniform_open_lo(min_deg, max_deg);
  return s;
}

MolecularGeometry rotate_geometry(const MolecularGeometry& geom, const std::array<double, 3>& axis,
                                  double angle_deg) {
  const Matrix r = rotation_matrix3(axis, angle_deg);
  const std::array<double, 3> c = geom.centroid();
  MolecularGeometry out = geom;
  for (Atom& a : out.atoms) {
    std::array<double, 3> p;
    for (int k = 0; k < 3; ++k) p[static_cast<std::size_t>(k)] = a.pos[static_cast<std::size_t>(k)] - c[static_cast<std::size_t>(k)];
    for (int k = 0; k < 3; ++k) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j) acc += r(k, j).real() * p[static_cast<std::size_t>(j)];
      a.pos[static_cast<std::size_t>(k)] = acc + c[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

}  // namespace groupfix
