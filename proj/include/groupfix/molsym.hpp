#ifndef GROUPFIX_MOLSYM_HPP
#define GROUPFIX_MOLSYM_HPP

#include <array>
#include <cstdint>
#include <string>

#include "groupfix/group.hpp"
#include "groupfix/random.hpp"
#include "groupfix/rotfit.hpp"

namespace groupfix {

struct Atom {
  std::string element;
  std::array<double, 3> pos;  // Angstrom
};

struct MolecularGeometry {
  std::vector<Atom> atoms;

  int size() const { return static_cast<int>(atoms.size()); }
  std::array<double, 3> centroid() const;
  // Same geometry translated so the centroid sits at the origin.
  MolecularGeometry centered() const;
};

// Standard XYZ: atom count, comment line, then "element x y z" per atom.
MolecularGeometry load_xyz(const std::string& text);
std::string save_xyz(const MolecularGeometry& geom, const std::string& comment = "");

// Atom permutations preserving element labels and all pairwise distances
// within tol (Angstrom); closed under composition and containing the
// identity. Lexicographically sorted, so the identity is always first.
struct SymmetryPermutations {
  std::vector<Permutation> perms;
  double tol;

  int order() const { return static_cast<int>(perms.size()); }
};

struct SearchLimits {
  std::uint64_t max_nodes = 50'000'000;
};

// Exhaustive backtracking over candidate images, pruned with sorted per-atom
// distance fingerprints and pairwise-distance consistency. Throws
// ClosureError if the found set is not closed at this tol, SearchLimitError
// past the node budget.
SymmetryPermutations find_symmetry_permutations(const MolecularGeometry& geom, double tol,
                                                const SearchLimits& limits = {});

// For group element i and atom j: a_ij = centered position of atom j,
// b_ij = centered position of atom p_i(j), so the exact operator satisfies
// G_i a_ij = b_ij.
VectorPairs vector_pairs_from_permutations(const MolecularGeometry& geom,
                                           const SymmetryPermutations& s);

// Q_i from the vector pairs, re-unitarized and bound to the permutation
// table. Throws GeometryError when the 3x3 moment matrix sum_j r_j r_j^T is
// rank deficient (collinear or planar molecule).
ApproxGroup initial_group_guess(const MolecularGeometry& geom, const SymmetryPermutations& s);

// Group-averaged positions r_j <- (1/N) sum_i G_i^-1 r_{p_i(j)} in the
// centered frame; the result is invariant under every (G_i, p_i) pair.
// Requires g table-consistent (S_M <= 1e-8).
MolecularGeometry symmetrize_geometry(const MolecularGeometry& geom, const ApproxGroup& g,
                                      const SymmetryPermutations& s);

enum class OperationKind { proper, improper };

struct OperationInfo {
  OperationKind kind;
  bool axis_defined;            // false for identity and inversion
  std::array<double, 3> axis;   // unit vector, first nonzero component positive
  double angle_deg;             // in [0, 180]
};

// Classifies a real orthogonal 3x3 operation. Proper rotations: angle from
// cos t = (tr - 1)/2, axis from the +1 eigenvector. Improper operations:
// angle from cos t = (tr + 1)/2, axis from the -1 eigenvector (the
// rotoreflection axis; mirror normal when the angle is 0). Identity and
// inversion carry no axis. Throws NotUnitaryError when not orthogonal to
// orth_tol, Error when not real.
OperationInfo classify_operation(const Matrix& m, double orth_tol = 1e-8);

// Experiment protocol helpers (seeded, deterministic).

// Adds an independent uniform displacement in [-sigma, sigma] to every
// coordinate of every atom.
MolecularGeometry distort_geometry(const MolecularGeometry& geom, double sigma, Rng& rng);

// 3x3 rotation about the (normalized) axis by angle_deg, returned as a
// real-valued complex matrix.
Matrix rotation_matrix3(const std::array<double, 3>& axis, double angle_deg);

struct RotationSample {
  std::array<double, 3> axis;
  double angle_deg;
};

// Uniform axis on the sphere, angle uniform in (min_deg, max_deg].
RotationSample random_rotation(Rng& rng, double min_deg, double max_deg);

// Rotates every position about the centroid.
MolecularGeometry rotate_geometry(const MolecularGeometry& geom, const std::array<double, 3>& axis,
                                  double angle_deg);

}  // namespace groupfix

#endif
