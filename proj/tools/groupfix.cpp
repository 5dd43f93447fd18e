// groupfix: correction of approximate finite matrix groups.
//
//   reconstruct  make matrices exactly satisfy their multiplication table
//   fit          additionally align the group to targets by a global rotation
//   molsym       end-to-end molecular point-group pipeline
//
// Exit codes: 0 ok, 1 input error, 2 non-convergence, 3 symmetry-detection
// failure.

#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "groupfix/io.hpp"
#include "groupfix/kernels.hpp"

namespace {

using namespace groupfix;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitSymmetry = 3;

struct ReconstructArgs {
  std::string group_file, table_file, trace_file, out_file = "corrected.json";
  double eps = 1e-12;
  int max_iter = 50;
};

int run_reconstruct(const ReconstructArgs& a) {
  const MultiplicationTable table = parse_table_json(read_file(a.table_file));
  std::vector<Matrix> mats = parse_matrices_json(read_file(a.group_file));
  ApproxGroup g(table, std::move(mats));

  MultabResult res = multab_group_correction(std::move(g), a.eps, a.max_iter);

  write_file(a.out_file, matrices_to_json(res.group.elements));
  if (!a.trace_file.empty()) write_file(a.trace_file, multab_trace_to_csv(res.trace));

  RunManifest man;
  man.command = "reconstruct";
  man.inputs = {{"group", a.group_file}, {"table", a.table_file}};
  man.thresholds = {{"eps", a.eps}, {"max_iter", static_cast<double>(a.max_iter)}};
  write_file(a.out_file + ".manifest.json", man.to_json());

  if (!res.converged) {
    std::fprintf(stderr, "not converged after %d iterations (best S_M = %.3e)\n", res.iterations,
                 res.trace.empty() ? -1.0 : res.trace.back().s_m);
    return kExitNoConvergence;
  }
  std::printf("converged in %d iterations, S_M = %.3e\n", res.iterations, res.trace.back().s_m);
  return kExitOk;
}

struct FitArgs {
  std::string group_file, table_file, targets_file, pairs_file, trace_file;
  std::string out_file = "fitted.json", generators_file;
  std::string algo = "simplified";
  double eps_m = 1e-10, eps_q = 1e-10, eps_r = 1e-8, null_threshold = 1e-8;
  int max_iter = 200;
};

int run_fit(const FitArgs& a) {
  const MultiplicationTable table = parse_table_json(read_file(a.table_file));
  std::vector<Matrix> mats = parse_matrices_json(read_file(a.group_file));
  ApproxGroup g(table, std::move(mats));

  FitConfig cfg;
  cfg.eps_m = a.eps_m;
  cfg.eps_q = a.eps_q;
  cfg.eps_r = a.eps_r;
  cfg.max_iter = a.max_iter;
  cfg.null_threshold = a.null_threshold;
  cfg.algo = parse_fit_algo(a.algo);

  FitResult res = [&] {
    if (!a.targets_file.empty()) {
      TargetMatrices targets{parse_matrices_json(read_file(a.targets_file))};
      return lsf_group_correction(std::move(g), targets, cfg);
    }
    const VectorPairs pairs = parse_vector_pairs_json(read_file(a.pairs_file));
    return lsf_group_correction(std::move(g), pairs, cfg);
  }();

  write_file(a.out_file, matrices_to_json(res.group.elements));
  if (!a.generators_file.empty()) write_file(a.generators_file, matrices_to_json(res.generators));
  if (!a.trace_file.empty()) write_file(a.trace_file, fit_trace_to_csv(res.trace));

  RunManifest man;
  man.command = "fit";
  man.inputs = {{"group", a.group_file}, {"table", a.table_file}};
  if (!a.targets_file.empty()) man.inputs["targets"] = a.targets_file;
  if (!a.pairs_file.empty()) man.inputs["pairs"] = a.pairs_file;
  man.thresholds = {{"eps_m", a.eps_m},
                    {"eps_q", a.eps_q},
                    {"eps_r", a.eps_r},
                    {"null_threshold", a.null_threshold},
                    {"max_iter", static_cast<double>(a.max_iter)}};
  man.algo = a.algo;
  write_file(a.out_file + ".manifest.json", man.to_json());

  const FitTraceRow& last = res.trace.back();
  if (!res.converged) {
    std::fprintf(stderr, "not converged after %d iterations (S_Q = %.6e, ||R|| = %.3e)\n",
                 res.iterations, last.s_q, last.norm_r);
    return kExitNoConvergence;
  }
  std::printf("converged in %d iterations, S_M = %.3e, S_Q = %.6e\n", res.iterations, last.s_m,
              last.s_q);
  return kExitOk;
}

struct MolsymArgs {
  std::string xyz_file, trace_file, report_file = "operations.json";
  std::string out_xyz = "symmetrized.xyz";
  std::string out_group, out_perms, out_table;
  std::string algo = "simplified";
  double tol = 1.0;
  double distort = 0.0;
  double rotate = 0.0, rotate_min = 0.0;
  std::uint64_t seed = 0;
  double eps_m = 1e-10, eps_q = 1e-10, eps_r = 1e-8, null_threshold = 1e-8;
  int max_iter = 200;
  std::uint64_t max_nodes = 50'000'000;
};

int run_molsym(const MolsymArgs& a) {
  const MolecularGeometry ideal = load_xyz(read_file(a.xyz_file)).centered();

  // Permutation group and table come from the geometry as given; the seeded
  // distortion and rotation below are experiment knobs applied afterwards.
  const SymmetryPermutations perms =
      find_symmetry_permutations(ideal, a.tol, SearchLimits{a.max_nodes});
  std::printf("symmetry group order %d (tol %.3g)\n", perms.order(), a.tol);

  Rng rng(a.seed);
  MolecularGeometry working = ideal;
  if (a.distort > 0.0) working = distort_geometry(working, a.distort, rng);

  // Initial operator guess from the (possibly distorted) unrotated geometry.
  ApproxGroup guess = initial_group_guess(working, perms);

  double applied_angle = 0.0;
  if (a.rotate > 0.0) {
    const RotationSample rot = random_rotation(rng, a.rotate_min, a.rotate);
    working = rotate_geometry(working, rot.axis, rot.angle_deg);
    applied_angle = rot.angle_deg;
    std::printf("applied rotation of %.4f deg\n", rot.angle_deg);
  }

  FitConfig cfg;
  cfg.eps_m = a.eps_m;
  cfg.eps_q = a.eps_q;
  cfg.eps_r = a.eps_r;
  cfg.max_iter = a.max_iter;
  cfg.null_threshold = a.null_threshold;
  cfg.algo = parse_fit_algo(a.algo);

  const VectorPairs pairs = vector_pairs_from_permutations(working, perms);
  FitResult res = lsf_group_correction(std::move(guess), pairs, cfg);

  if (!a.trace_file.empty()) write_file(a.trace_file, fit_trace_to_csv(res.trace));
  if (!a.out_perms.empty()) write_file(a.out_perms, permutations_to_json(perms.perms));
  if (!a.out_table.empty()) write_file(a.out_table, table_to_json(res.group.table));
  if (!a.out_group.empty()) write_file(a.out_group, matrices_to_json(res.group.elements));

  RunManifest man;
  man.command = "molsym";
  man.inputs = {{"xyz", a.xyz_file}};
  man.thresholds = {{"tol", a.tol},          {"distort", a.distort},
                    {"rotate", a.rotate},    {"rotate_min", a.rotate_min},
                    {"eps_m", a.eps_m},      {"eps_q", a.eps_q},
                    {"eps_r", a.eps_r},      {"null_threshold", a.null_threshold},
                    {"max_iter", static_cast<double>(a.max_iter)}};
  man.algo = a.algo;
  man.seed = a.seed;
  man.seeded = true;
  write_file(a.out_xyz + ".manifest.json", man.to_json());

  if (!res.converged) {
    std::fprintf(stderr, "fit not converged after %d iterations (rotation %.2f deg)\n",
                 res.iterations, applied_angle);
    return kExitNoConvergence;
  }

  const MolecularGeometry sym = symmetrize_geometry(working, res.group, perms);
  write_file(a.out_xyz, save_xyz(sym, "symmetrized by groupfix"));
  write_file(a.report_file, operation_report_to_json(res.group));

  const FitTraceRow& last = res.trace.back();
  std::printf("converged in %d iterations, S_M = %.3e, S_ab = %.6e\n", res.iterations, last.s_m,
              last.s_q);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correction and alignment of approximate finite matrix groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "groupfix 1.0 (kernels: " +
                                        std::string(groupfix::kernels::backend()) + ")");

  ReconstructArgs rec;
  CLI::App* c_rec = app.add_subcommand("reconstruct", "enforce the multiplication table");
  c_rec->add_option("--group", rec.group_file, "matrices JSON")->required();
  c_rec->add_option("--table", rec.table_file, "multiplication table JSON")->required();
  c_rec->add_option("--eps", rec.eps, "S_M convergence threshold");
  c_rec->add_option("--max-iter", rec.max_iter, "iteration limit");
  c_rec->add_option("--trace", rec.trace_file, "write CSV trace here");
  c_rec->add_option("--out", rec.out_file, "corrected matrices JSON");

  FitArgs fit;
  CLI::App* c_fit = app.add_subcommand("fit", "table correction plus rotation fit");
  c_fit->add_option("--group", fit.group_file, "matrices JSON")->required();
  c_fit->add_option("--table", fit.table_file, "multiplication table JSON")->required();
  CLI::Option* o_targets = c_fit->add_option("--targets", fit.targets_file, "target matrices JSON");
  CLI::Option* o_pairs = c_fit->add_option("--pairs", fit.pairs_file, "vector pairs JSON");
  o_targets->excludes(o_pairs);
  o_pairs->excludes(o_targets);
  c_fit->add_option("--algo", fit.algo, "supermatrix|simplified")
      ->check(CLI::IsMember({"supermatrix", "simplified"}));
  c_fit->add_option("--eps-m", fit.eps_m, "table-violation threshold");
  c_fit->add_option("--eps-q", fit.eps_q, "delta S_Q threshold");
  c_fit->add_option("--eps-r", fit.eps_r, "||R|| threshold");
  c_fit->add_option("--null-threshold", fit.null_threshold, "relative eigenvalue cutoff of L");
  c_fit->add_option("--max-iter", fit.max_iter, "iteration limit");
  c_fit->add_option("--trace", fit.trace_file, "write CSV trace here");
  c_fit->add_option("--out", fit.out_file, "fitted matrices JSON");
  c_fit->add_option("--generators", fit.generators_file, "write applied generators here");

  MolsymArgs mol;
  CLI::App* c_mol = app.add_subcommand("molsym", "molecular point-group pipeline");
  c_mol->add_option("--xyz", mol.xyz_file, "geometry, XYZ format")->required();
  c_mol->add_option("--tol", mol.tol, "distance tolerance for symmetry detection (Angstrom)");
  c_mol->add_option("--distort", mol.distort, "uniform distortion amplitude per coordinate");
  c_mol->add_option("--rotate", mol.rotate, "apply a random rotation, angle in (rotate-min, DEG]");
  c_mol->add_option("--rotate-min", mol.rotate_min, "lower bound for the random rotation angle");
  c_mol->add_option("--seed", mol.seed, "random seed");
  c_mol->add_option("--algo", mol.algo, "supermatrix|simplified")
      ->check(CLI::IsMember({"supermatrix", "simplified"}));
  c_mol->add_option("--eps-m", mol.eps_m, "table-violation threshold");
  c_mol->add_option("--eps-q", mol.eps_q, "delta S_Q threshold");
  c_mol->add_option("--eps-r", mol.eps_r, "||R|| threshold");
  c_mol->add_option("--max-iter", mol.max_iter, "iteration limit");
  c_mol->add_option("--max-nodes", mol.max_nodes, "permutation search node budget");
  c_mol->add_option("--out-xyz", mol.out_xyz, "symmetrized geometry");
  c_mol->add_option("--report", mol.report_file, "operation report JSON");
  c_mol->add_option("--trace", mol.trace_file, "write CSV trace here");
  c_mol->add_option("--out-group", mol.out_group, "write final matrices here");
  c_mol->add_option("--out-perms", mol.out_perms, "write permutations here");
  c_mol->add_option("--out-table", mol.out_table, "write multiplication table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (c_rec->parsed()) return run_reconstruct(rec);
    if (c_fit->parsed()) {
      if (fit.targets_file.empty() == fit.pairs_file.empty()) {
        std::fprintf(stderr, "fit requires exactly one of --targets or --pairs\n");
        return kExitInput;
      }
      return run_fit(fit);
    }
    return run_molsym(mol);
  } catch (const groupfix::ClosureError& e) {
    std::fprintf(stderr, "symmetry detection failed: %s\n", e.what());
    return kExitSymmetry;
  } catch (const groupfix::SearchLimitError& e) {
    std::fprintf(stderr, "symmetry detection failed: %s\n", e.what());
    return kExitSymmetry;
  } catch (const groupfix::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
}
