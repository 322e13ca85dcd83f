#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ufg/geodesics.hpp"
#include "ufg/nilpotent.hpp"
#include "ufg/orbit.hpp"
#include "ufg/projections.hpp"
#include "ufg/sweep.hpp"

namespace ufg::suites {

/// Random probe whose whole curve stays inside the ball of the given radius
/// around the identity, measured in the norm the relevant theorem uses (the
/// uniform norm for operator and normalized-trace modes, the p-norm
/// otherwise). Probes nearly aligned with the base point are re-drawn.
GeodesicProbe random_probe(CounterRng& rng, Eigen::Index dim, const FinslerNorm& norm,
                           double radius);

/// Random block decomposition: a distinguished large block plus 1-2 small
/// ones, eigenvalue gaps at least 0.5.
SpectralDecomposition random_spectral(CounterRng& rng, Eigen::Index dim);

// ---------- convexity ----------

struct ConvexityConfig {
  std::uint64_t seed = 42;
  std::vector<Eigen::Index> dims = {4};
  int trials = 10;
  FinslerNorm norm = FinslerNorm::op();
  int gridsize = 64;
  bool conservative_policy = true;  // false: the paper radius r_p for Schatten probes
  Exec exec = Exec::Parallel;
};

struct ConvexityTrial {
  int trial = -1;
  Eigen::Index dim = 0;
  ConvexityReport report;
  double worst_chain_violation = 0.0;    // max over grid of (lhs-mid, mid-rhs) minus tolerance
  double equality_f2_residue = 0.0;      // max |f''| where the last chain link is tight
  bool ok = false;
  bool pass = false;
  std::string error;
};

std::vector<ConvexityTrial> run_convexity(const ConvexityConfig& cfg);

// ---------- orbit liftings ----------

struct LiftingConfig {
  std::uint64_t seed = 42;
  std::vector<Eigen::Index> dims = {5};
  int trials = 20;
  int probe_dirs = 64;
  Exec exec = Exec::Parallel;
};

struct LiftingTrial {
  int trial = -1;
  Eigen::Index dim = 0;
  double quotient = 0.0;
  double lifting_norm = 0.0;
  double cross_gap = 0.0;  // |one-free-block solver - DKW pipeline|
  double worst_norm_slack = 0.0;
  double worst_log_slack = 0.0;
  bool counterexample_detected = false;
  bool nonunique = false;
  bool ok = false;
  bool pass = false;
  std::string error;
};

std::vector<LiftingTrial> run_lifting(const LiftingConfig& cfg);

/// Worst slack (two-segment competitor length minus ||z_c||) over random
/// unitary competitors joining the fibers of b and e^{z_c} b e^{-z_c}.
double fiber_competitor_worst_slack(const SpectralDecomposition& spec,
                                    const AntiHermMatrix& z_c, int competitors,
                                    std::uint64_t seed);

double nilpotent_fiber_competitor_worst_slack(const NilpotentContext& ctx,
                                              const AntiHermMatrix& z0, int competitors,
                                              std::uint64_t seed);

// ---------- two-projection geometry ----------

struct ProjectionConfig {
  std::uint64_t seed = 42;
  std::vector<Eigen::Index> dims = {6};
  int trials = 20;
  Exec exec = Exec::Parallel;
};

struct ProjectionTrial {
  int trial = -1;
  Eigen::Index dim = 0;
  std::string kind;  // near | norm_one | mismatch
  double conj_error = 0.0;
  double znorm = 0.0;
  bool codiagonal = false;
  bool mismatch_expected = false;
  bool mismatch_raised = false;
  double rotation_norm_gap = 0.0;  // near pairs: | ||z_assembled|| - ||z_direct|| |
  double rotation_conj_gap = 0.0;  // near pairs: conjugation agreement of the two routes
  bool ok = false;
  bool pass = false;
  std::string error;
};

std::vector<ProjectionTrial> run_projection(const ProjectionConfig& cfg);

// ---------- nilpotent orbit ----------

struct NilpotentConfig {
  std::uint64_t seed = 42;
  Eigen::Index half = 3;
  int trials = 20;
  int probe_dirs = 128;
  Exec exec = Exec::Parallel;
};

struct NilpotentTrial {
  int trial = -1;
  Eigen::Index half = 0;
  double pairing_residual = 0.0;  // spectrum of -i z0 vs its negation
  double delta_residual = 0.0;
  double worst_norm_slack = 0.0;
  double worst_log_slack = 0.0;
  double cross_section_error = 0.0;
  bool antisym_at_conjugate = false;
  bool hermitian_part_rejected = false;
  bool ok = false;
  bool pass = false;
  std::string error;
};

std::vector<NilpotentTrial> run_nilpotent(const NilpotentConfig& cfg);

// ---------- DKW completion ----------

struct CompletionConfig {
  std::uint64_t seed = 42;
  std::vector<Eigen::Index> dims = {5};
  int trials = 50;
  Exec exec = Exec::Parallel;
};

struct CompletionTrial {
  int trial = -1;
  Eigen::Index rows = 0, cols = 0;
  double mu = 0.0;
  double achieved = 0.0;
  double gap = 0.0;
  bool singular_case = false;
  bool ok = false;
  bool pass = false;
  std::string error;
};

std::vector<CompletionTrial> run_completion(const CompletionConfig& cfg);

/// Minimality slack of the geodesic from 1 to e^x against one random
/// two-segment competitor: length(competitor) - ||x||_norm.
double geodesic_competitor_slack(CounterRng& rng, Eigen::Index dim, const FinslerNorm& norm);

}  // namespace ufg::suites
