#include "ufg/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ufg::suites {

namespace {

constexpr double kPi = std::numbers::pi;

double ball_norm(const Matrix& m, const FinslerNorm& norm) {
  // the norm the relevant ball hypothesis is stated in
  if (norm.kind == NormKind::SchattenP) return schatten_norm(m, norm);
  return operator_norm(m);
}

AntiHermMatrix random_antiherm_in(CounterRng& rng, Eigen::Index dim, const FinslerNorm& norm,
                                  double target) {
  AntiHermMatrix x = random_antiherm(rng, dim);
  const double current = ball_norm(x.mat(), norm);
  return AntiHermMatrix(x.mat() * (target / current));
}

}  // namespace

GeodesicProbe random_probe(CounterRng& rng, Eigen::Index dim, const FinslerNorm& norm,
                           double radius) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    const double av = rng.uniform(0.25, 0.45) * radius;
    const double az = rng.uniform(0.20, 0.45) * radius;
    const AntiHermMatrix v = random_antiherm_in(rng, dim, norm, av);
    const AntiHermMatrix z = random_antiherm_in(rng, dim, norm, az);
    const GeodesicProbe probe(v, z);
    // discard probes passing too close to the base point: both the strict
    // convexity statements and the equality diagnostics degenerate there
    double closest = radius;
    bool usable = true;
    for (int g = 0; g <= 8 && usable; ++g) {
      try {
        const AntiHermMatrix w = principal_log_unitary(probe.at(g / 8.0));
        closest = std::min(closest, ball_norm(w.mat(), norm));
      } catch (const EigenvalueAtMinusOne&) {
        usable = false;
      }
    }
    if (usable && closest > 0.1 * radius) return probe;
  }
  throw Error("random_probe: could not draw a usable probe");
}

SpectralDecomposition random_spectral(CounterRng& rng, Eigen::Index dim) {
  if (dim < 2) throw ConfigError("random_spectral: dim must be >= 2");
  const int extra = dim >= 4 ? (rng.next_u64() % 2 ? 2 : 1) : 1;
  std::vector<int> ranks;
  int used = 0;
  for (int i = 0; i < extra; ++i) {
    const int r = 1 + static_cast<int>(rng.next_u64() % 2);
    const int give = std::min<int>(r, static_cast<int>(dim) - used - (extra - i) - 1 + 1);
    ranks.push_back(std::max(1, give));
    used += ranks.back();
  }
  ranks.insert(ranks.begin(), static_cast<int>(dim) - used);  // distinguished big block first
  std::vector<double> lambdas;
  double level = rng.uniform(-1.0, 0.0);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    lambdas.push_back(level);
    level += 0.5 + rng.uniform(0.0, 0.7);
  }
  return SpectralDecomposition::make(lambdas, ranks, random_unitary(rng, dim));
}

// ---------- convexity ----------

std::vector<ConvexityTrial> run_convexity(const ConvexityConfig& cfg) {
  cfg.norm.validate();
  if (cfg.trials < 1) throw ConfigError("convexity: trials must be >= 1");
  if (cfg.gridsize < 3) throw ConfigError("convexity: grid must be >= 3");
  if (cfg.dims.empty()) throw ConfigError("convexity: no dimensions given");
  for (Eigen::Index d : cfg.dims)
    if (d < 2 || d > 64) throw ConfigError("convexity: dim must lie in [2, 64]");

  const bool schatten4 = cfg.norm.kind != NormKind::Operator && cfg.norm.p >= 4;
  double radius = kPi / 2.0 - 0.05;
  if (schatten4) {
    const ConvexityRadius cr = convexity_radius(cfg.norm.p);
    radius = cfg.conservative_policy ? cr.conservative : cr.r_p;
  } else if (cfg.norm.kind != NormKind::Operator) {
    radius = 0.6;  // exploratory p = 2 probes: keep the log branch comfortable
  }

  return run_trials<ConvexityTrial>(cfg.trials, cfg.exec, [&](int trial) {
    ConvexityTrial out;
    out.trial = trial;
    out.dim = cfg.dims[static_cast<std::size_t>(trial) % cfg.dims.size()];
    CounterRng rng = CounterRng::for_trial(cfg.seed, static_cast<std::uint64_t>(trial));
    try {
      const GeodesicProbe probe = random_probe(rng, out.dim, cfg.norm, radius);
      if (cfg.norm.kind != NormKind::Operator && cfg.norm.p == 2) {
        out.report = probe_g2(probe, cfg.gridsize);
        out.ok = true;
        out.pass = true;  // exploratory: data only
        return out;
      }
      out.report = convexity_probe(UnitaryMatrix::identity(out.dim), probe, cfg.norm,
                                   cfg.gridsize);
      out.ok = true;
      if (cfg.norm.kind == NormKind::Operator) {
        out.pass = out.report.verdict != ConvexityVerdict::Violated;
      } else {
        double worst = -std::numeric_limits<double>::infinity();
        double eq_res = 0.0;
        for (const Theorem23Slack& s : out.report.inequality_slacks) {
          const double tol =
              1e-8 * std::max({std::abs(s.lhs), std::abs(s.mid), std::abs(s.rhs), 1.0});
          worst = std::max({worst, s.lhs - s.mid - tol, s.mid - s.rhs - tol});
          if (s.rhs - s.mid < tol) eq_res = std::max(eq_res, std::abs(s.fsecond));
        }
        out.worst_chain_violation = worst;
        out.equality_f2_residue = eq_res;
        out.pass = out.report.min_second_difference > -1e-7 &&
                   out.report.strictness_failures <= 1 && worst <= 0.0 && eq_res < 1e-8;
      }
    } catch (const Error& e) {
      out.error = e.what();
    }
    return out;
  });
}

// ---------- orbit liftings ----------

namespace {

AntiHermMatrix block_sign_direction(const SpectralDecomposition& spec, double magnitude) {
  Matrix d = Matrix::Zero(spec.dim, spec.dim);
  for (int i = 0; i < spec.block_count(); ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    d += Complex{0.0, sign * magnitude} * spec.projections[static_cast<std::size_t>(i)];
  }
  return AntiHermMatrix(d);
}

}  // namespace

std::vector<LiftingTrial> run_lifting(const LiftingConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("lifting: trials must be >= 1");
  if (cfg.dims.empty()) throw ConfigError("lifting: no dimensions given");
  for (Eigen::Index d : cfg.dims)
    if (d < 2 || d > 64) throw ConfigError("lifting: dim must lie in [2, 64]");

  return run_trials<LiftingTrial>(cfg.trials, cfg.exec, [&](int trial) {
    LiftingTrial out;
    out.trial = trial;
    out.dim = cfg.dims[static_cast<std::size_t>(trial) % cfg.dims.size()];
    CounterRng rng = CounterRng::for_trial(cfg.seed, static_cast<std::uint64_t>(trial));
    try {
      const SpectralDecomposition spec = random_spectral(rng, out.dim);
      const AntiHermMatrix z = random_antiherm_opnorm(rng, out.dim, rng.uniform(0.2, 0.55));
      const OrbitTangent tangent = OrbitTangent::from_lifting(spec, z);
      QuotientOptions opts;
      opts.seed = rng.next_u64();

      const MinimalLifting ml = minimal_lifting(spec, tangent, opts);
      out.quotient = ml.quotient_norm;
      out.lifting_norm = operator_norm(ml.z_c.mat());
      out.nonunique = ml.nonunique;

      const MinimalityCertificate cert =
          minimality_probe(spec, ml.z_c, cfg.probe_dirs, rng.next_u64());
      out.worst_norm_slack = cert.worst_norm_slack;
      out.worst_log_slack = cert.worst_log_slack;

      // cross-validation: leave only the distinguished block free and compare
      // the bisection solver against the one-shot completion formula
      const int p0 = spec.distinguished_block();
      const QuotientSolve one_free = quotient_norm_solve(spec, tangent, {p0}, opts);
      const Matrix& f0 = spec.frames[static_cast<std::size_t>(p0)];
      Matrix fperp(spec.dim, spec.dim - f0.cols());
      Eigen::Index col = 0;
      for (int i = 0; i < spec.block_count(); ++i) {
        if (i == p0) continue;
        fperp.middleCols(col, spec.frames[static_cast<std::size_t>(i)].cols()) =
            spec.frames[static_cast<std::size_t>(i)];
        col += spec.frames[static_cast<std::size_t>(i)].cols();
      }
      const Matrix z1 = z.mat() - spec.projections[static_cast<std::size_t>(p0)] * z.mat() *
                                      spec.projections[static_cast<std::size_t>(p0)];
      const Matrix h = Complex{0.0, -1.0} * z1;
      const DkwResult dkw =
          dkw_complete(HermMatrix(fperp.adjoint() * h * fperp), fperp.adjoint() * h * f0);
      out.cross_gap = std::abs(one_free.value - dkw.mu);

      // constructed non-minimal lifting: a large block-diagonal kernel
      // component that the probe must find and undo
      const double zs_norm = operator_norm(ml.z_c.mat());
      const AntiHermMatrix zs(zs_norm > 0.25 ? ml.z_c.mat() * (0.25 / zs_norm) : ml.z_c.mat());
      const AntiHermMatrix bad(zs.mat() + block_sign_direction(spec, 1.0).mat());
      const MinimalityCertificate bad_cert = minimality_probe(spec, bad, 8, rng.next_u64());
      out.counterexample_detected = !bad_cert.passed;

      out.ok = true;
      out.pass = out.cross_gap <= 1e-6 && cert.worst_norm_slack >= -1e-8 &&
                 cert.worst_log_slack >= -1e-7 && out.counterexample_detected &&
                 std::abs(out.lifting_norm - out.quotient) <= 1e-8 * std::max(1.0, out.quotient);
    } catch (const Error& e) {
      out.error = e.what();
    }
    return out;
  });
}

namespace {

double safe_distance(const UnitaryMatrix& a, const UnitaryMatrix& b, const FinslerNorm& norm) {
  try {
    return rectifiable_distance(a, b, norm);
  } catch (const EigenvalueAtMinusOne&) {
    return kPi;  // at the cut locus the distance is pi, longer than any probe
  }
}

double two_segment_slack(const UnitaryMatrix& g0, const UnitaryMatrix& g1, double target,
                         CounterRng& rng, double kick) {
  const Matrix rel = g0.mat().adjoint() * g1.mat();
  Matrix halfway;
  try {
    halfway = mat_exp((0.5 * principal_log_unitary(UnitaryMatrix(rel)).mat()).eval());
  } catch (const EigenvalueAtMinusOne&) {
    halfway = Matrix::Identity(g0.dim(), g0.dim());
  }
  const AntiHermMatrix r = random_antiherm_opnorm(rng, g0.dim(), rng.uniform(0.05, kick));
  const UnitaryMatrix mid(g0.mat() * halfway * mat_exp(r.mat()));
  const FinslerNorm op = FinslerNorm::op();
  return safe_distance(g0, mid, op) + safe_distance(mid, g1, op) - target;
}

}  // namespace

double fiber_competitor_worst_slack(const SpectralDecomposition& spec,
                                    const AntiHermMatrix& z_c, int competitors,
                                    std::uint64_t seed) {
  const double target = operator_norm(z_c.mat());
  if (target >= kPi / 2.0) throw NormTooLarge("fiber competitors need ||z_c|| < pi/2");
  CounterRng rng(seed);
  const Matrix ez = mat_exp(z_c.mat());
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < competitors; ++i) {
    auto commutant_unitary = [&]() {
      const Matrix k = kernel_projection(spec, random_antiherm(rng, spec.dim).mat());
      const double kn = operator_norm(k);
      const double want = rng.uniform(0.0, 1.2);
      return kn > 1e-14 ? mat_exp((k * (want / kn)).eval())
                        : Matrix::Identity(spec.dim, spec.dim);
    };
    const UnitaryMatrix g0(commutant_unitary());
    const UnitaryMatrix g1(ez * commutant_unitary());
    worst = std::min(worst, two_segment_slack(g0, g1, target, rng, 0.8));
  }
  return worst;
}

double nilpotent_fiber_competitor_worst_slack(const NilpotentContext& ctx,
                                              const AntiHermMatrix& z0, int competitors,
                                              std::uint64_t seed) {
  const double target = operator_norm(z0.mat());
  if (target >= kPi / 2.0) throw NormTooLarge("fiber competitors need ||z0|| < pi/2");
  CounterRng rng(seed);
  const Matrix ez = mat_exp(z0.mat());
  const Eigen::Index n = ctx.half;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < competitors; ++i) {
    auto isotropy_unitary = [&]() {
      const Matrix y0 = random_antiherm(rng, n).mat();
      const double kn = operator_norm(y0);
      Matrix y = Matrix::Zero(2 * n, 2 * n);
      if (kn > 1e-14) {
        const Matrix scaled = y0 * (rng.uniform(0.0, 1.2) / kn);
        y.topLeftCorner(n, n) = scaled;
        y.bottomRightCorner(n, n) = scaled;
      }
      return mat_exp(y);
    };
    const UnitaryMatrix g0(isotropy_unitary());
    const UnitaryMatrix g1(ez * isotropy_unitary());
    worst = std::min(worst, two_segment_slack(g0, g1, target, rng, 0.8));
  }
  return worst;
}

// ---------- two-projection geometry ----------

namespace {

HermMatrix random_projection(CounterRng& rng, Eigen::Index dim, int rank,
                             const UnitaryMatrix& basis) {
  Matrix diag = Matrix::Zero(dim, dim);
  for (int i = 0; i < rank; ++i) diag(i, i) = 1.0;
  (void)rng;
  return HermMatrix(basis.mat() * diag * basis.mat().adjoint());
}

Matrix codiagonal_part(const HermMatrix& p, const Matrix& r) {
  const Matrix q = Matrix::Identity(p.dim(), p.dim()) - p.mat();
  return p.mat() * r * q + q * r * p.mat();
}

}  // namespace

std::vector<ProjectionTrial> run_projection(const ProjectionConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("projection: trials must be >= 1");
  if (cfg.dims.empty()) throw ConfigError("projection: no dimensions given");
  for (Eigen::Index d : cfg.dims)
    if (d < 3 || d > 64) throw ConfigError("projection: dim must lie in [3, 64]");

  return run_trials<ProjectionTrial>(cfg.trials, cfg.exec, [&](int trial) {
    ProjectionTrial out;
    out.trial = trial;
    out.dim = cfg.dims[static_cast<std::size_t>(trial) % cfg.dims.size()];
    CounterRng rng = CounterRng::for_trial(cfg.seed, static_cast<std::uint64_t>(trial));
    const int kind = trial % 3;
    try {
      const Eigen::Index n = out.dim;
      const UnitaryMatrix basis = random_unitary(rng, n);
      if (kind == 0) {
        out.kind = "near";
        const int rank = 1 + static_cast<int>(rng.next_u64() % (n - 1));
        const HermMatrix p0 = random_projection(rng, n, rank, basis);
        const Matrix x = codiagonal_part(p0, random_antiherm(rng, n).mat());
        const double xn = operator_norm(x);
        const Matrix xs = xn > 1e-14 ? (x * (rng.uniform(0.2, 1.05) / xn)).eval()
                                     : Matrix::Zero(n, n);
        const Matrix exs = mat_exp(xs);
        const HermMatrix p1(exs * p0.mat() * exs.adjoint());

        const AntiHermMatrix za = assemble_minimal_z(p0, p1);
        const AntiHermMatrix zd = direct_rotation(p0, p1);
        const Matrix ea = mat_exp(za.mat());
        const Matrix ed = mat_exp(zd.mat());
        out.conj_error = operator_norm(ea * p0.mat() * ea.adjoint() - p1.mat());
        out.znorm = operator_norm(za.mat());
        out.codiagonal = verify_codiagonal(p0, za) && verify_codiagonal(p0, zd);
        out.rotation_norm_gap = std::abs(out.znorm - operator_norm(zd.mat()));
        out.rotation_conj_gap = operator_norm(ea * p0.mat() * ea.adjoint() -
                                              ed * p0.mat() * ed.adjoint());
        out.pass = out.conj_error <= 1e-8 && out.codiagonal &&
                   out.znorm <= kPi / 2.0 + 1e-9 && out.rotation_norm_gap <= 1e-7 &&
                   out.rotation_conj_gap <= 1e-7;
      } else if (kind == 1) {
        out.kind = "norm_one";
        // explicit swap plane + generic plane + coinciding corner, conjugated
        Matrix d0 = Matrix::Zero(n, n), d1 = Matrix::Zero(n, n);
        d0(0, 0) = 1.0;  // swap pair: p0 holds e0, p1 holds e1
        d1(1, 1) = 1.0;
        if (n >= 4) {
          d0(2, 2) = 1.0;  // generic plane at angle theta on (e2, e3)
          const double theta = rng.uniform(0.3, 1.2);
          const double c = std::cos(theta), s = std::sin(theta);
          d1(2, 2) = c * c;
          d1(2, 3) = c * s;
          d1(3, 2) = c * s;
          d1(3, 3) = s * s;
        }
        if (n >= 5) {
          d0(4, 4) = 1.0;  // coinciding corner
          d1(4, 4) = 1.0;
        }
        const HermMatrix p0(basis.mat() * d0 * basis.mat().adjoint());
        const HermMatrix p1(basis.mat() * d1 * basis.mat().adjoint());
        const AntiHermMatrix za = assemble_minimal_z(p0, p1);
        const Matrix ea = mat_exp(za.mat());
        out.conj_error = operator_norm(ea * p0.mat() * ea.adjoint() - p1.mat());
        out.znorm = operator_norm(za.mat());
        out.codiagonal = verify_codiagonal(p0, za);
        bool norm_one_raised = false;
        try {
          direct_rotation(p0, p1);
        } catch (const NormOne&) {
          norm_one_raised = true;
        }
        out.pass = out.conj_error <= 1e-8 && out.codiagonal &&
                   std::abs(out.znorm - kPi / 2.0) <= 1e-9 && norm_one_raised;
      } else {
        out.kind = "mismatch";
        out.mismatch_expected = true;
        const int rank = 1 + static_cast<int>(rng.next_u64() % (n - 1));
        const HermMatrix p0 = random_projection(rng, n, rank, basis);
        const HermMatrix p1 = random_projection(rng, n, rank + 1, basis);  // contains p0
        try {
          assemble_minimal_z(p0, p1);
        } catch (const ComponentMismatch&) {
          out.mismatch_raised = true;
        }
        out.pass = out.mismatch_raised;
      }
      out.ok = true;
    } catch (const Error& e) {
      out.error = e.what();
    }
    return out;
  });
}

// ---------- nilpotent orbit ----------

std::vector<NilpotentTrial> run_nilpotent(const NilpotentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("nilpotent: trials must be >= 1");
  if (cfg.half < 1 || cfg.half > 32) throw ConfigError("nilpotent: half-dim must lie in [1, 32]");

  const NilpotentContext ctx = NilpotentContext::make(cfg.half);
  return run_trials<NilpotentTrial>(cfg.trials, cfg.exec, [&](int trial) {
    NilpotentTrial out;
    out.trial = trial;
    out.half = cfg.half;
    CounterRng rng = CounterRng::for_trial(cfg.seed, static_cast<std::uint64_t>(trial));
    try {
      const Eigen::Index n = cfg.half;
      const AntiHermMatrix z11 = random_antiherm_opnorm(rng, n, rng.uniform(0.05, 0.35));
      const AntiHermMatrix z12 = random_antiherm_opnorm(rng, n, rng.uniform(0.05, 0.35));
      const AntiHermMatrix z22 = random_antiherm_opnorm(rng, n, rng.uniform(0.05, 0.35));
      const AntiHermMatrix z0 = antisymmetric_minimal_lifting(ctx, z11, z12, z22);

      Matrix zfull = Matrix::Zero(2 * n, 2 * n);
      zfull.topLeftCorner(n, n) = z11.mat();
      zfull.topRightCorner(n, n) = z12.mat();
      zfull.bottomLeftCorner(n, n) = z12.mat();
      zfull.bottomRightCorner(n, n) = z22.mat();
      out.delta_residual =
          operator_norm(delta(ctx.N, z0.mat()) - delta(ctx.N, zfull));

      Eigen::SelfAdjointEigenSolver<Matrix> es((Complex{0.0, -1.0} * z0.mat()).eval());
      double pairing = 0.0;
      for (Eigen::Index k = 0; k < 2 * n; ++k)
        pairing = std::max(pairing,
                           std::abs(es.eigenvalues()(k) + es.eigenvalues()(2 * n - 1 - k)));
      out.pairing_residual = pairing;

      const MinimalityCertificate cert =
          nilpotent_minimality_probe(ctx, z0, cfg.probe_dirs, rng.next_u64());
      out.worst_norm_slack = cert.worst_norm_slack;
      out.worst_log_slack = cert.worst_log_slack;

      // conjugated instance: verdicts and the cross section must transport
      const UnitaryMatrix u(mat_exp(random_antiherm_opnorm(rng, 2 * n, 0.2).mat()));
      const Matrix b = u.mat() * ctx.N * u.mat().adjoint();
      const UnitaryMatrix mu = nilpotent_cross_section(ctx, b);
      out.cross_section_error = operator_norm(mu.mat() * ctx.N * mu.mat().adjoint() - b);
      const Matrix x = delta(ctx.N, zfull);
      out.antisym_at_conjugate =
          antisymmetry_check(ctx, b, u.mat() * x * u.mat().adjoint());

      // a tangent whose diagonal block is Hermitian instead must be refused
      Matrix xbad = Matrix::Zero(2 * n, 2 * n);
      const Matrix h = random_herm(rng, n).mat();
      xbad.topLeftCorner(n, n) = h;
      xbad.topRightCorner(n, n) = z12.mat();
      xbad.bottomRightCorner(n, n) = -h;
      out.hermitian_part_rejected = !antisymmetry_check(ctx, ctx.N, xbad);

      out.ok = true;
      out.pass = out.delta_residual <= 1e-10 && out.pairing_residual <= 1e-10 &&
                 cert.worst_norm_slack >= -1e-9 && cert.worst_log_slack >= -1e-7 &&
                 out.cross_section_error <= 1e-8 && out.antisym_at_conjugate &&
                 out.hermitian_part_rejected;
    } catch (const Error& e) {
      out.error = e.what();
    }
    return out;
  });
}

// ---------- DKW completion ----------

std::vector<CompletionTrial> run_completion(const CompletionConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("completion: trials must be >= 1");
  if (cfg.dims.empty()) throw ConfigError("completion: no dimensions given");
  for (Eigen::Index d : cfg.dims)
    if (d < 2 || d > 64) throw ConfigError("completion: dim must lie in [2, 64]");

  return run_trials<CompletionTrial>(cfg.trials, cfg.exec, [&](int trial) {
    CompletionTrial out;
    out.trial = trial;
    const Eigen::Index dim = cfg.dims[static_cast<std::size_t>(trial) % cfg.dims.size()];
    const Eigen::Index m = dim / 2, k = dim - m;
    out.rows = k;
    out.cols = m;
    CounterRng rng = CounterRng::for_trial(cfg.seed, static_cast<std::uint64_t>(trial));
    try {
      out.singular_case = trial % 3 == 2;
      HermMatrix X = HermMatrix::zero(k);
      Matrix Y(k, m);
      if (out.singular_case) {
        // ||X|| equals the row norm: the completion formula degenerates
        Eigen::VectorXd lam(k);
        lam(0) = 1.0;
        for (Eigen::Index i = 1; i < k; ++i) lam(i) = rng.uniform(-0.6, 0.6);
        const UnitaryMatrix q = random_unitary(rng, k);
        X = HermMatrix(q.mat() * lam.cast<Complex>().asDiagonal() * q.mat().adjoint());
        const Matrix e = q.mat().col(0);
        Matrix raw = random_complex_gaussian(rng, k).leftCols(m);
        raw = (Matrix::Identity(k, k) - e * e.adjoint()) * raw;
        const double rn = operator_norm(raw);
        Y = rn > 1e-14 ? (raw * (0.55 / rn)).eval() : Matrix::Zero(k, m);
      } else {
        X = HermMatrix(0.7 * random_herm(rng, k).mat());
        Y = 0.7 * random_complex_gaussian(rng, k).leftCols(m);
      }
      const DkwResult res = dkw_complete(X, Y);
      out.mu = res.mu;
      Matrix full(k + m, k + m);
      full.topLeftCorner(k, k) = X.mat();
      full.topRightCorner(k, m) = Y;
      full.bottomLeftCorner(m, k) = Y.adjoint();
      full.bottomRightCorner(m, m) = res.Z.mat();
      out.achieved = operator_norm(full);
      out.gap = out.achieved - out.mu;
      out.ok = true;
      out.pass = std::abs(out.gap) <= 1e-9 * std::max(1.0, out.mu);
    } catch (const Error& e) {
      out.error = e.what();
    }
    return out;
  });
}

double geodesic_competitor_slack(CounterRng& rng, Eigen::Index dim, const FinslerNorm& norm) {
  const AntiHermMatrix x = random_antiherm_opnorm(rng, dim, rng.uniform(0.4, 3.0));
  const UnitaryMatrix one = UnitaryMatrix::identity(dim);
  const UnitaryMatrix end(mat_exp(x.mat()));
  const double len = random_competitor_length(one, end, norm, 0.45, rng);
  return len - norm_of(x.mat(), norm);
}

}  // namespace ufg::suites
