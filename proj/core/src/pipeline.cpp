#include "realrad/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace realrad {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PolySystem normalize_system(const PolySystem& ps) {
  PolySystem out(ps.var_count());
  for (const auto& p : ps.polynomials()) out.push_back(normalize_largest_coefficient(p));
  return out;
}

Eigen::MatrixXd random_psd_start(const FacedProblem& fp, std::uint64_t seed) {
  long long w = fp.face_side();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int tries = 0; tries < 16; ++tries) {
    Eigen::MatrixXd G(w, w);
    for (long long i = 0; i < w; ++i)
      for (long long j = 0; j < w; ++j) G(i, j) = gauss(rng);
    Eigen::MatrixXd P = G * G.transpose();
    double s = fp.reduced_reps.at(0).cwiseProduct(P).sum();
    if (s > 1e-12) return P / s;
  }
  throw std::runtime_error("failed to draw a start satisfying the normalization");
}

// One GIF + facial reduction + solve round. Returns false when no solve
// attempt converged; rec is filled either way. back_T, when present, is the
// orthogonal change of coordinates this round ran under; outputs are mapped
// back through its transpose.
bool run_round(const PolySystem& Qin, const RadicalConfig& cfg, RoundRecord& rec,
               const Eigen::MatrixXd* back_T) {
  rec.gif = gif(Qin, cfg.tol, cfg.gif);
  PolySystem Qg = generators(rec.gif.output);
  rec.kernel_dim = rec.gif.output.kernel.dim();
  int dg = rec.gif.output.degree;
  int n = Qin.var_count();

  MomentStructure ms = build_structure(n, dg);
  rec.moment_side_full = ms.side;
  rec.eta = ms.eta();
  Eigen::MatrixXd B = assemble_B(Qg, dg, cfg.tol);
  rec.m = B.cols();
  FacedProblem fp = facial_reduce_first(ms, B, cfg.tol);
  rec.moment_sides.assign(1, fp.face_side());
  for (int t = 0; t < cfg.max_fr; ++t) {
    AuxSearch aux = aux_certificate(fp, cfg.solver, cfg.tol);
    if (!aux.certificate) break;
    fp = facial_reduce_further(fp, *aux.certificate, cfg.tol);
    rec.moment_sides.push_back(fp.face_side());
  }
  rec.method = cfg.solver.method;
  if (back_T) {
    Qg = normalize_system(apply_coordinate_change(Qg, back_T->transpose()));
    rec.coordinate_retry = true;
  }
  rec.gif_generators = Qg;

  std::optional<MomentSolution> best;
  SolveReport best_report;
  SolveReport best_failure;
  bool any_failure = false;
  for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
    std::optional<Eigen::MatrixXd> start;
    if (attempt > 0)
      start = random_psd_start(fp, cfg.solver.seed + 7919 * static_cast<std::uint64_t>(attempt));
    SolveResult sr = cfg.solver.method == SolveMethod::kDouglasRachford
                         ? dr_solve(fp, cfg.solver, start)
                         : map_solve(fp, cfg.solver, start);
    if (sr.report.converged) {
      MomentSolution sol = lift_and_extract(fp, sr.point, cfg.tol);
      if (!best || sol.rank > best->rank) {
        best = std::move(sol);
        best_report = std::move(sr.report);
      }
    } else if (!any_failure || sr.report.final_residual < best_failure.final_residual) {
      best_failure = std::move(sr.report);
      any_failure = true;
    }
  }
  if (!best) {
    rec.solve = best_failure;
    return false;
  }
  rec.solve = best_report;
  rec.rank = best->rank;
  PolySystem kp = best->kernel_polys;
  if (back_T) kp = normalize_system(apply_coordinate_change(kp, back_T->transpose()));
  rec.new_generators = std::move(kp);
  return true;
}

}  // namespace

RadicalReport gif_m(const PolySystem& P, const RadicalConfig& cfg) {
  cfg.tol.validate();
  cfg.solver.validate();
  if (cfg.round_cap < 1) throw std::invalid_argument("round_cap must be at least 1");
  if (cfg.restarts < 0) throw std::invalid_argument("restarts must be nonnegative");
  if (cfg.max_fr < 0) throw std::invalid_argument("max_fr must be nonnegative");
  if (P.empty() || P.degree() < 1)
    throw std::invalid_argument("pipeline needs a nonzero system of positive degree");

  RadicalReport report;
  report.input = P;
  PolySystem Q = P;
  for (int round = 0; round < cfg.round_cap; ++round) {
    RoundRecord rec;
    bool ok = run_round(Q, cfg, rec, nullptr);
    if (!ok) {
      // a non-converging solve sometimes succeeds after a generic rotation
      Eigen::MatrixXd T =
          random_orthogonal(P.var_count(), cfg.solver.seed + 101 + static_cast<std::uint64_t>(round));
      RoundRecord retried;
      if (run_round(apply_coordinate_change(Q, T), cfg, retried, &T)) {
        rec = std::move(retried);
        ok = true;
      }
    }
    report.rounds.push_back(std::move(rec));
    const RoundRecord& last = report.rounds.back();
    if (!ok) {
      report.final_generators = last.gif_generators;
      report.terminated = false;
      report.reason = StopReason::kSolverFailure;
      return report;
    }
    if (last.rank == last.kernel_dim) {
      report.final_generators = last.gif_generators;
      report.terminated = true;
      report.reason = StopReason::kRankEqualsDim;
      return report;
    }
    Q = last.new_generators;
  }
  report.final_generators = report.rounds.back().gif_generators;
  report.terminated = false;
  report.reason = StopReason::kRoundCap;
  return report;
}

double coefficient_distance(const Polynomial& a, const Polynomial& b) {
  double worst = 0.0;
  for (const auto& [m, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coefficient(m)));
  for (const auto& [m, c] : b.terms()) worst = std::max(worst, std::abs(c - a.coefficient(m)));
  return worst;
}

std::vector<BenchRow> bench_geometric(int d_max, const RadicalConfig& cfg) {
  if (d_max < 1 || d_max % 2 == 0)
    throw std::invalid_argument("the sweep degree must be odd and positive");

  Polynomial target(1);
  target.add_term(Monomial::constant(1), 1.0);
  target.add_term(Monomial::variable(1, 0), 1.0);

  std::vector<BenchRow> rows;
  for (int d = 1; d <= d_max; d += 2) {
    BenchRow row;
    row.d = d;
    Polynomial p(1);
    Monomial x = Monomial::variable(1, 0);
    Monomial power = Monomial::constant(1);
    for (int e = 0; e <= d; ++e) {
      p.add_term(power, 1.0);
      power = power * x;
    }
    PolySystem ps(1);
    ps.push_back(std::move(p));

    Clock::time_point t0 = Clock::now();
    try {
      RadicalReport rep = gif_m(ps, cfg);
      row.seconds = seconds_since(t0);
      row.residual = 0.0;
      for (const auto& r : rep.rounds) {
        row.iterations += r.solve.iterations;
        row.residual = std::max(row.residual, r.solve.final_residual);
      }
      if (!rep.terminated) {
        row.message = "pipeline did not reach the rank criterion";
      } else if (rep.final_generators.size() != 1) {
        row.message = "expected a single final generator";
      } else {
        row.generator_error = coefficient_distance(
            normalize_largest_coefficient(rep.final_generators[0]), target);
        row.ok = true;
      }
    } catch (const std::exception& e) {
      row.seconds = seconds_since(t0);
      row.message = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace realrad
