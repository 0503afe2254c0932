// Acceptance gate: one criterion per invocation, one PASS/FAIL line per check,
// nonzero exit when anything failed. Registered in ctest as acceptance_1..7.

#include "realrad/gif.hpp"
#include "realrad/moment.hpp"
#include "realrad/numlin.hpp"
#include "realrad/pipeline.hpp"
#include "realrad/polysys.hpp"
#include "realrad/report.hpp"
#include "realrad/solver.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace realrad;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Gate {
  int passed = 0;
  int failed = 0;

  void check(bool ok, const std::string& label) {
    std::cout << (ok ? "PASS: " : "FAIL: ") << label << '\n';
    (ok ? passed : failed) += 1;
  }

  template <typename T>
  void equals(const T& got, const T& want, const std::string& label) {
    std::ostringstream os;
    os << label << " (got " << got << ", want " << want << ")";
    check(got == want, os.str());
  }

  void at_most(double got, double bound, const std::string& label) {
    std::ostringstream os;
    os << label << " (got " << got << ", bound " << bound << ")";
    check(got <= bound, os.str());
  }
};

const ToleranceConfig kTol{};

PolySystem plane_and_point() {
  return parse_system(
      "vars: 3\n"
      "x1^2 + x1*x2 - x1*x3 - x1 - x2 + x3\n"
      "x1*x2 + x2^2 - x2*x3 - x1 - x2 + x3\n"
      "x1*x3 + x2*x3 - x3^2 - x1 - x2 + x3\n");
}

PolySystem twisted_cubic() { return parse_system("vars: 3\nx1^2 - x2\nx1*x2 - x3\n"); }

PolySystem sphere_paraboloid() {
  return parse_system("vars: 3\nx1^2 + x2^2 + x3^2 - 2\nx1^2 + x2^2 - x3\n");
}

PolySystem skew_quadrics() {
  return parse_system(
      "vars: 3\n"
      "x3^2 + x2*x3 - x1^2\n"
      "x1*x3 + x1*x2 - x3\n"
      "x2*x3 + x2^2 + x1^2 - x1\n");
}

PolySystem univariate_pair() {
  return parse_system("vars: 1\nx1^8 - x1^4 - 2\nx1^8 - 3*x1^4 + 2\n");
}

PolySystem cylinders(int n) {
  PolySystem ps(n);
  for (int i = 1; i < n; ++i) {
    Polynomial p(n);
    p.add_term(Monomial::variable(n, 0) * Monomial::variable(n, 0), 1.0);
    p.add_term(Monomial::variable(n, i) * Monomial::variable(n, i), 1.0);
    p.add_term(Monomial::constant(n), -1.0);
    ps.push_back(p);
  }
  return ps;
}

// (x1 - x2)(x1 + x2)^2 (x1 + x2^2 + x2), expanded
PolySystem quintic_line_products() {
  return parse_system(
      "vars: 2\n"
      "x1^4 + x1^3*x2^2 + 2*x1^3*x2 + x1^2*x2^3 - x1*x2^4 - 2*x1*x2^3 - x2^5 - x2^4\n");
}

// (x1 - x2)(x1 + x2)^2 (x1^2 + x2^2), expanded
PolySystem quintic_circle_products() {
  return parse_system("vars: 2\nx1^5 + x1^4*x2 - x1*x2^4 - x2^5\n");
}

// {(x1-x2)(x1+x2)(x1+x2^2+x2), (x1-x2)(x1+x2)(x1^2+x2^2)}, expanded
PolySystem quartic_pair() {
  return parse_system(
      "vars: 2\n"
      "x1^3 + x1^2*x2^2 + x1^2*x2 - x1*x2^2 - x2^4 - x2^3\n"
      "x1^4 - x2^4\n");
}

// (x1^2+1)^2 - (x2^2+1)^2, the paper-style squared substitution target
PolySystem substituted_difference() {
  return parse_system("vars: 2\nx1^4 + 2*x1^2 - x2^4 - 2*x2^2\n");
}

FacedProblem quartic_face() {
  MomentStructure ms = build_structure(1, 4);
  PolySystem Q(1);
  Q.push_back(parse_polynomial("x1^4 - 2", 1));
  return facial_reduce_first(ms, assemble_B(Q, 4, kTol), kTol);
}

Eigen::MatrixXd quartic_target() {
  double r2 = std::sqrt(2.0);
  Eigen::MatrixXd M(5, 5);
  M << 1, 0, r2, 0, 2,
      0, r2, 0, 2, 0,
      r2, 0, 2, 0, 2 * r2,
      0, 2, 0, 2 * r2, 0,
      2, 0, 2 * r2, 0, 4;
  return M;
}

// distance up to a nonzero scalar: the normalization pins the scale but noise
// can break a tie between equal-magnitude coefficients either way, so compare
// against both signs of the reference
double normalized_distance(const Polynomial& got, const Polynomial& want) {
  Polynomial a = normalize_largest_coefficient(got);
  Polynomial b = normalize_largest_coefficient(want);
  return std::min(coefficient_distance(a, b), coefficient_distance(a, b * -1.0));
}

SubspaceBasis coefficient_span(const PolySystem& ps, int degree) {
  return rank_kernel(coefficient_matrix(ps, degree).entries, kTol.svd_rel_tol).rowspace;
}

// GIF output -> first faced problem, the per-round moment setup
FacedProblem face_of(const PolySystem& ps) {
  GifReport rep = gif(ps, kTol);
  PolySystem Qg = generators(rep.output);
  MomentStructure ms = build_structure(ps.var_count(), rep.output.degree);
  return facial_reduce_first(ms, assemble_B(Qg, rep.output.degree, kTol), kTol);
}

void criterion_1(Gate& g) {
  Clock::time_point t0 = Clock::now();
  FacedProblem fp = quartic_face();
  g.equals<long long>(fp.face_side(), 4, "once-faced problem has side 4");

  SolverConfig cfg;
  SolveResult res = dr_solve(fp, cfg);
  g.check(res.report.converged, "DR converged");
  g.at_most(res.report.final_residual, 1e-12, "projected residual");
  g.at_most(static_cast<double>(res.report.iterations), 2000, "iteration count");

  MomentSolution sol = lift_and_extract(fp, res.point, kTol);
  g.at_most((sol.full - quartic_target()).cwiseAbs().maxCoeff(), 1e-6,
            "lifted matrix matches the sqrt-2 pattern");
  g.equals<long long>(sol.rank, 2, "lifted rank");
  g.equals<int>(sol.kernel_polys.size(), 3, "kernel dimension");

  PolySystem want(1);
  want.push_back(parse_polynomial("x1^4 - 2", 1));
  {
    Polynomial p(1);
    p.add_term(Monomial({2}), 1.0);
    p.add_term(Monomial({0}), -std::sqrt(2.0));
    want.push_back(p);
    Polynomial q(1);
    q.add_term(Monomial({3}), 1.0);
    q.add_term(Monomial({1}), -std::sqrt(2.0));
    want.push_back(q);
  }
  SubspaceBasis got_span = coefficient_span(sol.kernel_polys, 4);
  SubspaceBasis want_span = coefficient_span(want, 4);
  g.check(subspace_contained(got_span, want_span, kTol.containment_tol) &&
              subspace_contained(want_span, got_span, kTol.containment_tol),
          "kernel polynomials span {x^4-2, x^2-sqrt2, x^3-sqrt2 x}");
  g.at_most(seconds_since(t0), 5.0, "runtime seconds");
}

void criterion_2(Gate& g) {
  Clock::time_point t0 = Clock::now();
  RadicalConfig cfg;
  RadicalReport rep = gif_m(univariate_pair(), cfg);
  g.check(rep.terminated, "pipeline terminated");
  g.check(!rep.rounds.empty(), "at least one round ran");
  if (!rep.rounds.empty()) {
    const PolySystem& gifgens = rep.rounds[0].gif_generators;
    g.equals<int>(gifgens.size(), 1, "first-round GIF generator count");
    if (gifgens.size() == 1)
      g.at_most(normalized_distance(gifgens[0], parse_polynomial("x1^4 - 2", 1)), 1e-8,
                "GIF generator span equals span{x^4 - 2}");
  }
  g.equals<int>(rep.final_generators.size(), 1, "final generator count");
  if (rep.final_generators.size() == 1) {
    Polynomial want(1);
    want.add_term(Monomial({2}), 1.0);
    want.add_term(Monomial({0}), -std::sqrt(2.0));
    g.at_most(normalized_distance(rep.final_generators[0], want), 1e-8,
              "final generator proportional to x^2 - sqrt2");
  }
  g.at_most(seconds_since(t0), 10.0, "runtime seconds");
}

void criterion_3(Gate& g) {
  Clock::time_point t0 = Clock::now();
  RadicalConfig cfg;
  std::vector<BenchRow> rows = bench_geometric(41, cfg);
  g.equals<size_t>(rows.size(), 21, "one row per odd degree");
  bool all_ok = true;
  double worst = 0.0;
  for (const auto& row : rows) {
    std::cout << "  d=" << row.d << "  seconds=" << row.seconds
              << "  iterations=" << row.iterations << "  error=" << row.generator_error
              << (row.ok ? "" : ("  [" + row.message + "]")) << '\n';
    all_ok = all_ok && row.ok;
    if (row.ok) worst = std::max(worst, row.generator_error);
  }
  g.check(all_ok, "every odd degree certified");
  g.at_most(worst, 1e-6, "worst generator error");

  std::ofstream csv("bench_geometric.csv");
  csv << bench_csv(rows);
  g.check(csv.good(), "CSV written to bench_geometric.csv");
  g.at_most(seconds_since(t0), 600.0, "sweep runtime seconds");
}

void run_table_case(Gate& g, const std::string& name, const PolySystem& ps,
                    const std::vector<std::pair<long long, long long>>& factors,
                    const RadicalConfig& cfg) {
  Clock::time_point t0 = Clock::now();
  RadicalReport rep = gif_m(ps, cfg);
  g.check(rep.terminated, name + ": terminated");
  g.equals<size_t>(rep.rounds.size(), factors.size(), name + ": round count");
  for (size_t r = 0; r < rep.rounds.size() && r < factors.size(); ++r) {
    std::ostringstream os;
    os << name << ": round " << r + 1 << " reduction "
       << rep.rounds[r].moment_side_full << "/" << rep.rounds[r].moment_side_reduced();
    g.check(rep.rounds[r].reduction_factor() == factors[r], os.str());
    g.at_most(rep.rounds[r].solve.final_residual, 1e-12,
              name + ": round " + std::to_string(r + 1) + " residual");
  }
  g.at_most(seconds_since(t0), 60.0, name + ": runtime seconds");
}

void criterion_4(Gate& g) {
  RadicalConfig cfg;
  run_table_case(g, "plane-and-point", plane_and_point(), {{10, 7}}, cfg);
  run_table_case(g, "twisted-cubic", twisted_cubic(), {{10, 7}}, cfg);

  RadicalConfig tight = cfg;
  tight.tol.residual_tol = 1e-14;
  tight.solver.residual_tol = 1e-14;
  run_table_case(g, "sphere-paraboloid", sphere_paraboloid(), {{20, 12}, {10, 5}}, tight);

  run_table_case(g, "skew-quadrics", skew_quadrics(), {{10, 7}}, cfg);
  run_table_case(g, "cylinders-2d", cylinders(2), {{6, 5}}, cfg);
  run_table_case(g, "cylinders-3d", cylinders(3), {{20, 12}}, cfg);
  run_table_case(g, "cylinders-4d", cylinders(4), {{70, 28}}, cfg);
}

void criterion_5(Gate& g) {
  g.equals<int>(gif(cylinders(2), kTol).prolongations, 0, "2d cylinder prolongations");
  g.equals<int>(gif(cylinders(3), kTol).prolongations, 2, "3d cylinder prolongations");
  g.equals<int>(gif(cylinders(4), kTol).prolongations, 3, "4d cylinder prolongations");
  g.check(is_projectively_involutive(plane_and_point(), 0, 0, kTol),
          "plane-and-point involutive at k=0");

  GifReport rep = gif(twisted_cubic(), kTol);
  g.equals<int>(rep.prolongations, 1, "twisted cubic k");
  g.equals<int>(rep.projections, 1, "twisted cubic l");
  g.equals<int>(rep.output.degree, 2, "twisted cubic output degree");
  g.equals<int>(rep.output.generators.size(), 3, "twisted cubic generator count");
  SubspaceBasis span = coefficient_span(rep.output.generators, 2);
  PolySystem missing(3);
  missing.push_back(parse_polynomial("x1*x3 - x2^2", 3));
  g.check(subspace_contained(coefficient_span(missing, 2), span, kTol.containment_tol),
          "x1*x3 - x2^2 lies in the degree-2 span");
}

void criterion_6(Gate& g) {
  RadicalConfig cfg;
  Polynomial diff_squares = parse_polynomial("x1^2 - x2^2", 2);

  {
    RadicalReport rep = gif_m(quartic_pair(), cfg);
    g.check(rep.terminated, "quartic pair terminated");
    g.equals<int>(rep.final_generators.size(), 1, "quartic pair final generator count");
    if (rep.final_generators.size() == 1)
      g.at_most(normalized_distance(rep.final_generators[0], diff_squares), 1e-6,
                "quartic pair generator proportional to x1^2 - x2^2");
  }
  {
    RadicalReport rep = gif_m(substituted_difference(), cfg);
    g.check(rep.terminated, "substituted difference terminated");
    g.equals<int>(rep.final_generators.size(), 1,
                  "substituted difference final generator count");
    if (rep.final_generators.size() == 1)
      g.at_most(normalized_distance(rep.final_generators[0], diff_squares), 1e-6,
                "substituted difference reduces to the pre-substitution line pair");
  }
  {
    RadicalReport rep = gif_m(quintic_line_products(), cfg);
    g.check(rep.terminated, "quintic line products terminated");
    g.equals<int>(rep.final_generators.size(), 1, "quintic line products generator count");
    Polynomial want = parse_polynomial(
        "x1^3 + x1^2*x2^2 + x1^2*x2 - x1*x2^2 - x2^4 - x2^3", 2);
    if (rep.final_generators.size() == 1)
      g.at_most(normalized_distance(rep.final_generators[0], want), 1e-5,
                "square factor drops from the quintic");
  }
  {
    RadicalReport rep = gif_m(quintic_circle_products(), cfg);
    g.check(rep.terminated, "quintic circle products terminated");
    g.equals<int>(rep.final_generators.size(), 1,
                  "quintic circle products generator count");
    if (rep.final_generators.size() == 1)
      g.at_most(normalized_distance(rep.final_generators[0], diff_squares), 1e-5,
                "complex circle factor drops from the quintic");
  }
}

void criterion_7(Gate& g) {
  // (a) structure counts against a brute-force dictionary
  {
    bool ok = true;
    for (int n = 1; n <= 3 && ok; ++n)
      for (int d = 0; d <= 4 && ok; ++d) {
        MomentStructure ms = build_structure(n, d);
        MonomialBasis basis(n, d);
        std::map<std::vector<int>, long long> counts;
        for (long long i = 0; i < ms.side; ++i)
          for (long long j = i; j < ms.side; ++j)
            counts[(basis.monomial(i) * basis.monomial(j)).exponents()] += 1;
        long long repeats = 0;
        for (const auto& [sum, c] : counts) repeats += c - 1;
        ok = ms.side == monomial_count(n, d) && ms.eta() == 1 + repeats;
      }
    g.check(ok, "structure counts match the exponent-sum dictionary (n<=3, d<=4)");
  }

  // (b) representative independence
  {
    bool ok = true;
    for (int n = 1; n <= 3 && ok; ++n)
      for (int d = 1; d <= (n == 3 ? 2 : 3) && ok; ++d) {
        MomentStructure ms = build_structure(n, d);
        Eigen::MatrixXd rows(ms.eta(), ms.side * (ms.side + 1) / 2);
        for (long long t = 0; t < ms.eta(); ++t)
          rows.row(t) = svec(representative(ms, t)).transpose();
        ok = rank_kernel(rows, kTol.svd_rel_tol).rank == ms.eta();
      }
    g.check(ok, "Gram rank of svec'd representatives equals eta");
  }

  // (c) converged lifts are PSD, normalized, face-feasible, and Hankel
  {
    std::vector<std::pair<std::string, PolySystem>> desk = {
        {"quartic", parse_system("vars: 1\nx1^4 - 2\n")},
        {"plane-and-point", plane_and_point()},
        {"twisted-cubic", twisted_cubic()},
        {"cylinders-2d", cylinders(2)},
    };
    for (const auto& [name, ps] : desk) {
      FacedProblem fp = face_of(ps);
      SolveResult res = dr_solve(fp, SolverConfig{});
      g.check(res.report.converged, name + ": DR converged");
      if (!res.report.converged) continue;
      MomentSolution sol = lift_and_extract(fp, res.point, kTol);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sol.full);
      g.check(es.eigenvalues().minCoeff() >= -1e-9, name + ": lift is PSD");
      g.check(std::abs(sol.full(0, 0) - 1.0) <= 1e-9, name + ": normalization holds");
      g.at_most((fp.B.transpose() * sol.full).norm(), 1e-10,
                name + ": generator constraints hold");
      double worst = 0.0;
      for (long long t = 1; t < fp.structure.eta(); ++t)
        worst = std::max(
            worst, std::abs((representative(fp.structure, t).cwiseProduct(sol.full)).sum()));
      g.at_most(worst, 1e-9, name + ": Hankel equalities hold");
    }
  }

  // (d) psd_project against brute-force eigendecomposition
  {
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::MatrixXd A(8, 8);
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) A(i, j) = u(rng);
      Eigen::MatrixXd S = 0.5 * (A + A.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
      Eigen::MatrixXd want = es.eigenvectors() *
                             es.eigenvalues().cwiseMax(0.0).asDiagonal() *
                             es.eigenvectors().transpose();
      worst = std::max(worst, (psd_project(S) - want).norm());
    }
    g.at_most(worst, 1e-12, "psd_project equals eigenvalue clamping on 100 samples");
  }

  // (e) DR and MAP agree on the lifted rank. The instances here are the
  // worked small examples: univariate faces and the plane-and-point face. An
  // alternating-projection sequence that never terminates finitely returns a
  // PSD projection of an infeasible point at every step, so its limit keeps an
  // exact zero eigenvalue; when a terminal face admits matrices of full face
  // rank, MAP therefore parks on a proper boundary face while reflections let
  // DR overshoot into the face interior. That divergence (twisted cubic,
  // circle) is pinned in the solver unit suite; on the faces below the two
  // methods see the same generic rank.
  {
    std::vector<std::pair<std::string, FacedProblem>> desk;
    desk.emplace_back("quartic", face_of(parse_system("vars: 1\nx1^4 - 2\n")));
    desk.emplace_back("quartic-generators", quartic_face());
    desk.emplace_back("degree-8-pair", face_of(univariate_pair()));
    desk.emplace_back(
        "geometric-p5",
        face_of(parse_system("vars: 1\n1 + x1 + x1^2 + x1^3 + x1^4 + x1^5\n")));
    desk.emplace_back("plane-and-point", face_of(plane_and_point()));
    for (const auto& [name, fp] : desk) {
      SolverConfig dr_cfg;
      SolverConfig map_cfg;
      map_cfg.method = SolveMethod::kAlternatingProjections;
      map_cfg.max_iter = 500000;
      SolveResult a = dr_solve(fp, dr_cfg);
      SolveResult b = map_solve(fp, map_cfg);
      g.check(a.report.converged && b.report.converged,
              name + ": both methods converged");
      if (a.report.converged && b.report.converged) {
        long long ra = lift_and_extract(fp, a.point, kTol).rank;
        long long rb = lift_and_extract(fp, b.point, kTol).rank;
        std::ostringstream os;
        os << name << ": ranks agree (dr " << ra << ", map " << rb << ")";
        g.check(ra == rb, os.str());
      }
    }
  }

  // (f) planted-certificate recovery
  {
    FacedProblem fp;
    fp.structure = build_structure(1, 1);
    fp.B = Eigen::MatrixXd::Zero(4, 0);
    fp.V = Eigen::MatrixXd::Identity(4, 4);
    Eigen::MatrixXd e11 = Eigen::MatrixXd::Zero(4, 4);
    e11(0, 0) = 1.0;
    Eigen::MatrixXd z0 = Eigen::MatrixXd::Zero(4, 4);
    z0(2, 2) = 1.0;
    z0(3, 3) = 1.0;
    Eigen::MatrixXd e12 = Eigen::MatrixXd::Zero(4, 4);
    e12(0, 1) = 0.5;
    e12(1, 0) = 0.5;
    fp.reduced_reps = {e11, z0, e12};
    fp.L.resize(3, 10);
    fp.L.row(0) = svec(e11).transpose();
    fp.L.row(1) = svec(z0).transpose();
    fp.L.row(2) = svec(e12).transpose();
    fp.rhs = Eigen::VectorXd::Zero(3);
    fp.rhs(0) = 1.0;
    fp.kept_rows = {0, 1, 2};

    AuxSearch aux = aux_certificate(fp, SolverConfig{}, kTol);
    g.check(aux.certificate.has_value(), "certificate found");
    if (aux.certificate) {
      Eigen::MatrixXd want = 0.5 * z0;
      g.at_most((aux.certificate->Z - want).cwiseAbs().maxCoeff(), 1e-6,
                "certificate matrix matches the planted face");
      g.equals<int>(static_cast<int>(aux.certificate->W.cols()), 2,
                    "exposed nullspace dimension");
      g.at_most(aux.certificate->objective, 1e-8, "certificate objective");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: realrad_acceptance <criterion 1..7>\n";
    return 2;
  }
  int criterion = std::atoi(argv[1]);
  Gate g;
  try {
    switch (criterion) {
      case 1: criterion_1(g); break;
      case 2: criterion_2(g); break;
      case 3: criterion_3(g); break;
      case 4: criterion_4(g); break;
      case 5: criterion_5(g); break;
      case 6: criterion_6(g); break;
      case 7: criterion_7(g); break;
      default:
        std::cerr << "unknown criterion " << criterion << '\n';
        return 2;
    }
  } catch (const std::exception& e) {
    g.check(false, std::string("unexpected exception: ") + e.what());
  }
  std::cout << "criterion " << criterion << ": " << (g.failed == 0 ? "PASS" : "FAIL")
            << " (" << g.passed << " passed, " << g.failed << " failed)\n";
  return g.failed == 0 ? 0 : 1;
}
