#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include <random>

#include "realrad/gif.hpp"
#include "realrad/moment.hpp"
#include "realrad/numlin.hpp"
#include "realrad/pipeline.hpp"
#include "realrad/polysys.hpp"
#include "realrad/solver.hpp"

namespace {

using namespace realrad;

const ToleranceConfig kTol{};

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

void BM_BuildStructure(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  int d = static_cast<int>(state.range(1));
  for (auto _ : state) {
    MomentStructure ms = build_structure(n, d);
    benchmark::DoNotOptimize(ms.constraints.data());
  }
}
BENCHMARK(BM_BuildStructure)->Args({2, 4})->Args({3, 4})->Args({4, 3});

void BM_PsdProject(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd A(side, side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) A(i, j) = u(rng);
  Eigen::MatrixXd S = 0.5 * (A + A.transpose());
  for (auto _ : state) {
    Eigen::MatrixXd P = psd_project(S);
    benchmark::DoNotOptimize(P.data());
  }
}
BENCHMARK(BM_PsdProject)->Arg(8)->Arg(28)->Arg(64);

void BM_Gif(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  PolySystem ps = cylinders(n);
  for (auto _ : state) {
    GifReport rep = gif(ps, kTol);
    benchmark::DoNotOptimize(rep.output.kernel.basis.data());
  }
}
BENCHMARK(BM_Gif)->Arg(2)->Arg(3)->Arg(4);

void BM_DrSolveQuartic(benchmark::State& state) {
  PolySystem Q(1);
  Q.push_back(parse_polynomial("x1^4 - 2", 1));
  MomentStructure ms = build_structure(1, 4);
  FacedProblem fp = facial_reduce_first(ms, assemble_B(Q, 4, kTol), kTol);
  SolverConfig cfg;
  for (auto _ : state) {
    SolveResult res = dr_solve(fp, cfg);
    benchmark::DoNotOptimize(res.report.final_residual);
  }
}
BENCHMARK(BM_DrSolveQuartic);

void BM_PipelineUnivariatePair(benchmark::State& state) {
  PolySystem ps = parse_system("vars: 1\nx1^8 - x1^4 - 2\nx1^8 - 3*x1^4 + 2\n");
  RadicalConfig cfg;
  for (auto _ : state) {
    RadicalReport rep = gif_m(ps, cfg);
    benchmark::DoNotOptimize(rep.terminated);
  }
}
BENCHMARK(BM_PipelineUnivariatePair);

}  // namespace

BENCHMARK_MAIN();
