#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "realrad/gif.hpp"
#include "realrad/moment.hpp"
#include "realrad/solver.hpp"

namespace realrad {

struct RadicalConfig {
  ToleranceConfig tol;
  SolverConfig solver;
  GifOptions gif;
  int restarts = 0;   // extra solves from seeded random PSD starts
  int max_fr = 0;     // facial reductions beyond the generator face
  int round_cap = 10;
};

enum class StopReason { kRankEqualsDim, kRoundCap, kSolverFailure };

struct RoundRecord {
  GifReport gif;
  PolySystem gif_generators{0};  // normalized, in the input coordinates
  long long kernel_dim = 0;      // d: kernel dimension of the involutive state
  long long moment_side_full = 0;
  std::vector<long long> moment_sides;  // after each facial reduction
  long long eta = 0;
  long long m = 0;  // rank of the generator constraint block
  SolveMethod method = SolveMethod::kDouglasRachford;
  SolveReport solve;
  long long rank = 0;  // r: rank of the lifted moment matrix
  PolySystem new_generators{0};
  bool coordinate_retry = false;

  long long moment_side_reduced() const {
    return moment_sides.empty() ? 0 : moment_sides.front();
  }
  long long new_generator_count() const { return new_generators.size(); }
  std::pair<long long, long long> reduction_factor() const {
    return {moment_side_full, moment_side_reduced()};
  }
};

struct RadicalReport {
  PolySystem input{0};
  std::vector<RoundRecord> rounds;
  PolySystem final_generators{0};
  bool terminated = false;
  StopReason reason = StopReason::kRoundCap;
};

// Alternates involutive-form computation with a moment-matrix feasibility
// solve until the moment rank matches the kernel dimension of the involutive
// state; the moment kernel feeds the next round otherwise.
RadicalReport gif_m(const PolySystem& P, const RadicalConfig& cfg);

struct BenchRow {
  int d = 0;
  double seconds = 0.0;
  long long iterations = 0;  // summed over rounds
  double residual = std::numeric_limits<double>::infinity();  // worst round
  double generator_error = std::numeric_limits<double>::infinity();
  bool ok = false;
  std::string message;
};

// Runs the pipeline on 1 + x + ... + x^d for every odd d up to d_max and
// measures the distance of the final generator from x + 1.
std::vector<BenchRow> bench_geometric(int d_max, const RadicalConfig& cfg);

// Largest coefficient difference between two polynomials, over the union of
// their monomials.
double coefficient_distance(const Polynomial& a, const Polynomial& b);

}  // namespace realrad
