#pragma once

#include <string>
#include <vector>

#include "realrad/pipeline.hpp"

namespace realrad {

std::string method_name(SolveMethod m);
std::string reason_name(StopReason r);

// Copy of p without terms below rel times its largest coefficient; keeps
// printed generators free of solver noise.
Polynomial display_trim(const Polynomial& p, double rel = 1e-10);

std::string radical_report_json(const RadicalReport& report, const std::string& input_name);
std::string radical_report_text(const RadicalReport& report, const std::string& input_name);

// Header `d,seconds,iterations,residual,generator_error` plus one row per
// sweep degree.
std::string bench_csv(const std::vector<BenchRow>& rows);

// Header lines (n, d, side, eta) followed by one `t i j g h` line per
// constraint, all indices 1-based; the normalization row prints g = h = 0.
std::string structure_text(const MomentStructure& ms);

}  // namespace realrad
