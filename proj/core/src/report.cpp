#include "realrad/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace realrad {

std::string method_name(SolveMethod m) {
  return m == SolveMethod::kDouglasRachford ? "dr" : "map";
}

std::string reason_name(StopReason r) {
  switch (r) {
    case StopReason::kRankEqualsDim: return "rank_equals_dim";
    case StopReason::kRoundCap: return "round_cap";
    case StopReason::kSolverFailure: return "solver_failure";
  }
  return "unknown";
}

Polynomial display_trim(const Polynomial& p, double rel) {
  double largest = 0.0;
  for (const auto& [m, c] : p.terms()) largest = std::max(largest, std::abs(c));
  Polynomial out(p.var_count());
  for (const auto& [m, c] : p.terms())
    if (std::abs(c) >= rel * largest) out.add_term(m, c);
  return out;
}

namespace {

nlohmann::json system_strings(const PolySystem& ps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : ps.polynomials()) arr.push_back(format_polynomial(display_trim(p)));
  return arr;
}

nlohmann::json round_json(const RoundRecord& rec) {
  nlohmann::json j;
  j["gif"] = {{"k", rec.gif.prolongations},
              {"l", rec.gif.projections},
              {"degree", rec.gif.output.degree},
              {"kernel_dim", rec.kernel_dim}};
  j["moment"] = {{"full_side", rec.moment_side_full},
                 {"faces", rec.moment_sides},
                 {"eta", rec.eta},
                 {"m", rec.m}};
  j["solve"] = {{"method", method_name(rec.method)},
                {"iterations", rec.solve.iterations},
                {"residual", rec.solve.final_residual},
                {"seconds", rec.solve.wall_time}};
  j["rank"] = rec.rank;
  j["new_generators"] = system_strings(rec.new_generators);
  return j;
}

}  // namespace

std::string radical_report_json(const RadicalReport& report, const std::string& input_name) {
  nlohmann::json j;
  j["input"] = input_name;
  j["rounds"] = nlohmann::json::array();
  for (const auto& rec : report.rounds) j["rounds"].push_back(round_json(rec));
  j["final_generators"] = system_strings(report.final_generators);
  j["terminated"] = report.terminated;
  j["reason"] = reason_name(report.reason);
  return j.dump(2);
}

std::string radical_report_text(const RadicalReport& report, const std::string& input_name) {
  std::ostringstream os;
  os << "input: " << input_name << '\n';
  for (size_t i = 0; i < report.rounds.size(); ++i) {
    const RoundRecord& rec = report.rounds[i];
    os << "round " << (i + 1) << '\n';
    os << "  involutive form: k=" << rec.gif.prolongations << " l=" << rec.gif.projections
       << " degree=" << rec.gif.output.degree << " kernel_dim=" << rec.kernel_dim << '\n';
    os << "  moment matrix: side " << rec.moment_side_full << " reduced to";
    for (long long s : rec.moment_sides) os << ' ' << s;
    os << " (eta " << rec.eta << ", m " << rec.m << ")\n";
    os << "  solve: " << method_name(rec.method) << ", " << rec.solve.iterations
       << " iterations, residual " << rec.solve.final_residual << ", "
       << rec.solve.wall_time << " s"
       << (rec.solve.converged ? "" : " (did not converge)")
       << (rec.coordinate_retry ? ", after coordinate retry" : "") << '\n';
    os << "  moment rank " << rec.rank << (rec.rank == rec.kernel_dim ? " = " : " < ")
       << "kernel dim " << rec.kernel_dim << '\n';
    for (const auto& p : rec.new_generators.polynomials())
      os << "    kernel: " << format_polynomial(display_trim(p)) << '\n';
  }
  os << (report.terminated ? "terminated" : "stopped") << " (" << reason_name(report.reason)
     << ")\n";
  os << "final generators:\n";
  for (const auto& p : report.final_generators.polynomials())
    os << "  " << format_polynomial(display_trim(p)) << '\n';
  return os.str();
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "d,seconds,iterations,residual,generator_error\n";
  os.precision(17);
  for (const auto& r : rows)
    os << r.d << ',' << r.seconds << ',' << r.iterations << ',' << r.residual << ','
       << r.generator_error << '\n';
  return os.str();
}

std::string structure_text(const MomentStructure& ms) {
  std::ostringstream os;
  os << "n " << ms.n << '\n';
  os << "d " << ms.d << '\n';
  os << "side " << ms.side << '\n';
  os << "eta " << ms.eta() << '\n';
  for (long long t = 0; t < ms.eta(); ++t) {
    const MomentConstraint& c = ms.constraints[static_cast<size_t>(t)];
    os << (t + 1) << ' ' << (c.i + 1) << ' ' << (c.j + 1) << ' ' << (c.g + 1) << ' '
       << (c.h + 1) << '\n';
  }
  return os.str();
}

}  // namespace realrad
