#include "realrad/gif.hpp"

#include <deque>
#include <random>
#include <sstream>
#include <stdexcept>

namespace realrad {

namespace {

// fallback seed for the delta-regularity retries inside the definition-level test
constexpr std::uint64_t kGenericSeed = 9001;

Polynomial shift(const Polynomial& p, const Monomial& m) {
  Polynomial out(p.var_count());
  for (const auto& [mono, c] : p.terms()) out.add_term(mono * m, c);
  return out;
}

PolySystem columns_to_polys(const SubspaceBasis& sub, int n, int degree) {
  MonomialBasis basis(n, degree);
  PolySystem out(n);
  for (int j = 0; j < sub.dim(); ++j)
    out.push_back(Polynomial::from_coefficients(basis, sub.basis.col(j)));
  return out;
}

KernelState state_from_system(const PolySystem& rows, int degree,
                              const ToleranceConfig& tol) {
  CoefficientMatrix cm = coefficient_matrix(rows, degree);
  RankKernel rk = rank_kernel(cm.entries, tol.svd_rel_tol);
  KernelState st;
  st.n = rows.var_count();
  st.degree = degree;
  st.kernel = rk.kernel;
  st.generators = columns_to_polys(rk.rowspace, st.n, degree);
  return st;
}

void check_basis_cap(int n, int degree, long long cap) {
  long long count = monomial_count(n, degree);
  if (count > cap) {
    std::ostringstream os;
    os << "prolongation needs " << count << " monomials (degree " << degree
       << " in " << n << " variables), above the cap of " << cap;
    throw std::runtime_error(os.str());
  }
}

// all multiples x^a * p with deg(x^a * p) <= target
PolySystem prolong_rows(const PolySystem& gens, int target) {
  int n = gens.var_count();
  PolySystem rows(n);
  for (const auto& p : gens.polynomials()) {
    if (p.is_zero()) continue;
    int room = target - p.degree();
    if (room < 0) continue;
    MonomialBasis mb(n, room);
    for (const auto& m : mb.monomials()) rows.push_back(shift(p, m));
  }
  return rows;
}

KernelState prolong_state_to(const KernelState& st, int target,
                             const ToleranceConfig& tol, long long cap) {
  check_basis_cap(st.n, target, cap);
  return state_from_system(prolong_rows(st.generators, target), target, tol);
}

// count of singular values above an absolute floor
int rank_above(const Eigen::MatrixXd& M, double floor) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > floor) ++r;
  return r;
}

struct CandidateCheck {
  bool dims_stable = false;
  bool symbol_involutive = false;
  bool passed() const { return dims_stable && symbol_involutive; }
};

}  // namespace

KernelState prolong(const PolySystem& ps, int k, const ToleranceConfig& tol,
                    long long basis_cap) {
  if (ps.empty() || ps.degree() < 0)
    throw std::invalid_argument("cannot prolong an empty or zero system");
  if (k < 0) throw std::invalid_argument("prolongation order must be nonnegative");
  int target = ps.degree() + k;
  check_basis_cap(ps.var_count(), target, basis_cap);
  return state_from_system(prolong_rows(ps, target), target, tol);
}

KernelState project(const KernelState& state, int l, const ToleranceConfig& tol) {
  if (l < 0) throw std::invalid_argument("projection order must be nonnegative");
  if (l == 0) return state;
  int target = state.degree - l;
  if (target < 0) throw std::invalid_argument("projection below degree zero");
  long long keep = monomial_count(state.n, target);
  // coordinates are ordered by ascending degree, so deleting the high-degree
  // ones keeps a prefix
  Eigen::MatrixXd kept = state.kernel.basis.topRows(keep);
  RankKernel rk = rank_kernel(kept.transpose(), tol.svd_rel_tol);
  KernelState out;
  out.n = state.n;
  out.degree = target;
  out.kernel = rk.rowspace;  // column space of the truncated kernel basis
  out.generators = columns_to_polys(rk.kernel, out.n, target);
  return out;
}

SymbolProfile symbol_profile(const KernelState& state, const ToleranceConfig& tol) {
  int n = state.n;
  int d = state.degree;
  SymbolProfile out;
  out.degree = d;
  out.betas.assign(static_cast<size_t>(n), 0);

  long long lo = monomial_count(n, d - 1);
  long long block = monomial_count(n, d) - lo;
  CoefficientMatrix cm = coefficient_matrix(state.generators, d);
  Eigen::MatrixXd top = cm.entries.rightCols(block);

  // Generator rows are unit vectors, so anything below svd_rel_tol in the
  // top block is noise rather than symbol content; using an absolute floor
  // keeps junk-only blocks from acquiring phantom rank.
  double floor = tol.svd_rel_tol;
  Eigen::MatrixXd symbol_rows;  // orthonormal basis of the symbol row space
  {
    if (top.rows() == 0) {
      out.symbol_rank = 0;
      symbol_rows.resize(0, block);
    } else {
      Eigen::BDCSVD<Eigen::MatrixXd> svd(top, Eigen::ComputeThinV);
      int r = 0;
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > floor) ++r;
      out.symbol_rank = r;
      symbol_rows = svd.matrixV().leftCols(r).transpose();
    }
  }

  // nested prefix ranks over columns sorted by descending class
  if (out.symbol_rank > 0 && d > 0) {
    MonomialBasis basis(n, d);
    std::vector<std::vector<long long>> by_class(static_cast<size_t>(n + 1));
    for (long long i = 0; i < block; ++i) {
      int cls = basis.monomial(lo + i).class_index();
      by_class[static_cast<size_t>(cls)].push_back(i);
    }
    int prev_rank = 0;  // rank of the classes > k prefix
    std::vector<long long> prefix;
    for (int k = n; k >= 1; --k) {
      for (long long i : by_class[static_cast<size_t>(k)]) prefix.push_back(i);
      Eigen::MatrixXd sub(symbol_rows.rows(), static_cast<Eigen::Index>(prefix.size()));
      for (size_t c = 0; c < prefix.size(); ++c)
        sub.col(static_cast<Eigen::Index>(c)) = symbol_rows.col(prefix[c]);
      int r = rank_above(sub, floor);
      out.betas[static_cast<size_t>(k - 1)] = r - prev_rank;
      prev_rank = r;
    }
  }

  out.cartan_sum = 0;
  for (int k = 1; k <= n; ++k)
    out.cartan_sum += k * out.betas[static_cast<size_t>(k - 1)];

  // single-variable prolongations of the symbol rows
  {
    MonomialBasis basis(n, d);
    long long next_lo = monomial_count(n, d);
    long long next_block = monomial_count(n, d + 1) - next_lo;
    Eigen::MatrixXd prolonged =
        Eigen::MatrixXd::Zero(symbol_rows.rows() * n, next_block);
    for (Eigen::Index r = 0; r < symbol_rows.rows(); ++r)
      for (int i = 0; i < n; ++i)
        for (long long c = 0; c < block; ++c) {
          double v = symbol_rows(r, c);
          if (v == 0.0) continue;
          Monomial target = basis.monomial(lo + c) * Monomial::variable(n, i);
          long long col = grevlex_position(target, d + 1) - next_lo;
          prolonged(r * n + i, col) += v;
        }
    out.prolonged_symbol_rank = rank_above(prolonged, floor);
  }

  out.involutive = out.cartan_sum == out.prolonged_symbol_rank;
  return out;
}

Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::VectorXd diag = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j)
    if (diag(j) < 0.0) Q.col(j) *= -1.0;
  return Q;
}

namespace {

// Dimension stability is coordinate invariant; the symbol half falls back to
// a seeded generic change of coordinates because a Cartan-test pass is
// definitive while a failure may just mean delta-irregular coordinates.
class CandidateTester {
 public:
  CandidateTester(const PolySystem& ps, const ToleranceConfig& tol, long long cap,
                  std::uint64_t seed)
      : ps_(ps), tol_(tol), cap_(cap), seed_(seed) {}

  const KernelState& prolonged(int k) {
    while (static_cast<int>(states_.size()) <= k)
      states_.push_back(prolong(ps_, static_cast<int>(states_.size()), tol_, cap_));
    return states_[static_cast<size_t>(k)];
  }

  // r must be project(prolonged(k), l)
  CandidateCheck check(const KernelState& r, int k, int l) {
    KernelState r1 = project(prolonged(k + 1), l + 1, tol_);
    CandidateCheck out;
    out.dims_stable = r.kernel.dim() == r1.kernel.dim();
    if (!out.dims_stable) return out;
    out.symbol_involutive = symbol_profile(r, tol_).involutive;
    if (!out.symbol_involutive)
      out.symbol_involutive =
          symbol_profile(project(generic_prolonged(k), l, tol_), tol_).involutive;
    return out;
  }

 private:
  const KernelState& generic_prolonged(int k) {
    if (!generic_) generic_ = apply_coordinate_change(
        ps_, random_orthogonal(ps_.var_count(), seed_));
    while (static_cast<int>(generic_states_.size()) <= k)
      generic_states_.push_back(
          prolong(*generic_, static_cast<int>(generic_states_.size()), tol_, cap_));
    return generic_states_[static_cast<size_t>(k)];
  }

  const PolySystem& ps_;
  const ToleranceConfig& tol_;
  long long cap_;
  std::uint64_t seed_;
  std::deque<KernelState> states_;  // deque: prolonged(k) references stay valid
  std::optional<PolySystem> generic_;
  std::deque<KernelState> generic_states_;
};

KernelState map_state_back(const KernelState& st, const Eigen::MatrixXd& T,
                           const ToleranceConfig& tol) {
  // the run used p(Tx); recover original-coordinate generators via T^(-1) = T^T
  PolySystem mapped = apply_coordinate_change(st.generators, T.transpose());
  return state_from_system(mapped, st.degree, tol);
}

}  // namespace

bool is_projectively_involutive(const PolySystem& ps, int k, int l,
                                const ToleranceConfig& tol) {
  if (k < 0 || l < 0) throw std::invalid_argument("orders must be nonnegative");
  CandidateTester tester(ps, tol, 20000, kGenericSeed);
  KernelState r = project(tester.prolonged(k), l, tol);
  return tester.check(r, k, l).passed();
}

GifReport gif(const PolySystem& ps, const ToleranceConfig& tol, const GifOptions& opts) {
  tol.validate();
  if (ps.empty() || ps.degree() < 1)
    throw std::invalid_argument("gif needs a nonzero system of positive degree");

  struct Run {
    PolySystem system;
    std::optional<Eigen::MatrixXd> T;
  };
  std::vector<Run> runs;
  if (opts.coordinate_policy == CoordinatePolicy::kAlways) {
    Eigen::MatrixXd T = random_orthogonal(ps.var_count(), opts.seed);
    runs.push_back({apply_coordinate_change(ps, T), T});
  } else {
    runs.push_back({ps, std::nullopt});
    if (opts.coordinate_policy == CoordinatePolicy::kAuto) {
      Eigen::MatrixXd T = random_orthogonal(ps.var_count(), opts.seed);
      runs.push_back({apply_coordinate_change(ps, T), T});
    }
  }

  GifReport report;
  for (size_t run_idx = 0; run_idx < runs.size(); ++run_idx) {
    const Run& run = runs[run_idx];
    int d = run.system.degree();
    CandidateTester tester(run.system, tol, opts.basis_cap, opts.seed + 1);
    for (int k = 0; k <= opts.max_prolongations; ++k) {
      const KernelState& dk = tester.prolonged(k);
      struct Survivor {
        KernelState state;
        int l;
      };
      std::vector<Survivor> survivors;
      // Once we have prolonged, only proper projections compete: an
      // involutive unprojected prolongation reappears as the l = 1
      // projection one level up, where its dimension stability has been
      // confirmed one prolongation deeper before we commit to it.
      for (int l = (k == 0 ? 0 : 1); l <= d + k; ++l) {
        KernelState r = project(dk, l, tol);
        CandidateCheck chk = tester.check(r, k, l);
        ++report.candidates_examined;
        GifStep step{k, l, r.degree, r.kernel.dim(), chk.dims_stable,
                     chk.symbol_involutive, false};
        if (chk.passed()) {
          // the candidate must reproduce the prolonged slice, otherwise the
          // projection dropped genuine equations
          KernelState back = prolong_state_to(r, d + k, tol, opts.basis_cap);
          step.survived =
              subspace_contained(back.kernel, dk.kernel, tol.containment_tol);
          if (step.survived) survivors.push_back({std::move(r), l});
        }
        report.steps.push_back(step);
      }
      if (!survivors.empty()) {
        Survivor& best = survivors.back();  // largest l = lowest degree
        report.prolongations = k;
        report.projections = best.l;
        if (run.T) {
          report.coordinate_change = run.T;
          report.output = map_state_back(best.state, *run.T, tol);
        } else {
          report.output = std::move(best.state);
        }
        return report;
      }
      // auto policy: give a generic change of coordinates a chance before
      // burning through the whole prolongation budget
      if (opts.coordinate_policy == CoordinatePolicy::kAuto && run_idx == 0 &&
          k >= opts.retry_after)
        break;
    }
  }
  throw std::runtime_error(
      "no projectively involutive projection found within the prolongation cap");
}

PolySystem generators(const KernelState& state) {
  PolySystem out(state.generators.var_count());
  for (const auto& p : state.generators.polynomials())
    out.push_back(normalize_largest_coefficient(p));
  return out;
}

}  // namespace realrad
