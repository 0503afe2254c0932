#include "realrad/solver.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace realrad {

void SolverConfig::validate() const {
  if (!(residual_tol > 0.0)) throw std::invalid_argument("residual_tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (log_every < 1) throw std::invalid_argument("log_every must be at least 1");
}

double cosine(const Eigen::MatrixXd& prev, const Eigen::MatrixXd& mid,
              const Eigen::MatrixXd& next) {
  Eigen::MatrixXd a = mid - prev;
  Eigen::MatrixXd b = next - mid;
  double den = a.norm() * b.norm();
  if (den < 1e-300) return 0.0;
  double v = std::abs(a.cwiseProduct(b).sum()) / den;
  return std::min(v, 1.0);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Eigen::VectorXd psd_project_svec(const Eigen::VectorXd& z) {
  return svec(psd_project(smat(z)));
}

struct EngineConfig {
  long long max_iter = 1;
  double residual_tol = 1e-12;
  bool exit_on_stagnation = false;
  long long log_every = 10;
  std::ostream* log = nullptr;
};

struct EngineResult {
  Eigen::VectorXd psd_point;
  long long iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
  std::vector<double> cosines;
  bool converged = false;
  bool stagnated = false;
};

void log_line(std::ostream* log, long long it, double cos_value, double residual,
              double psd_seconds) {
  if (!log) return;
  (*log) << "iter " << it << "  cosine " << cos_value << "  residual " << residual
         << "  psd_seconds " << psd_seconds << '\n';
}

constexpr long long kStagnationWindow = 5000;
constexpr double kStagnationRelChange = 1e-3;

// Douglas-Rachford between an affine set (projection `lin`) and the PSD cone,
// in svec coordinates; residual measured at the PSD-projected point.
template <class LinProj, class Residual>
EngineResult dr_engine(Eigen::VectorXd z, LinProj&& lin, Residual&& resid,
                       const EngineConfig& ec) {
  EngineResult out;
  std::vector<double> ring(kStagnationWindow, 0.0);
  Eigen::VectorXd prev_step;
  bool have_prev = false;
  for (long long it = 1; it <= ec.max_iter; ++it) {
    Eigen::VectorXd ql = lin(z);
    Eigen::VectorXd rl = 2.0 * ql - z;
    Clock::time_point t0 = Clock::now();
    Eigen::VectorXd qp = psd_project_svec(rl);
    double psd_seconds = seconds_since(t0);
    double r = resid(qp);
    out.iterations = it;
    out.residual = r;
    out.psd_point = qp;

    bool stagnant = false;
    if (it > kStagnationWindow) {
      double old = ring[static_cast<size_t>((it - 1) % kStagnationWindow)];
      stagnant = std::abs(old - r) < kStagnationRelChange * std::max(old, 1e-300);
    }
    ring[static_cast<size_t>((it - 1) % kStagnationWindow)] = r;
    out.stagnated = stagnant;

    if (ec.log && (it % ec.log_every == 0 || r <= ec.residual_tol))
      log_line(ec.log, it, out.cosines.empty() ? 0.0 : out.cosines.back(), r,
               psd_seconds);
    if (r <= ec.residual_tol) {
      out.converged = true;
      out.stagnated = false;
      break;
    }
    if (ec.exit_on_stagnation && stagnant) break;

    Eigen::VectorXd rp = 2.0 * qp - rl;
    Eigen::VectorXd z_next = 0.5 * (z + rp);
    Eigen::VectorXd step = z_next - z;
    if (have_prev) {
      double den = prev_step.norm() * step.norm();
      out.cosines.push_back(den < 1e-300 ? 0.0
                                         : std::min(std::abs(prev_step.dot(step)) / den, 1.0));
    }
    prev_step = std::move(step);
    have_prev = true;
    z = std::move(z_next);
  }
  return out;
}

Eigen::MatrixXd initial_point(const FacedProblem& fp, const SolverConfig& cfg,
                              const std::optional<Eigen::MatrixXd>& start) {
  long long w = fp.face_side();
  if (start) {
    if (start->rows() != w || start->cols() != w)
      throw std::invalid_argument("start matrix does not match the face side");
    return 0.5 * (*start + start->transpose());
  }
  double alpha = cfg.init_scale;
  if (alpha <= 0.0) {
    double t = fp.reduced_reps.at(0).trace();
    if (t <= 1e-14)
      throw std::runtime_error("normalization constraint cannot be scaled to one");
    alpha = 1.0 / t;
  }
  return alpha * Eigen::MatrixXd::Identity(w, w);
}

}  // namespace

SolveResult dr_solve(const FacedProblem& fp, const SolverConfig& cfg,
                     const std::optional<Eigen::MatrixXd>& start) {
  cfg.validate();
  LinearManifoldProjector proj(fp.L, fp.rhs, ToleranceConfig{}.svd_rel_tol);
  Eigen::VectorXd z0 = svec(initial_point(fp, cfg, start));

  Clock::time_point t0 = Clock::now();
  EngineConfig ec{cfg.max_iter, cfg.residual_tol, false, cfg.log_every, cfg.log};
  EngineResult er = dr_engine(
      std::move(z0), [&](const Eigen::VectorXd& z) { return proj.project(z); },
      [&](const Eigen::VectorXd& z) { return proj.residual_norm(z); }, ec);

  SolveResult out;
  out.point = smat(er.psd_point);
  out.report.iterations = er.iterations;
  out.report.final_residual = er.residual;
  out.report.cosine_history = std::move(er.cosines);
  out.report.wall_time = seconds_since(t0);
  out.report.converged = er.converged;
  out.report.stagnated = er.stagnated;
  return out;
}

SolveResult map_solve(const FacedProblem& fp, const SolverConfig& cfg,
                      const std::optional<Eigen::MatrixXd>& start) {
  cfg.validate();
  LinearManifoldProjector proj(fp.L, fp.rhs, ToleranceConfig{}.svd_rel_tol);
  Eigen::VectorXd z = svec(initial_point(fp, cfg, start));

  Clock::time_point t0 = Clock::now();
  SolveResult out;
  for (long long it = 1; it <= cfg.max_iter; ++it) {
    Eigen::VectorXd pl = proj.project(z);
    Clock::time_point tp = Clock::now();
    Eigen::VectorXd ps = psd_project_svec(pl);
    double psd_seconds = seconds_since(tp);
    double r = proj.residual_norm(ps);

    Eigen::VectorXd a = pl - z;
    Eigen::VectorXd b = ps - pl;
    double den = a.norm() * b.norm();
    double c = den < 1e-300 ? 0.0 : std::min(std::abs(a.dot(b)) / den, 1.0);
    out.report.cosine_history.push_back(c);

    out.report.iterations = it;
    out.report.final_residual = r;
    z = std::move(ps);
    if (cfg.log && (it % cfg.log_every == 0 || r <= cfg.residual_tol))
      log_line(cfg.log, it, c, r, psd_seconds);
    if (r <= cfg.residual_tol) {
      out.report.converged = true;
      break;
    }
  }
  out.point = smat(z);
  out.report.wall_time = seconds_since(t0);
  return out;
}

namespace {
constexpr long long kAuxMaxIter = 20000;
constexpr double kAuxResidualTol = 1e-9;
constexpr double kAuxMinNorm = 1e-6;
}  // namespace

AuxSearch aux_certificate(const FacedProblem& fp, const SolverConfig& cfg,
                          const ToleranceConfig& tol) {
  tol.validate();
  AuxSearch out;
  long long m = fp.L.rows();
  long long w = fp.face_side();
  if (m <= 1) return out;  // no direction orthogonal to the right-hand side

  Eigen::MatrixXd U = orthonormal_complement(fp.rhs.normalized(), tol.svd_rel_tol);
  Eigen::MatrixXd K = fp.L.transpose() * U;
  Eigen::MatrixXd G = rank_kernel(K.transpose(), tol.svd_rel_tol).rowspace.basis;
  if (G.cols() == 0) return out;

  Eigen::VectorXd id_svec = svec(Eigen::MatrixXd::Identity(w, w));
  Eigen::VectorXd gt = G.transpose() * id_svec;
  double gt2 = gt.squaredNorm();
  if (gt2 < 1e-24) return out;  // unit trace is unreachable inside the range

  auto affine = [&](const Eigen::VectorXd& z) -> Eigen::VectorXd {
    Eigen::VectorXd c = G.transpose() * z;
    c += gt * ((1.0 - gt.dot(c)) / gt2);
    return G * c;
  };

  EngineConfig ec{kAuxMaxIter, kAuxResidualTol, true, cfg.log_every, cfg.log};
  EngineResult er = dr_engine(
      affine(id_svec / static_cast<double>(w)), affine,
      [&](const Eigen::VectorXd& z) { return (z - affine(z)).norm(); }, ec);
  out.residual = er.residual;
  out.iterations = er.iterations;
  if (!er.converged) return out;

  Eigen::VectorXd z_star = affine(er.psd_point);
  Eigen::MatrixXd Z = smat(z_star);
  if (Z.norm() < kAuxMinNorm) return out;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd v = svd.solve(z_star);

  FacialCertificate cert;
  cert.y = U * v;
  cert.Z = std::move(Z);
  cert.objective = std::abs(fp.rhs.dot(cert.y));
  cert.W = rank_kernel(cert.Z, tol.svd_rel_tol).kernel.basis;
  out.certificate = std::move(cert);
  return out;
}

FacedProblem facial_reduce_further(const FacedProblem& fp, const FacialCertificate& cert,
                                   const ToleranceConfig& tol) {
  tol.validate();
  if (cert.Z.rows() != fp.face_side() || cert.Z.cols() != fp.face_side())
    throw std::invalid_argument("certificate does not match the face side");
  Eigen::MatrixXd W = rank_kernel(cert.Z, tol.svd_rel_tol).kernel.basis;
  if (W.cols() == 0)
    throw std::runtime_error(
        "certificate matrix is definite; the normalized problem would be infeasible");
  FacedProblem out = fp;
  out.face_chain.push_back(std::move(W));
  assemble_face(out, tol);
  return out;
}

}  // namespace realrad
