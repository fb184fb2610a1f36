#include "pfsr/solver.hpp"

#include <algorithm>
#include <cmath>

#include "pfsr/prox.hpp"

namespace pfsr {

namespace {

void check_config(const SolverConfig& cfg) {
  if (!(cfg.mu1 > 0.0) || !(cfg.mu2 > 0.0)) {
    throw InvalidParameter("solver: mu1 and mu2 must be positive");
  }
  if (cfg.max_iter < 1) {
    throw InvalidParameter("solver: max_iter must be at least 1");
  }
  if (!(cfg.tol_r1 > 0.0) || !(cfg.tol_r2 > 0.0) || !(cfg.tol_dz > 0.0)) {
    throw InvalidParameter("solver: tolerances must be positive");
  }
}

void check_problem(const ProblemSpec& p) {
  if (p.n_labeled < 1) {
    throw InvalidInput("solver: problem has no labeled columns");
  }
  if (p.V.rows() != p.X.rows() ||
      p.V.cols() != p.n_labeled + p.n_unlabeled ||
      p.X.cols() != p.n_labeled) {
    throw InvalidInput("solver: inconsistent problem dimensions");
  }
  if (p.lambda1 < 0.0 || p.lambda2 < 0.0 || p.delta < 0.0) {
    throw InvalidParameter("solver: regularization weights must be >= 0");
  }
}

void check_state(const SolverState& st, const ProblemSpec& p) {
  const Index n = p.n_labeled + p.n_unlabeled;
  const Index d = p.X.rows();
  if (st.Z.rows() != n || st.Z.cols() != p.n_labeled ||
      st.A.rows() != n || st.A.cols() != p.n_labeled ||
      st.E.rows() != d || st.E.cols() != p.n_labeled ||
      st.T1.rows() != d || st.T1.cols() != p.n_labeled ||
      st.T2.rows() != n || st.T2.cols() != p.n_labeled) {
    throw InvalidInput("solver: state shapes do not match the problem");
  }
}

double successive_change(const DenseMatrix& next, const DenseMatrix& prev) {
  return (next - prev).norm() / std::max(prev.norm(), 1.0);
}

}  // namespace

SolverState zero_state(const ProblemSpec& p) {
  const Index n = p.n_labeled + p.n_unlabeled;
  const Index d = p.X.rows();
  SolverState st;
  st.Z = DenseMatrix::Zero(n, p.n_labeled);
  st.A = DenseMatrix::Zero(n, p.n_labeled);
  st.E = DenseMatrix::Zero(d, p.n_labeled);
  st.T1 = DenseMatrix::Zero(d, p.n_labeled);
  st.T2 = DenseMatrix::Zero(n, p.n_labeled);
  st.k = 0;
  return st;
}

double resolve_eta(const ProblemSpec& p, const SolverConfig& cfg) {
  if (cfg.eta_v > 0.0) return cfg.eta_v;
  DenseMatrix gram = cfg.mu1 * (p.V.transpose() * p.V);
  gram.diagonal().array() += cfg.mu2;
  return 1.01 * spectral_norm(gram);
}

DenseMatrix update_Z(const SolverState& st, const ProblemSpec& p,
                     const SolverConfig& cfg) {
  check_state(st, p);
  if (!(cfg.eta_v > 0.0)) {
    throw InvalidParameter("update_Z: eta_v must be resolved to a positive value");
  }
  const DenseMatrix B =
      cfg.mu1 * (p.V.transpose() * (p.V * st.Z + st.E - p.X - st.T1 / cfg.mu1)) +
      cfg.mu2 * st.Z - cfg.mu2 * st.A - st.T2;
  return zero_diagonal_project(svt(st.Z - B / cfg.eta_v, 1.0 / cfg.eta_v),
                               p.n_labeled);
}

DenseMatrix update_A(const SolverState& st, const ProblemSpec& p,
                     const SolverConfig& cfg) {
  check_state(st, p);
  // The objective weights ||A||_1 by lambda1, so the proximal threshold
  // must be lambda1/mu2 (not lambda2/mu2).
  return zero_diagonal_project(
      soft_threshold(st.Z - st.T2 / cfg.mu2, p.lambda1 / cfg.mu2),
      p.n_labeled);
}

DenseMatrix update_E(const SolverState& st, const ProblemSpec& p,
                     const SolverConfig& cfg) {
  check_state(st, p);
  return soft_threshold(p.X - p.V * st.Z + st.T1 / cfg.mu1,
                        p.lambda2 / cfg.mu1);
}

std::pair<DenseMatrix, DenseMatrix> update_T(const SolverState& st,
                                             const ProblemSpec& p,
                                             const SolverConfig& cfg) {
  check_state(st, p);
  DenseMatrix t1 = st.T1 - cfg.mu1 * (p.V * st.Z + st.E - p.X);
  DenseMatrix t2 = st.T2 - cfg.mu2 * (st.Z - st.A);
  return {std::move(t1), std::move(t2)};
}

double h_norm_diff(const SolverState& prev, const SolverState& cur,
                   const SolverConfig& cfg) {
  const DenseMatrix a_term = (prev.A - cur.A) - (prev.T2 - cur.T2) / cfg.mu2;
  return std::sqrt(cfg.mu2 * a_term.squaredNorm() +
                   cfg.mu1 * (prev.E - cur.E).squaredNorm());
}

Solution solve(const ProblemSpec& p, const SolverConfig& cfg_in) {
  check_problem(p);
  check_config(cfg_in);
  if (p.model != Model::LRS) {
    throw InvalidParameter("solve: problem model is not lrs (use solve_model)");
  }
  SolverConfig cfg = cfg_in;
  cfg.eta_v = resolve_eta(p, cfg_in);

  SolverState st = zero_state(p);
  Solution out;
  out.trace.reserve(static_cast<size_t>(cfg.max_iter));
  for (int k = 1; k <= cfg.max_iter; ++k) {
    const SolverState prev = st;
    st.Z = update_Z(st, p, cfg);
    // A and E depend on the new Z but not on each other.
    DenseMatrix a_next = update_A(st, p, cfg);
    DenseMatrix e_next = update_E(st, p, cfg);
    st.A = std::move(a_next);
    st.E = std::move(e_next);
    std::tie(st.T1, st.T2) = update_T(st, p, cfg);
    st.k = k;

    const auto [r1, r2] = feasibility_residuals(st.Z, st.A, st.E, p);
    const double dz = successive_change(st.Z, prev.Z);
    const double hd = h_norm_diff(prev, st, cfg);
    out.trace.push_back(
        {k, objective_value(st.Z, st.A, st.E, p), r1, r2, dz, hd});
    if (r1 <= cfg.tol_r1 && r2 <= cfg.tol_r2 && dz <= cfg.tol_dz) {
      out.converged = true;
      break;
    }
  }
  out.iterations = static_cast<int>(out.trace.size());
  out.Z = std::move(st.Z);
  out.A = std::move(st.A);
  out.E = std::move(st.E);
  return out;
}

Solution solve_s_pfsr(const ProblemSpec& p, const SolverConfig& cfg_in) {
  check_problem(p);
  check_config(cfg_in);
  if (p.model != Model::S) {
    throw InvalidParameter("solve_s_pfsr: problem model is not s");
  }
  SolverConfig cfg = cfg_in;
  cfg.eta_v = resolve_eta(p, cfg_in);

  // Single coefficient block against the data constraint: the A and E
  // blocks of the state stay zero, so the shared diagnostics apply as-is.
  SolverState st = zero_state(p);
  Solution out;
  out.trace.reserve(static_cast<size_t>(cfg.max_iter));
  for (int k = 1; k <= cfg.max_iter; ++k) {
    const SolverState prev = st;
    const DenseMatrix B =
        cfg.mu1 * (p.V.transpose() * (p.V * st.Z - p.X - st.T1 / cfg.mu1));
    st.Z = zero_diagonal_project(
        soft_threshold(st.Z - B / cfg.eta_v, 1.0 / cfg.eta_v), p.n_labeled);
    st.T1 -= cfg.mu1 * (p.V * st.Z - p.X);
    st.k = k;

    const double r1 = (p.V * st.Z - p.X).norm() / std::max(p.X.norm(), 1.0);
    const double dz = successive_change(st.Z, prev.Z);
    const double hd = h_norm_diff(prev, st, cfg);
    out.trace.push_back(
        {k, objective_value(st.Z, st.A, st.E, p), r1, 0.0, dz, hd});
    if (r1 <= cfg.tol_r1 && dz <= cfg.tol_dz) {
      out.converged = true;
      break;
    }
  }
  out.iterations = static_cast<int>(out.trace.size());
  out.A = st.Z;  // keeps the returned triple feasible for Z = A
  out.E = std::move(st.E);
  out.Z = std::move(st.Z);
  return out;
}

Solution solve_lr_pfsr(const ProblemSpec& p, const SolverConfig& cfg_in) {
  check_problem(p);
  check_config(cfg_in);
  if (p.model != Model::LR) {
    throw InvalidParameter("solve_lr_pfsr: problem model is not lr");
  }
  SolverConfig cfg = cfg_in;
  cfg.eta_v = resolve_eta(p, cfg_in);

  SolverState st = zero_state(p);
  Solution out;
  out.trace.reserve(static_cast<size_t>(cfg.max_iter));
  for (int k = 1; k <= cfg.max_iter; ++k) {
    const SolverState prev = st;
    const DenseMatrix B =
        cfg.mu1 *
        (p.V.transpose() * (p.V * st.Z + st.E - p.X - st.T1 / cfg.mu1));
    st.Z = zero_diagonal_project(
        svt(st.Z - B / cfg.eta_v, 1.0 / cfg.eta_v), p.n_labeled);
    st.E = soft_threshold(p.X - p.V * st.Z + st.T1 / cfg.mu1,
                          p.delta / cfg.mu1);
    st.T1 -= cfg.mu1 * (p.V * st.Z + st.E - p.X);
    st.k = k;

    const double r1 =
        (p.V * st.Z + st.E - p.X).norm() / std::max(p.X.norm(), 1.0);
    const double dz = successive_change(st.Z, prev.Z);
    const double hd = h_norm_diff(prev, st, cfg);
    out.trace.push_back(
        {k, objective_value(st.Z, st.A, st.E, p), r1, 0.0, dz, hd});
    if (r1 <= cfg.tol_r1 && dz <= cfg.tol_dz) {
      out.converged = true;
      break;
    }
  }
  out.iterations = static_cast<int>(out.trace.size());
  out.A = st.Z;
  out.E = std::move(st.E);
  out.Z = std::move(st.Z);
  return out;
}

Solution solve_model(const ProblemSpec& p, const SolverConfig& cfg) {
  switch (p.model) {
    case Model::S: return solve_s_pfsr(p, cfg);
    case Model::LR: return solve_lr_pfsr(p, cfg);
    case Model::LRS: break;
  }
  return solve(p, cfg);
}

}  // namespace pfsr
