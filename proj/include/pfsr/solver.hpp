#pragma once

#include <utility>
#include <vector>

#include "pfsr/model.hpp"

namespace pfsr {

// Penalty parameters, majorization constant and stopping rules.
//
// Defaults follow the reference settings: mu1 = 0.6, mu2 = 0.05,
// lambda weights live on the ProblemSpec. The iteration cap is 500; the
// residual and successive-iterate tolerances below add an early exit on
// top of that cap and are a deliberate choice of this implementation.
struct SolverConfig {
  double mu1 = 0.6;  // penalty on X = VZ + E
  double mu2 = 0.05; // penalty on Z = A
  // Majorization constant for the linearized Z step. Nonpositive requests
  // the automatic value 1.01 * ||mu1 V^T V + mu2 I||_2; any explicit
  // positive value (e.g. the squared spectral norm) is used as given.
  double eta_v = 0.0;
  int max_iter = 500;
  double tol_r1 = 1e-6;
  double tol_r2 = 1e-6;
  double tol_dz = 1e-7;
};

// Iterates of one run. Z and A keep an exactly zero diagonal over the
// labeled block at every iteration boundary.
struct SolverState {
  DenseMatrix Z;   // (s_c + m) x s_c
  DenseMatrix A;   // (s_c + m) x s_c
  DenseMatrix E;   // d x s_c
  DenseMatrix T1;  // d x s_c
  DenseMatrix T2;  // (s_c + m) x s_c
  int k = 0;
};

SolverState zero_state(const ProblemSpec& p);

struct TraceRow {
  int iter = 0;
  double objective = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double dz = 0.0;
  double h_diff = 0.0;
};

struct Solution {
  DenseMatrix Z, A, E;
  bool converged = false;
  int iterations = 0;
  std::vector<TraceRow> trace;
};

// Majorization constant: cfg.eta_v when explicitly set, otherwise
// 1.01 * ||mu1 V^T V + mu2 I||_2.
double resolve_eta(const ProblemSpec& p, const SolverConfig& cfg);

// One linearized proximal step on Z:
//   B = mu1 V^T (V Z + E - X - T1/mu1) + mu2 Z - mu2 A - T2
//   Z' = P_zero-diag( svt(Z - B/eta, 1/eta) )
// Requires cfg.eta_v > 0 (call resolve_eta first).
DenseMatrix update_Z(const SolverState& st, const ProblemSpec& p,
                     const SolverConfig& cfg);

// A' = P_zero-diag( soft_threshold(Z - T2/mu2, lambda1/mu2) ).
// Expects st.Z to already hold the current iteration's Z.
DenseMatrix update_A(const SolverState& st, const ProblemSpec& p,
                     const SolverConfig& cfg);

// E' = soft_threshold(X - V Z + T1/mu1, lambda2/mu1).
// Expects st.Z to already hold the current iteration's Z.
DenseMatrix update_E(const SolverState& st, const ProblemSpec& p,
                     const SolverConfig& cfg);

// Multiplier step from fully updated primal blocks:
//   T1' = T1 - mu1 (V Z + E - X),  T2' = T2 - mu2 (Z - A).
std::pair<DenseMatrix, DenseMatrix> update_T(const SolverState& st,
                                             const ProblemSpec& p,
                                             const SolverConfig& cfg);

// Contraction diagnostic between consecutive states:
//   sqrt( mu2 ||dA - dT2/mu2||_F^2 + mu1 ||dE||_F^2 )
// This quantity vanishes along a converging run.
double h_norm_diff(const SolverState& prev, const SolverState& cur,
                   const SolverConfig& cfg);

// Mixed Gauss-Seidel/Jacobian ADMM for the LRS model: from the zero state,
// repeats Z -> (A, E) -> T and records one trace row per iteration. Stops
// early when r1, r2 and the successive Z change all fall below tolerance;
// hitting max_iter is reported via converged=false, not an error.
Solution solve(const ProblemSpec& p, const SolverConfig& cfg = {});

// Two-block variant for the S model (min ||Z||_1 s.t. X = VZ, zero diag).
Solution solve_s_pfsr(const ProblemSpec& p, const SolverConfig& cfg = {});

// Two-block variant for the LR model
// (min ||Z||_* + delta ||E||_1 s.t. X = VZ + E, zero diag).
Solution solve_lr_pfsr(const ProblemSpec& p, const SolverConfig& cfg = {});

// Dispatches on p.model.
Solution solve_model(const ProblemSpec& p, const SolverConfig& cfg = {});

}  // namespace pfsr
