// Python bindings for the main operations: proximal operators, the solvers,
// the contribution-rate classifier, evaluation indices and data generation.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pfsr/baseline.hpp"
#include "pfsr/classifier.hpp"
#include "pfsr/eigenfaces.hpp"
#include "pfsr/metrics.hpp"
#include "pfsr/prox.hpp"
#include "pfsr/solver.hpp"
#include "pfsr/synth.hpp"

namespace py = pybind11;
using namespace pfsr;

namespace {

SolverConfig make_config(double mu1, double mu2, double eta, int max_iter,
                         double tol_r1, double tol_r2, double tol_dz) {
  SolverConfig cfg;
  cfg.mu1 = mu1;
  cfg.mu2 = mu2;
  cfg.eta_v = eta;
  cfg.max_iter = max_iter;
  cfg.tol_r1 = tol_r1;
  cfg.tol_r2 = tol_r2;
  cfg.tol_dz = tol_dz;
  return cfg;
}

py::dict solution_to_dict(const Solution& sol) {
  py::dict out;
  out["Z"] = sol.Z;
  out["A"] = sol.A;
  out["E"] = sol.E;
  out["converged"] = sol.converged;
  out["iterations"] = sol.iterations;
  DenseMatrix trace(static_cast<Index>(sol.trace.size()), 6);
  for (Index i = 0; i < trace.rows(); ++i) {
    const TraceRow& row = sol.trace[static_cast<size_t>(i)];
    trace(i, 0) = row.iter;
    trace(i, 1) = row.objective;
    trace(i, 2) = row.r1;
    trace(i, 3) = row.r2;
    trace(i, 4) = row.dz;
    trace(i, 5) = row.h_diff;
  }
  out["trace"] = trace;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudo-full-space representation classification core";

  py::register_exception<InvalidInput>(m, "InvalidInputError",
                                       PyExc_ValueError);
  py::register_exception<InvalidParameter>(m, "InvalidParameterError",
                                           PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailureError",
                                           PyExc_ArithmeticError);

  m.def("soft_threshold", &soft_threshold, py::arg("m"), py::arg("tau"),
        "Elementwise shrinkage sign(x) * max(|x| - tau, 0).");
  m.def("svt", &svt, py::arg("m"), py::arg("tau"),
        "Singular value thresholding.");
  m.def("zero_diagonal_project", &zero_diagonal_project, py::arg("m"),
        py::arg("n_diag"), "Zero the first n_diag diagonal entries.");
  m.def("spectral_norm", &spectral_norm, py::arg("m"),
        "Largest singular value.");

  m.def(
      "generate",
      [](int categories, int subspace_dim, int ambient_dim, int labeled,
         int unlabeled, double noise, std::uint64_t seed) {
        SynthSpec spec;
        spec.categories = categories;
        spec.subspace_dim = subspace_dim;
        spec.ambient_dim = ambient_dim;
        spec.labeled_per_category = labeled;
        spec.unlabeled_per_category = unlabeled;
        spec.noise_sigma = noise;
        spec.seed = seed;
        const SyntheticDataset synth = generate(spec);
        py::dict out;
        out["X"] = synth.data.X;
        out["labels"] = synth.data.labels;
        out["Y"] = synth.data.Y;
        out["truth"] = synth.unlabeled_truth;
        return out;
      },
      py::arg("categories") = 3, py::arg("subspace_dim") = 2,
      py::arg("ambient_dim") = 30, py::arg("labeled") = 6,
      py::arg("unlabeled") = 4, py::arg("noise") = 0.0, py::arg("seed") = 42,
      "Union-of-independent-subspaces dataset, deterministic in the seed.");

  m.def(
      "solve",
      [](const DenseMatrix& X, const std::vector<int>& labels,
         const DenseMatrix& Y, const std::string& model, double lambda1,
         double lambda2, double delta, double mu1, double mu2, double eta,
         int max_iter, double tol_r1, double tol_r2, double tol_dz) {
        Dataset ds = make_dataset(X, labels, Y);
        ProblemSpec p = build_dictionary(ds);
        p.model = parse_model(model);
        p.lambda1 = lambda1;
        p.lambda2 = lambda2;
        p.delta = delta;
        return solution_to_dict(solve_model(
            p, make_config(mu1, mu2, eta, max_iter, tol_r1, tol_r2, tol_dz)));
      },
      py::arg("X"), py::arg("labels"), py::arg("Y"), py::arg("model") = "lrs",
      py::arg("lambda1") = kDefaultLambda1,
      py::arg("lambda2") = kDefaultLambda2, py::arg("delta") = kDefaultDelta,
      py::arg("mu1") = 0.6, py::arg("mu2") = 0.05, py::arg("eta") = 0.0,
      py::arg("max_iter") = 500, py::arg("tol_r1") = 1e-6,
      py::arg("tol_r2") = 1e-6, py::arg("tol_dz") = 1e-7,
      "Solve the chosen representation model over the dictionary [X | Y]. "
      "Returns Z, A, E, the convergence flag and the per-iteration trace "
      "(columns iter, objective, r1, r2, dz, h_diff).");

  m.def(
      "ccr",
      [](const DenseMatrix& beta, const std::vector<int>& labels) {
        const CcrMatrix c = ccr(beta, labels, category_sizes(labels));
        py::dict out;
        out["C"] = c.C;
        out["defined"] = c.defined;
        return out;
      },
      py::arg("beta"), py::arg("labels"),
      "Category contribution rates of each unlabeled sample.");

  m.def(
      "assign_labels",
      [](const DenseMatrix& C, const std::vector<bool>& defined) {
        return assign_labels(CcrMatrix{C, defined});
      },
      py::arg("C"), py::arg("defined"),
      "Lowest argmax category per column; 0 where undefined.");

  m.def(
      "classify",
      [](const DenseMatrix& Z, const std::vector<int>& labels,
         Index n_unlabeled) {
        const ClassificationResult res = classify(Z, labels, n_unlabeled);
        py::dict out;
        out["C"] = res.ccr.C;
        out["defined"] = res.ccr.defined;
        out["labels"] = res.labels;
        return out;
      },
      py::arg("Z"), py::arg("labels"), py::arg("n_unlabeled"),
      "Full decision rule on a solved coefficient matrix.");

  m.def("accuracy", &accuracy, py::arg("predicted"), py::arg("truth"));
  m.def("cci", &cci, py::arg("alpha"), py::arg("labels"),
        "Category concentration index in [1/c, 1].");
  m.def(
      "rsi",
      [](const DenseMatrix& accuracies, const std::string& scope) {
        if (scope == "column") return rsi(accuracies, RsiScope::Column);
        if (scope == "global") return rsi(accuracies, RsiScope::Global);
        throw InvalidParameter("rsi: scope must be 'column' or 'global'");
      },
      py::arg("accuracies"), py::arg("scope") = "column",
      "Relative stability index grid.");

  m.def(
      "stability_bound",
      [](const DenseMatrix& V, const Vector& x, const Vector& dx,
         const DenseMatrix& dV) {
        const StabilityBound b = stability_bound(V, x, dx, dV);
        py::dict out;
        out["lhs"] = b.lhs;
        out["rhs"] = b.rhs;
        out["epsilon"] = b.epsilon;
        out["kappa2"] = b.kappa2;
        out["theta"] = b.theta;
        out["admissible"] = b.admissible;
        return out;
      },
      py::arg("V"), py::arg("x"), py::arg("dx"), py::arg("dV"),
      "First-order least-squares perturbation bound check.");

  m.def(
      "fit_eigenfaces",
      [](const DenseMatrix& X, int dim) {
        const EigenfaceBasis basis = fit_eigenfaces(X, dim);
        py::dict out;
        out["U"] = basis.U;
        out["mean"] = basis.mean;
        return out;
      },
      py::arg("X"), py::arg("dim"),
      "PCA basis of the labeled data (centered).");

  m.def(
      "pca_transform",
      [](const DenseMatrix& U, const Vector& mean, const DenseMatrix& M) {
        EigenfaceBasis basis;
        basis.U = U;
        basis.mean = mean;
        basis.dim = static_cast<int>(U.cols());
        const FeatureMatrix f = transform(basis, M);
        py::dict out;
        out["data"] = f.data;
        out["zero_column"] = f.zero_column;
        return out;
      },
      py::arg("U"), py::arg("mean"), py::arg("M"),
      "Center, project and l2-normalize columns.");
}
