"""Smoke tests for the python bindings: run the main operations end to end."""

import math

import numpy as np

import pfsr


def test_prox_operators():
    m = np.array([[1.2, -0.3], [0.0, 0.8]])
    out = pfsr.soft_threshold(m, 0.5)
    assert out[0, 0] == 1.2 - 0.5
    assert out[0, 1] == 0.0
    assert abs(out[1, 1] - 0.3) < 1e-12

    d = np.diag([2.0, 1.0, 0.3])
    shrunk = pfsr.svt(d, 0.5)
    assert np.allclose(np.diag(shrunk), [1.5, 0.5, 0.0], atol=1e-12)

    z = pfsr.zero_diagonal_project(np.array([[1.0, 2.0], [3.0, 4.0]]), 2)
    assert z[0, 0] == 0.0 and z[1, 1] == 0.0 and z[1, 0] == 3.0

    assert abs(pfsr.spectral_norm(np.diag([3.0, 1.0])) - 3.0) < 1e-8


def test_generate_is_deterministic():
    a = pfsr.generate(seed=42)
    b = pfsr.generate(seed=42)
    assert np.array_equal(a["X"], b["X"])
    assert np.array_equal(a["Y"], b["Y"])
    assert a["labels"] == b["labels"]
    c = pfsr.generate(seed=43)
    assert not np.array_equal(a["X"], c["X"])


def test_pipeline_classifies_synthetic_data():
    data = pfsr.generate()  # 3 categories, 6 labeled + 4 unlabeled each
    sol = pfsr.solve(data["X"], data["labels"], data["Y"],
                     model="lrs", lambda1=0.02, lambda2=5.0)
    assert sol["converged"]
    assert sol["trace"].shape[1] == 6
    assert sol["trace"][-1, 2] < 1e-4  # r1

    res = pfsr.classify(sol["Z"], data["labels"], len(data["truth"]))
    correct = sum(1 for p, t in zip(res["labels"], data["truth"]) if p == t)
    assert correct >= 11

    acc = pfsr.accuracy(res["labels"], data["truth"])
    assert acc == correct / len(data["truth"])

    # Weighted CCR columns sum to one.
    n_j = [data["labels"].count(j) for j in sorted(set(data["labels"]))]
    weighted = np.array(n_j) @ res["C"]
    assert np.allclose(weighted[res["defined"]], 1.0, atol=1e-10)


def test_solver_is_deterministic():
    data = pfsr.generate(labeled=3, unlabeled=2, ambient_dim=12)
    a = pfsr.solve(data["X"], data["labels"], data["Y"],
                   lambda1=0.02, lambda2=5.0, max_iter=60)
    b = pfsr.solve(data["X"], data["labels"], data["Y"],
                   lambda1=0.02, lambda2=5.0, max_iter=60)
    assert np.array_equal(a["Z"], b["Z"])
    assert np.array_equal(a["trace"], b["trace"])


def test_metrics():
    assert pfsr.cci(np.array([0.8, 0.1, 0.1]), [1, 2, 3]) == 0.8
    grid = pfsr.rsi(np.array([[0.9], [0.8]]))
    assert grid[0, 0] == 0.0
    assert abs(grid[1, 0] - 0.125) < 1e-12
    assert pfsr.accuracy([1, 2, 3], [1, 2, 3]) == 1.0

    try:
        pfsr.cci(np.zeros(3), [1, 2, 3])
    except ValueError:
        pass
    else:
        raise AssertionError("cci of the zero vector should raise")


def test_stability_bound():
    rng = np.random.default_rng(5)
    q, _ = np.linalg.qr(rng.standard_normal((10, 4)))
    v = q @ np.diag([2.0, 1.5, 1.0, 0.5]) @ np.linalg.qr(
        rng.standard_normal((4, 4)))[0].T
    x = v @ rng.standard_normal(4)
    eps = 1e-4 * 0.25
    dx = rng.standard_normal(10)
    dx *= eps * np.linalg.norm(x) / np.linalg.norm(dx)
    dv = rng.standard_normal((10, 4))
    dv *= eps * 2.0 / np.linalg.svd(dv, compute_uv=False)[0]
    b = pfsr.stability_bound(v, x, dx, dv)
    assert b["admissible"]
    assert b["lhs"] <= b["rhs"]
    assert abs(b["kappa2"] - 4.0) < 1e-8


def test_eigenfaces_roundtrip():
    data = pfsr.generate(ambient_dim=16, labeled=4, unlabeled=2)
    basis = pfsr.fit_eigenfaces(data["X"], 5)
    u = basis["U"]
    assert np.allclose(u.T @ u, np.eye(5), atol=1e-8)
    feats = pfsr.pca_transform(u, basis["mean"], data["Y"])
    norms = np.linalg.norm(feats["data"], axis=0)
    assert np.allclose(norms[~np.array(feats["zero_column"])], 1.0,
                       atol=1e-12)


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok: {test.__name__}")
    print(f"smoke tests: {len(tests)} passed")


if __name__ == "__main__":
    main()
