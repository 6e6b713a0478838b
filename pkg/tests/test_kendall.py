import numpy as np
import pytest

from conftest import tau_bruteforce
from kendall_rmt import _backend
from kendall_rmt.datagen import DataMatrix, generate
from kendall_rmt.kendall import (
    PairSignMatrix,
    SymmetricMatrix,
    pair_count,
    pair_from_position,
    pair_indices,
    pair_position,
    pair_signs,
    tau_fast,
    tau_from_signs,
    tau_naive,
)
from kendall_rmt.spectral import tol_eig


def _matrix(rows) -> DataMatrix:
    return DataMatrix(values=np.array(rows, dtype=float), marginal="uniform01")


def test_pair_order_is_lexicographic():
    i_idx, j_idx = pair_indices(4)
    assert list(zip(i_idx, j_idx)) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


@pytest.mark.parametrize("n", [2, 3, 5, 8, 12])
def test_pair_position_bijection(n):
    seen = set()
    for t in range(pair_count(n)):
        i, j = pair_from_position(t, n)
        assert pair_position(i, j, n) == t
        seen.add((i, j))
    assert len(seen) == pair_count(n)
    i_idx, j_idx = pair_indices(n)
    for t, (i, j) in enumerate(zip(i_idx, j_idx)):
        assert pair_position(int(i), int(j), n) == t


def test_sign_grid_hand_cases():
    signs = pair_signs(_matrix([[1, 2, 3], [3, 1, 2]]))
    assert signs.signs[0].tolist() == [-1, -1, -1]
    assert signs.signs[1].tolist() == [1, 1, -1]
    increasing = pair_signs(_matrix([np.arange(10.0)]))
    assert np.all(increasing.signs == -1)


def test_tau_hand_fixture():
    tau = tau_naive(_matrix([[1, 2, 3], [3, 1, 2]]))
    assert tau.entry(0, 1) == -1.0 / 3.0
    assert tau.entry(0, 0) == 1.0
    assert tau.entry(1, 1) == 1.0


def test_tau_of_monotone_transform_is_one():
    base = np.array([0.3, 0.1, 0.9, 0.5, 0.7])
    tau = tau_naive(_matrix([base, np.exp(base)]))
    assert tau.entry(0, 1) == 1.0


def test_reversed_rows_give_minus_one():
    tau = tau_fast(_matrix([np.arange(8.0), -np.arange(8.0)]))
    assert tau.entry(0, 1) == -1.0


def test_single_variable():
    tau = tau_fast(_matrix([[0.4, 0.2, 0.6]]))
    assert tau.order == 1
    assert tau.entry(0, 0) == 1.0


def test_routes_are_bit_identical_on_random_instances():
    rng = np.random.default_rng(2024)
    for trial in range(60):
        p = int(rng.integers(1, 11))
        n = int(rng.integers(2, 51))
        marginal = ("uniform01", "standard_gaussian", "standard_cauchy")[trial % 3]
        data = generate(p, n, marginal, seed=trial)
        reference = tau_naive(data)
        with _backend.use_backend("numba"):
            fast_nb = tau_fast(data)
        with _backend.use_backend("numpy"):
            fast_np = tau_fast(data)
        from_signs = tau_from_signs(pair_signs(data))
        assert np.array_equal(reference.tril, fast_nb.tril)
        assert np.array_equal(reference.tril, fast_np.tril)
        assert np.array_equal(reference.tril, from_signs.tril)


def test_routes_match_pure_python_oracle():
    for seed in range(8):
        data = generate(4, 12, "uniform01", seed=seed)
        expected = tau_bruteforce(data.values)
        assert np.array_equal(tau_fast(data).to_dense(), expected)


def test_monotone_row_transform_leaves_tau_unchanged():
    data = generate(5, 25, "uniform01", seed=9)
    reference = tau_fast(data)
    transformed = data.values.copy()
    transformed[2] = transformed[2] ** 3
    transformed[4] = 2.0 * transformed[4] + 1.0
    after = tau_fast(DataMatrix(values=transformed, marginal="uniform01"))
    assert np.array_equal(reference.tril, after.tril)


def test_streaming_blocks_do_not_change_output():
    data = generate(7, 40, "uniform01", seed=5)
    with _backend.use_backend("numpy"):
        whole = tau_fast(data)
        blocked = tau_fast(data, block_elems=16)
    assert np.array_equal(whole.tril, blocked.tril)
    signs = pair_signs(data)
    assert np.array_equal(tau_from_signs(signs, block_elems=8).tril, whole.tril)


def test_tau_is_positive_semidefinite_with_unit_trace_mean():
    data = generate(40, 25, "uniform01", seed=13)
    tau = tau_fast(data)
    eigs = np.linalg.eigvalsh(tau.to_dense())
    assert eigs[0] >= -tol_eig(tau.order, tau.max_abs())
    assert tau.trace() == pytest.approx(40.0)
    assert np.mean(eigs) == pytest.approx(1.0, abs=1e-8)


def test_zero_eigenvalues_emerge_beyond_pair_count():
    # p above n(n-1)/2 forces at least p - M exact null directions
    data = generate(25, 6, "uniform01", seed=3)  # M = 15
    eigs = np.linalg.eigvalsh(tau_fast(data).to_dense())
    cutoff = tol_eig(25, 1.0)
    assert np.count_nonzero(np.abs(eigs) <= cutoff) >= 25 - 15


def test_pair_sign_matrix_validation():
    with pytest.raises(ValueError):
        PairSignMatrix(signs=np.zeros((2, 3), dtype=np.int8), n=3)
    with pytest.raises(ValueError):
        PairSignMatrix(signs=np.ones((2, 4), dtype=np.int8), n=3)


def test_symmetric_matrix_round_trips(tmp_path):
    data = generate(6, 9, "uniform01", seed=1)
    tau = tau_fast(data)
    csv_path = tmp_path / "tau.csv"
    tau.save_csv(csv_path)
    loaded = SymmetricMatrix.load_csv(csv_path)
    assert np.array_equal(loaded.tril, tau.tril)
    bin_path = tmp_path / "tau.symm"
    tau.save_binary(bin_path)
    loaded_bin = SymmetricMatrix.load_binary(bin_path)
    assert np.array_equal(loaded_bin.tril, tau.tril)


def test_symm_binary_rejects_garbage(tmp_path):
    path = tmp_path / "bad.symm"
    path.write_bytes(b"NOPE" + b"\x00" * 16)
    with pytest.raises(ValueError):
        SymmetricMatrix.load_binary(path)
    path.write_bytes(b"SYMM" + (3).to_bytes(8, "little") + b"\x00" * 8)
    with pytest.raises(ValueError):
        SymmetricMatrix.load_binary(path)


def test_from_dense_requires_symmetry():
    with pytest.raises(ValueError):
        SymmetricMatrix.from_dense(np.array([[1.0, 2.0], [0.0, 1.0]]))
    sym = SymmetricMatrix.from_dense(np.array([[1.0, 2.0], [2.0, 5.0]]))
    assert sym.entry(0, 1) == 2.0
    assert sym.diagonal().tolist() == [1.0, 5.0]
