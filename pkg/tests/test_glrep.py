from math import comb

import pytest

from torusrep.core import mpq
from torusrep.glrep import (GlModule, NotIrreducible, beta_value, casimir_scalar, dual_module,
                            exterior_power, shift_action, sl_type, trivial_module)
from torusrep.glrep import natural_pairing_contract
from torusrep.linalg import matmul


def _trace(m):
    return sum(m[i][i] for i in range(len(m)))


def test_exterior_power_examples():
    W = exterior_power(2, 1, 1)
    assert W.d == 2
    assert W.mat(1, 1) == [[1, 0], [0, 0]]
    assert W.mat(1, 2) == [[0, 1], [0, 0]]
    assert W.alpha == 1
    T = exterior_power(2, 0, 0)
    assert T.d == 1 and all(T.mat(p, q) == [[0]] for p in (1, 2) for q in (1, 2))
    W3 = exterior_power(3, 2, 2 - 3)
    assert W3.d == 3 and W3.alpha == -1
    W3.validate()


def test_exterior_power_range():
    with pytest.raises(ValueError):
        exterior_power(2, 3)


def test_bad_matrices_rejected():
    with pytest.raises(ValueError):
        GlModule(1, [[[[1, 0], [0, 2]]]], alpha=1)


def test_dual_examples():
    assert dual_module(trivial_module(2, 0)).alpha == 2
    D = dual_module(exterior_power(2, 1, 1))
    assert D.alpha == 1
    D.validate()
    W = exterior_power(3, 1, "1/5")
    assert natural_pairing_contract(W, dual_module(W))


def test_double_dual_has_same_traces():
    W = exterior_power(3, 2, "2/7")
    DD = dual_module(dual_module(W))
    assert DD.alpha == W.alpha
    for p in range(1, 4):
        for q in range(1, 4):
            for r in range(1, 4):
                assert _trace(matmul(DD.mat(p, q), DD.mat(q, r))) == _trace(matmul(W.mat(p, q), W.mat(q, r)))


def test_casimir_examples():
    assert casimir_scalar(exterior_power(2, 1)) == mpq(3, 2)
    assert casimir_scalar(trivial_module(3)) == 0
    assert casimir_scalar(exterior_power(3, 2)) == mpq(8, 3)


def _block_sum(A, B):
    N, d = A.N, A.d + B.d
    E = [[[[0] * d for _ in range(d)] for _ in range(N)] for _ in range(N)]
    for p in range(N):
        for q in range(N):
            for i in range(A.d):
                for j in range(A.d):
                    E[p][q][i][j] = A.E[p][q][i][j]
            for i in range(B.d):
                for j in range(B.d):
                    E[p][q][A.d + i][A.d + j] = B.E[p][q][i][j]
    return GlModule(N, E)


def test_casimir_detects_reducible():
    W = _block_sum(trivial_module(2, 1), exterior_power(2, 1, 1))
    with pytest.raises(NotIrreducible):
        casimir_scalar(W)


def test_beta_examples():
    assert beta_value(trivial_module(2, 0), 7) == -7
    assert beta_value(exterior_power(2, 1, 1), 0) == 0
    assert beta_value(exterior_power(2, 1, 1), 5) == -5


def test_shift_examples():
    W = exterior_power(2, 1, "1/3")
    assert shift_action(W, 0) == W
    assert shift_action(trivial_module(2, 0), 1).alpha == 2
    assert shift_action(shift_action(W, 1), -1) == W


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_invariants_under_duality(N):
    for k in range(N + 1):
        for alpha in (k, mpq(1, 3), -2):
            W = exterior_power(N, k, alpha)
            D = dual_module(W)
            D.validate()
            assert casimir_scalar(D) == casimir_scalar(W) == mpq(k * (N - k) * (N + 1), N)
            assert beta_value(D, mpq(1, 7)) == beta_value(W, mpq(1, 7))


def test_sl_type_of_exterior_powers():
    for N in (2, 3):
        for k in range(N + 1):
            assert sl_type(exterior_power(N, k, 0)) == (0 if k in (0, N) else k)


def test_json_roundtrip():
    W = exterior_power(3, 1, "1/2")
    assert GlModule.from_json(W.to_json()) == W
    assert comb(3, 1) == W.d
