from itertools import product

import pytest

from torusrep.action import DKAction, specialize, structure_suite
from torusrep.affine import FermionicRealization, VermaRealization
from torusrep.algebra import Gen, d_gen, k_gen
from torusrep.core import Exponent, bigrade_of, is_zero_vec, mpq
from torusrep.fock import U, V, FockSpace
from torusrep.glrep import beta_value, exterior_power, trivial_module
from torusrep.tensmod import TensorModule


def _action(W, h, gamma):
    return DKAction(FockSpace(W.N, gamma), VermaRealization(W, h))


def _state(A, offset, exps=(), index=0, c=1):
    return {("x", A.fock.key(offset, exps), A.coef.top_basis()[index]): mpq(c)}


def test_k0_examples():
    A = _action(exterior_power(1, 0, "1/3"), "1/97", ("1/3",))
    v = _state(A, (0,), [((V, 1, 2), 1)])
    assert A.act_k0(0, (0,), v) == v
    top = A.top_vec((2,))
    assert A.act_k0(0, (1,), top) == _state(A, (3,))
    assert A.act_k0(1, (1,), top) == {}


def test_ka_examples():
    A = _action(exterior_power(2, 1, "1/3"), 0, ("1/3", "1/5"))
    top = A.top_vec((0, 0), 1)
    assert A.act_ka(0, (1, 0), 2, top) == {}
    assert A.act_ka(-1, (0, 0), 2, top) == _state(A, (0, 0), [((U, 2, 1), 1)], 1)
    assert A.act_ka(1, (0, 0), 2, _state(A, (0, 0), [((U, 2, 1), 1)], 1)) == {}
    assert A.act_ka(1, (0, 0), 2, _state(A, (0, 0), [((V, 2, 1), 1)], 1)) == top


def test_da_examples():
    W = exterior_power(2, 1, "1/3")
    gamma = (mpq(1, 3), mpq(1, 5))
    A = _action(W, 0, gamma)
    mu = (1, -1)
    for w in range(2):
        top = A.top_vec(mu, w)
        for r in product((-1, 0, 1), repeat=2):
            for a in (1, 2):
                expect: dict = {}
                shifted = tuple(m + x for m, x in zip(mu, r))
                weight = gamma[a - 1] + mu[a - 1]
                if weight:
                    expect[_key(A, shifted, w)] = weight
                for p in (1, 2):
                    for w2, e in W.act(p, a, w).items():
                        k = _key(A, shifted, w2)
                        expect[k] = expect.get(k, 0) + r[p - 1] * e
                expect = {k: c for k, c in expect.items() if c}
                assert dict(A.act_da(0, r, a, top)) == expect
                assert A.act_da(1, r, a, top) == {}


def _key(A, offset, w):
    return ("x", A.fock.key(offset), A.coef.top_basis()[w])


def test_d0_examples():
    A = _action(trivial_module(2, 0), "2/3", ("1/3", "1/5"))
    top = A.top_vec((0, 1))
    assert A.act_d0(0, (1, -1), top) == _state(A, (1, 0), c=mpq(-2, 3))
    W = exterior_power(2, 1, "1/3")
    B = _action(W, "1/5", ("1/3", "1/5"))
    beta = beta_value(W, "1/5")
    for w in range(2):
        assert B.act_d0(0, (0, 0), B.top_vec((0, 0), w)) == _state(B, (0, 0), index=w, c=beta)
        assert B.act_d0(1, (1, 0), B.top_vec((0, 0), w)) == {}


@pytest.mark.parametrize("W,h", [(exterior_power(2, 1, "1/3"), "1/5"), (trivial_module(2, 0), 3),
                                 (exterior_power(1, 1, 2), 0)])
def test_top_action_matches_tensor_module(W, h):
    N = W.N
    gamma = tuple(mpq(1, p + 2) for p in range(N))
    A = _action(W, h, gamma)
    T = TensorModule(W, gamma, h=h)
    for r in product((-1, 0, 1), repeat=N):
        for kind, a in [("k", 0)] + [(kind, a) for kind in "dk" for a in range(0 if kind == "d" else 1, N + 1)]:
            g = Gen(kind, 0, Exponent.of(r), a)
            for w in range(W.d):
                img = A.apply(g, A.top_vec((0,) * N, w))
                expect = T.top_act(g, T.vec((0,) * N, w))
                assert dict(img) == {_key(A, k[1], k[2]): c for k, c in expect.items()}


def test_bracket_examples():
    A = _action(exterior_power(1, 0, "1/3"), "1/97", ("1/3",))
    keys = [k for d in range(3) for k in A.basis(d)]
    assert A.bracket_check(d_gen(0, (1,), 1), d_gen(0, (-1,), 1), keys)["failures"] == []
    top = A.top_vec((2,))
    comm = dict(A.apply(d_gen(0, (1,), 1), A.apply(d_gen(0, (-1,), 1), top)))
    for k, c in A.apply(d_gen(0, (-1,), 1), A.apply(d_gen(0, (1,), 1), top)).items():
        comm[k] = comm.get(k, 0) - c
    assert {k: c for k, c in comm.items() if c} == _state(A, (2,), c=-2 * (mpq(1, 3) + 2))
    assert A.bracket_check(d_gen(1, (0,), 0), d_gen(-1, (0,), 0), keys)["failures"] == []
    assert A.bracket_check(d_gen(1, (1,), 1), k_gen(-1, (2,), 1), keys)["failures"] == []


def test_bracket_check_reports_failures():
    A = _action(exterior_power(1, 0, "1/3"), "1/97", ("1/3",))
    keys = A.basis(0) + A.basis(1)
    assert A.bracket_check(d_gen(2, (0,), 0), d_gen(-2, (0,), 0), keys)["failures"] == []
    # without the coefficient Virasoro field the central charges no longer cancel
    broken = DKAction(A.fock, A.coef)
    f = broken.family("d", 0, Exponent.of((0,)))
    f.terms = [t for i, t in enumerate(f.terms) if i != 1]
    f.clear()
    assert broken.bracket_check(d_gen(2, (0,), 0), d_gen(-2, (0,), 0), keys)["failures"]


@pytest.mark.parametrize("coef", ["verma", "fermion"])
def test_structure_constants_small(coef):
    N = 1
    C = VermaRealization(exterior_power(1, 0, "1/3"), "1/97") if coef == "verma" else FermionicRealization(1, 0)
    A = DKAction(FockSpace(N, ("2/5",)), C)
    rep = structure_suite(A, degree=2, jrange=range(-1, 2))
    assert rep["failures"] == [] and rep["pairs"] == 78


@pytest.mark.parametrize("broken", [False, True])
def test_structure_suite_workers_agree(broken):
    reps = []
    for workers in (1, 2):
        A = _action(exterior_power(1, 0, "1/3"), "1/97", ("1/3",))
        if broken:
            f = A.family("d", 0, Exponent.formal_var(1, 0))
            f.terms = [t for i, t in enumerate(f.terms) if i != 1]
            f.clear()
        rep = structure_suite(A, degree=1, workers=workers)
        reps.append((rep["pairs"], rep["cases"], sorted(x["x"] + x["y"] + x["vector"] for x in rep["failures"])))
    assert reps[0] == reps[1]
    assert bool(reps[0][2]) is broken


@pytest.mark.parametrize("i,m", [(1, (0,)), (-1, (1,)), (2, (-1,)), (0, (2,)), (-2, (0,))])
def test_k_relation_kills_exact_forms(i, m):
    A = _action(exterior_power(1, 0, "1/3"), "1/97", ("1/3",))
    for d in range(3):
        for key in A.basis(d):
            assert is_zero_vec(A.k_relation_defect(i, Exponent.of(m), key))


def test_weight_and_degree_bookkeeping():
    A = _action(exterior_power(2, 1, "1/3"), "1/5", ("1/3", "1/5"))
    for key in A.basis(1) + A.basis(2):
        base = bigrade_of(key)
        for g in [d_gen(-1, (1, 0), 0), d_gen(1, (0, -1), 2), k_gen(-2, (1, 1), 0), k_gen(0, (-1, 0), 1)]:
            for out in A.apply(g, {key: mpq(1)}):
                bg = bigrade_of(out)
                assert bg.m == base.m - g.j
                assert bg.mu == tuple(x + y for x, y in zip(base.mu, g.r.num))


def test_formal_exponent_specializes():
    A = _action(exterior_power(2, 1, "1/3"), "1/5", ("1/3", "1/5"))
    r = Exponent.formal_var(2)
    for key in A.basis(1):
        for kind, a, j in [("d", 0, -1), ("d", 1, 1), ("k", 2, 0), ("k", 0, -1)]:
            formal = A.apply(Gen(kind, j, r, a), {key: mpq(1)})
            for pt in [(1, 0), (-1, 2)]:
                concrete = A.apply(Gen(kind, j, Exponent.of(pt), a), {key: mpq(1)})
                assert specialize(formal, {(0, 1): pt[0], (0, 2): pt[1]}) == dict(concrete)
