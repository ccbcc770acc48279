from itertools import product

import pytest

from torusrep.affine import (FermionicRealization, GlVerma, IrreducibleRealization, Quotient,
                             VermaRealization, VirVerma, character_identity, gl_form, gram_and_quotient,
                             omega_gl_top_scalar, vir_form)
from torusrep.core import add_into, mpq
from torusrep.glrep import beta_value, exterior_power, trivial_module
from torusrep.linalg import nullspace
from torusrep.suites import glbrak_suite, omega_gl_suite, omega_total_suite, relvir_suite


def test_affine_act_examples():
    M = GlVerma(exterior_power(2, 1, 1))
    w = {M.top(0): mpq(1)}
    assert M.affine_act(1, 2, 1, w) == {}
    M1 = GlVerma(exterior_power(1, 0, "1/3"))
    w1 = {M1.top(0): mpq(1)}
    # [I_(1), I_(-1)] = Tr(I I) = 1, so the result is w itself
    assert M1.affine_act(1, 1, 1, M1.affine_act(1, 1, -1, w1)) == w1
    lhs = M.affine_act(1, 2, 0, M.affine_act(2, 1, -1, w))
    rhs = dict(M.affine_act(1, 1, -1, w))
    add_into(rhs, M.affine_act(2, 2, -1, w), -1)
    add_into(rhs, M.affine_act(2, 1, -1, M.affine_act(1, 2, 0, w)))
    assert dict(lhs) == rhs


def test_vir_act_examples():
    h = mpq(2, 7)
    M = VirVerma(h)
    v = {M.top(): mpq(1)}
    assert M.vir_act(1, v) == {}
    assert M.vir_act(1, M.vir_act(-1, v)) == {M.top(): 2 * h}
    assert M.vir_act(2, M.vir_act(-2, v)) == {M.top(): 4 * h}
    assert M.vir_act(0, v) == {M.top(): h}


def test_gram_examples():
    gram, rank, _ = gram_and_quotient(VirVerma(0), 1)
    assert gram == [[0]] and rank == 0
    assert gram_and_quotient(VirVerma(0), 2)[1] == 0
    gram, rank, _ = gram_and_quotient(GlVerma(exterior_power(1, 0, "1/5")), 1)
    assert gram == [[1]] and rank == 1


def test_omega_gl_examples():
    C = VermaRealization(exterior_power(2, 1, 1), 0)
    top = {C.top_key(w): mpq(1) for w in range(2)}
    assert C.omega_gl_field().mode(1, top) == {}
    T = VermaRealization(trivial_module(2, 0), 0)
    assert T.omega_gl_field().mode(0, {T.top_key(): mpq(1)}) == {}


@pytest.mark.parametrize("W,h", [(exterior_power(2, 1, "1/3"), "1/5"), (trivial_module(2, 3), 0),
                                 (exterior_power(3, 2, -1), 2), (exterior_power(1, 0, "2/9"), "1/97")])
def test_top_eigenvalue_matches_beta(W, h):
    C = VermaRealization(W, h)
    assert omega_gl_top_scalar(W) + C.h == -beta_value(W, h)
    for w in range(W.d):
        key = C.top_key(w)
        assert C.omega_field().mode(1, {key: mpq(1)}) == {key: -beta_value(W, h)}


def test_fermionic_realization_examples():
    assert FermionicRealization(1, 0).basis(0) == [("fer", ())]
    assert len(FermionicRealization(2, 1).basis(1)) == 4
    top = FermionicRealization(2, 1).top_module()
    assert top.alpha == 1 and top.d == 2


def test_fermionic_top_matches_gl_action():
    R = FermionicRealization(2, 1)
    W = R.top_module()
    tops = R.basis(0)
    for a, b in product((1, 2), repeat=2):
        for i, key in enumerate(tops):
            img = R.gl_mode(a, b, 0, {key: mpq(1)})
            assert dict(img) == {tops[j]: c for j, c in W.act(a, b, i).items()}


def test_quotient_dimensions_match_fermions():
    L = IrreducibleRealization(exterior_power(2, 1, 1), 0)
    F = FermionicRealization(2, 1)
    assert L.gl_dims(2) == [F.dim(m) for m in range(3)]
    assert L.vir_dims(3) == [1, 0, 0, 0]


def test_affine_relations_on_verma():
    for W in (exterior_power(1, 0, "1/3"), exterior_power(2, 1, "1/3")):
        C = VermaRealization(W, 0)
        keys = [k for d in range(3 if W.N == 2 else 4) for k in C.basis(d)]
        assert glbrak_suite(C, W.N, keys, nmax=2, level=1)["failures"] == []


def test_virasoro_relations():
    assert relvir_suite("1/97", degree=3, nmax=3)["failures"] == []
    assert relvir_suite(0, degree=3, nmax=3)["failures"] == []


@pytest.mark.parametrize("N", [1, 2])
def test_sugawara_central_charges(N):
    W = exterior_power(N, 1 if N == 2 else 0, "1/3")
    assert omega_gl_suite(W, "1/97", degree=2)["failures"] == []
    assert omega_total_suite(W, "1/97", degree=2)["failures"] == []


@pytest.mark.parametrize("module", [GlVerma(exterior_power(2, 1, "1/3")), VirVerma("1/5")])
def test_contravariance(module):
    form = gl_form(module) if isinstance(module, GlVerma) else vir_form(module)
    if isinstance(module, GlVerma):
        gens = [(n, a, b) for n in (-2, -1, 0, 1, 2) for a in (1, 2) for b in (1, 2)]
        sig = form.sigma
    else:
        gens = list(range(-2, 3))
        sig = form.sigma
    for m in range(3):
        for g in gens:
            deg = -g[0] if isinstance(g, tuple) else -g
            if not 0 <= m + deg <= 2:
                continue
            for u in module.basis(m):
                for v in module.basis(m + deg):
                    lhs = form.pair(module.apply_vec(g, {u: mpq(1)}), {v: mpq(1)})
                    rhs = form.pair({u: mpq(1)}, module.apply_vec(sig(g), {v: mpq(1)}))
                    assert lhs == rhs


@pytest.mark.parametrize("module", [GlVerma(trivial_module(1, 0)), VirVerma(0), GlVerma(exterior_power(2, 1, 1))])
def test_radical_is_stable_under_lowering(module):
    form = gl_form(module) if isinstance(module, GlVerma) else vir_form(module)
    if isinstance(module, GlVerma):
        lowering = [(-n, a, b) for n in (1, 2) for a in range(1, module.N + 1) for b in range(1, module.N + 1)]
    else:
        lowering = [-1, -2]
    for m in range(3):
        basis = module.basis(m)
        gram = form.gram(basis, basis)
        rad = nullspace([{j: x for j, x in enumerate(row) if x} for row in gram], len(basis))
        for vec in rad:
            v = {basis[i]: c for i, c in vec.items()}
            for g in lowering:
                img = module.apply_vec(g, v)
                if not img:
                    continue
                target = module.basis(m + (-g[0] if isinstance(g, tuple) else -g))
                assert all(form.pair(img, {b: mpq(1)}) == 0 for b in target)


def test_quotient_reduce_is_consistent():
    Q = Quotient(VirVerma(0), vir_form(VirVerma(0)))
    assert Q.basis(2) == []
    M = GlVerma(trivial_module(1, 0))
    Qg = Quotient(M, gl_form(M))
    assert Qg.rank(2) == 2


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_character_identity(N):
    assert character_identity(N, 12)
