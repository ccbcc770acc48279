from itertools import product

from hypothesis import given, strategies as st

from torusrep.algebra import Gen, bracket, d_gen, k_gen, sigma
from torusrep.core import Exponent, mpq

N = 2
exps = st.tuples(st.integers(-2, 2), st.integers(-2, 2))
gens = st.builds(lambda kind, j, r, a: Gen(kind, j, Exponent.of(r), a),
                 st.sampled_from("dk"), st.integers(-2, 2), exps, st.integers(0, N))


def _br(u: dict, v: dict) -> dict:
    out: dict = {}
    for x, a in u.items():
        for y, b in v.items():
            for c, g in bracket(x, y, N):
                out[g] = out.get(g, 0) + a * b * c
    return {g: c for g, c in out.items() if c}


def _add(*vs):
    out: dict = {}
    for v in vs:
        for g, c in v.items():
            out[g] = out.get(g, 0) + c
    return {g: c for g, c in out.items() if c}


def _modulo_exact_forms(v: dict) -> bool:
    """True when v vanishes in D (x) K, where K is one-forms modulo exact forms:
    at exponent (i, m) the k-part must be proportional to (i, m)."""
    dpart = {g: c for g, c in v.items() if g.kind == "d"}
    if dpart:
        return False
    byexp: dict = {}
    for g, c in v.items():
        byexp.setdefault((g.j, g.r), [0] * (N + 1))[g.a] += c
    for (j, r), vec in byexp.items():
        e = [j] + list(r.num)
        if not any(e):
            if any(vec):
                return False
            continue
        for a, b in product(range(N + 1), repeat=2):
            if vec[a] * e[b] != vec[b] * e[a]:
                return False
    return True


@given(gens, gens)
def test_bracket_is_antisymmetric(x, y):
    assert _add(_br({x: 1}, {y: 1}), _br({y: 1}, {x: 1})) == {}


@given(gens, gens, gens)
def test_jacobi_identity_modulo_exact_forms(x, y, z):
    X, Y, Z = {x: 1}, {y: 1}, {z: 1}
    total = _add(_br(X, _br(Y, Z)), _br(Y, _br(Z, X)), _br(Z, _br(X, Y)))
    assert _modulo_exact_forms(total)


def test_k_bracket_kills_exact_forms():
    # d of t_0^i t^m pairs to zero against every d-generator
    for i, m in [(1, (0, 1)), (-2, (1, -1)), (0, (2, 0))]:
        f = {k_gen(i, m, 0): mpq(i)}
        f = _add(f, {k_gen(i, m, c): mpq(m[c - 1]) for c in (1, 2)})
        for y in [d_gen(1, (1, 0), 0), d_gen(-1, (0, 1), 2), d_gen(0, (1, 1), 1)]:
            assert _modulo_exact_forms(_br({y: 1}, f))


def test_vector_field_bracket_example():
    # [t_1 d_1, t_1^{-1} d_1] = -2 d_1
    out = _br({d_gen(0, (1, 0), 1): 1}, {d_gen(0, (-1, 0), 1): 1})
    assert out == {d_gen(0, (0, 0), 1): -2}
    # [t_0 d_0, t_0^{-1} d_0] = -2 d_0
    out = _br({d_gen(1, (0, 0), 0): 1}, {d_gen(-1, (0, 0), 0): 1})
    assert out == {d_gen(0, (0, 0), 0): -2}


def test_sigma_examples():
    g = d_gen(2, (1, 0), 1)
    assert sigma(g) == d_gen(-2, (-1, 0), 1)
    assert sigma(sigma(g)) == g
    assert sigma(d_gen(0, (0, 0), 0)) == d_gen(0, (0, 0), 0)
    assert sigma(k_gen(1, (0, -1), 2)) == k_gen(-1, (0, 1), 2)
