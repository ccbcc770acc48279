from itertools import product

import pytest

from torusrep.affine import FermionicRealization, IrreducibleRealization, VermaRealization
from torusrep.algebra import Gen, bracket, d_gen, sigma
from torusrep.core import Exponent, mpq
from torusrep.glrep import dual_module, exterior_power, trivial_module
from torusrep.linalg import transpose
from torusrep.pairing import (DualPair, ParameterError, character_certify, free_field_dim, gram_rank,
                              shapovalov_pair)


def _top(pair, side, off, w=0):
    return {("ind", (), ("ten", tuple(off), w)): mpq(1)}


def test_top_pairing():
    P = DualPair(exterior_power(2, 1, "1/3"), ("1/3", "1/5"), "1/7")
    for i, j in product(range(2), repeat=2):
        assert shapovalov_pair(_top(P, 0, (1, 0), i), _top(P, 1, (1, 0), j), P) == (1 if i == j else 0)
    assert shapovalov_pair(_top(P, 0, (1, 0)), _top(P, 1, (0, 0)), P) == 0


def test_pairing_is_graded():
    P = DualPair(exterior_power(1, 0, "1/3"), ("1/5",), "1/7")
    u = P.left.apply_vec(d_gen(-1, (1,), 1), _top(P, 0, (0,)))
    assert shapovalov_pair(u, _top(P, 1, (1,)), P) == 0
    v = P.right.apply_vec(d_gen(-2, (1,), 0), _top(P, 1, (0,)))
    assert shapovalov_pair(u, v, P) == 0


def test_degree_one_pairing_reduces_to_bracket():
    P = DualPair(exterior_power(1, 0, "1/3"), ("1/5",), "1/7")
    x = d_gen(-1, (0,), 1)
    u = P.left.apply_vec(x, _top(P, 0, (0,)))
    v = P.right.apply_vec(x, _top(P, 1, (0,)))
    top = _top(P, 1, (0,))
    expect = mpq(0)
    for c, g in bracket(sigma(x), x, 1):
        expect += c * shapovalov_pair(_top(P, 0, (0,)), P.right.apply_vec(g, top), P)
    assert shapovalov_pair(u, v, P) == expect == 0


def test_mismatched_beta_rejected():
    W = exterior_power(2, 1, "1/3")
    with pytest.raises(ParameterError):
        DualPair(W, ("0", "0"), 0, Wd=trivial_module(2, 0))


@pytest.mark.parametrize("W,h", [(exterior_power(1, 0, "1/97"), "1/97"), (trivial_module(1, 0), 0),
                                 (exterior_power(1, 1, 1), 0)])
def test_contragredient_property(W, h):
    P = DualPair(W, ("1/3",), h)
    gens = [Gen("d", j, Exponent.of(r), a) for j in range(-2, 3) for r in product((-1, 0, 1), repeat=1)
            for a in range(2)]
    for m in range(3):
        for mu in (-1, 0, 1):
            left = P.left.basis(m, (mu,), 1)
            for x in gens:
                m2 = m - x.j
                if not 0 <= m2 <= 2:
                    continue
                right = P.right.basis(m2, (mu + x.r.num[0],), 1)
                for u in left:
                    xu = P.left.apply_vec(x, {u: mpq(1)})
                    for v in right:
                        lhs = P.pair(xu, {v: mpq(1)})
                        rhs = P.pair({u: mpq(1)}, P.right.apply_vec(sigma(x), {v: mpq(1)}))
                        assert lhs == rhs


def test_gram_rank_examples():
    W = exterior_power(2, 1, "1/3")
    assert gram_rank(W, ("1/3", "1/5"), "1/7", 0, (0, 0), 1)[0] == 2
    G = exterior_power(1, 0, "1/97")
    rank, _ = gram_rank(G, ("1/3",), "1/97", 1, (0,), 2)
    assert rank == free_field_dim(IrreducibleRealization(G, "1/97"), 1) == 2 + 1 + 1
    T = trivial_module(1, 0)
    rank, _ = gram_rank(T, (0,), 0, 1, (0,), 3)
    assert rank < free_field_dim(VermaRealization(T, 0), 1)
    assert rank < free_field_dim(IrreducibleRealization(T, 0), 1)


def test_gram_rank_monotone_in_cutoff():
    G = exterior_power(1, 0, "1/97")
    ranks = [gram_rank(G, ("1/3",), "1/97", 2, (1,), R)[0] for R in range(0, 4)]
    assert ranks == sorted(ranks)
    top = free_field_dim(IrreducibleRealization(G, "1/97"), 2)
    assert ranks[-1] == top and all(r <= top for r in ranks)


def test_swapping_sides_transposes_gram():
    W = exterior_power(2, 1, "1/3")
    P = DualPair(W, ("1/3", "1/5"), "1/7")
    Q = DualPair(dual_module(W), ("1/3", "1/5"), "1/7", Wd=W)
    _, _, g1 = P.gram(1, (0, 0), 1)
    _, _, g2 = Q.gram(1, (0, 0), 1)
    assert g2 == transpose(g1)


def test_certify_generic_and_top():
    G = exterior_power(1, 0, "1/97")
    c = character_certify(G, ("1/3",), "1/97", 1, (0,))
    assert c.certified and c.rank == c.fock_dim
    c = character_certify(G, ("1/3",), "1/97", 0, (0,))
    assert c.certified and c.rank == c.fock_dim == 1


def test_certify_exceptional_is_refuted_with_witness():
    F = FermionicRealization(1, 0)
    c = character_certify(F.top_module(), (0,), 0, 1, (0,), realization=F)
    assert not c.certified and c.status == "refuted"
    assert c.witness["dim"] >= 1
