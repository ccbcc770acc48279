"""Induced modules ``M(T) = U(D_-) (x) T`` over a tensor-module top and the
contragredient pairing ``M(T(W)) x M(T(W*)) -> Q``.

The pairing is ``<x a, b> = <a, sigma(x) b>`` with
``sigma(t_0^j t^r d_a) = t_0^{-j} t^{-r} d_a`` and the top pairing
``<q^mu (x) w_i, q^eta (x) w*_j> = delta_{mu,eta} delta_ij``.  Gram ranks
over a finite window of generators give lower bounds for the dimensions
of the irreducible quotient ``L(T)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import Gen, bracket, sigma
from .core import mpq, Exponent, Q
from .glrep import GlModule, dual_module
from .linalg import Echelon
from .pbw import ContravariantForm, InducedModule, multisets
from .tensmod import TensorModule


class ParameterError(ValueError):
    pass


class InducedDModule(InducedModule):
    """``M(T(W, gamma, h))`` over the algebra D of vector fields."""

    def __init__(self, top: TensorModule):
        if top.beta is None:
            raise ParameterError("the top needs h or beta")
        self.top = top
        self.N = top.N
        N = self.N

        def br(g, h):
            return bracket(g, h, N), 0

        def top_act(g, t):
            return {k: c for k, c in top.top_act(g, {t: mpq(1)}).items()}

        super().__init__("ind", lambda g: g.j, lambda g: (-g.j, g.r.num, g.a), br, top_act)

    def lowering(self, m: int, R: int) -> list:
        N = self.N
        gens = [Gen("d", -j, Exponent.of(r), a) for j in range(1, m + 1)
                for r in product(range(-R, R + 1), repeat=N) for a in range(N + 1)]
        gens.sort(key=self.order, reverse=True)
        return gens

    def basis(self, m: int, mu, R: int) -> list:
        """PBW keys at degree m and weight offset mu with ``|r_i| <= R``."""
        mu = tuple(mu)
        out = []
        for mono in multisets(self.lowering(m, R), lambda g: -g.j, m):
            off = list(mu)
            for g in mono:
                off = [o - x for o, x in zip(off, g.r.num)]
            for w in range(self.top.W.d):
                out.append(("ind", mono, ("ten", tuple(off), w)))
        out.sort()
        return out

    def degree(self, key) -> int:
        return -sum(g.j for g in key[1])


def _top_pair(t1, t2):
    return mpq(1) if (t1[1] == t2[1] and t1[2] == t2[2]) else mpq(0)


class DualPair:
    """The pair ``M(T(W,gamma,h))``, ``M(T(W*,gamma,h))`` with its pairing."""

    def __init__(self, W: GlModule, gamma, h, Wd: GlModule | None = None):
        self.W = W
        self.Wd = Wd if Wd is not None else dual_module(W)
        self.gamma = tuple(Q(g) for g in gamma)
        self.h = Q(h)
        self.left = InducedDModule(TensorModule(W, self.gamma, h=self.h))
        self.right = InducedDModule(TensorModule(self.Wd, self.gamma, h=self.h))
        if self.left.top.beta != self.right.top.beta:
            raise ParameterError("the two tops have different beta")
        self.form = ContravariantForm(self.left, self.right, sigma, _top_pair)

    def pair(self, u: dict, v: dict):
        return self.form.pair(u, v)

    def gram(self, m: int, mu, R: int):
        lb = self.left.basis(m, mu, R)
        rb = self.right.basis(m, mu, R)
        return lb, rb, self.form.gram(lb, rb)

    def gram_rank(self, m: int, mu, R: int):
        lb = self.left.basis(m, mu, R)
        rb = self.right.basis(m, mu, R)
        e = Echelon()
        for a in lb:
            row = {}
            for j, b in enumerate(rb):
                x = self.form.pair_keys(a, b)
                if x:
                    row[j] = x
            e.add(row)
        return e.rank, (len(lb), len(rb))


def shapovalov_pair(u: dict, v: dict, pair: DualPair):
    """``<u, v>`` for u in ``M(T(W))`` and v in ``M(T(W*))``."""
    return pair.pair(u, v)


def gram_rank(W: GlModule, gamma, h, m: int, mu, R: int):
    """``(rank, (rows, cols))`` of the Gram matrix at bigrade (m, mu)."""
    return DualPair(W, gamma, h).gram_rank(m, mu, R)


def free_field_dim(realization, m: int) -> int:
    """``dim`` of ``M_hyp (x) C`` at degree m above the top, per weight."""
    from .fock import fock_character
    fc = fock_character(realization.N, m)
    return sum(fc[a] * realization.dim(m - a) for a in range(m + 1))


@dataclass
class Certificate:
    m: int
    mu: tuple
    rank: int
    fock_dim: int
    certified: bool
    cutoff: int
    witness: object = None
    status: str = ""
    history: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"m": self.m, "mu": list(self.mu), "rank": self.rank, "fock_dim": self.fock_dim,
                "certified": self.certified, "cutoff": self.cutoff, "status": self.status,
                "witness": self.witness}


def character_certify(W: GlModule, gamma, h, m: int, mu, R: int | None = None, ceiling: int | None = None,
                      realization=None, pair: DualPair | None = None, witness_search: bool = True) -> Certificate:
    """Compare the Gram rank with the free-field dimension at (m, mu).

    ``rank <= dim L(T) <= fock_dim``, so equality certifies the character.
    When the rank falls short, a critical vector at (m, mu) in the free
    field module or in its dual proves ``dim L(T) < fock_dim``; such a
    witness ends the search with status ``"refuted"``.  Otherwise the
    cutoff is doubled up to ``ceiling`` and the result is ``"inconclusive"``.
    """
    from .affine import IrreducibleRealization
    mu = tuple(mu)
    if realization is None:
        realization = IrreducibleRealization(W, h)
    fock_dim = free_field_dim(realization, m)
    if pair is None:
        pair = DualPair(W, gamma, h)
    R = m + 2 if R is None else R
    ceiling = R if ceiling is None else ceiling
    history = []
    witness = None
    searched = False
    while True:
        rank, _ = pair.gram_rank(m, mu, R)
        history.append((R, rank))
        if rank == fock_dim:
            return Certificate(m, mu, rank, fock_dim, True, R, None, "certified", history)
        if rank > fock_dim:
            raise AssertionError("Gram rank exceeds the free-field dimension")
        if witness_search and not searched and m > 0:
            searched = True
            witness = find_witness(realization, gamma, m, mu)
            if witness is not None:
                return Certificate(m, mu, rank, fock_dim, False, R, witness, "refuted", history)
        if R * 2 > ceiling:
            return Certificate(m, mu, rank, fock_dim, False, R, None, "inconclusive", history)
        R *= 2


def find_witness(realization, gamma, m: int, mu):
    """A critical vector at (m, mu) in the free-field module or its dual."""
    from .critical import critical_solve
    res = critical_solve(realization, m, mu, gamma)
    if res.dim:
        return {"side": "module", "dim": res.dim, "vector": res.readable(0)}
    try:
        dual = realization.dual()
    except ValueError:
        return None
    res = critical_solve(dual, m, mu, gamma)
    if res.dim:
        return {"side": "dual", "dim": res.dim, "vector": res.readable(0)}
    return None


__all__ = ["InducedDModule", "DualPair", "shapovalov_pair", "gram_rank", "character_certify",
           "free_field_dim", "sigma", "Certificate"]
