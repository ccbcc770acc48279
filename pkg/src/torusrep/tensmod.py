"""Tensor modules ``q^gamma C[q^{+-1}] (x) W`` and their tops.

Keys are ``("ten", offset, w)`` for the vector ``q^{gamma+offset} (x) e_w``.
"""
from __future__ import annotations

from itertools import product

from .algebra import Gen
from .core import mpq, Exponent, Q, SparseVec, add_term
from .glrep import GlModule, beta_value, exterior_basis, h_from_beta, wedge_insert
from .linalg import Echelon, nullspace


class NotAForm(ValueError):
    pass


def _num(r) -> tuple:
    if isinstance(r, Exponent):
        if r.formal:
            raise ValueError("tensor modules take integer exponents")
        return r.num
    return tuple(int(x) for x in r)


class TensorModule:
    """``T(W, gamma)``, optionally with the top data ``beta`` (or ``h``)."""

    def __init__(self, W: GlModule, gamma, beta=None, h=None):
        self.W = W
        self.N = W.N
        self.gamma = tuple(Q(g) for g in gamma)
        if len(self.gamma) != self.N:
            raise ValueError("gamma must have N components")
        if beta is not None and h is not None:
            raise ValueError("give only one of beta and h")
        if h is not None:
            self.h = Q(h)
            self.beta = beta_value(W, self.h)
        elif beta is not None:
            self.beta = Q(beta)
            self.h = h_from_beta(W, self.beta)
        else:
            self.beta = self.h = None
        self.space = ("ten", self.gamma, id(W))

    def key(self, offset, w: int = 0):
        return ("ten", tuple(offset), w)

    def vec(self, offset, w: int = 0, c=1) -> SparseVec:
        return SparseVec({self.key(offset, w): Q(c)}, self.space)

    def weight(self, key) -> tuple:
        return tuple(g + o for g, o in zip(self.gamma, key[1]))

    def basis(self, offset) -> list:
        return [self.key(offset, w) for w in range(self.W.d)]

    def tens_act(self, r, a: int, v: dict) -> SparseVec:
        """``t^r d_a (q^mu (x) w) = mu_a q^{mu+r} w + sum_p r_p q^{mu+r} E^{pa} w``."""
        if not 1 <= a <= self.N:
            raise ValueError(f"axis {a} out of range 1..{self.N}")
        r = _num(r)
        out: dict = {}
        for key, c in v.items():
            off = tuple(o + x for o, x in zip(key[1], r))
            mu = self.weight(key)
            w = key[2]
            if mu[a - 1]:
                add_term(out, ("ten", off, w), c * mu[a - 1])
            for p in range(1, self.N + 1):
                if r[p - 1]:
                    for w2, e in self.W.act(p, a, w).items():
                        add_term(out, ("ten", off, w2), c * r[p - 1] * e)
        return SparseVec(out, self.space)

    def top_act(self, g: Gen, v: dict) -> SparseVec:
        """Action of a degree-zero generator on the top ``T(W, gamma, h)``."""
        if g.j != 0:
            raise ValueError("top action is defined for t_0-degree 0 only")
        r = _num(g.r)
        if g.kind == "k":
            if g.a != 0:
                return SparseVec({}, self.space)
            out = {("ten", tuple(o + x for o, x in zip(k[1], r)), k[2]): c for k, c in v.items()}
            return SparseVec(out, self.space)
        if g.a == 0:
            if self.beta is None:
                raise ValueError("top action of d_0 needs beta or h")
            out = {("ten", tuple(o + x for o, x in zip(k[1], r)), k[2]): c * self.beta for k, c in v.items()}
            return SparseVec(out, self.space)
        return self.tens_act(r, g.a, v)


def form_module(N: int, k: int, gamma) -> TensorModule:
    from .glrep import exterior_power
    return TensorModule(exterior_power(N, k, k), gamma)


def derham_d(T: TensorModule, v: dict, target: TensorModule | None = None) -> SparseVec:
    """``d(q^mu (x) e_S) = sum_p mu_p q^mu (x) e_p ^ e_S``.

    ``T`` must be ``Lambda^k`` with identity scalar ``k``; the result lives
    in the module of (k+1)-forms (built on demand when ``target`` is None).
    """
    N = T.N
    k = next((kk for kk in range(N + 1) if len(exterior_basis(N, kk)) == T.W.d and T.W.alpha == kk), None)
    if k is None or T.W.label != f"Lambda^{k}":
        raise NotAForm("derham_d needs Lambda^k with identity scalar k")
    if target is None:
        target = form_module(N, k + 1, T.gamma) if k < N else None
    src = exterior_basis(N, k)
    out: dict = {}
    if k < N:
        dst = {S: i for i, S in enumerate(exterior_basis(N, k + 1))}
        for key, c in v.items():
            mu = T.weight(key)
            S = src[key[2]]
            for p in range(1, N + 1):
                if not mu[p - 1]:
                    continue
                sign, S2 = wedge_insert(p, S)
                if sign:
                    add_term(out, ("ten", key[1], dst[S2]), c * sign * mu[p - 1])
    return SparseVec(out, target.space if target is not None else ("ten", T.gamma, "top"))


def submodule_probe(Wpp: GlModule) -> list:
    """Solutions ``(w_1..w_N)`` of ``E^{ca} w_b + E^{ba} w_c = delta_ca w_b + delta_ba w_c``.

    Unknown ``w_b`` coordinate ``i`` is column ``(b-1)*d + i``.  Returns a
    list of tuples of N coordinate lists.
    """
    N, d = Wpp.N, Wpp.d
    rows = []
    for a, b, c in product(range(1, N + 1), repeat=3):
        for i in range(d):
            row: dict = {}
            for col in range(d):
                x = Wpp.entry(c, a, i, col)
                if x:
                    row[(b - 1) * d + col] = row.get((b - 1) * d + col, 0) + x
                x = Wpp.entry(b, a, i, col)
                if x:
                    row[(c - 1) * d + col] = row.get((c - 1) * d + col, 0) + x
            if c == a:
                row[(b - 1) * d + i] = row.get((b - 1) * d + i, 0) - 1
            if b == a:
                row[(c - 1) * d + i] = row.get((c - 1) * d + i, 0) - 1
            row = {k2: x for k2, x in row.items() if x}
            if row:
                rows.append(row)
    sols = nullspace(rows, N * d)
    return [tuple([sol.get((b - 1) * d + i, mpq(0)) for i in range(d)] for b in range(1, N + 1)) for sol in sols]


def probe_closure(Wpp: GlModule, solutions: list, gamma=None, samples=None) -> bool:
    """Check that ``span{q^r (x) sum_b r_b w_b}`` is closed under ``t^s d_a``.

    Both the tested ``r`` and ``s`` run over ``samples`` (default
    ``{-1,0,1}^N``).
    """
    N, d = Wpp.N, Wpp.d
    T = TensorModule(Wpp, gamma or (0,) * N)
    if samples is None:
        samples = list(product((-1, 0, 1), repeat=N))

    def element(r, sol):
        out: dict = {}
        for b in range(N):
            for i in range(d):
                x = sol[b][i] * r[b]
                if x:
                    add_term(out, ("ten", tuple(r), i), x)
        return out

    for r in samples:
        for s in samples:
            rs = tuple(x + y for x, y in zip(r, s))
            span = Echelon()
            for sol in solutions:
                span.add({k[2]: c for k, c in element(rs, sol).items()})
            for sol in solutions:
                for a in range(1, N + 1):
                    img = T.tens_act(s, a, element(r, sol))
                    rem, _ = span.reduce({k[2]: c for k, c in img.items()})
                    if rem:
                        return False
    return True
