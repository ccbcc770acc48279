"""Generators and structure constants of the algebra D of vector fields on
the (N+1)-torus extended by the module K of one-forms modulo exact forms.

A generator ``Gen(kind, j, r, a)`` stands for ``t_0^j t^r d_a`` (kind "d")
or ``t_0^j t^r k_a`` (kind "k"), with axis ``a`` in ``0..N``.  The vector
``r`` is an :class:`~torusrep.core.Exponent`, so it may carry formal parts.
"""
from __future__ import annotations

from typing import NamedTuple

from .core import Exponent


class Gen(NamedTuple):
    kind: str
    j: int
    r: Exponent
    a: int

    def __repr__(self):
        r = self.r.num if not self.r.formal else f"{self.r.num}+{self.r.formal}"
        return f"t0^{self.j} t^{r} {self.kind}_{self.a}"


def d_gen(j: int, r, a: int) -> Gen:
    return Gen("d", j, r if isinstance(r, Exponent) else Exponent.of(r), a)


def k_gen(j: int, r, a: int) -> Gen:
    return Gen("k", j, r if isinstance(r, Exponent) else Exponent.of(r), a)


def exponent_component(g: Gen, c: int):
    """Component ``c`` of the full exponent (t_0 exponent for c = 0)."""
    return g.j if c == 0 else g.r.component(c)


def sigma(g: Gen) -> Gen:
    """Anti-involution ``t_0^j t^r x_a -> t_0^{-j} t^{-r} x_a``."""
    return Gen(g.kind, -g.j, -g.r, g.a)


def bracket(x: Gen, y: Gen, N: int) -> list:
    """``[x, y]`` as a list of ``(coefficient, Gen)``.

    ``[t^M d_a, t^R d_b] = R_a t^{M+R} d_b - M_b t^{M+R} d_a`` and
    ``[t^M d_a, t^R k_b] = R_a t^{M+R} k_b + delta_ab sum_c M_c t^{M+R} k_c``,
    exponents running over ``0..N``; ``[K, K] = 0``.
    """
    j = x.j + y.j
    r = x.r + y.r
    if x.kind == "d" and y.kind == "d":
        out = [(exponent_component(y, x.a), Gen("d", j, r, y.a)),
               (-exponent_component(x, y.a), Gen("d", j, r, x.a))]
    elif x.kind == "d" and y.kind == "k":
        out = [(exponent_component(y, x.a), Gen("k", j, r, y.a))]
        if x.a == y.a:
            out += [(exponent_component(x, c), Gen("k", j, r, c)) for c in range(N + 1)]
    elif x.kind == "k" and y.kind == "d":
        out = [(-c, g) for c, g in bracket(y, x, N)]
    else:
        out = []
    return [(c, g) for c, g in out if c]


def degree_shift(g: Gen) -> int:
    """Change of t_0-degree (degree counts downward from the top)."""
    return -g.j
