"""Exact scalars, formal polynomials in r, sparse vectors and bigrades.

Every number in the package is a ``flint.fmpq`` (aliased ``mpq``).  Coefficients that depend
on a formal exponent vector are ``flint.fmpq_mpoly`` (``RPoly``); both kinds mix
freely in arithmetic.

Basis keys are plain tuples whose first entry is a tag naming the space:

``("hyp", offset, shift, exps)``
    Fock monomial: weight ``gamma + offset + shift.r``, ``exps`` a sorted tuple
    of ``((species, p, j), e)`` with species 0 for ``u`` and 1 for ``v``.
``("fer", gens)``
    fermion monomial, ``gens`` a canonically sorted tuple of ``(s, p, j)``.
``("gl", mono, w)`` / ``("vir", mono, 0)`` / ``("ind", mono, top)``
    PBW monomials over a top.
``("aff", glkey, virkey)``
    coefficient key of the affine-Virasoro tower.
``("ten", offset, w)``
    tensor-module key.
``("x", left, right)``
    tensor product key.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import flint

mpq = flint.fmpq

Scalar = mpq
ZERO = mpq(0)
ONE = mpq(1)


def Q(x) -> mpq:
    """Parse an int, Fraction, mpq or a ``"p/q"`` string into an exact scalar."""
    if isinstance(x, str):
        x = x.strip()
        if not x:
            raise ValueError("empty rational")
        return mpq(Fraction(x).numerator, Fraction(x).denominator)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a rational string")
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def qstr(x) -> str:
    """Render a scalar as ``p`` or ``p/q``."""
    if isinstance(x, RPoly):
        return str(x)
    return str(mpq(x))


class SpaceMismatch(ValueError):
    pass


# ---------------------------------------------------------------- RPoly

# Formal exponent vectors are indexed by f (0 is ``r``, 1 is ``m``, ...) and
# their components by p; the variable ``(f, p)`` is generator f*PMAX + p - 1.
FMAX = 4
PMAX = 8
_CTX = flint.fmpq_mpoly_ctx.get(tuple(f"{n}{p}" for n in "rmst" for p in range(1, PMAX + 1)), "lex")
_GENS = _CTX.gens()
_ZERO_MONO = (0,) * (FMAX * PMAX)

RPoly = flint.fmpq_mpoly
"""Polynomial over Q in the formal variables ``(f, p)``."""


def rvar(f: int, p: int) -> RPoly:
    if not (0 <= f < FMAX and 1 <= p <= PMAX):
        raise ValueError("formal variable out of range")
    return _GENS[f * PMAX + p - 1]


def rconst(c) -> RPoly:
    return _CTX.constant(mpq(c))


def rvars(poly) -> list:
    """The ``(f, p)`` variables occurring in ``poly``."""
    if not isinstance(poly, RPoly):
        return []
    degs = poly.degrees()
    return [(i // PMAX, i % PMAX + 1) for i, e in enumerate(degs) if e]


def coeff_parts(c) -> dict:
    """Return ``{monomial: rational}`` for a scalar or RPoly coefficient."""
    if isinstance(c, RPoly):
        return {m: mpq(x) for m, x in c.to_dict().items()}
    return {_ZERO_MONO: mpq(c)} if c else {}


def evaluate(c, point):
    """Evaluate at ``point`` mapping ``(f, p)`` to a rational."""
    if not isinstance(c, RPoly):
        return mpq(c)
    vals = [mpq(point.get((i // PMAX, i % PMAX + 1), 0)) for i in range(FMAX * PMAX)]
    return mpq(c(*vals))


# ---------------------------------------------------------------- exponents

class Exponent(NamedTuple):
    """Exponent vector ``num + sum_f formal[f] * (formal vector f)``."""

    num: tuple
    formal: tuple = ()

    @staticmethod
    def of(num, formal=()) -> Exponent:
        return Exponent(tuple(int(x) for x in num), _strip(tuple(formal)))

    @staticmethod
    def formal_var(N: int, f: int = 0) -> Exponent:
        return Exponent((0,) * N, (0,) * f + (1,))

    def __add__(self, other):
        return Exponent(tuple(a + b for a, b in zip(self.num, other.num)),
                        add_shift(self.formal, other.formal))

    def __neg__(self):
        return Exponent(tuple(-a for a in self.num), tuple(-c for c in self.formal))

    def component(self, p: int):
        """Component ``p`` (1-based) as an int or RPoly."""
        base = self.num[p - 1]
        if not self.formal:
            return mpq(base)
        out = rconst(base)
        for f, c in enumerate(self.formal):
            if c:
                out = out + rvar(f, p) * c
        return out

    def is_zero(self) -> bool:
        return not any(self.num) and not self.formal

    def is_formal(self) -> bool:
        return bool(self.formal)


def _strip(t: tuple) -> tuple:
    n = len(t)
    while n and t[n - 1] == 0:
        n -= 1
    return t[:n]


def add_shift(a: tuple, b: tuple) -> tuple:
    if not b:
        return a
    if not a:
        return b
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return _strip(tuple(x + y for x, y in zip(a, b)))


# ---------------------------------------------------------------- vectors

class SparseVec(dict):
    """Finite map from basis keys to coefficients with zeros pruned."""

    __slots__ = ("space",)

    def __init__(self, data=(), space=None):
        super().__init__()
        self.space = space
        items = data.items() if isinstance(data, dict) else data
        for k, c in items:
            if c:
                self[k] = c

    def copy(self):
        return SparseVec(self, self.space)

    def __repr__(self):
        if not self:
            return "0"
        return " + ".join(f"({qstr(c)})*{k!r}" for k, c in sorted(self.items(), key=lambda kv: repr(kv[0])))


def add_into(acc: dict, vec: dict, c=ONE) -> dict:
    """``acc += c * vec`` in place, pruning zeros."""
    if c == 1:
        for k, x in vec.items():
            s = acc.get(k)
            s = x if s is None else s + x
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return acc
    for k, x in vec.items():
        s = acc.get(k)
        s = x * c if s is None else s + x * c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def add_term(acc: dict, key, c) -> None:
    s = acc.get(key)
    s = c if s is None else s + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def scale(vec: dict, c) -> dict:
    if not c:
        return {}
    out = {}
    for k, x in vec.items():
        y = x * c
        if y:
            out[k] = y
    return out


def linear_combine(terms: Iterable) -> SparseVec:
    """Exact linear combination of ``(coefficient, vector)`` pairs."""
    space = None
    out: dict = {}
    for c, v in terms:
        sp = getattr(v, "space", None)
        if sp is not None:
            if space is None:
                space = sp
            elif sp != space:
                raise SpaceMismatch(f"cannot combine vectors of {space!r} and {sp!r}")
        add_into(out, v, c)
    return SparseVec(out, space)


def is_zero_vec(vec: dict) -> bool:
    return all(not c for c in vec.values())


# ---------------------------------------------------------------- bigrades

@dataclass(frozen=True)
class Bigrade:
    """Absolute ``t_0``-degree and weight offset (plus formal shift)."""

    m: int
    mu: tuple
    shift: tuple = ()

    def __add__(self, other: Bigrade) -> Bigrade:
        return Bigrade(self.m + other.m, _addt(self.mu, other.mu), add_shift(self.shift, other.shift))


def _addt(a, b):
    if not a:
        return b
    if not b:
        return a
    return tuple(x + y for x, y in zip(a, b))


def fock_key_degree(exps) -> int:
    return sum(j * e for (_, _, j), e in exps)


def fermion_deg_bos(gens) -> int:
    return sum((-j - 1) if s == 0 else -j for s, _, j in gens)


def bigrade_of(key) -> Bigrade:
    """Degree and weight of a tagged basis key; additive over ``"x"`` keys."""
    try:
        tag = key[0]
        if tag == "hyp":
            return Bigrade(fock_key_degree(key[3]), tuple(key[1]), tuple(key[2]))
        if tag == "fer":
            return Bigrade(fermion_deg_bos(key[1]), ())
        if tag in ("gl", "vir"):
            return Bigrade(sum(-g[0] if tag == "gl" else -g for g in key[1]), ())
        if tag == "ind":
            top = bigrade_of(key[2])
            m = sum(g[0] for g in key[1])
            mu = top.mu
            for g in key[1]:
                mu = _addt(mu, g[1])
            return Bigrade(m, mu)
        if tag == "ten":
            return Bigrade(0, tuple(key[1]))
        if tag in ("x", "aff"):
            return bigrade_of(key[1]) + bigrade_of(key[2])
    except (TypeError, IndexError) as exc:
        raise KeyError(f"malformed basis key {key!r}") from exc
    raise KeyError(f"malformed basis key {key!r}")
