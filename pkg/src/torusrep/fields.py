"""Fields on graded spaces and their modes.

A field ``A`` of conformal weight ``delta`` has modes ``A_(n)`` that change
the degree of a homogeneous vector by ``delta - 1 - n``.  Since all degrees
are nonnegative, ``A_(n) v = 0`` once ``n > deg(v) + delta - 1``; that bound
is what keeps every normally ordered product below a finite sum.

A *space* is any object with a ``degree(key)`` method.
"""
from __future__ import annotations

from .core import ONE, add_into, add_term


class Field:
    delta = 0
    parity = 0

    def __init__(self, space, delta: int, parity: int = 0, cache: bool = True):
        self.space = space
        self.delta = delta
        self.parity = parity
        self._cache = {} if cache else None

    def bound(self, deg: int) -> int:
        return deg + self.delta - 1

    def compute(self, n: int, key) -> dict:
        raise NotImplementedError

    def mode_key(self, n: int, key) -> dict:
        c = self._cache
        if c is None:
            return self.compute(n, key)
        ck = (n, key)
        hit = c.get(ck)
        if hit is None:
            hit = self.compute(n, key)
            c[ck] = hit
        return hit

    def mode(self, n: int, vec: dict) -> dict:
        return self.mode_into(n, vec, {})

    def mode_into(self, n: int, vec: dict, out: dict, c=1) -> dict:
        """``out += c * A_(n) vec`` in place."""
        one = c == 1
        for key, x in vec.items():
            img = self.mode_key(n, key)
            if img:
                add_into(out, img, x if one else x * c)
        return out

    def clear(self):
        if self._cache is not None:
            self._cache.clear()


class KeyField(Field):
    """Field given by a key-level function ``fn(n, key) -> dict``."""

    def __init__(self, space, delta, fn, parity=0, cache=False):
        super().__init__(space, delta, parity, cache)
        self.fn = fn

    def compute(self, n, key):
        return self.fn(n, key)


class NormalOrdered(Field):
    """``:A B:`` with modes
    ``sum_{k<0} A_(k) B_(n-1-k) + (-1)^{p(A)p(B)} sum_{k>=0} B_(n-1-k) A_(k)``.
    """

    def __init__(self, a: Field, b: Field, cache: bool = True):
        super().__init__(a.space, a.delta + b.delta, (a.parity + b.parity) % 2, cache)
        self.a = a
        self.b = b
        self.sign = -1 if (a.parity and b.parity) else 1

    def compute(self, n, key):
        A, B = self.a, self.b
        D = self.space.degree(key)
        out: dict = {}
        for k in range(0, A.bound(D) + 1):
            w = A.mode_key(k, key)
            if w:
                B.mode_into(n - 1 - k, w, out, self.sign)
        for k in range(n - 1 - B.bound(D), 0):
            w = B.mode_key(n - 1 - k, key)
            if w:
                A.mode_into(k, w, out)
        return out


class Derivative(Field):
    """``(dA/dz)_(n) = -n A_(n-1)``."""

    def __init__(self, a: Field):
        super().__init__(a.space, a.delta + 1, a.parity, cache=False)
        self.a = a

    def compute(self, n, key):
        if n == 0:
            return {}
        img = self.a.mode_key(n - 1, key)
        return {k: c * (-n) for k, c in img.items()}


class Combination(Field):
    """``sum c_i F_i``; coefficients may be RPoly."""

    def __init__(self, terms, space=None, cache: bool = False):
        terms = [(c, f) for c, f in terms if c]
        sp = space if space is not None else terms[0][1].space
        delta = max((f.delta for _, f in terms), default=0)
        parity = terms[0][1].parity if terms else 0
        super().__init__(sp, delta, parity, cache)
        self.terms = terms

    def compute(self, n, key):
        out: dict = {}
        for c, f in self.terms:
            img = f.mode_key(n, key)
            if img:
                add_into(out, img, c)
        return out


class LiftLeft(Field):
    """Field on ``X`` acting on the left factor of ``("x", left, right)`` keys."""

    def __init__(self, f: Field, product):
        super().__init__(product, f.delta, f.parity, cache=False)
        self.f = f

    def compute(self, n, key):
        _, left, right = key
        return {("x", k, right): c for k, c in self.f.mode_key(n, left).items()}


class LiftRight(Field):
    """Field acting on the right factor; odd fields pick up the parity of
    the left factor (the left factors used here are all even)."""

    def __init__(self, f: Field, product):
        super().__init__(product, f.delta, f.parity, cache=False)
        self.f = f

    def compute(self, n, key):
        _, left, right = key
        return {("x", left, k): c for k, c in self.f.mode_key(n, right).items()}


class ProductSpace:
    """Tensor product of two graded spaces; degrees add."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self._deg = {}

    def degree(self, key) -> int:
        d = self._deg.get(key)
        if d is None:
            d = self.left.degree(key[1]) + self.right.degree(key[2])
            self._deg[key] = d
        return d


def commutator(x, y, vec: dict, sign: int = 1) -> dict:
    """``x(y(v)) - sign * y(x(v))`` for callables on vectors."""
    out = dict(x(y(vec)))
    add_into(out, y(x(vec)), -sign)
    return out


def virasoro_defect(L, n: int, m: int, vec: dict, c) -> dict:
    """``[L_n, L_m]v - (n-m)L_{n+m}v - delta_{n,-m}(n^3-n)/12 c v`` where
    ``L(k, v)`` applies ``L_k``."""
    out = commutator(lambda v: L(n, v), lambda v: L(m, v), vec)
    add_into(out, L(n + m, vec), -(n - m))
    if n + m == 0 and c:
        from .core import mpq
        add_into(out, vec, -mpq(n ** 3 - n, 12) * c)
    return out


__all__ = ["Field", "KeyField", "NormalOrdered", "Derivative", "Combination",
           "LiftLeft", "LiftRight", "ProductSpace", "commutator", "virasoro_defect", "ONE", "add_term"]
