"""Modules induced from a top, with PBW straightening, and contravariant
forms between two such modules.

A basis key is ``(tag, mono, top)``: ``mono`` is a tuple of lowering
generators in weakly decreasing ``order``, applied to the top basis
element ``top`` (leftmost generator outermost).  A generator ``g`` is
lowering when ``grade(g) < 0``, a zero mode when ``grade(g) == 0`` and
raising otherwise; raising generators kill the top.
"""
from __future__ import annotations

from .core import mpq, add_into, add_term


class InducedModule:
    """Straightening engine.

    ``bracket(g, h)`` returns ``(terms, central)`` with ``terms`` a list of
    ``(coefficient, generator)``; ``top_act(g, top)`` returns a dict over top
    keys for zero modes.
    """

    def __init__(self, tag, grade, order, bracket, top_act):
        self.tag = tag
        self.grade = grade
        self.order = order
        self.bracket = bracket
        self.top_act = top_act
        self._memo = {}

    def key(self, mono, top):
        return (self.tag, tuple(mono), top)

    def apply(self, g, key) -> dict:
        ck = (g, key)
        hit = self._memo.get(ck)
        if hit is None:
            hit = self._apply(g, key)
            self._memo[ck] = hit
        return hit

    def _apply(self, g, key) -> dict:
        tag, mono, top = key
        gr = self.grade(g)
        if gr < 0 and (not mono or self.order(g) >= self.order(mono[0])):
            return {(tag, (g,) + mono, top): mpq(1)}
        if not mono:
            if gr > 0:
                return {}
            return {(tag, (), t): c for t, c in self.top_act(g, top).items() if c}
        x1 = mono[0]
        rest = (tag, mono[1:], top)
        out: dict = {}
        for k, c in self.apply(g, rest).items():
            add_into(out, self.apply(x1, k), c)
        terms, central = self.bracket(g, x1)
        for c, h in terms:
            if c:
                add_into(out, self.apply(h, rest), c)
        if central:
            add_term(out, rest, central)
        return out

    def apply_vec(self, g, vec: dict) -> dict:
        out: dict = {}
        for k, c in vec.items():
            add_into(out, self.apply(g, k), c)
        return out

    def apply_word(self, word, vec: dict) -> dict:
        """Apply generators right to left (``word[-1]`` first)."""
        for g in reversed(word):
            vec = self.apply_vec(g, vec)
        return vec


class ContravariantForm:
    """``<X a, b> = <a, sigma(X) b>`` between ``left`` and ``right`` modules,
    normalized on tops by ``top_pair``."""

    def __init__(self, left: InducedModule, right: InducedModule, sigma, top_pair):
        self.left = left
        self.right = right
        self.sigma = sigma
        self.top_pair = top_pair
        self._memo = {}

    def pair_keys(self, a, b):
        ck = (a, b)
        hit = self._memo.get(ck)
        if hit is not None:
            return hit
        tag, mono, top = a
        if not mono:
            val = self.top_pair(top, b[2]) if not b[1] else mpq(0)
        else:
            rest = (tag, mono[1:], top)
            val = mpq(0)
            for k, c in self.right.apply(self.sigma(mono[0]), b).items():
                val += c * self.pair_keys(rest, k)
        self._memo[ck] = val
        return val

    def pair(self, u: dict, v: dict):
        total = mpq(0)
        for a, x in u.items():
            for b, y in v.items():
                p = self.pair_keys(a, b)
                if p:
                    total += x * y * p
        return total

    def gram(self, left_basis, right_basis) -> list:
        return [[self.pair_keys(a, b) for b in right_basis] for a in left_basis]


def multisets(gens_sorted_desc, weight, total: int) -> list:
    """Weakly decreasing tuples of generators with total weight ``total``.

    ``gens_sorted_desc`` must already be in decreasing PBW order.
    """
    out = []

    def rec(i, left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for t in range(i, len(gens_sorted_desc)):
            g = gens_sorted_desc[t]
            w = weight(g)
            if w <= left:
                acc.append(g)
                rec(t, left - w, acc)
                acc.pop()

    rec(0, total, [])
    return out
