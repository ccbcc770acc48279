"""The hyperbolic Fock space ``q^gamma C[q^{+-1}] (x) C[u_pj, v_pj]``.

Keys are ``("hyp", offset, shift, exps)``: the weight is
``gamma + offset + sum_f shift[f] * r^(f)`` where the ``r^(f)`` are formal
exponent vectors, and ``exps`` is a sorted tuple of ``((s, p, j), e)`` with
``s = 0`` for ``u_pj`` and ``s = 1`` for ``v_pj``.

Heisenberg modes: ``u^p_(-j) = j u_pj``, ``u^p_(j) = d/dv_pj``,
``u^p_(0) = 0``, ``v^p_(-j) = j v_pj``, ``v^p_(j) = d/du_pj`` and
``v^p_(0)`` reads the weight.
"""
from __future__ import annotations

from .core import (mpq, Exponent, Q, SparseVec, add_into, add_term, add_shift, rconst, rvar,
                   fock_key_degree)
from .fields import Combination, KeyField, NormalOrdered

U, V = 0, 1


def mul_var(exps: tuple, var, e: int = 1) -> tuple:
    d = dict(exps)
    d[var] = d.get(var, 0) + e
    return tuple(sorted(d.items()))


def mul_mono(exps: tuple, other: tuple) -> tuple:
    if not other:
        return exps
    if not exps:
        return other
    d = dict(exps)
    for var, e in other:
        d[var] = d.get(var, 0) + e
    return tuple(sorted(d.items()))


def diff_var(exps: tuple, var):
    """``d/dvar`` of a monomial: ``(coefficient, exps)`` or None."""
    for i, (v, e) in enumerate(exps):
        if v == var:
            if e == 1:
                return 1, exps[:i] + exps[i + 1:]
            return e, exps[:i] + ((v, e - 1),) + exps[i + 1:]
    return None


def diff_mono(exps: tuple, dmono: tuple):
    """Apply ``prod d/dvar^e`` to a monomial; falling factorials."""
    coeff = 1
    d = dict(exps)
    for var, e in dmono:
        have = d.get(var, 0)
        if have < e:
            return None
        for t in range(e):
            coeff *= have - t
        if have == e:
            del d[var]
        else:
            d[var] = have - e
    return coeff, tuple(sorted(d.items()))


def colored_partitions(m: int, colors: list) -> list:
    """All monomials of weighted degree m in variables ``(c..., j)``.

    ``colors`` lists variable prefixes; the variable is ``prefix + (j,)``
    with degree ``j``.  Results are sorted exps tuples.
    """
    variables = [c + (j,) for j in range(1, m + 1) for c in colors]
    variables.sort()
    out = []

    def rec(i, left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        if i == len(variables):
            return
        var = variables[i]
        j = var[-1]
        for e in range(left // j, 0, -1):
            acc.append((var, e))
            rec(i + 1, left - e * j, acc)
            acc.pop()
        rec(i + 1, left, acc)

    rec(0, m, [])
    out.sort()
    return out


def series_power(exponent: int, D: int) -> list:
    """Coefficients of ``prod_{k>=1} (1-s^k)^{-exponent}`` up to ``s^D``."""
    coeffs = [0] * (D + 1)
    coeffs[0] = 1
    for k in range(1, D + 1):
        # multiply by (1 - s^k)^{-exponent} = sum_t C(exponent+t-1, t) s^{kt}
        new = [0] * (D + 1)
        for i, c in enumerate(coeffs):
            if not c:
                continue
            t = 0
            binom = 1
            while i + k * t <= D:
                new[i + k * t] += c * binom
                t += 1
                binom = binom * (exponent + t - 1) // t
        coeffs = new
    return coeffs


def series_mul(a: list, b: list) -> list:
    n = min(len(a), len(b))
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def fock_character(N: int, D: int) -> list:
    """Dimensions of the degree-m parts of ``C[u_pj, v_pj]``, m = 0..D."""
    return series_power(2 * N, D)


class FockSpace:
    """``M_hyp(gamma)`` for rank N."""

    def __init__(self, N: int, gamma=None):
        self.N = N
        self.gamma = tuple(Q(g) for g in (gamma if gamma is not None else (0,) * N))
        if len(self.gamma) != N:
            raise ValueError("gamma must have N components")
        self._vq_fields = {}
        self._heis = {}
        self._omega = None
        self.space_id = ("hyp", N, self.gamma)

    # keys and bases
    def key(self, offset=None, exps=(), shift=()) -> tuple:
        off = tuple(offset) if offset is not None else (0,) * self.N
        return ("hyp", off, tuple(shift), tuple(sorted(exps)))

    def vec(self, offset=None, exps=(), c=1) -> SparseVec:
        return SparseVec({self.key(offset, exps): Q(c)}, self.space_id)

    def degree(self, key) -> int:
        return fock_key_degree(key[3])

    def basis(self, m: int, offset=None) -> list:
        off = tuple(offset) if offset is not None else (0,) * self.N
        colors = [(s, p) for s in (U, V) for p in range(1, self.N + 1)]
        return [("hyp", off, (), exps) for exps in colored_partitions(m, colors)]

    def weight_component(self, key, p: int):
        off, shift = key[1], key[2]
        w = self.gamma[p - 1] + off[p - 1]
        if not shift:
            return w
        out = rconst(w)
        for f, c in enumerate(shift):
            if c:
                out = out + rvar(f, p) * c
        return out

    # Heisenberg
    def heis_key(self, s: int, p: int, n: int, key) -> dict:
        tag, off, shift, exps = key
        if n < 0:
            return {(tag, off, shift, mul_var(exps, (s, p, -n))): mpq(-n)}
        if n == 0:
            if s == U:
                return {}
            w = self.weight_component(key, p)
            return {key: w} if w else {}
        res = diff_var(exps, (1 - s, p, n))
        if res is None:
            return {}
        return {(tag, off, shift, res[1]): mpq(res[0])}

    def heis_apply(self, species, p: int, n: int, v: dict) -> SparseVec:
        s = _species(species)
        out: dict = {}
        for key, c in v.items():
            add_into(out, self.heis_key(s, p, n, key), c)
        return SparseVec(out, self.space_id)

    def heis_field(self, s: int, p: int):
        f = self._heis.get((s, p))
        if f is None:
            f = KeyField(self, 1, lambda n, key, s=s, p=p: self.heis_key(s, p, n, key))
            self._heis[(s, p)] = f
        return f

    # vertex operators Y(q^r, z)
    def vq_field(self, r: Exponent):
        f = self._vq_fields.get(r)
        if f is None:
            f = VertexField(self, r)
            self._vq_fields[r] = f
        return f

    def vertex_q_mode(self, r, n: int, v: dict) -> SparseVec:
        if not isinstance(r, Exponent):
            r = Exponent.of(r)
        f = self.vq_field(r)
        return SparseVec(f.mode(n, v), self.space_id)

    def omega_field(self):
        if self._omega is None:
            terms = [(1, NormalOrdered(self.heis_field(U, p), self.heis_field(V, p))) for p in range(1, self.N + 1)]
            self._omega = Combination(terms, self, cache=True)
        return self._omega

    def omega_hyp_mode(self, n: int, v: dict) -> SparseVec:
        return SparseVec(self.omega_field().mode(n, v), self.space_id)


def _species(species) -> int:
    if species in (U, "u"):
        return U
    if species in (V, "v"):
        return V
    raise ValueError(f"unknown species {species!r}")


class VertexField(KeyField):
    """Modes of ``Y(q^r, z) = q^r E_+(z) E_-(z)`` on Fock keys.

    ``E_-(z) = exp(-sum_p r_p sum_j z^{-j}/j d/dv_pj)`` is expanded as
    ``sum_k z^{-k} A_k``; ``A_k`` lowers degree by k, so only
    ``k <= deg`` contributes.  ``E_+(z) = sum_l z^l B_l`` with ``B_l`` the
    multiplication by a degree-l polynomial in the ``u_pj``.  The mode
    ``(q^r)_(n)`` is the coefficient of ``z^{-n-1}``:
    ``sum_k B_{k-n-1} A_k``, followed by the weight shift by r.
    """

    def __init__(self, fock: FockSpace, r: Exponent):
        super().__init__(fock, 0, None, cache=True)
        self.fock = fock
        self.r = r
        N = fock.N
        self.rc = [r.component(p) for p in range(1, N + 1)]
        self._B = [{(): mpq(1)}]
        self._A = {}

    def _creation(self, l: int) -> dict:
        # l B_l = sum_{j=1}^{l} j y_j B_{l-j},  y_j = sum_p r_p u_pj
        while len(self._B) <= l:
            L = len(self._B)
            acc: dict = {}
            for j in range(1, L + 1):
                for p in range(1, self.fock.N + 1):
                    rp = self.rc[p - 1]
                    if not rp:
                        continue
                    for mono, c in self._B[L - j].items():
                        add_term(acc, mul_var(mono, (U, p, j)), c * rp * j)
            inv = mpq(1, L)
            self._B.append({m: c * inv for m, c in acc.items()})
        return self._B[l]

    def _annihilation(self, exps: tuple) -> list:
        # k A_k = -sum_{j=1}^{k} sum_p r_p d/dv_pj A_{k-j}
        hit = self._A.get(exps)
        if hit is not None:
            return hit
        deg = fock_key_degree(exps)
        series = [{exps: mpq(1)}]
        for k in range(1, deg + 1):
            acc: dict = {}
            for j in range(1, k + 1):
                for p in range(1, self.fock.N + 1):
                    rp = self.rc[p - 1]
                    if not rp:
                        continue
                    for mono, c in series[k - j].items():
                        res = diff_var(mono, (V, p, j))
                        if res is not None:
                            add_term(acc, res[1], c * rp * res[0])
            inv = mpq(-1, k)
            series.append({m: c * inv for m, c in acc.items()})
        self._A[exps] = series
        return series

    def compute(self, n, key):
        tag, off, shift, exps = key
        r = self.r
        new_off = tuple(o + x for o, x in zip(off, r.num))
        new_shift = add_shift(shift, r.formal)
        out: dict = {}
        for k, part in enumerate(self._annihilation(exps)):
            l = k - n - 1
            if l < 0 or not part:
                continue
            B = self._creation(l)
            for mono, c in part.items():
                for bm, bc in B.items():
                    add_term(out, (tag, new_off, new_shift, mul_mono(mono, bm)), c * bc)
        return out
