"""Free fermions ``phi^p, psi^p`` (p = 1..N) and the space ``V_{Z^N}``.

``{phi^a_(m), psi^b_(n)} = delta_ab delta_{m,-n-1}``; creation modes are
``j <= -1``.  A key ``("fer", gens)`` lists the creation operators applied
to the vacuum in canonical order: phi before psi, then p ascending, then
j descending.  ``phi`` has conformal weight 0 and ``psi`` weight 1, so
``deg_bos(phi_(j)) = -j-1`` and ``deg_bos(psi_(j)) = -j``.
"""
from __future__ import annotations

from math import comb

from .core import mpq, SparseVec, add_into, fermion_deg_bos
from .fields import Combination, Derivative, KeyField, NormalOrdered

PHI, PSI = 0, 1
VAC = ("fer", ())


def _order(g):
    return (g[0], g[1], -g[2])


def create(gens: tuple, g) -> tuple | None:
    """``g * (monomial)`` as ``(sign, gens)`` or None when it vanishes."""
    if g in gens:
        return None
    ok = _order(g)
    pos = 0
    for x in gens:
        if _order(x) < ok:
            pos += 1
        else:
            break
    return (-1 if pos % 2 else 1), gens[:pos] + (g,) + gens[pos:]


def contract(gens: tuple, partner) -> tuple | None:
    """Annihilate against the creation operator ``partner``."""
    for i, x in enumerate(gens):
        if x == partner:
            return (-1 if i % 2 else 1), gens[:i] + gens[i + 1:]
    return None


def deg_fer(gens) -> int:
    return sum(1 if s == PHI else -1 for s, _, _ in gens)


class FermionSpace:
    """``V_{Z^N}`` with Clifford modes, ``E^{ab}(z) = :phi^a psi^b:`` and
    ``omega = sum_p :(d phi^p) psi^p:``."""

    def __init__(self, N: int):
        self.N = N
        self.space_id = ("fer", N)
        self._fields = {}

    def degree(self, key) -> int:
        return fermion_deg_bos(key[1])

    def vec(self, gens=(), c=1) -> SparseVec:
        out: dict = {(): mpq(c)}
        for g in reversed(list(gens)):
            nxt: dict = {}
            for k, x in out.items():
                res = create(k, tuple(g))
                if res:
                    nxt[res[1]] = nxt.get(res[1], 0) + x * res[0]
            out = nxt
        return SparseVec({("fer", k): x for k, x in out.items()}, self.space_id)

    def clifford_key(self, s: int, p: int, n: int, key) -> dict:
        gens = key[1]
        if n <= -1:
            res = create(gens, (s, p, n))
        else:
            res = contract(gens, (1 - s, p, -n - 1))
        if res is None:
            return {}
        return {("fer", res[1]): mpq(res[0])}

    def clifford_apply(self, species, p: int, n: int, v: dict) -> SparseVec:
        s = PHI if species in (PHI, "phi") else PSI if species in (PSI, "psi") else None
        if s is None:
            raise ValueError(f"unknown species {species!r}")
        out: dict = {}
        for key, c in v.items():
            add_into(out, self.clifford_key(s, p, n, key), c)
        return SparseVec(out, self.space_id)

    def field(self, s: int, p: int):
        f = self._fields.get((s, p))
        if f is None:
            f = KeyField(self, 0 if s == PHI else 1, lambda n, key, s=s, p=p: self.clifford_key(s, p, n, key), parity=1)
            self._fields[(s, p)] = f
        return f

    def gl_field(self, a: int, b: int):
        f = self._fields.get(("E", a, b))
        if f is None:
            f = NormalOrdered(self.field(PHI, a), self.field(PSI, b))
            self._fields[("E", a, b)] = f
        return f

    def omega_field(self):
        f = self._fields.get("omega")
        if f is None:
            f = Combination([(1, NormalOrdered(Derivative(self.field(PHI, p)), self.field(PSI, p)))
                             for p in range(1, self.N + 1)], self, cache=True)
            self._fields["omega"] = f
        return f

    def gl_mode(self, a: int, b: int, n: int, v: dict) -> SparseVec:
        return SparseVec(self.gl_field(a, b).mode(n, v), self.space_id)

    def omega_fer_mode(self, n: int, v: dict) -> SparseVec:
        return SparseVec(self.omega_field().mode(n, v), self.space_id)

    def creation_ops(self, m: int) -> list:
        """Creation operators of bosonic degree at most m, canonically sorted."""
        ops = []
        for p in range(1, self.N + 1):
            for j in range(-1, -m - 2, -1):
                ops.append((PHI, p, j))
            for j in range(-1, -m - 1, -1):
                ops.append((PSI, p, j))
        ops.sort(key=_order)
        return ops

    def component_basis(self, k: int | None, m: int) -> list:
        """Monomials with ``deg_fer = k`` (any k when None) and ``deg_bos = m``."""
        ops = self.creation_ops(m)
        out = []

        def w(g):
            return -g[2] - 1 if g[0] == PHI else -g[2]

        def rec(i, left, acc):
            if i == len(ops):
                if left == 0 and (k is None or deg_fer(acc) == k):
                    out.append(("fer", tuple(acc)))
                return
            g = ops[i]
            if w(g) <= left:
                acc.append(g)
                rec(i + 1, left - w(g), acc)
                acc.pop()
            rec(i + 1, left, acc)

        rec(0, m, [])
        out.sort()
        return out

    def lowest_degree(self, k: int) -> int:
        """Lowest bosonic degree of ``V^k``."""
        m = 0
        while not self.component_basis(k, m):
            m += 1
        return m

    def embed_virasoro_check(self, drop_linear: bool = False) -> bool:
        """Compare the Sugawara-type state built from ``E^{ij}`` modes with
        ``sum_p phi^p_(-2) psi^p_(-1) vac``."""
        N = self.N
        vac = {VAC: mpq(1)}
        total: dict = {}
        c = mpq(1, 2 * (N + 1))
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                add_into(total, self.gl_mode(i, j, -1, self.gl_mode(j, i, -1, vac)), c)
        ivac: dict = {}
        for a in range(1, N + 1):
            add_into(ivac, self.gl_mode(a, a, -1, vac))
        iivac: dict = {}
        for a in range(1, N + 1):
            add_into(iivac, self.gl_mode(a, a, -1, ivac))
        add_into(total, iivac, c)
        if not drop_linear:
            for a in range(1, N + 1):
                add_into(total, self.gl_mode(a, a, -2, vac), mpq(1, 2))
        target: dict = {}
        for p in range(1, N + 1):
            add_into(target, self.vec([(PHI, p, -2), (PSI, p, -1)]))
        add_into(total, target, -1)
        return not total


def embed_virasoro_check(N: int, drop_linear: bool = False) -> bool:
    return FermionSpace(N).embed_virasoro_check(drop_linear)


def lowest_component_dimension(N: int, k: int) -> int:
    """Expected dimension ``C(N, k mod N)`` of the lowest component of V^k."""
    return comb(N, k % N)
