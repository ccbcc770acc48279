"""Level-one affine gl_N and c = 0 Virasoro Verma modules, their degreewise
irreducible quotients, and the coefficient realizations built from them.

A coefficient realization is a graded space carrying fields ``E^{ab}(z)``
(weight 1) and ``omega(z)`` (weight 2).  Three are provided: the Verma
tower ``M_gl(W) (x) M_vir(h)``, its quotient ``L_gl(W) (x) L_vir(h)`` and the
fermionic component ``V^k``.
"""
from __future__ import annotations

from .core import mpq, Q, SparseVec, add_into
from .fermion import FermionSpace
from .fields import Combination, Derivative, KeyField, NormalOrdered
from .fock import series_power
from .glrep import GlModule, casimir_scalar, dual_module, exterior_power
from .linalg import Echelon, matmul, nullspace, transpose
from .pbw import ContravariantForm, InducedModule, multisets


# ---------------------------------------------------------------- affine gl_N

def gl_bracket(g, h):
    n, a, b = g
    m, c, d = h
    terms = []
    if b == c:
        terms.append((mpq(1), (n + m, a, d)))
    if d == a:
        terms.append((mpq(-1), (n + m, c, b)))
    central = mpq(n) if (n + m == 0 and b == c and a == d) else 0
    return terms, central


class GlVerma(InducedModule):
    """Generalized Verma module over ``W``; generators ``(n, a, b) = E^{ab}_(n)``."""

    def __init__(self, W: GlModule):
        self.W = W
        self.N = W.N
        super().__init__("gl", lambda g: g[0], lambda g: (-g[0], g[1], g[2]), gl_bracket,
                         lambda g, w: W.act(g[1], g[2], w))
        self._basis = {}

    def lowering(self, m: int) -> list:
        gens = [(-n, a, b) for n in range(1, m + 1) for a in range(1, self.N + 1) for b in range(1, self.N + 1)]
        gens.sort(key=self.order, reverse=True)
        return gens

    def basis(self, m: int) -> list:
        hit = self._basis.get(m)
        if hit is None:
            monos = multisets(self.lowering(m), lambda g: -g[0], m)
            hit = sorted(("gl", mono, w) for mono in monos for w in range(self.W.d))
            self._basis[m] = hit
        return hit

    @staticmethod
    def degree(key) -> int:
        return -sum(g[0] for g in key[1])

    def top(self, w: int = 0):
        return ("gl", (), w)

    def affine_act(self, a: int, b: int, n: int, v: dict) -> SparseVec:
        return SparseVec(self.apply_vec((n, a, b), v), ("gl", id(self)))


class VirVerma(InducedModule):
    """Verma module ``M(h)`` for Virasoro at central charge 0."""

    def __init__(self, h):
        self.h = Q(h)
        super().__init__("vir", lambda g: g, lambda g: -g,
                         lambda g, k: ([(mpq(g - k), g + k)], 0),
                         lambda g, t: {t: self.h})
        self._basis = {}

    def basis(self, m: int) -> list:
        hit = self._basis.get(m)
        if hit is None:
            gens = [-n for n in range(1, m + 1)]
            hit = sorted(("vir", mono, 0) for mono in multisets(gens, lambda g: -g, m))
            self._basis[m] = hit
        return hit

    @staticmethod
    def degree(key) -> int:
        return -sum(key[1])

    def top(self):
        return ("vir", (), 0)

    def vir_act(self, n: int, v: dict) -> SparseVec:
        return SparseVec(self.apply_vec(n, v), ("vir", id(self)))


def top_form(W: GlModule) -> list:
    """A nondegenerate ``B`` with ``(E^{ab})^T B = B E^{ba}`` for all a, b."""
    d, N = W.d, W.N
    if all(W.mat(a, b) == transpose(W.mat(b, a)) for a in range(1, N + 1) for b in range(1, N + 1)):
        return [[mpq(1 if i == j else 0) for j in range(d)] for i in range(d)]
    rows = []
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            A = W.mat(a, b)
            Bm = W.mat(b, a)
            # unknown B[i][j] -> column i*d + j;  sum_k A[k][i] B[k][j] - B[i][k] Bm[k][j] = 0
            for i in range(d):
                for j in range(d):
                    row: dict = {}
                    for k in range(d):
                        if A[k][i]:
                            row[k * d + j] = row.get(k * d + j, 0) + A[k][i]
                        if Bm[k][j]:
                            row[i * d + k] = row.get(i * d + k, 0) - Bm[k][j]
                    row = {c: x for c, x in row.items() if x}
                    if row:
                        rows.append(row)
    sols = nullspace(rows, d * d)
    for t in range(1, len(sols) + 2):
        B = [[sum((sol.get(i * d + j, 0) * t ** s for s, sol in enumerate(sols)), mpq(0)) for j in range(d)] for i in range(d)]
        if Echelon_rank(B) == d:
            return B
    raise ValueError("no nondegenerate contravariant form on the top")


def Echelon_rank(B) -> int:
    e = Echelon()
    for row in B:
        e.add({j: x for j, x in enumerate(row) if x})
    return e.rank


def gl_form(M: GlVerma) -> ContravariantForm:
    B = top_form(M.W)
    return ContravariantForm(M, M, lambda g: (-g[0], g[2], g[1]), lambda s, t: B[s][t])


def vir_form(M: VirVerma) -> ContravariantForm:
    return ContravariantForm(M, M, lambda g: -g, lambda s, t: mpq(1))


class Quotient:
    """Degreewise quotient ``M / radical`` of a Verma module."""

    def __init__(self, module, form: ContravariantForm):
        self.module = module
        self.form = form
        self._deg = {}
        self._red = {}

    def _level(self, m: int):
        hit = self._deg.get(m)
        if hit is None:
            basis = self.module.basis(m)
            e = Echelon(track=True)
            chosen = []
            for i, k in enumerate(basis):
                row = {j: x for j, x in enumerate(self.form.pair_keys(k, b) for b in basis) if x}
                if e.add(row):
                    chosen.append(i)
            hit = (basis, e, [basis[i] for i in chosen])
            self._deg[m] = hit
        return hit

    def gram_and_quotient(self, m: int):
        basis, e, chosen = self._level(m)
        gram = self.form.gram(basis, basis)
        return gram, len(chosen), chosen

    def basis(self, m: int) -> list:
        return self._level(m)[2]

    def rank(self, m: int) -> int:
        return len(self._level(m)[2])

    def reduce_key(self, key) -> dict:
        hit = self._red.get(key)
        if hit is None:
            m = self.module.degree(key)
            basis, e, chosen = self._level(m)
            row = {j: x for j, x in enumerate(self.form.pair_keys(key, b) for b in basis) if x}
            rem, combo = e.reduce(row, {})
            assert not rem
            hit = {basis[i]: -c for i, c in combo.items() if c}
            self._red[key] = hit
        return hit

    def reduce(self, vec: dict) -> dict:
        out: dict = {}
        for k, c in vec.items():
            add_into(out, self.reduce_key(k), c)
        return out


def gram_and_quotient(module, m: int):
    """Gram matrix, rank and quotient basis of a gl or Virasoro Verma module."""
    form = gl_form(module) if isinstance(module, GlVerma) else vir_form(module)
    return Quotient(module, form).gram_and_quotient(m)


# ---------------------------------------------------------------- realizations

class CoefficientRealization:
    """Interface: ``basis(m)`` (m above the top), ``degree(key)`` (absolute),
    ``top_degree``, ``gl_field(a, b)``, ``omega_field()``, ``dual()``."""

    N: int
    top_degree = 0
    irreducible = False
    name = "realization"

    def degree(self, key) -> int:
        raise NotImplementedError

    def basis(self, m: int) -> list:
        raise NotImplementedError

    def top_basis(self) -> list:
        return self.basis(0)

    def gl_mode(self, a, b, n, v):
        return self.gl_field(a, b).mode(n, v)

    def omega_mode(self, n, v):
        return self.omega_field().mode(n, v)

    def dim(self, m: int) -> int:
        return len(self.basis(m))


def sugawara(fields_E, N: int, space) -> Combination:
    """``1/(2(N+1)) (sum :E^{ij}E^{ji}: + :II:) + 1/2 dI``."""
    I = Combination([(1, fields_E(a, a)) for a in range(1, N + 1)], space)
    c = mpq(1, 2 * (N + 1))
    terms = [(c, NormalOrdered(fields_E(i, j), fields_E(j, i), cache=False))
             for i in range(1, N + 1) for j in range(1, N + 1)]
    terms.append((c, NormalOrdered(I, I, cache=False)))
    terms.append((mpq(1, 2), Derivative(I)))
    return Combination(terms, space, cache=True)


class _AffVirBase(CoefficientRealization):
    def __init__(self, W: GlModule, h, quotient: bool):
        self.W = W
        self.N = W.N
        self.h = Q(h)
        self.gl = GlVerma(W)
        self.vir = VirVerma(self.h)
        self.quotient = quotient
        if quotient:
            self.glq = Quotient(self.gl, gl_form(self.gl))
            self.virq = Quotient(self.vir, vir_form(self.vir))
        self._E = {}
        self._omega = None
        self._omega_gl = None
        self._vir_field = None
        self._basis = {}

    def degree(self, key) -> int:
        return GlVerma.degree(key[1]) + VirVerma.degree(key[2])

    def _glb(self, m):
        return self.glq.basis(m) if self.quotient else self.gl.basis(m)

    def _virb(self, m):
        return self.virq.basis(m) if self.quotient else self.vir.basis(m)

    def basis(self, m: int) -> list:
        hit = self._basis.get(m)
        if hit is None:
            hit = sorted(("aff", g, v) for a in range(m + 1) for g in self._glb(a) for v in self._virb(m - a))
            self._basis[m] = hit
        return hit

    def gl_field(self, a: int, b: int):
        f = self._E.get((a, b))
        if f is None:
            def fn(n, key, a=a, b=b):
                img = self.gl.apply((n, a, b), key[1])
                if self.quotient:
                    img = self.glq.reduce(img)
                v = key[2]
                return {("aff", k, v): c for k, c in img.items()}
            f = KeyField(self, 1, fn, cache=True)
            self._E[(a, b)] = f
        return f

    def vir_field(self):
        if self._vir_field is None:
            def fn(n, key):
                img = self.vir.apply(n - 1, key[2])
                if self.quotient:
                    img = self.virq.reduce(img)
                g = key[1]
                return {("aff", g, k): c for k, c in img.items()}
            self._vir_field = KeyField(self, 2, fn, cache=True)
        return self._vir_field

    def omega_gl_field(self):
        if self._omega_gl is None:
            self._omega_gl = sugawara(self.gl_field, self.N, self)
        return self._omega_gl

    def omega_field(self):
        if self._omega is None:
            self._omega = Combination([(1, self.omega_gl_field()), (1, self.vir_field())], self, cache=True)
        return self._omega

    def top_key(self, w: int = 0):
        return ("aff", ("gl", (), w), ("vir", (), 0))

    def vir_dims(self, m: int) -> list:
        return [len(self._virb(a)) for a in range(m + 1)]

    def gl_dims(self, m: int) -> list:
        return [len(self._glb(a)) for a in range(m + 1)]


class VermaRealization(_AffVirBase):
    """``M_gl(W) (x) M_vir(h)``."""

    name = "verma"
    irreducible = False

    def __init__(self, W: GlModule, h):
        super().__init__(W, h, quotient=False)

    def dual(self):
        return VermaRealization(dual_module(self.W), self.h)


class IrreducibleRealization(_AffVirBase):
    """``L_gl(W) (x) L_vir(h)`` realized degreewise as Verma modulo radical."""

    name = "irreducible"
    irreducible = True

    def __init__(self, W: GlModule, h):
        super().__init__(W, h, quotient=True)

    def dual(self):
        return IrreducibleRealization(dual_module(self.W), self.h)


class FermionicRealization(CoefficientRealization):
    """The component ``V^k`` of the fermionic space (all of it when k is None)."""

    name = "fermionic"
    irreducible = True

    def __init__(self, N: int, k: int | None):
        self.N = N
        self.k = k
        self.space = FermionSpace(N)
        self.top_degree = self.space.lowest_degree(k) if k is not None else 0
        self._basis = {}

    def degree(self, key) -> int:
        return self.space.degree(key)

    def basis(self, m: int) -> list:
        hit = self._basis.get(m)
        if hit is None:
            hit = self.space.component_basis(self.k, self.top_degree + m)
            self._basis[m] = hit
        return hit

    def gl_field(self, a, b):
        return self.space.gl_field(a, b)

    def omega_field(self):
        return self.space.omega_field()

    def dual(self):
        if self.k is None:
            raise ValueError("the full fermionic space has no single dual component")
        return FermionicRealization(self.N, self.N - self.k)

    @property
    def alpha(self):
        return self.k

    def top_module(self) -> GlModule:
        """The top of ``V^k`` as a gl_N-module: ``Lambda^{k mod N}`` with identity ``k``."""
        if self.k is None:
            raise ValueError("the full fermionic space has no single top")
        return exterior_power(self.N, self.k % self.N, self.k)


def fermionic_realization(N: int, k: int) -> FermionicRealization:
    return FermionicRealization(N, k)


def character_identity(N: int, D: int = 12) -> bool:
    """``prod(1-s^k)^{-2N} prod(1-s^k)^{-N^2} = prod(1-s^k)^{-(N^2+2N)}`` to s^D."""
    from .fock import series_mul
    return series_mul(series_power(2 * N, D), series_power(N * N, D)) == series_power(N * N + 2 * N, D)


def omega_gl_top_scalar(W: GlModule):
    """Expected ``L_0`` eigenvalue of ``omega^gl`` on the top."""
    N, a = W.N, W.alpha
    return casimir_scalar(W) / (2 * (N + 1)) + a * (a - N) / (2 * N)


__all__ = ["GlVerma", "VirVerma", "Quotient", "gram_and_quotient", "VermaRealization",
           "IrreducibleRealization", "FermionicRealization", "fermionic_realization",
           "character_identity", "top_form", "omega_gl_top_scalar", "matmul"]
