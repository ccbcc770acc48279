"""Finite-dimensional gl_N-modules given by explicit matrices.

Indices ``p, q`` run over ``1..N``; ``E[p-1][q-1]`` is the matrix of
``E^{pq}`` acting on column vectors of length ``d``.
"""
from __future__ import annotations

from itertools import combinations
from math import comb

from .core import mpq, Q
from .linalg import identity, matmul, matrix_rows, nullspace


class NotIrreducible(ValueError):
    pass


class ClassificationError(ValueError):
    pass


def _zero(d):
    return [[mpq(0)] * d for _ in range(d)]


def _add(a, b, c=1):
    return [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _comm(a, b):
    return _add(matmul(a, b), matmul(b, a), -1)


class GlModule:
    """A gl_N-module ``W`` of dimension ``d`` with identity scalar ``alpha``."""

    def __init__(self, N: int, E, alpha=None, check: bool = True, label: str = ""):
        if N < 1:
            raise ValueError("N must be positive")
        self.N = N
        self.E = tuple(tuple(tuple(tuple(Q(x) for x in row) for row in E[p][q]) for q in range(N)) for p in range(N))
        self.d = len(self.E[0][0])
        trace_op = _zero(self.d)
        for a in range(N):
            trace_op = _add(trace_op, self.mat(a + 1, a + 1))
        a0 = trace_op[0][0] if self.d else mpq(0)
        if alpha is None:
            alpha = a0
        self.alpha = Q(alpha)
        self.label = label
        if check:
            self.validate()

    def mat(self, p: int, q: int):
        return [list(row) for row in self.E[p - 1][q - 1]]

    def entry(self, p: int, q: int, i: int, j: int):
        return self.E[p - 1][q - 1][i][j]

    def act(self, p: int, q: int, w: int) -> dict:
        """``E^{pq} e_w`` as a sparse dict over basis indices."""
        col = self.E[p - 1][q - 1]
        return {i: col[i][w] for i in range(self.d) if col[i][w]}

    def validate(self) -> None:
        N, d = self.N, self.d
        for p in range(1, N + 1):
            for q in range(1, N + 1):
                m = self.mat(p, q)
                if len(m) != d or any(len(row) != d for row in m):
                    raise ValueError("matrices must all be d x d")
        for a in range(1, N + 1):
            for b in range(1, N + 1):
                for c in range(1, N + 1):
                    for e in range(1, N + 1):
                        lhs = _comm(self.mat(a, b), self.mat(c, e))
                        rhs = _zero(d)
                        if b == c:
                            rhs = _add(rhs, self.mat(a, e))
                        if e == a:
                            rhs = _add(rhs, self.mat(c, b), -1)
                        if lhs != rhs:
                            raise ValueError(f"gl_N relation fails for E^{a}{b}, E^{c}{e}")
        tr = _zero(d)
        for a in range(1, N + 1):
            tr = _add(tr, self.mat(a, a))
        if tr != [[self.alpha if i == j else mpq(0) for j in range(d)] for i in range(d)]:
            raise ValueError("identity matrix does not act by the scalar alpha")

    def __eq__(self, other):
        return isinstance(other, GlModule) and (self.N, self.E, self.alpha) == (other.N, other.E, other.alpha)

    def __hash__(self):
        return hash((self.N, self.E, self.alpha))

    def __repr__(self):
        name = self.label or "GlModule"
        return f"{name}(N={self.N}, d={self.d}, alpha={self.alpha})"

    def to_json(self) -> dict:
        return {"n": self.N, "alpha": str(self.alpha),
                "matrices": [[[[str(x) for x in row] for row in self.E[p][q]] for q in range(self.N)] for p in range(self.N)]}

    @staticmethod
    def from_json(obj: dict) -> GlModule:
        N = int(obj["n"])
        mats = [[[[Q(x) for x in row] for row in obj["matrices"][p][q]] for q in range(N)] for p in range(N)]
        return GlModule(N, mats, obj.get("alpha"))


def exterior_basis(N: int, k: int) -> list:
    return list(combinations(range(1, N + 1), k))


def wedge_insert(p: int, S: tuple):
    """``e_p ^ e_S`` as (sign, sorted tuple); sign 0 when p is in S."""
    if p in S:
        return 0, S
    pos = sum(1 for s in S if s < p)
    return (-1) ** pos, tuple(sorted(S + (p,)))


def exterior_power(N: int, k: int, alpha=None) -> GlModule:
    """``Lambda^k(C^N)`` with ``E^{pq}`` shifted by ``delta_pq (alpha-k)/N``."""
    if not 0 <= k <= N:
        raise ValueError(f"exterior power index k={k} out of range 0..{N}")
    alpha = Q(k if alpha is None else alpha)
    basis = exterior_basis(N, k)
    index = {S: i for i, S in enumerate(basis)}
    d = len(basis)
    shift = (alpha - k) / N
    E = [[_zero(d) for _ in range(N)] for _ in range(N)]
    for p in range(1, N + 1):
        for q in range(1, N + 1):
            m = E[p - 1][q - 1]
            for j, S in enumerate(basis):
                if p == q:
                    m[j][j] += shift
                if q not in S:
                    continue
                if p == q:
                    m[j][j] += 1
                    continue
                if p in S:
                    continue
                pos = S.index(q)
                T = S[:pos] + (p,) + S[pos + 1:]
                # sort T, tracking the permutation sign
                sign = 1
                lst = list(T)
                for a in range(len(lst)):
                    for b in range(len(lst) - 1 - a):
                        if lst[b] > lst[b + 1]:
                            lst[b], lst[b + 1] = lst[b + 1], lst[b]
                            sign = -sign
                m[index[tuple(lst)]][j] += sign
    return GlModule(N, E, alpha, check=False, label=f"Lambda^{k}")


def trivial_module(N: int, alpha=0) -> GlModule:
    return exterior_power(N, 0, alpha)


def dual_module(W: GlModule) -> GlModule:
    N, d = W.N, W.d
    E = [[None] * N for _ in range(N)]
    for p in range(1, N + 1):
        for q in range(1, N + 1):
            m = W.mat(p, q)
            E[p - 1][q - 1] = [[-m[j][i] + (1 if (p == q and i == j) else 0) for j in range(d)] for i in range(d)]
    return GlModule(N, E, N - W.alpha, check=False, label=f"dual({W.label})" if W.label else "")


def shift_action(W: GlModule, c) -> GlModule:
    c = Q(c)
    N = W.N
    E = [[None] * N for _ in range(N)]
    for p in range(1, N + 1):
        for q in range(1, N + 1):
            m = W.mat(p, q)
            if p == q:
                m = [[x + (c if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(m)]
            E[p - 1][q - 1] = m
    return GlModule(N, E, W.alpha + c * N, check=False, label=W.label)


def traceless(W: GlModule, p: int, q: int):
    m = W.mat(p, q)
    if p == q:
        s = W.alpha / W.N
        m = [[x - (s if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(m)]
    return m


def casimir_operator(W: GlModule):
    N, d = W.N, W.d
    out = _zero(d)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            out = _add(out, matmul(traceless(W, i, j), traceless(W, j, i)))
    return out


def casimir_scalar(W: GlModule):
    """Scalar of ``sum Ebar^{ij} Ebar^{ji}``; raises if it is not scalar."""
    C = casimir_operator(W)
    if W.d == 0:
        raise NotIrreducible("zero module")
    s = C[0][0]
    for i in range(W.d):
        for j in range(W.d):
            if C[i][j] != (s if i == j else 0):
                raise NotIrreducible("Casimir operator is not a scalar")
    return s


def beta_value(W: GlModule, h):
    """``beta = -h - Omega/(2(N+1)) - alpha(alpha-N)/(2N)``."""
    N, a = W.N, W.alpha
    return -Q(h) - casimir_scalar(W) / (2 * (N + 1)) - a * (a - N) / (2 * N)


def h_from_beta(W: GlModule, beta):
    N, a = W.N, W.alpha
    return -Q(beta) - casimir_scalar(W) / (2 * (N + 1)) - a * (a - N) / (2 * N)


def sl_type(W: GlModule):
    """Classify W as an sl_N-module: ``0`` for trivial, ``k`` for omega_k.

    The highest weight is read off the joint kernel of the raising
    operators ``E^{ab}`` (a < b); the Casimir and dimension are checked to
    agree.  Returns ``None`` when W is irreducible but neither trivial nor
    fundamental.
    """
    N, d = W.N, W.d
    rows = []
    for a in range(1, N + 1):
        for b in range(a + 1, N + 1):
            rows.extend(matrix_rows(W.mat(a, b)))
    ker = nullspace(rows, d)
    if len(ker) != 1:
        raise ClassificationError("module is not irreducible (highest weight space has dimension %d)" % len(ker))
    v = ker[0]
    weights = []
    for i in range(1, N):
        h = _add(W.mat(i, i), W.mat(i + 1, i + 1), -1)
        hv = {r: sum((h[r][c] * x for c, x in v.items()), mpq(0)) for r in range(d)}
        j0 = min(v)
        lam = hv[j0] / v[j0]
        if any(hv[r] != lam * v.get(r, 0) for r in range(d)):
            raise ClassificationError("raising kernel is not a weight vector")
        weights.append(lam)
    try:
        omega = casimir_scalar(W)
    except NotIrreducible as exc:
        raise ClassificationError(str(exc)) from exc
    if all(x == 0 for x in weights):
        if d != 1 or omega != 0:
            raise ClassificationError("inconsistent trivial type")
        return 0
    nz = [i for i, x in enumerate(weights) if x]
    if len(nz) == 1 and weights[nz[0]] == 1:
        k = nz[0] + 1
        if d != comb(N, k) or omega != mpq(k * (N - k) * (N + 1), N):
            raise ClassificationError("dimension or Casimir disagree with fundamental type")
        return k
    return None


def gl_relations_hold(W: GlModule) -> bool:
    try:
        W.validate()
    except ValueError:
        return False
    return True


def natural_pairing_contract(W: GlModule, Wd: GlModule) -> bool:
    """Check ``<E w, w*> = <w, (-E + delta) w*>`` for the standard pairing."""
    N, d = W.N, W.d
    for p in range(1, N + 1):
        for q in range(1, N + 1):
            A = W.mat(p, q)
            B = Wd.mat(p, q)
            for i in range(d):
                for j in range(d):
                    lhs = A[j][i]
                    rhs = -B[i][j] + (1 if (p == q and i == j) else 0)
                    if lhs != rhs:
                        return False
    return True


__all__ = [
    "GlModule", "exterior_power", "trivial_module", "dual_module", "shift_action",
    "casimir_scalar", "beta_value", "h_from_beta", "sl_type", "NotIrreducible",
    "ClassificationError", "identity", "wedge_insert", "exterior_basis",
]
