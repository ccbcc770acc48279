"""Critical vectors (vectors killed by ``D_+``) in ``M_hyp (x) C``.

The system at bigrade (m, mu) has one unknown per basis vector.  Each
generator ``t_0^j t^r d_a`` with ``1 <= j <= m`` is applied with a formal
``r``; the RPoly coefficient of every output monomial must vanish, which
covers all ``r`` in Z^N at once.
"""
from __future__ import annotations

from dataclasses import dataclass

from .action import DKAction
from .algebra import Gen
from .core import mpq, Exponent, Q, add_term, coeff_parts, rconst, rvar
from .fock import FockSpace, colored_partitions, diff_var, mul_var
from .glrep import GlModule, sl_type
from .linalg import Echelon, nullspace


@dataclass
class CriticalResult:
    m: int
    mu: tuple
    basis_keys: list
    vectors: list
    realization: str

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def readable(self, i: int) -> str:
        return format_vector(self.vectors[i])

    def as_dict(self) -> dict:
        return {"m": self.m, "mu": list(self.mu), "dim": self.dim, "realization": self.realization,
                "vectors": [self.readable(i) for i in range(self.dim)]}


def d_plus_generators(N: int, m: int, r: Exponent | None = None) -> list:
    r = Exponent.formal_var(N) if r is None else r
    return [Gen("d", j, r, a) for j in range(1, m + 1) for a in range(N + 1)]


def critical_system(action: DKAction, m: int, mu) -> tuple:
    """``(basis, rows)``: rows are equations over basis indices."""
    basis = action.basis(m, mu)
    gens = d_plus_generators(action.N, m)
    eqs: dict = {}
    for i, key in enumerate(basis):
        for g in gens:
            for out, c in action.apply_key(g, key).items():
                for mono, x in coeff_parts(c).items():
                    row = eqs.setdefault((g.j, g.a, out, mono), {})
                    row[i] = row.get(i, 0) + x
    rows = [{i: x for i, x in row.items() if x} for row in eqs.values()]
    return basis, [r for r in rows if r]


def critical_solve(realization, m: int, mu=None, gamma=None, action: DKAction | None = None) -> CriticalResult:
    """Basis of critical vectors at ``m`` above the top and weight offset mu."""
    N = realization.N
    mu = tuple(mu) if mu is not None else (0,) * N
    if action is None:
        action = DKAction(FockSpace(N, gamma if gamma is not None else (0,) * N), realization)
    if m < 1:
        return CriticalResult(m, mu, [], [], realization.name)
    basis, rows = critical_system(action, m, mu)
    sols = nullspace(rows, len(basis))
    vectors = [{basis[i]: x for i, x in s.items()} for s in sols]
    return CriticalResult(m, mu, basis, vectors, realization.name)


def format_vector(vec: dict) -> str:
    parts = []
    for key in sorted(vec, key=repr):
        parts.append(f"({vec[key]})*{format_key(key)}")
    return " + ".join(parts) if parts else "0"


def format_key(key) -> str:
    tag = key[0]
    if tag == "x":
        return format_key(key[1]) + " (x) " + format_key(key[2])
    if tag == "hyp":
        s = f"q^{list(key[1])}"
        if key[2]:
            s += f"+{list(key[2])}r"
        for (sp, p, j), e in key[3]:
            s += f" {'uv'[sp]}{p},{j}" + (f"^{e}" if e > 1 else "")
        return s
    if tag == "fer":
        if not key[1]:
            return "vac"
        return " ".join(f"{'phi' if s == 0 else 'psi'}{p}({j})" for s, p, j in key[1]) + " vac"
    if tag == "aff":
        return format_key(key[1]) + " (x) " + format_key(key[2])
    if tag == "gl":
        return "".join(f"E{a}{b}({n})" for n, a, b in key[1]) + f" w{key[2]}"
    if tag == "vir":
        return "".join(f"L({n})" for n in key[1]) + " vh"
    return repr(key)


# ---------------------------------------------------------------- reduced system

def _exp_series(N, poly: dict, depth: int) -> dict:
    """``exp(-D) g`` with ``D = sum_p r_p sum_j z^{-j} d/dx_pj``.

    ``poly`` maps ``(zpow, xmono, w)`` to RPoly; result likewise.
    """
    out = dict(poly)
    term = dict(poly)
    for s in range(1, depth + 1):
        nxt: dict = {}
        for (zp, mono, w), c in term.items():
            for (_, p, j), e in mono:
                res = diff_var(mono, (0, p, j))
                add_term(nxt, (zp - j, res[1], w), c * rvar(0, p) * res[0])
        term = {k: v * mpq(-1, s) for k, v in nxt.items()}
        if not term:
            break
        for k, v in term.items():
            add_term(out, k, v)
    return out


def reduced_operator(W: GlModule, a: int, g: dict) -> dict:
    """``Q_a(r, z) g`` for ``g`` mapping ``(xmono, w)`` to scalars.

    ``Q_a = [sum_i x_ai z^i + sum_p r_p sum_k (sum_{i<k} x_ai z^i) z^{-k} d/dx_pk
    + sum_p r_p E^{pa} - r_a sum_k sum_p (k-1) r_p z^{-k} d/dx_pk] exp(-D)``.
    Returns ``(zpow, xmono, w) -> RPoly``.
    """
    N = W.N
    depth = max((sum(e for _, e in mono) for mono, _ in g), default=0)
    start = {(0, mono, w): rconst(c) for (mono, w), c in g.items() if c}
    E = _exp_series(N, start, depth)
    out: dict = {}
    ra = rvar(0, a)
    for (zp, mono, w), c in E.items():
        # sum_i x_ai z^i: only i up to a window matter for negative powers
        for i in range(1, max(1, -zp) + 1):
            add_term(out, (zp + i, mul_var(mono, (0, a, i)), w), c)
        for (_, p, k), e in mono:
            res = diff_var(mono, (0, p, k))
            base = c * rvar(0, p) * res[0]
            for i in range(1, k):
                add_term(out, (zp + i - k, mul_var(res[1], (0, a, i)), w), base)
            if k > 1:
                add_term(out, (zp - k, res[1], w), base * ra * (-(k - 1)))
        for p in range(1, N + 1):
            for w2, x in W.act(p, a, w).items():
                add_term(out, (zp, mono, w2), c * rvar(0, p) * x)
    return out


def reduced_basis(N: int, d: int, length: int, m: int) -> list:
    colors = [(0, p) for p in range(1, N + 1)]
    monos = [mono for mono in colored_partitions(m, colors) if sum(e for _, e in mono) == length]
    return [(mono, w) for mono in monos for w in range(d)]


def reduced_critical_solve(N: int, W: GlModule, length: int, m: int) -> list:
    """Solutions of ``Q_a(r,z)_- g = 0`` (all a) among ``g`` of the given
    length and degree in ``C[x_pj] (x) W``; returns dicts ``(mono, w) -> c``."""
    basis = reduced_basis(N, W.d, length, m)
    eqs: dict = {}
    for i, b in enumerate(basis):
        for a in range(1, N + 1):
            for (zp, mono, w), c in reduced_operator(W, a, {b: mpq(1)}).items():
                if zp >= 0:
                    continue
                for rm, x in coeff_parts(c).items():
                    row = eqs.setdefault((a, zp, mono, w, rm), {})
                    row[i] = row.get(i, 0) + x
    rows = [r for r in ({i: x for i, x in row.items() if x} for row in eqs.values()) if r]
    sols = nullspace(rows, len(basis))
    return [{basis[i]: x for i, x in s.items()} for s in sols]


def project_to_reduced(vec: dict, top_index=None) -> dict:
    """Project a free-field vector onto ``C[x] (x) W``: drop anything with a
    ``u`` variable or a non-top coefficient, and set ``v_pj = x_pj / j``."""
    out: dict = {}
    for key, c in vec.items():
        _, fk, ck = key
        exps = fk[3]
        if any(s == 0 for (s, _, _), _ in exps):
            continue
        if top_index is None:
            if ck[0] != "aff" or ck[1][1] or ck[2][1]:
                continue
            w = ck[1][2]
        else:
            w = top_index.get(ck)
            if w is None:
                continue
        mono = tuple(sorted(((0, p, j), e) for (_, p, j), e in exps))
        scale = mpq(1)
        for (_, p, j), e in exps:
            scale /= mpq(j) ** e
        add_term(out, (mono, w), c * scale)
    return out


def max_length_component(g: dict) -> dict:
    if not g:
        return {}
    L = max(sum(e for _, e in mono) for mono, _ in g)
    return {k: c for k, c in g.items() if sum(e for _, e in k[0]) == L}


# ---------------------------------------------------------------- generation

@dataclass
class GenerationResult:
    m: int
    mu: tuple
    span_dim: int
    space_dim: int
    generated: object
    cutoff: int
    witness: object = None

    def as_dict(self) -> dict:
        return {"m": self.m, "mu": list(self.mu), "span_dim": self.span_dim, "space_dim": self.space_dim,
                "generated": self.generated, "cutoff": self.cutoff, "witness": self.witness}


def generated_by_top(realization, m: int, mu=None, R: int = 1, gamma=None,
                     action: DKAction | None = None) -> GenerationResult:
    """Does ``U(D_-)`` applied to the top fill the space at (m, mu)?

    The span is closed degree by degree using lowering generators
    ``t_0^{-j} t^r d_a`` with ``|r_i| <= R``.  A shortfall is reported as
    ``"inconclusive"`` unless the dual realization has a critical vector at
    (m, mu), which proves non-generation.
    """
    from itertools import product
    N = realization.N
    mu = tuple(mu) if mu is not None else (0,) * N
    if action is None:
        action = DKAction(FockSpace(N, gamma if gamma is not None else (0,) * N), realization)
    space_dim = len(action.basis(m, mu))
    if m == 0:
        return GenerationResult(m, mu, space_dim, space_dim, True, R)
    shifts = list(product(range(-R, R + 1), repeat=N))
    levels: dict = {}

    def needed(d, off):
        return all(abs(o - t) <= R * (m - d) for o, t in zip(off, mu))

    def span(d, off):
        ck = (d, off)
        if ck in levels:
            return levels[ck]
        if d == 0:
            vecs = [{k: mpq(1)} for k in action.basis(0, off)]
        else:
            e = Echelon()
            index: dict = {}
            vecs = []
            for j in range(1, d + 1):
                for r in shifts:
                    src = tuple(o - x for o, x in zip(off, r))
                    if not needed(d - j, src):
                        continue
                    for v in span(d - j, src):
                        for a in range(N + 1):
                            img = action.apply(Gen("d", -j, Exponent.of(r), a), v)
                            row = {index.setdefault(k, len(index)): c for k, c in img.items()}
                            if e.add(row):
                                vecs.append(img)
        levels[ck] = vecs
        return vecs

    top = span(m, mu)
    span_dim = len(top)
    if span_dim == space_dim:
        return GenerationResult(m, mu, span_dim, space_dim, True, R)
    try:
        dual = realization.dual()
    except ValueError:
        dual = None
    if dual is not None:
        res = critical_solve(dual, m, mu, gamma)
        if res.dim:
            return GenerationResult(m, mu, span_dim, space_dim, False, R,
                                    {"side": "dual", "dim": res.dim, "vector": res.readable(0)})
    return GenerationResult(m, mu, span_dim, space_dim, "inconclusive", R)


# ---------------------------------------------------------------- exceptional

def is_exceptional(W: GlModule, h) -> bool:
    """h = 0, identity scalar an integer k, and W trivial (k = 0 mod N) or
    of fundamental type omega_{k'} with k = k' mod N."""
    if Q(h) != 0:
        return False
    a = W.alpha
    if a.denominator != 1:
        return False
    k = int(a)
    t = sl_type(W)
    if t is None:
        return False
    N = W.N
    if k % N == 0:
        return t == 0 or t == N
    return t == k % N


def exceptional_degree(W: GlModule, h):
    """Degree ``m >= 1`` at which an exceptional L(W) carries critical
    vectors, from ``alpha = k' - mN`` (``k' = N`` for trivial W)."""
    if not is_exceptional(W, h):
        return None
    N = W.N
    t = sl_type(W)
    kp = N if t in (0, N) else t
    m, rem = divmod(kp - int(W.alpha), N)
    if rem or m < 1:
        return None
    return m


__all__ = ["critical_solve", "critical_system", "reduced_critical_solve", "generated_by_top",
           "is_exceptional", "exceptional_degree", "CriticalResult", "project_to_reduced"]
