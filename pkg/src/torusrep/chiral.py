"""The chiral de Rham differential on ``M_hyp(gamma) (x) V_{Z^N}``.

``Q = sum_p v^p_(-1) phi^p_(-1) vac`` has field ``sum_p v^p(z) phi^p(z)``
and ``d = Q_(0)``:

``d = sum_p ( sum_{j>=0} phi^p_(-j-1) v^p_(j) + sum_{j>=1} v^p_(-j) phi^p_(j-1) )``.

States are trigraded by the fermionic degree k, the total degree m
(Fock degree plus bosonic fermion degree) and the weight offset mu.
``d`` raises k by one and preserves (m, mu).
"""
from __future__ import annotations

from dataclasses import dataclass

from .action import DKAction, TensorField
from .affine import FermionicRealization
from .algebra import Gen
from .core import ONE, Exponent, SparseVec, add_into, is_zero_vec, mpq
from .fermion import PHI, PSI, deg_fer
from .fock import V, FockSpace
from .linalg import rank


@dataclass
class CohomologyRecord:
    k: int
    m: int
    mu: tuple
    dim: int
    dim_ker: int
    dim_im: int
    betti: int

    def as_dict(self) -> dict:
        return {"k": self.k, "m": self.m, "mu": list(self.mu), "dim": self.dim,
                "dim_ker": self.dim_ker, "dim_im": self.dim_im, "betti": self.betti}


class ChiralComplex:
    """``(M_hyp(gamma) (x) V_{Z^N}, d)`` together with the D-action."""

    def __init__(self, N: int, gamma=None):
        self.N = N
        self.fock = FockSpace(N, gamma)
        self.gamma = self.fock.gamma
        self.fer = FermionicRealization(N, None)
        self.action = DKAction(self.fock, self.fer)
        terms = [(1, self.fock.heis_field(V, p), self.fer.space.field(PHI, p)) for p in range(1, N + 1)]
        self.Q = TensorField(terms, self.action.space)
        self.space_id = ("chiral", N, self.gamma)

    # ------------------------------------------------------------ states
    def state(self, offset=None, fock_exps=(), fer_gens=(), c=1) -> SparseVec:
        """``c * q^(gamma+offset) u/v-monomial (x) fermion monomial``.

        ``fer_gens`` lists creation operators ``(species, p, j)`` applied
        right to left, so ``[(PHI, 1, -1), (PSI, 1, -1)]`` is
        ``phi_(-1) psi_(-1) vac``.
        """
        fk = self.fock.key(offset, fock_exps)
        fv = self.fer.space.vec(fer_gens, c)
        return SparseVec({("x", fk, ck): x for ck, x in fv.items()}, self.space_id)

    def degree(self, key) -> int:
        return self.action.degree(key)

    @staticmethod
    def fermionic_degree(key) -> int:
        return deg_fer(key[2][1])

    def basis(self, k: int, m: int, mu=None) -> list:
        """Basis at fermionic degree k, total degree m and weight offset mu."""
        out = []
        for a in range(m + 1):
            fb = self.fock.basis(a, mu)
            cb = self.fer.space.component_basis(k, m - a)
            out += [("x", fk, ck) for fk in fb for ck in cb]
        out.sort()
        return out

    # ------------------------------------------------------------ differential
    def d(self, vec: dict) -> SparseVec:
        return SparseVec(self.Q.mode(0, vec), self.space_id)

    def d_key(self, key) -> dict:
        return self.Q.mode_key(0, key)

    def d_squared_check(self, keys) -> dict:
        failures = []
        for key in keys:
            dd = self.Q.mode(0, self.d_key(key))
            if not is_zero_vec(dd):
                failures.append({"vector": repr(key), "defect": repr(dd)})
        return {"cases": len(keys), "failures": failures}

    def homomorphism_defect(self, x: Gen, key) -> dict:
        """``d rho(x) v - rho(x) d v`` on a basis key."""
        out = dict(self.Q.mode(0, self.action.apply_key(x, key)))
        add_into(out, self.action.apply(x, self.d_key(key)), -ONE)
        return out

    def homomorphism_check(self, gens, keys) -> dict:
        failures = []
        cases = 0
        for x in gens:
            for key in keys:
                cases += 1
                dv = self.homomorphism_defect(x, key)
                if not is_zero_vec(dv):
                    failures.append({"x": repr(x), "vector": repr(key), "defect": repr(dv)})
        return {"cases": cases, "failures": failures}

    # ------------------------------------------------------------ cohomology
    def matrix(self, k: int, m: int, mu=None) -> tuple:
        """``(rows, source, target)``: rows of ``d`` on the source basis."""
        src = self.basis(k, m, mu)
        tgt = self.basis(k + 1, m, mu)
        index = {key: i for i, key in enumerate(tgt)}
        rows = []
        for key in src:
            row = {}
            for out, c in self.d_key(key).items():
                if out not in index:
                    raise AssertionError("d left the bigrade")
                row[index[out]] = c
            rows.append(row)
        return rows, src, tgt

    def cohomology_dims(self, k: int, m: int, mu=None) -> CohomologyRecord:
        mu = tuple(mu) if mu is not None else (0,) * self.N
        rows, src, _ = self.matrix(k, m, mu)
        prev, _, _ = self.matrix(k - 1, m, mu)
        dim_im = rank(prev)
        dim_ker = len(src) - rank(rows)
        return CohomologyRecord(k, m, mu, len(src), dim_ker, dim_im, dim_ker - dim_im)


def chiral_d(vec: dict, complex_: ChiralComplex) -> SparseVec:
    return complex_.d(vec)


def cohomology_dims(k: int, m: int, mu=None, gamma=None, N: int | None = None) -> CohomologyRecord:
    """Betti number of the chiral complex at fermionic degree k and bigrade (m, mu)."""
    if N is None:
        N = len(mu) if mu is not None else len(gamma)
    return ChiralComplex(N, gamma).cohomology_dims(k, m, mu)


def chiral_generators(N: int, jrange=range(-2, 3), r: Exponent | None = None) -> list:
    """``t_0^j t^r d_a`` for ``a = 0..N`` with a formal exponent r by default."""
    r = Exponent.formal_var(N) if r is None else r
    return [Gen("d", j, r, a) for a in range(N + 1) for j in jrange]


def top_image(N: int, k: int, gamma, mu=None) -> dict:
    """``d`` of the lowest-degree states of ``M_hyp (x) V^{k-1}`` at offset mu.

    Returns ``{fermion key of the source: image}``.
    """
    cx = ChiralComplex(N, gamma)
    m0 = cx.fer.space.lowest_degree(k - 1)
    out = {}
    for key in cx.basis(k - 1, m0, mu):
        if cx.fock.degree(key[1]) == 0:
            out[key] = cx.d_key(key)
    return out


__all__ = ["ChiralComplex", "CohomologyRecord", "chiral_d", "cohomology_dims",
           "chiral_generators", "top_image", "PHI", "PSI", "mpq"]
