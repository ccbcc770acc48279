"""Exact invariant suites: Heisenberg, Clifford, affine gl_N, Virasoro.

Every suite returns ``{"suite", "cases", "failures"}``; a failure records
the offending operators and basis vector.
"""
from __future__ import annotations

from itertools import product

from .affine import VermaRealization, VirVerma
from .core import ONE, add_into, is_zero_vec, mpq
from .fermion import PHI, PSI, FermionSpace
from .fields import Combination, LiftLeft, LiftRight, ProductSpace, commutator
from .fock import U, V, FockSpace


def _report(name, cases, failures) -> dict:
    return {"suite": name, "cases": cases, "failures": failures}


def heis_suite(N: int, degree: int = 4, nmax: int = 3, gamma=None) -> dict:
    """``[x_(n), y_(m)] = n (x|y) delta_{n,-m}`` with ``(u^p|v^q) = delta_pq``."""
    fock = FockSpace(N, gamma if gamma is not None else ["1/3"] * N)
    keys = [k for d in range(degree + 1) for k in fock.basis(d)]
    fields = [(s, p) for s in (U, V) for p in range(1, N + 1)]
    cases = 0
    failures = []
    for (s1, p1), (s2, p2) in product(fields, repeat=2):
        form = 1 if (p1 == p2 and s1 != s2) else 0
        A, B = fock.heis_field(s1, p1), fock.heis_field(s2, p2)
        for n, m in product(range(-nmax, nmax + 1), repeat=2):
            expect = n * form if n == -m else 0
            for key in keys:
                cases += 1
                vec = {key: ONE}
                out = commutator(lambda v: A.mode(n, v), lambda v: B.mode(m, v), vec)
                if expect:
                    add_into(out, vec, -expect)
                if not is_zero_vec(out):
                    failures.append({"x": (s1, p1, n), "y": (s2, p2, m), "vector": repr(key)})
    return _report("heisenberg", cases, failures)


def clifford_suite(N: int, degree: int = 3, nmax: int = 3) -> dict:
    """``{phi^a_(m), psi^b_(n)} = delta_ab delta_{m,-n-1}``, other anticommutators 0."""
    fer = FermionSpace(N)
    keys = [k for d in range(degree + 1) for k in fer.component_basis(None, d)]
    fields = [(s, p) for s in (PHI, PSI) for p in range(1, N + 1)]
    cases = 0
    failures = []
    for (s1, p1), (s2, p2) in product(fields, repeat=2):
        A, B = fer.field(s1, p1), fer.field(s2, p2)
        for m, n in product(range(-nmax, nmax + 1), repeat=2):
            expect = 1 if (p1 == p2 and s1 != s2 and m == -n - 1) else 0
            for key in keys:
                cases += 1
                vec = {key: ONE}
                out = commutator(lambda v: A.mode(m, v), lambda v: B.mode(n, v), vec, sign=-1)
                if expect:
                    add_into(out, vec, -expect)
                if not is_zero_vec(out):
                    failures.append({"x": (s1, p1, m), "y": (s2, p2, n), "vector": repr(key)})
    return _report("clifford", cases, failures)


def glbrak_suite(space, N: int, keys, nmax: int = 2, level=1) -> dict:
    """``[E^{ab}_(n), E^{cd}_(m)] = delta_bc E^{ad}_(n+m) - delta_da E^{cb}_(n+m)
    + n delta_{n,-m} delta_bc delta_ad C`` for the fields ``space.gl_field``."""
    cases = 0
    failures = []
    idx = range(1, N + 1)
    for a, b, c, d in product(idx, repeat=4):
        A, B = space.gl_field(a, b), space.gl_field(c, d)
        for n, m in product(range(-nmax, nmax + 1), repeat=2):
            for key in keys:
                cases += 1
                vec = {key: ONE}
                out = commutator(lambda v: A.mode(n, v), lambda v: B.mode(m, v), vec)
                if b == c:
                    add_into(out, space.gl_field(a, d).mode(n + m, vec), -ONE)
                if d == a:
                    add_into(out, space.gl_field(c, b).mode(n + m, vec))
                if n == -m and b == c and a == d and n:
                    add_into(out, vec, -n * mpq(level))
                if not is_zero_vec(out):
                    failures.append({"x": (a, b, n), "y": (c, d, m), "vector": repr(key)})
    return _report("glbrak", cases, failures)


def virasoro_suite(field, keys, central, nmax: int = 2, name: str = "virasoro") -> dict:
    """``[L_n, L_m] = (n-m) L_{n+m} + delta_{n,-m} (n^3-n)/12 c`` with
    ``L_n = omega_(n+1)``."""
    cases = 0
    failures = []
    c = mpq(central)
    for n, m in product(range(-nmax, nmax + 1), repeat=2):
        for key in keys:
            cases += 1
            vec = {key: ONE}
            out = commutator(lambda v: field.mode(n + 1, v), lambda v: field.mode(m + 1, v), vec)
            add_into(out, field.mode(n + m + 1, vec), -(n - m))
            if n == -m:
                add_into(out, vec, -mpq(n ** 3 - n, 12) * c)
            if not is_zero_vec(out):
                failures.append({"n": n, "m": m, "vector": repr(key)})
    return _report(name, cases, failures)


def relvir_suite(h, degree: int = 3, nmax: int = 3) -> dict:
    """(relvir) at zero central charge on the Virasoro Verma module."""
    M = VirVerma(h)
    keys = [k for d in range(degree + 1) for k in M.basis(d)]
    cases = 0
    failures = []
    for n, m in product(range(-nmax, nmax + 1), repeat=2):
        for key in keys:
            cases += 1
            vec = {key: ONE}
            out = commutator(lambda v: M.vir_act(n, v), lambda v: M.vir_act(m, v), vec)
            add_into(out, M.vir_act(n + m, vec), -(n - m))
            if not is_zero_vec(out):
                failures.append({"n": n, "m": m, "vector": repr(key)})
    return _report("relvir", cases, failures)


def omega_hyp_suite(N: int, degree: int = 3, nmax: int = 2) -> dict:
    fock = FockSpace(N, ["1/3"] * N)
    keys = [k for d in range(degree + 1) for k in fock.basis(d)]
    return virasoro_suite(fock.omega_field(), keys, 2 * N, nmax, "omega_hyp")


def omega_gl_suite(W, h, degree: int = 2, nmax: int = 2) -> dict:
    C = VermaRealization(W, h)
    keys = [k for d in range(degree + 1) for k in C.basis(d)]
    return virasoro_suite(C.omega_gl_field(), keys, -2 * W.N, nmax, "omega_gl")


def omega_fer_suite(N: int, degree: int = 3, nmax: int = 2) -> dict:
    fer = FermionSpace(N)
    keys = [k for d in range(degree + 1) for k in fer.component_basis(None, d)]
    return virasoro_suite(fer.omega_field(), keys, -2 * N, nmax, "omega_fer")


def omega_total_suite(W, h, degree: int = 2, nmax: int = 2) -> dict:
    """``omega^hyp + omega^gl + omega^vir`` on ``M_hyp (x) C``: central charge 0."""
    N = W.N
    fock = FockSpace(N, ["1/3"] * N)
    C = VermaRealization(W, h)
    space = ProductSpace(fock, C)
    omega = Combination([(1, LiftLeft(fock.omega_field(), space)),
                         (1, LiftRight(C.omega_field(), space))], space, cache=True)
    keys = [("x", fk, ck) for d in range(degree + 1) for a in range(d + 1)
            for fk in fock.basis(a) for ck in C.basis(d - a)]
    return virasoro_suite(omega, keys, 0, nmax, "omega_total")


__all__ = ["heis_suite", "clifford_suite", "glbrak_suite", "virasoro_suite", "relvir_suite",
           "omega_hyp_suite", "omega_gl_suite", "omega_fer_suite", "omega_total_suite"]
