"""Action of D (x) K on ``M_hyp(gamma) (x) C`` for a coefficient realization C.

Generating fields, with ``Y = Y(q^r, z)``:

* ``t_0^j t^r k_0 -> Y_(j-1)``
* ``t_0^j t^r k_a -> (:u^a Y:)_(j)``
* ``t_0^j t^r d_a -> (:v^a Y: + sum_p r_p :E^{pa} Y:)_(j)``
* ``t_0^j t^r d_0 -> (-:omega Y: - sum_{i,j} r_i :u^j E^{ij} Y: + sum_p r_p :(du^p) Y:)_(j+1)``

where ``omega`` is the sum of the Fock and coefficient Virasoro fields.
The exponent ``r`` may be formal, in which case coefficients are RPoly.
"""
from __future__ import annotations

from .algebra import Gen, bracket
from .core import ONE, mpq, Exponent, SparseVec, add_into, add_term, coeff_parts, evaluate, is_zero_vec
from .fields import Derivative, Field, NormalOrdered, ProductSpace
from .fock import U, V, FockSpace


class TensorField(Field):
    """``sum_i c_i F_i (x) G_i`` on keys ``("x", fock_key, coef_key)``.

    ``F_i`` acts on the Fock factor and ``G_i`` on the coefficient factor
    (``None`` is the identity field).  The factors commute, so the mode is
    ``sum_k F_(k) (x) G_(n-1-k)``; images are cached on each factor, which
    keeps memory proportional to the factors rather than their product.
    """

    def __init__(self, terms, space, cache: bool = True):
        terms = [(c, F, G) for c, F, G in terms if c]
        delta = max(F.delta + (G.delta if G is not None else 0) for _, F, G in terms)
        super().__init__(space, delta, 0, cache)
        self.terms = terms

    def compute(self, n, key):
        _, fk, ck = key
        out: dict = {}
        for coef, F, G in self.terms:
            if G is None:
                for k1, x1 in F.mode_key(n, fk).items():
                    add_term(out, ("x", k1, ck), x1 * coef)
                continue
            df = F.space.degree(fk)
            dc = G.space.degree(ck)
            for k in range(n - 1 - G.bound(dc), F.bound(df) + 1):
                left = F.mode_key(k, fk)
                if not left:
                    continue
                right = G.mode_key(n - 1 - k, ck)
                if not right:
                    continue
                for k1, x1 in left.items():
                    x1 = x1 * coef
                    for k2, x2 in right.items():
                        add_term(out, ("x", k1, k2), x1 * x2)
        return out


class DKAction:
    def __init__(self, fock: FockSpace, coef):
        if fock.N != coef.N:
            raise ValueError("rank mismatch between Fock space and coefficients")
        self.fock = fock
        self.coef = coef
        self.N = fock.N
        self.space = ProductSpace(fock, coef)
        self.space_id = ("state", id(self))
        self._families = {}
        self._fock_fields = {}
        self.cache_products = True
        self._fock_memo = {}

    # ------------------------------------------------------------ keys
    def key(self, fk, ck):
        return ("x", fk, ck)

    def degree(self, key) -> int:
        return self.space.degree(key)

    def basis(self, m: int, offset=None) -> list:
        """Basis at ``m`` above the top and weight offset ``offset``."""
        out = []
        for a in range(m + 1):
            for fk in self.fock.basis(a, offset):
                for ck in self.coef.basis(m - a):
                    out.append(("x", fk, ck))
        return out

    def top_vec(self, offset=None, index: int = 0) -> SparseVec:
        fk = self.fock.key(offset)
        return SparseVec({("x", fk, self.coef.top_basis()[index]): mpq(1)}, self.space_id)

    # ------------------------------------------------------------ fields
    def fock_fields(self, r: Exponent) -> dict:
        """Fock-side fields built on ``Y(q^r)``, cached per exponent."""
        ff = self._fock_fields.get(r)
        if ff is None:
            fock = self.fock
            Y = fock.vq_field(r)
            ff = {"Y": Y,
                  "omega": NormalOrdered(fock.omega_field(), Y)}
            for p in range(1, self.N + 1):
                ff[("u", p)] = NormalOrdered(fock.heis_field(U, p), Y)
                ff[("v", p)] = NormalOrdered(fock.heis_field(V, p), Y)
                ff[("du", p)] = NormalOrdered(Derivative(fock.heis_field(U, p)), Y)
            self._fock_fields[r] = ff
        return ff

    def family(self, kind: str, a: int, r: Exponent):
        """Generating field of ``t^r k_a`` or ``t^r d_a`` (all t_0 powers)."""
        ck = (kind, a, r)
        f = self._families.get(ck)
        if f is not None:
            return f
        N = self.N
        ff = self.fock_fields(r)
        rc = [r.component(p) for p in range(1, N + 1)]
        coef = self.coef
        if kind == "k" and a == 0:
            terms = [(1, ff["Y"], None)]
        elif kind == "k":
            terms = [(1, ff[("u", a)], None)]
        elif a > 0:
            terms = [(1, ff[("v", a)], None)]
            terms += [(rc[p - 1], ff["Y"], coef.gl_field(p, a)) for p in range(1, N + 1)]
        else:
            terms = [(-1, ff["omega"], None), (-1, ff["Y"], coef.omega_field())]
            for i in range(1, N + 1):
                for j in range(1, N + 1):
                    terms.append((-rc[i - 1], ff[("u", j)], coef.gl_field(i, j)))
            terms += [(rc[p - 1], ff[("du", p)], None) for p in range(1, N + 1)]
        f = TensorField(terms, self.space, cache=self.cache_products)
        self._families[ck] = f
        return f

    def rho(self, g: Gen):
        """``(field, mode)`` representing the generator ``g``."""
        f = self.family(g.kind, g.a, g.r)
        if g.kind == "k":
            return f, (g.j - 1 if g.a == 0 else g.j)
        return f, (g.j + 1 if g.a == 0 else g.j)

    def apply(self, g: Gen, v: dict) -> dict:
        f, n = self.rho(g)
        return f.mode(n, v)

    def apply_key(self, g: Gen, key) -> dict:
        f, n = self.rho(g)
        return f.mode_key(n, key)

    # spec-named entry points
    def act_k0(self, j, r, v):
        return SparseVec(self.apply(Gen("k", j, _exp(r, self.N), 0), v), self.space_id)

    def act_ka(self, j, r, a, v):
        return SparseVec(self.apply(Gen("k", j, _exp(r, self.N), a), v), self.space_id)

    def act_da(self, j, r, a, v):
        return SparseVec(self.apply(Gen("d", j, _exp(r, self.N), a), v), self.space_id)

    def act_d0(self, j, r, v):
        return SparseVec(self.apply(Gen("d", j, _exp(r, self.N), 0), v), self.space_id)

    # ------------------------------------------------------------ checks
    def word_groups(self, word, key, scale, groups: dict, cvecs: dict) -> None:
        """Add ``scale * rho(word[-1]) ... rho(word[0]) key`` to ``groups``.

        The image is kept factorized: ``groups`` maps the sequence of
        coefficient-side modes applied (a signature) to the Fock vector
        that multiplies it, and ``cvecs`` maps each signature to its
        coefficient vector.  Contributions with equal signatures merge on
        the Fock side before any tensor product is formed.
        """
        _, fk, ck = key
        if () not in cvecs:
            cvecs[()] = {ck: ONE}
        fmemo = self._fock_memo

        def fock_image(F, k, chain, fvec):
            ck2 = (fk, chain, F, k)
            img = fmemo.get(ck2)
            if img is None:
                img = F.mode(k, fvec)
                fmemo[ck2] = img
            return img

        def rec(idx, fvec, chain, sig, df, dc, c):
            if idx == len(word):
                add_into(groups.setdefault(sig, {}), fvec, c)
                return
            f, n = self.rho(word[idx])
            cvec = cvecs[sig]
            for coef, F, G in f.terms:
                if G is None:
                    img = fock_image(F, n, chain, fvec)
                    if img:
                        rec(idx + 1, img, chain + ((F, n),), sig, df + F.delta - 1 - n, dc, c * coef)
                    continue
                for k in range(n - 1 - G.bound(dc), F.bound(df) + 1):
                    nc = n - 1 - k
                    sig2 = sig + ((G, nc),)
                    cimg = cvecs.get(sig2)
                    if cimg is None:
                        cimg = G.mode(nc, cvec)
                        cvecs[sig2] = cimg
                    if not cimg:
                        continue
                    img = fock_image(F, k, chain, fvec)
                    if img:
                        rec(idx + 1, img, chain + ((F, k),), sig2, df + F.delta - 1 - k, dc + G.delta - 1 - nc, c * coef)

        rec(0, {fk: ONE}, (), (), self.fock.degree(fk), self.coef.degree(ck), scale)

    def bracket_defect(self, x: Gen, y: Gen, key) -> dict:
        """``[rho(x), rho(y)] - rho([x, y])`` applied to a basis key."""
        groups: dict = {}
        cvecs: dict = {}
        self.word_groups((y, x), key, ONE, groups, cvecs)
        self.word_groups((x, y), key, -ONE, groups, cvecs)
        for c, g in bracket(x, y, self.N):
            self.word_groups((g,), key, -c, groups, cvecs)
        by_coef: dict = {}
        for sig, fvec in groups.items():
            if not fvec:
                continue
            for ck, cc in cvecs[sig].items():
                add_into(by_coef.setdefault(ck, {}), fvec, cc)
        out: dict = {}
        for ck, fvec in by_coef.items():
            for fk, c in fvec.items():
                out[("x", fk, ck)] = c
        return out

    def bracket_check(self, x: Gen, y: Gen, keys) -> dict:
        self._fock_memo = {}
        failures = []
        for key in keys:
            d = self.bracket_defect(x, y, key)
            if not is_zero_vec(d):
                failures.append({"x": repr(x), "y": repr(y), "vector": repr(key), "defect": repr(d)})
        self._fock_memo = {}
        return {"cases": len(keys), "failures": failures}

    def forget(self, r: Exponent) -> None:
        """Drop the cached images of every family with exponent ``r``."""
        for ck in [ck for ck in self._families if ck[2] == r]:
            self._families.pop(ck).clear()
        for f in self._fock_fields.pop(r, {}).values():
            f.clear()
        f = self.fock._vq_fields.pop(r, None)
        if f is not None:
            f.clear()

    def k_relation_defect(self, i: int, m: Exponent, key) -> dict:
        """``i rho(t_0^i t^m k_0) + sum_c m_c rho(t_0^i t^m k_c)`` on a key."""
        out = {}
        if i:
            add_into(out, self.apply_key(Gen("k", i, m, 0), key), i)
        for c in range(1, self.N + 1):
            mc = m.component(c)
            if mc:
                add_into(out, self.apply_key(Gen("k", i, m, c), key), mc)
        return out

    def is_critical(self, vec: dict, generators) -> bool:
        return all(is_zero_vec(self.apply(g, vec)) for g in generators)


_SUITE: dict = {}


def _suite_rows(rows, forget: bool = True) -> tuple:
    action, X, Y, keys, symmetric, r = (_SUITE[k] for k in ("action", "X", "Y", "keys", "symmetric", "r"))
    cases = pairs = 0
    failures = []
    for i in rows:
        for t, y in enumerate(Y):
            if symmetric and t < i:
                continue
            rep = action.bracket_check(X[i], y, keys)
            cases += rep["cases"]
            pairs += 1
            failures += rep["failures"]
    if forget:
        action.forget(r)
    return pairs, cases, failures


def structure_suite(action: DKAction, degree: int = 3, jrange=range(-2, 3), keys=None,
                    symmetric: bool = True, progress=None, workers: int = 1) -> dict:
    """``[rho(x), rho(y)] = rho([x, y])`` for all generator pairs.

    ``x`` carries the formal exponent ``r`` and ``y`` the formal exponent
    ``m``, so one check covers every integer pair of exponents.  Both sides
    are antisymmetric in (x, y), hence with ``symmetric`` each unordered
    pair of families is checked once.  ``keys`` defaults to the basis at
    weight offset 0 up to ``degree``.  With ``workers > 1`` the rows of
    each generator family are spread over forked processes.
    """
    N = action.N
    r = Exponent.formal_var(N, 0)
    m = Exponent.formal_var(N, 1)
    fams = [(kind, a) for kind in "dk" for a in range(N + 1)]
    X = [Gen(kind, j, r, a) for kind, a in fams for j in jrange]
    Y = [Gen(kind, j, m, a) for kind, a in fams for j in jrange]
    if keys is None:
        keys = [k for d in range(degree + 1) for k in action.basis(d)]
    _SUITE.update(action=action, X=X, Y=Y, keys=keys, symmetric=symmetric, r=r)
    try:
        if workers > 1:
            import multiprocessing
            # one task per row keeps the heavy d_0 rows apart; worker caches die with the pool
            tasks = [([i], False) for i in range(len(X))]
            with multiprocessing.get_context("fork").Pool(workers) as pool:
                results = pool.starmap(_suite_rows, tasks, chunksize=1)
        else:
            results = []
            for fam in fams:
                rows = [i for i, x in enumerate(X) if (x.kind, x.a) == fam]
                res = _suite_rows(rows)
                results.append(res)
                if progress is not None:
                    progress(X[rows[-1]], sum(p for p, _, _ in results), sum(len(f) for _, _, f in results))
    finally:
        _SUITE.clear()
    failures = [f for _, _, fs in results for f in fs]
    return {"pairs": sum(p for p, _, _ in results), "cases": sum(c for _, c, _ in results),
            "failures": failures, "keys": len(keys)}


def _exp(r, N) -> Exponent:
    if isinstance(r, Exponent):
        return r
    if isinstance(r, int):
        r = (r,)
    r = tuple(r)
    if len(r) != N:
        raise ValueError("exponent has wrong length")
    return Exponent.of(r)


def specialize(vec: dict, point: dict) -> dict:
    """Evaluate formal coefficients and formal weight shifts at ``point``.

    ``point`` maps ``(f, p)`` to an integer.  Fock keys with a formal shift
    fold it into the integer offset.
    """
    out: dict = {}
    for key, c in vec.items():
        val = evaluate(c, point)
        if not val:
            continue
        nk = _spec_key(key, point)
        s = out.get(nk, 0) + val
        if s:
            out[nk] = s
        else:
            out.pop(nk, None)
    return out


def _spec_key(key, point):
    if key[0] == "x":
        return ("x", _spec_key(key[1], point), key[2])
    if key[0] == "hyp" and key[2]:
        off = list(key[1])
        for f, c in enumerate(key[2]):
            for p in range(len(off)):
                off[p] += c * int(point[(f, p + 1)])
        return ("hyp", tuple(off), (), key[3])
    return key


__all__ = ["DKAction", "specialize", "structure_suite", "coeff_parts"]
