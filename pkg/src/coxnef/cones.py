"""Exact rational polyhedral cones.

Extreme rays come from the double description method; Hilbert bases from a
pulling triangulation plus enumeration of fundamental parallelepipeds.
Everything is integer arithmetic; vectors are kept primitive and sorted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import intmat
from .errors import ConeError
from .intmat import Vector, dot


def _canon(vectors: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    return tuple(sorted({intmat.primitive(v) for v in vectors if any(v)}))


@dataclass(frozen=True)
class RationalCone:
    """A rational polyhedral cone in ``Z^n``.

    ``generators`` are primitive extreme rays, ``lineality`` a basis of the
    lineality space; ``facets`` are primitive inner normals (``x . f >= 0``) and
    ``equations`` span the normals of the linear hull (``x . e = 0``).  All
    four are filled in by the constructors below.
    """

    ambient_rank: int
    generators: tuple[Vector, ...]
    facets: tuple[Vector, ...]
    lineality: tuple[Vector, ...] = ()
    equations: tuple[Vector, ...] = ()
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    def contains(self, v: Sequence[int]) -> bool:
        return all(dot(f, v) >= 0 for f in self.facets) and all(dot(e, v) == 0 for e in self.equations)

    def interior_functional(self) -> Vector:
        """A linear form positive on every nonzero point of a pointed cone."""
        if not self.is_pointed:
            raise ConeError("cone is not pointed")
        n = self.ambient_rank
        w = [0] * n
        for f in self.facets:
            w = [a + b for a, b in zip(w, f)]
        # on a lower dimensional cone the facet sum can vanish on the hull; add a
        # generic equation-free correction built from the generators themselves
        if self.equations:
            for g in self.generators:
                w = [a + b for a, b in zip(w, g)]
        if any(dot(w, g) <= 0 for g in self.generators):
            raise ConeError("failed to build a positive grading")
        return tuple(w)

    @cached_property
    def ray_zero_sets(self) -> dict[Vector, frozenset[int]]:
        """For each facet, the indices of generators it vanishes on."""
        return {f: frozenset(i for i, g in enumerate(self.generators) if dot(f, g) == 0) for f in self.facets}


def _double_description(rows: Sequence[Vector], n: int) -> tuple[list[Vector], list[Vector]]:
    """Extreme rays and lineality basis of ``{x in Q^n : A x >= 0}``."""
    rows = [tuple(r) for r in rows if any(r)]
    lineality = intmat.integer_kernel(rows, n) if rows else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if len(lineality) == n:
        return [], lineality
    work = list(rows)
    for v in lineality:
        work.append(tuple(v))
        work.append(tuple(-x for x in v))

    # initial simplicial cone from a greedy independent set of rows
    basis: list[Vector] = []
    used: set[int] = set()
    for idx, r in enumerate(work):
        if intmat.rank(basis + [r]) > len(basis):
            basis.append(r)
            used.add(idx)
            if len(basis) == n:
                break
    rays = intmat.inverse_columns(basis)
    processed: list[Vector] = list(basis)
    # zero sets as bitmasks over ``processed``
    zeros = [sum(1 << i for i in range(n) if i != j) for j in range(n)]

    for idx, r in enumerate(work):
        if idx in used:
            continue
        k = len(processed)
        vals = [dot(r, x) for x in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            processed.append(r)
            zeros = [z | (1 << k) if vals[i] == 0 else z for i, z in enumerate(zeros)]
            continue
        new_rays: list[Vector] = []
        new_zeros: list[int] = []
        for i in pos + zer:
            new_rays.append(rays[i])
            new_zeros.append(zeros[i] | (1 << k) if vals[i] == 0 else zeros[i])
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if bin(common).count("1") < n - 2:
                    continue
                active = [processed[t] for t in range(k) if common >> t & 1]
                if intmat.rank(active) != n - 2:
                    continue
                # combinatorial check: no other ray's zero set contains ``common``
                if any((z & common) == common for t, z in enumerate(zeros) if t not in (p, q)):
                    continue
                a, b = vals[p], vals[q]
                ray = intmat.primitive([a * y - b * x for x, y in zip(rays[p], rays[q])])
                new_rays.append(ray)
                new_zeros.append(common | (1 << k))
        processed.append(r)
        rays, zeros = new_rays, new_zeros
    return sorted(set(rays)), lineality


def _irredundant_facets(rows: Sequence[Vector], rays: Sequence[Vector], lineality: Sequence[Vector], n: int) -> list[Vector]:
    """Rows that define facets of the cone generated by ``rays`` + ``lineality``."""
    dim = intmat.rank(list(rays) + list(lineality)) if (rays or lineality) else 0
    out = set()
    for r in rows:
        r = intmat.primitive(r)
        if not any(r):
            continue
        if all(dot(r, x) == 0 for x in rays):
            continue  # equation, not a facet
        tight = [x for x in rays if dot(r, x) == 0] + list(lineality)
        if (intmat.rank(tight) if tight else 0) == dim - 1:
            out.add(r)
    return sorted(out)


def cone_from_inequalities(rows: Iterable[Sequence[int]], n: int) -> RationalCone:
    rows = [tuple(int(x) for x in r) for r in rows]
    if any(len(r) != n for r in rows):
        raise ConeError("inequality of wrong length")
    rays, lin = _double_description(rows, n)
    # equations of the hull: forms vanishing on rays and lineality
    span = list(rays) + list(lin)
    equations = intmat.integer_kernel(span, n) if span else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    facets = _irredundant_facets(rows, rays, lin, n)
    return RationalCone(n, _canon(rays), tuple(facets), tuple(lin), _canon(equations) if equations else ())


def cone_from_generators(gens: Iterable[Sequence[int]], n: int | None = None) -> RationalCone:
    gens = [tuple(int(x) for x in g) for g in gens]
    if n is None:
        if not gens:
            raise ConeError("ambient rank needed for an empty generator list")
        n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise ConeError("generator of wrong length")
    # the facet normals are the extreme rays of the dot-dual
    dual_rays, dual_lin = _double_description(gens, n)
    ineqs = list(dual_rays) + [v for l in dual_lin for v in (l, tuple(-x for x in l))]
    rays, lin = _double_description(ineqs, n) if ineqs else ([], [tuple(int(i == j) for j in range(n)) for i in range(n)])
    return RationalCone(n, _canon(rays), _canon(dual_rays), tuple(lin), _canon(dual_lin))


def dual_cone(cone: RationalCone, gram: Sequence[Sequence[int]] | None = None) -> RationalCone:
    """``{v : v^T Q g >= 0 for all g in cone}``; ``Q`` defaults to the dot product."""
    n = cone.ambient_rank
    q = gram if gram is not None else [[int(i == j) for j in range(n)] for i in range(n)]
    rows = [tuple(intmat.mat_vec(q, g)) for g in cone.generators]
    for l in cone.lineality:
        ql = tuple(intmat.mat_vec(q, l))
        rows += [ql, tuple(-x for x in ql)]
    if not rows:
        ident = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        return RationalCone(n, (), (), tuple(ident), (), {"pointed": False})
    out = cone_from_inequalities(rows, n)
    out.meta["pointed"] = out.is_pointed
    return out


def contains(cone: RationalCone, v: Sequence[int]) -> bool:
    return cone.contains(v)


# ---------------------------------------------------------------- triangulation


def _pulling_triangulation(cone: RationalCone) -> list[tuple[int, ...]]:
    """Simplicial cones (as generator index tuples) covering a pointed cone."""
    gens = cone.generators
    zero_sets = list(cone.ray_zero_sets.values())
    rank_cache: dict[frozenset[int], int] = {}

    def rk(s: frozenset[int]) -> int:
        if s not in rank_cache:
            rank_cache[s] = intmat.rank([gens[i] for i in s]) if s else 0
        return rank_cache[s]

    memo: dict[frozenset[int], list[tuple[int, ...]]] = {}

    def tri(face: frozenset[int], k: int) -> list[tuple[int, ...]]:
        if face in memo:
            return memo[face]
        if len(face) == k:
            out = [tuple(sorted(face))]
        else:
            apex = min(face)
            subfaces = set()
            for z in zero_sets:
                sub = face & z
                if sub != face and rk(sub) == k - 1:
                    subfaces.add(frozenset(sub))
            # keep maximal ones only
            maximal = [s for s in subfaces if not any(s < t for t in subfaces)]
            out = []
            for s in sorted(maximal, key=sorted):
                if apex in s:
                    continue
                for simplex in tri(s, k - 1):
                    out.append(tuple(sorted(simplex + (apex,))))
        memo[face] = out
        return out

    return tri(frozenset(range(len(gens))), cone.dim)


def _parallelepiped_points(vs: Sequence[Vector]) -> list[Vector]:
    """Nonzero lattice points of the half-open parallelepiped spanned by ``vs``."""
    n = len(vs)
    cols = [list(r) for r in zip(*vs)]  # matrix with the v_i as columns
    adj, d = intmat.adjugate(cols)
    big = abs(d)
    if big == 1:
        return []
    sgn = 1 if d > 0 else -1
    # lambda(e_j) * |det| = sgn * adj column j, reduced mod |det|
    gens = []
    for j in range(n):
        g = tuple((sgn * adj[i][j]) % big for i in range(n))
        if any(g):
            gens.append(g)
    seen = {tuple([0] * n)}
    frontier = [tuple([0] * n)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple((x + y) % big for x, y in zip(a, g))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    out = []
    for a in seen:
        if not any(a):
            continue
        pt = [sum(a[i] * vs[i][k] for i in range(n)) for k in range(n)]
        assert all(x % big == 0 for x in pt)
        out.append(tuple(x // big for x in pt))
    return out


@dataclass(frozen=True)
class HilbertBasisResult:
    elements: tuple[Vector, ...]


def _sublattice_chart(cone: RationalCone) -> tuple[list[Vector], list[Vector]] | None:
    """Basis of the saturated lattice ``span(cone) cap Z^n`` (None if full)."""
    if not cone.equations:
        return None
    basis = intmat.integer_kernel(list(cone.equations), cone.ambient_rank)
    return basis, list(cone.equations)


def hilbert_basis(cone: RationalCone) -> HilbertBasisResult:
    """Minimal generating set of the monoid ``cone cap Z^n``."""
    if not cone.is_pointed:
        raise ConeError("Hilbert basis requested for a non-pointed cone")
    if not cone.generators:
        return HilbertBasisResult(())
    chart = _sublattice_chart(cone)
    if chart is not None:
        basis, _ = chart
        bt = intmat.transpose(basis)  # columns = basis vectors
        local = []
        for g in cone.generators:
            sol = intmat.solve_integer(bt, list(g))
            assert sol is not None
            local.append(sol[0])
        sub = cone_from_generators(local, len(basis))
        res = hilbert_basis(sub)
        lifted = [tuple(intmat.mat_vec(bt, e)) for e in res.elements]
        return HilbertBasisResult(tuple(sorted(lifted)))

    gens = cone.generators
    simplices = _pulling_triangulation(cone)
    candidates = _simplex_candidates(gens, simplices)
    return HilbertBasisResult(_reduce_candidates(candidates, cone.facets))


# int64 guard: entries above this size go through the pure Python path
_NP_LIMIT = 1 << 40


def _simplex_candidates(gens: Sequence[Vector], simplices: Sequence[tuple[int, ...]]) -> set[Vector]:
    """Union over the simplices of their local Hilbert bases.

    A Hilbert basis element of the cone is irreducible in every simplicial
    subcone containing it, so it is either a ray or a componentwise minimal
    point of a fundamental parallelepiped (minimal in barycentric
    coordinates).  A float inverse only proposes each adjugate; it is
    accepted after the exact integer check ``V adj = d I``.
    """
    n = len(gens[0])
    out = [np.array(gens, dtype=np.int64)]
    if not simplices:
        return set(gens)
    gen_arr = np.array(gens, dtype=np.int64)
    if np.abs(gen_arr).max() >= 1 << 15:
        return _candidates_python(gens, simplices)
    idx = np.array(simplices, dtype=np.int64)
    vs = gen_arr[idx].transpose(0, 2, 1)  # columns are the rays
    fl = vs.astype(float)
    with np.errstate(all="ignore"):
        dets = np.rint(np.linalg.det(fl))
        inv = np.linalg.inv(fl)
    adj_f = np.rint(inv * dets[:, None, None])
    ok = np.isfinite(adj_f).all(axis=(1, 2)) & (np.abs(adj_f).max(axis=(1, 2)) < _NP_LIMIT) & (dets != 0)
    adj = np.where(ok[:, None, None], adj_f, 0).astype(np.int64)
    d = np.where(ok, dets, 1).astype(np.int64)
    eye = np.eye(n, dtype=np.int64)
    ok &= (np.einsum("sij,sjk->sik", vs, adj) == d[:, None, None] * eye).all(axis=(1, 2))
    fallback = [simplices[i] for i in np.nonzero(~ok)[0]]
    sgn = np.sign(d)
    big = np.abs(d)
    # barycentric numerators of e_j are the columns of sgn*adj, mod |d|
    colgens = (sgn[:, None, None] * adj).transpose(0, 2, 1) % big[:, None, None]
    todo = ok & (big > 1)
    for dval in np.unique(big[todo]):
        dval = int(dval)
        sel = np.nonzero(todo & (big == dval))[0]
        g = colgens[sel]  # (S, n, n): generator j of simplex s is g[s, j]
        orders = dval // np.gcd.reduce(np.concatenate([g, np.full(g.shape[:2] + (1,), dval)], axis=2), axis=2)
        first = orders.argmax(axis=1)
        o1 = orders[np.arange(len(sel)), first]
        for o in np.unique(o1):
            o = int(o)
            part = np.nonzero(o1 == o)[0]
            g1 = g[part, first[part]]  # (S, n)
            cyc = (np.arange(o, dtype=np.int64)[None, :, None] * g1[:, None, :]) % dval  # (S, o, n)
            k2 = dval // o
            if k2 == 1:
                lam = cyc
                rows = part
            else:
                # a second column of order exactly k2 modulo <g1> completes a subgroup of size |d|
                pick = np.full(len(part), -1)
                for j in range(n):
                    gj = g[part, j]
                    good = pick < 0
                    for b in range(1, k2):
                        good &= ~((b * gj % dval)[:, None, :] == cyc).all(axis=2).any(axis=1)
                    good &= ((k2 * gj % dval)[:, None, :] == cyc).all(axis=2).any(axis=1)
                    pick[good] = j
                found = pick >= 0
                bs = np.arange(k2, dtype=np.int64)
                g2 = g[part, np.maximum(pick, 0)]
                lam = ((cyc[:, :, None, :] + bs[None, None, :, None] * g2[:, None, None, :]) % dval).reshape(
                    len(part), dval, n
                )
                lam, rows = lam[found], part[found]
                for s in sel[part[~found]]:
                    fallback.append(simplices[s])
            # certificate: the subgroup has |d| = |det| elements only if every column lies in it
            inside = np.ones(len(rows), dtype=bool)
            for j in range(n):
                inside &= (g[rows, j][:, None, :] == lam).all(axis=2).any(axis=1)
            for s in sel[rows[~inside]]:
                fallback.append(simplices[s])
            lam, rows = lam[inside], sel[rows[inside]]
            if not len(rows):
                continue
            lam = lam[:, 1:, :]  # the zero element comes first
            m = lam.shape[1]
            le = (lam[:, None, :, :] <= lam[:, :, None, :]).all(axis=3)
            le[:, np.arange(m), np.arange(m)] = False
            keep = ~le.any(axis=2)
            pts = np.einsum("sij,skj->ski", vs[rows], lam)
            assert not (pts % dval).any()
            out.append((pts // dval)[keep])
    pts = {tuple(r) for arr in out for r in arr.tolist()}
    if fallback:
        pts.update(_candidates_python(gens, fallback))
    return pts


def _candidates_python(gens: Sequence[Vector], simplices: Sequence[tuple[int, ...]]) -> set[Vector]:
    pts = set(gens)
    for simplex in simplices:
        pts.update(_parallelepiped_points([gens[i] for i in simplex]))
    return pts


def _reduce_candidates(cands: Iterable[Sequence[int]], facets: Sequence[Vector]) -> tuple[Vector, ...]:
    """Drop every candidate that is another candidate plus a nonzero cone point.

    Candidates are scanned by increasing facet-sum grading; ``x - h`` lies in
    the cone exactly when its facet values are all nonnegative.
    """
    rows = sorted({tuple(int(x) for x in c) for c in cands})
    small = all(abs(x) < (1 << 20) for r in rows for x in r) and all(abs(x) < (1 << 20) for f in facets for x in f)
    if small:
        fvals = np.array(rows, dtype=np.int64) @ np.array(facets, dtype=np.int64).T
        grade = fvals.sum(axis=1)
        order = sorted(range(len(rows)), key=lambda i: (int(grade[i]), rows[i]))
        kept_vals = np.empty((len(rows), len(facets)), dtype=np.int64)
        kept: list[int] = []
        for i in order:
            fx = fvals[i]
            if kept and (kept_vals[: len(kept)] <= fx).all(axis=1).any():
                continue
            kept_vals[len(kept)] = fx
            kept.append(i)
    else:
        pyvals = [[dot(f, r) for f in facets] for r in rows]
        order = sorted(range(len(rows)), key=lambda i: (sum(pyvals[i]), rows[i]))
        kept = []
        for i in order:
            fx = pyvals[i]
            if any(all(a >= b for a, b in zip(fx, pyvals[k])) for k in kept):
                continue
            kept.append(i)
    return tuple(sorted(rows[i] for i in kept))


# ---------------------------------------------------------------- monoid membership


@dataclass(frozen=True)
class MonoidCertificate:
    member: bool
    coefficients: tuple[int, ...] | None = None


def monoid_member(
    gens: Sequence[Sequence[int]],
    v: Sequence[int],
    grading: Sequence[int] | None = None,
) -> MonoidCertificate:
    """Decide whether ``v`` is a nonnegative integer combination of ``gens``.

    Depth-first branch and bound over the generators in the given order.  Each
    coefficient is bounded through a functional ``w`` positive on every
    generator; partial remainders are pruned when they leave the cone spanned
    by the generators not yet used.
    """
    gens = [tuple(g) for g in gens]
    v = tuple(v)
    n = len(v)
    if not any(v):
        return MonoidCertificate(True, tuple(0 for _ in gens))
    live = [i for i, g in enumerate(gens) if any(g)]
    if not live:
        return MonoidCertificate(False)
    if grading is None:
        full = cone_from_generators([gens[i] for i in live], n)
        if not full.is_pointed:
            raise ConeError("monoid_member: generators span a non-pointed cone and no grading was supplied")
        grading = full.interior_functional()
    w = tuple(grading)
    wg = {i: dot(w, gens[i]) for i in live}
    if any(x <= 0 for x in wg.values()):
        raise ConeError("monoid_member: grading is not positive on every generator")
    # suffix cones for pruning
    suffix = {}
    for pos in range(len(live)):
        suffix[pos] = cone_from_generators([gens[i] for i in live[pos:]], n)

    failed: set[tuple[int, Vector]] = set()
    coeffs = [0] * len(gens)

    def search(pos: int, rest: Vector) -> bool:
        if not any(rest):
            return True
        if pos == len(live):
            return False
        key = (pos, rest)
        if key in failed:
            return False
        if not suffix[pos].contains(rest):
            failed.add(key)
            return False
        i = live[pos]
        g = gens[i]
        top = dot(w, rest) // wg[i]
        for a in range(top, -1, -1):
            nxt = tuple(x - a * y for x, y in zip(rest, g))
            coeffs[i] = a
            if search(pos + 1, nxt):
                return True
        coeffs[i] = 0
        failed.add(key)
        return False

    if search(0, v):
        return MonoidCertificate(True, tuple(coeffs))
    return MonoidCertificate(False)


def nef_cone(model) -> RationalCone:
    """Dual, under the intersection form, of the cone spanned by the negative curves."""
    from .surface import negative_curves

    lat = model.lattice
    curves = negative_curves(model)
    if not curves:
        raise ConeError("no negative curves: the effective cone is not described by curves")
    if intmat.rank([c.coeffs for c in curves]) < lat.rank:
        raise ConeError("negative curves span a proper sublattice; the effective cone is not full dimensional")
    rows = [lat.dual(c.coeffs) for c in curves]
    out = cone_from_inequalities(rows, lat.rank)
    out.meta["pointed"] = out.is_pointed
    return out
