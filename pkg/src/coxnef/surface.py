"""Surface models with nef anticanonical class, their negative curves and presets."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence

from . import intmat
from .cones import monoid_member
from .errors import EnumerationError, ModelError
from .lattice import DivisorClass, PicardLattice, change_basis, pairing, square, validate_lattice

WEAK_DEL_PEZZO = "weak_del_pezzo"
ELLIPTIC = "elliptic"


@dataclass(frozen=True)
class SurfaceModel:
    """A rational surface with -K nef, described by lattice data.

    ``index`` is the Halphen index m for elliptic surfaces and ``None`` for
    weak del Pezzo surfaces.  ``minus_one`` may be empty until
    :func:`enumerate_minus_one` fills it in.
    """

    lattice: PicardLattice
    kind: str
    index: int | None
    minus_two: tuple[DivisorClass, ...]
    minus_one: tuple[DivisorClass, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "minus_two", tuple(self.minus_two))
        object.__setattr__(self, "minus_one", tuple(self.minus_one))

    @property
    def is_elliptic(self) -> bool:
        return self.kind == ELLIPTIC

    @property
    def m(self) -> int:
        if self.index is None:
            raise ModelError(f"{self.name or 'model'} is not elliptic")
        return self.index

    @property
    def K(self) -> DivisorClass:
        return self.lattice.K

    def pair(self, a: DivisorClass, b: DivisorClass) -> int:
        return pairing(self.lattice, a, b)

    def with_minus_one(self, curves: Sequence[DivisorClass]) -> "SurfaceModel":
        return SurfaceModel(self.lattice, self.kind, self.index, self.minus_two, tuple(curves), self.name)


@dataclass(frozen=True)
class FiberStructure:
    """Connected groups of (-2)-curves.

    ``multiplicities[i]`` is the primitive positive null vector of group i (or
    None for a finite-type group) and ``fiber_multiple[i]`` the integer c with
    ``sum n_j G_j = -c K``.
    """

    components: tuple[tuple[DivisorClass, ...], ...]
    multiplicities: tuple[tuple[int, ...] | None, ...]
    fiber_multiple: tuple[int | None, ...]

    def full_fibers(self, m: int) -> list[int]:
        """Indices of groups forming a whole fiber of class -mK (or the reduced multiple fiber -K)."""
        return [i for i, c in enumerate(self.fiber_multiple) if c is not None and c in (1, m)]


# ---------------------------------------------------------------- validation


def validate_model(model: SurfaceModel) -> list[str]:
    lat = model.lattice
    problems = list(validate_lattice(lat))
    if problems:
        return problems
    k = lat.K
    k2 = square(lat, k)
    if model.kind == ELLIPTIC:
        if model.index is None or model.index < 1:
            problems.append(f"elliptic model needs a positive index, got {model.index}")
        if k2 != 0:
            problems.append(f"elliptic model has K^2 = {k2}, expected 0")
    elif model.kind == WEAK_DEL_PEZZO:
        if k2 <= 0:
            problems.append(f"weak del Pezzo model has K^2 = {k2}, expected > 0")
    else:
        problems.append(f"unknown surface kind {model.kind!r}")
    for c in model.minus_two + model.minus_one:
        if len(c) != lat.rank or c.basis_id != lat.basis_id:
            problems.append(f"class ({c}) does not belong to lattice {lat.basis_id} of rank {lat.rank}")
    if problems:
        return problems
    for c in model.minus_two:
        if square(lat, c) != -2 or pairing(lat, c, k) != 0:
            problems.append(
                f"(-2)-curve {lat.format(c)}: C^2 = {square(lat, c)}, K.C = {pairing(lat, c, k)} (expected -2, 0)"
            )
    for e in model.minus_one:
        if square(lat, e) != -1 or pairing(lat, e, k) != -1:
            problems.append(
                f"(-1)-curve {lat.format(e)}: E^2 = {square(lat, e)}, K.E = {pairing(lat, e, k)} (expected -1, -1)"
            )
    curves = list(model.minus_two) + list(model.minus_one)
    if len(set(curves)) != len(curves):
        problems.append("duplicate classes among the listed curves")
    for a, b in itertools.combinations(curves, 2):
        if a != b and pairing(lat, a, b) < 0:
            problems.append(f"curves {lat.format(a)} and {lat.format(b)} meet negatively ({pairing(lat, a, b)})")
    return problems


def check_model(model: SurfaceModel) -> SurfaceModel:
    problems = validate_model(model)
    if problems:
        raise ModelError(f"invalid surface model {model.name!r}", problems)
    return model


# ---------------------------------------------------------------- (-2)-configuration


def _groups(lat: PicardLattice, curves: Sequence[DivisorClass]) -> list[list[int]]:
    """Connected components of the graph 'pairing > 0' (index lists, sorted)."""
    parent = list(range(len(curves)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(curves)), 2):
        if pairing(lat, curves[i], curves[j]) > 0:
            parent[find(i)] = find(j)
    comps: dict[int, list[int]] = {}
    for i in range(len(curves)):
        comps.setdefault(find(i), []).append(i)
    return sorted(comps.values())


def connected_components(lat: PicardLattice, curves: Sequence[DivisorClass]) -> list[list[DivisorClass]]:
    return [[curves[i] for i in comp] for comp in _groups(lat, curves)]


def _anticanonical_multiple(lat: PicardLattice, v: Sequence[int]) -> int | None:
    """c with v = -c K, if any."""
    k = lat.canonical
    c = None
    for a, b in zip(v, k):
        if b == 0:
            if a != 0:
                return None
            continue
        if (-a) % b:
            return None
        q = -a // b
        if c is None:
            c = q
        elif c != q:
            return None
    return c


@lru_cache(maxsize=None)
def fiber_structure(model: SurfaceModel) -> FiberStructure:
    lat = model.lattice
    curves = sorted(model.minus_two)
    comps, mults, multiples = [], [], []
    for comp in _groups(lat, curves):
        members = tuple(curves[i] for i in comp)
        gram = [[pairing(lat, a, b) for b in members] for a in members]
        ker = intmat.integer_kernel(gram, len(members))
        n = None
        c = None
        if len(ker) == 1:
            v = ker[0]
            if all(x < 0 for x in v):
                v = tuple(-x for x in v)
            if all(x > 0 for x in v):
                n = intmat.primitive(v)
                total = [sum(nj * g[i] for nj, g in zip(n, members)) for i in range(lat.rank)]
                c = _anticanonical_multiple(lat, total)
                if c is not None and c <= 0:
                    c = None
        comps.append(members)
        mults.append(n)
        multiples.append(c)
    return FiberStructure(tuple(comps), tuple(mults), tuple(multiples))


def is_extremal(model: SurfaceModel) -> bool:
    """True when the form restricted to the (-2)-curves has rank ``rank - 2``.

    The span itself also contains the fiber class, so it has one more
    dimension than the (negative definite) lattice it carries.
    """
    if not model.minus_two:
        return model.lattice.rank == 2
    lat = model.lattice
    gram = [[pairing(lat, a, b) for b in model.minus_two] for a in model.minus_two]
    return intmat.rank(gram) == lat.rank - 2


# ---------------------------------------------------------------- (-1)-curves


def _profiles(total: int, weights: Sequence[int]) -> list[tuple[int, ...]]:
    """Nonnegative integer x with sum w_j x_j = total."""
    out: list[tuple[int, ...]] = []

    def rec(j: int, left: int, acc: list[int]) -> None:
        if j == len(weights):
            if left == 0:
                out.append(tuple(acc))
            return
        for x in range(left // weights[j] + 1):
            acc.append(x)
            rec(j + 1, left - x * weights[j], acc)
            acc.pop()

    rec(0, total, [])
    return out


def _minus_one_elliptic(model: SurfaceModel) -> list[DivisorClass]:
    lat = model.lattice
    if not is_extremal(model):
        raise EnumerationError("enumeration not certified, effective cone not polyhedral")
    k = lat.K
    m = model.m
    fib = fiber_structure(model)
    # the values E.G on each group are constrained by E.fiber
    per_group: list[list[tuple[int, ...]]] = []
    order: list[DivisorClass] = []
    for members, n, c in zip(fib.components, fib.multiplicities, fib.fiber_multiple):
        order.extend(members)
        if n is not None and c is not None:
            per_group.append(_profiles(c, n))
        else:
            per_group.append(list(itertools.product(range(m + 1), repeat=len(members))))
    rows = [list(lat.dual(g.coeffs)) for g in order] + [list(lat.dual(k.coeffs))]
    solver = intmat.IntegerSolver(rows)
    if len(solver.kernel) != 1:
        raise EnumerationError("(-2)-curves and K do not cut out a rank one complement")
    kern = DivisorClass(solver.kernel[0], lat.basis_id)
    found = set()
    for combo in itertools.product(*per_group):
        profile = [x for part in combo for x in part]
        sol = solver.particular(profile + [-1])
        if sol is None:
            continue
        ep = DivisorClass(sol, lat.basis_id)
        # (ep + t*kern)^2 = ep^2 + 2t (ep.kern) since kern is a multiple of K
        s = pairing(lat, ep, kern)
        num = -1 - square(lat, ep)
        if s == 0 or num % (2 * s):
            continue
        e = ep + kern * (num // (2 * s))
        found.add(e)
    return sorted(found)


def _fp_enumerate(p: list[list[Fraction]], center: list[Fraction], bound: Fraction) -> list[tuple[int, ...]]:
    """Integer y with (y-c)^T P (y-c) = bound for positive definite P (exact)."""
    n = len(p)
    q = [row[:] for row in p]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    out = []
    y = [0] * n

    def rec(i: int, rest: Fraction) -> None:
        u = center[i] - sum((q[i][j] * (y[j] - center[j]) for j in range(i + 1, n)), Fraction(0))
        s = rest / q[i][i]
        r = isqrt(int(s)) + 1
        base = u.numerator // u.denominator
        for yi in range(base - r, base + r + 2):
            d = (yi - u) ** 2
            if d > s:
                continue
            y[i] = yi
            left = rest - q[i][i] * d
            if i == 0:
                if left == 0:
                    out.append(tuple(y))
            else:
                rec(i - 1, left)
        y[i] = 0

    if bound < 0:
        return []
    if n == 0:
        return [()] if bound == 0 else []
    rec(n - 1, bound)
    return out


def _minus_one_del_pezzo(model: SurfaceModel) -> list[DivisorClass]:
    lat = model.lattice
    gk = list(lat.dual(lat.canonical))
    sol = intmat.solve_integer([gk], [-1])
    if sol is None:
        return []
    ep, basis = sol
    gram = lat.gram
    b_cols = basis
    r = len(b_cols)
    gb = [intmat.mat_vec(gram, v) for v in b_cols]
    p_int = [[-intmat.dot(b_cols[i], gb[j]) for j in range(r)] for i in range(r)]
    b_int = [intmat.dot(gb[i], ep) for i in range(r)]
    p = [[Fraction(x) for x in row] for row in p_int]
    bvec = [Fraction(x) for x in b_int]
    ep2 = intmat.dot(ep, intmat.mat_vec(gram, ep))
    center = intmat.rational_solve(p_int, b_int) if r else []
    bound = Fraction(ep2 + 1) + sum((bi * ci for bi, ci in zip(bvec, center)), Fraction(0))
    found = []
    for y in _fp_enumerate(p, center, bound):
        coeffs = tuple(a + sum(yi * v[k] for yi, v in zip(y, b_cols)) for k, a in enumerate(ep))
        e = DivisorClass(coeffs, lat.basis_id)
        if square(lat, e) == -1 and pairing(lat, e, lat.K) == -1:
            found.append(e)
    return sorted(e for e in found if all(pairing(lat, e, g) >= 0 for g in model.minus_two))


@lru_cache(maxsize=None)
def enumerate_minus_one(model: SurfaceModel) -> tuple[DivisorClass, ...]:
    """All classes E with E^2 = K.E = -1 meeting every listed (-2)-curve nonnegatively."""
    if model.kind == ELLIPTIC:
        out = _minus_one_elliptic(model)
    else:
        out = _minus_one_del_pezzo(model)
    lat = model.lattice
    for e in out:
        assert square(lat, e) == -1 and pairing(lat, e, lat.K) == -1
        assert all(pairing(lat, e, g) >= 0 for g in model.minus_two)
    return tuple(out)


def populated(model: SurfaceModel) -> SurfaceModel:
    if model.minus_one:
        return model
    return model.with_minus_one(enumerate_minus_one(model))


@lru_cache(maxsize=None)
def negative_curves(model: SurfaceModel) -> tuple[DivisorClass, ...]:
    ones = model.minus_one or enumerate_minus_one(model)
    return tuple(sorted(set(model.minus_two) | set(ones)))


def is_nef(model: SurfaceModel, d: DivisorClass) -> bool:
    return all(model.pair(d, c) >= 0 for c in negative_curves(model))


def is_ample(model: SurfaceModel, d: DivisorClass) -> bool:
    return square(model.lattice, d) > 0 and all(model.pair(d, c) > 0 for c in negative_curves(model))


@lru_cache(maxsize=None)
def anticanonical_irreducible(model: SurfaceModel) -> bool:
    """False when -K is a nonnegative combination of (-2)-curves."""
    if not model.minus_two:
        return True
    minus_k = (-model.K).coeffs
    if model.K * -1 in model.minus_two:
        return False
    cert = monoid_member([g.coeffs for g in sorted(model.minus_two)], minus_k)
    return not cert.member


# ---------------------------------------------------------------- blow-down


@dataclass(frozen=True)
class BlowDown:
    """Result of contracting a (-1)-curve.

    ``basis`` holds, as columns, the old coordinates of the new basis vectors,
    so ``old = basis * new`` for classes orthogonal to the contracted curve.
    """

    model: SurfaceModel
    basis: tuple[tuple[int, ...], ...]
    contracted: DivisorClass

    def push(self, c: DivisorClass, old: PicardLattice) -> DivisorClass:
        """Image of ``c`` under ``C -> C + (C.E)E`` in the new coordinates."""
        e = self.contracted
        img = c + e * pairing(old, c, e)
        sol = intmat.solve_integer(self.basis, list(img.coeffs))
        assert sol is not None
        return DivisorClass(sol[0], self.model.lattice.basis_id)

    def pull(self, c: DivisorClass, old: PicardLattice) -> DivisorClass:
        return DivisorClass(tuple(intmat.mat_vec(self.basis, c.coeffs)), old.basis_id)


def blow_down(model: SurfaceModel, e: DivisorClass) -> BlowDown:
    lat = model.lattice
    if e not in negative_curves(model) or square(lat, e) != -1:
        raise ModelError(f"{lat.format(e)} is not a (-1)-curve of {model.name!r}")
    n = lat.rank
    unit = next((i for i in range(n) if e.coeffs == lat.unit(i).coeffs), None)
    if unit is not None and all(lat.gram[unit][j] == (-1 if j == unit else 0) for j in range(n)):
        cols = [lat.unit(i).coeffs for i in range(n) if i != unit]
        labels = tuple(lab for i, lab in enumerate(lat.basis_labels) if i != unit)
    else:
        cols = intmat.integer_kernel([list(lat.dual(e.coeffs))], n)
        labels = tuple(f"u{i + 1}" for i in range(len(cols)))
    basis = [list(r) for r in zip(*cols)]  # n x (n-1), columns are new basis vectors
    new_gram = tuple(
        tuple(intmat.dot(ci, intmat.mat_vec(lat.gram, cj)) for cj in cols) for ci in cols
    )
    bid = f"{lat.basis_id}/{lat.format(e)}"
    k_img = lat.K + e * pairing(lat, lat.K, e)
    k_new = intmat.solve_integer(basis, list(k_img.coeffs))
    assert k_new is not None
    new_lat = PicardLattice(new_gram, k_new[0], labels, bid)

    def image(c: DivisorClass) -> DivisorClass:
        img = c + e * pairing(lat, c, e)
        sol = intmat.solve_integer(basis, list(img.coeffs))
        assert sol is not None
        return DivisorClass(sol[0], bid)

    twos, ones = set(), set()
    for c in negative_curves(model):
        if c == e:
            continue
        d = image(c)
        s = square(new_lat, d)
        if s == -2:
            twos.add(d)
        elif s == -1:
            ones.add(d)
    k2 = square(new_lat, new_lat.K)
    kind = WEAK_DEL_PEZZO if k2 > 0 else model.kind
    index = None if kind == WEAK_DEL_PEZZO else model.index
    new = SurfaceModel(new_lat, kind, index, tuple(sorted(twos)), tuple(sorted(ones)), f"{model.name}/{lat.format(e)}")
    return BlowDown(new, tuple(map(tuple, basis)), e)


def contract(model: SurfaceModel, e: DivisorClass) -> SurfaceModel:
    return blow_down(model, e).model


# ---------------------------------------------------------------- presets

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*([A-Za-z][A-Za-z0-9]*)")


def _expr(lat: PicardLattice, text: str) -> DivisorClass:
    """Parse sums like ``3H-E2-E3-2Eq`` against the basis labels."""
    text = text.replace(" ", "")
    pos = 0
    acc: dict[str, int] = {}
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {pos}")
        sign = -1 if mt.group(1) == "-" else 1
        coef = int(mt.group(2)) if mt.group(2) else 1
        acc[mt.group(3)] = acc.get(mt.group(3), 0) + sign * coef
        pos = mt.end()
    return lat.parse(acc)


def _elliptic(name: str, labels: list[str], m: int, minus_two: list[str]) -> SurfaceModel:
    lat = PicardLattice.blowup(labels, basis_id=name)
    curves = tuple(_expr(lat, s) for s in minus_two)
    return SurfaceModel(lat, ELLIPTIC, m, curves, (), name)


def _e8_m1() -> SurfaceModel:
    labels = ["H"] + [f"E{i}" for i in range(1, 10)]
    curves = [f"E{i + 1}-E{i}" for i in range(1, 9)] + ["H-E9-E8-E7"]
    return _elliptic("halphen-e8-m1", labels, 1, curves)


def _e8_m2() -> SurfaceModel:
    labels = ["H"] + [f"E{i}" for i in range(1, 9)] + ["Eq"]
    curves = [f"E{i + 1}-E{i}" for i in range(1, 8)]
    curves += ["H-E8-E7-E6", "3H-E2-E3-E4-E5-E6-E7-E8-2Eq"]
    return _elliptic("halphen-e8-m2", labels, 2, curves)


def _e8_m3() -> SurfaceModel:
    labels = ["H"] + [f"E{i}" for i in range(1, 6)] + [f"F{i}" for i in range(1, 5)]
    curves = [f"E{i + 1}-E{i}" for i in range(1, 5)] + [f"F{i + 1}-F{i}" for i in range(1, 4)]
    curves += ["H-E5-F3-F4", "2H-E1-E2-E3-E4-E5-F4"]
    return _elliptic("halphen-e8-m3", labels, 3, curves)


def _d8_m2() -> SurfaceModel:
    labels = ["H", "E1", "E2", "E3", "F1", "F2", "F3", "G1", "G2", "J"]
    curves = ["E2-E1", "E3-E2", "F2-F1", "F3-F2", "G2-G1"]
    curves += ["H-E3-F3-F2", "H-F3-G2-J", "H-E3-G2-G1", "H-E3-E2-E1"]
    return _elliptic("halphen-d8-m2", labels, 2, curves)


def _e7a1_m2() -> SurfaceModel:
    labels = ["H"] + [f"E{i}" for i in range(1, 7)] + ["F1", "G1", "H1"]
    curves = [f"E{i + 1}-E{i}" for i in range(1, 6)]
    curves += ["H-E6-E5-E4", "H-E6-F1-G1", "3H-E2-E3-E4-E5-E6-F1-G1-2H1"]
    curves += ["3H-E1-E2-E3-E4-E5-E6-2G1-H1", "3H-E1-E2-E3-E4-E5-E6-2F1-H1"]
    return _elliptic("halphen-e7a1-m2", labels, 2, curves)


def _a8_m2() -> SurfaceModel:
    labels = ["H", "E1", "E2", "F1", "F2", "G1", "G2", "H1", "I1", "J1"]
    curves = ["E2-E1", "F2-F1", "G2-G1"]
    curves += ["H-E1-E2-G2", "H-I1-H1-E2", "H-E2-J1-F2", "H-G2-F2-I1", "H-J1-G1-G2", "H-F1-F2-H1"]
    return _elliptic("halphen-a8-m2", labels, 2, curves)


def _e6_cubic() -> SurfaceModel:
    name = "wdp-e6-cubic"
    n = 7
    gram = [[0] * n for _ in range(n)]
    for i in range(6):
        gram[i][i] = -2
    gram[6][6] = -1
    for a, b in [(7, 4), (4, 5), (5, 6), (6, 3), (3, 1), (6, 2)]:
        gram[a - 1][b - 1] = gram[b - 1][a - 1] = 1
    minus_k = (2, 3, 4, 4, 5, 6, 3)
    lat = PicardLattice(tuple(map(tuple, gram)), tuple(-x for x in minus_k), tuple(f"E{i}" for i in range(1, 8)), name)
    curves = tuple(lat.unit(i) for i in range(6))
    return SurfaceModel(lat, WEAK_DEL_PEZZO, None, curves, (), name)


_CATALOG = {
    "halphen-e8-m1": _e8_m1,
    "halphen-e8-m2": _e8_m2,
    "halphen-e8-m3": _e8_m3,
    "halphen-d8-m2": _d8_m2,
    "halphen-e7a1-m2": _e7a1_m2,
    "halphen-a8-m2": _a8_m2,
    "wdp-e6-cubic": _e6_cubic,
}


def preset_names() -> list[str]:
    return list(_CATALOG)


@lru_cache(maxsize=None)
def preset(name: str) -> SurfaceModel:
    if name not in _CATALOG:
        raise ModelError(f"unknown preset {name!r}", [f"available: {', '.join(_CATALOG)}"])
    model = check_model(_CATALOG[name]())
    return check_model(populated(model))


def named_class(model: SurfaceModel, text: str) -> DivisorClass:
    """Class from a label expression such as ``H-Eq``; used by tests and fixtures."""
    return _expr(model.lattice, text)


def rebase(model: SurfaceModel, matrix: Sequence[Sequence[int]], basis_id: str) -> SurfaceModel:
    """The same surface written in another basis (columns of ``matrix`` are the new basis)."""
    lat = change_basis(model.lattice, matrix, [f"b{i + 1}" for i in range(model.lattice.rank)], basis_id)

    def conv(c: DivisorClass) -> DivisorClass:
        sol = intmat.solve_integer(matrix, list(c.coeffs))
        assert sol is not None
        return DivisorClass(sol[0], basis_id)

    return SurfaceModel(
        lat, model.kind, model.index, tuple(conv(c) for c in model.minus_two), tuple(conv(c) for c in model.minus_one), model.name
    )
