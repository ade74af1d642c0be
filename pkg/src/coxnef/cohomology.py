"""Dimensions h0, h1, h2 and base loci of divisor classes.

Everything reduces to nef classes: a negative curve meeting D negatively is a
fixed component of |D|, so it can be peeled off without changing h0.  On a
nef class h2 vanishes and h1 is known in closed form, and Riemann-Roch plus
Serre duality give the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import intmat
from .cones import nef_cone
from .errors import ConeError, CoxnefError, ModelError
from .lattice import DivisorClass, riemann_roch, square
from .surface import SurfaceModel, negative_curves


@dataclass(frozen=True)
class CohomologyVector:
    h0: int
    h1: int
    h2: int
    chi: int

    def __post_init__(self) -> None:
        if self.h0 - self.h1 + self.h2 != self.chi:
            raise CoxnefError(f"inconsistent cohomology {self}")


@dataclass(frozen=True)
class BaseLocusKind:
    """``tag`` is ``"Free"``, ``"SinglePoint"`` or ``"Curve"``; ``curve`` is set for the last."""

    tag: str
    curve: DivisorClass | None = None

    def __str__(self) -> str:
        return self.tag if self.curve is None else f"Curve({self.curve})"


FREE = BaseLocusKind("Free")
SINGLE_POINT = BaseLocusKind("SinglePoint")


@dataclass(frozen=True)
class Reduction:
    nef: DivisorClass
    subtracted: tuple[DivisorClass, ...]


class NotEffective:
    """Marker returned by :func:`reduce_to_nef` for classes with no sections."""

    def __repr__(self) -> str:
        return "NotEffective"

    def __bool__(self) -> bool:
        return False


NOT_EFFECTIVE = NotEffective()


class _Context:
    """Per-model caches.  Values are pure functions of the class, so sharing is safe."""

    def __init__(self, model: SurfaceModel):
        self.model = model
        self.lattice = model.lattice
        self.curves = negative_curves(model)
        self.curve_forms = [model.lattice.dual(c.coeffs) for c in self.curves]
        self.curve_set = set(self.curves)
        self.ample = self._ample()
        self.reductions: dict[tuple[int, ...], Reduction | NotEffective] = {}
        self.h0: dict[tuple[int, ...], int] = {}

    def _ample(self) -> tuple[int, ...]:
        lat = self.lattice
        if not self.model.is_elliptic and not self.model.minus_two:
            # del Pezzo: -K itself is ample, no cone needed
            return self._checked(lat.dual((-lat.K).coeffs))
        try:
            cone = nef_cone(self.model)
        except ConeError:
            cone = None
        if cone is None or not (cone.is_pointed and cone.is_full_dimensional):
            raise ModelError(f"no ample class available for {self.model.name!r}")
        total = [0] * lat.rank
        for r in cone.generators:
            total = [a + b for a, b in zip(total, r)]
        form = lat.dual(total)
        return self._checked(form)

    def _checked(self, form: tuple[int, ...]) -> tuple[int, ...]:
        if any(intmat.dot(form, c.coeffs) <= 0 for c in self.curves):
            raise ModelError(f"ample functional fails on a negative curve of {self.model.name!r}")
        return form


_CONTEXTS: dict[int, tuple[SurfaceModel, _Context]] = {}


def context(model: SurfaceModel) -> _Context:
    hit = _CONTEXTS.get(id(model))
    if hit is not None and hit[0] is model:
        return hit[1]
    ctx = _Context(model)
    _CONTEXTS[id(model)] = (model, ctx)
    return ctx


def _coeffs(model: SurfaceModel, d: DivisorClass) -> tuple[int, ...]:
    if len(d) != model.lattice.rank:
        raise ModelError(f"class ({d}) has {len(d)} coordinates, lattice rank is {model.lattice.rank}")
    return d.coeffs


def reduce_to_nef(model: SurfaceModel, d: DivisorClass) -> Reduction | NotEffective:
    """Strip forced negative-curve components off ``d``.

    Returns the nef endpoint with the subtracted curves (in the order they were
    removed), or ``NOT_EFFECTIVE``.
    """
    ctx = context(model)
    key = _coeffs(model, d)
    hit = ctx.reductions.get(key)
    if hit is not None:
        return hit
    v = list(key)
    taken: list[DivisorClass] = []
    out: Reduction | NotEffective | None = None
    while out is None:
        if intmat.dot(ctx.ample, v) < 0:
            out = NOT_EFFECTIVE
            break
        for c, form in zip(ctx.curves, ctx.curve_forms):
            if intmat.dot(form, v) < 0:
                taken.append(c)
                v = [a - b for a, b in zip(v, c.coeffs)]
                break
        else:
            out = Reduction(DivisorClass(tuple(v), d.basis_id), tuple(taken))
    ctx.reductions[key] = out
    return out


def is_effective(model: SurfaceModel, d: DivisorClass) -> bool:
    return bool(reduce_to_nef(model, d))


def _is_nef(ctx: _Context, v: Sequence[int]) -> bool:
    return all(intmat.dot(f, v) >= 0 for f in ctx.curve_forms)


def _anticanonical_multiple(model: SurfaceModel, d: DivisorClass) -> int | None:
    """``a`` with ``d = -aK``, if any."""
    k = model.K.coeffs
    a = None
    for x, y in zip(d.coeffs, k):
        if y == 0:
            if x != 0:
                return None
            continue
        if (-x) % y:
            return None
        q = -x // y
        if a is None:
            a = q
        elif a != q:
            return None
    return a if a is not None else 0


def h1_nef(model: SurfaceModel, d: DivisorClass) -> int:
    ctx = context(model)
    if not _is_nef(ctx, _coeffs(model, d)):
        raise CoxnefError(f"h1_nef: ({d}) is not nef")
    if not model.is_elliptic:
        return 0
    if model.lattice.anticanonical_degree(d) > 0:
        return 0
    a = _anticanonical_multiple(model, d)
    if a is None:
        # -K.D = 0 with D nef forces D to be a multiple of -K by Hodge index
        raise ModelError(f"nef class ({d}) is orthogonal to K but not a multiple of it")
    return a if model.m == 1 else a // model.m


def h0(model: SurfaceModel, d: DivisorClass) -> int:
    ctx = context(model)
    key = _coeffs(model, d)
    hit = ctx.h0.get(key)
    if hit is not None:
        return hit
    red = reduce_to_nef(model, d)
    if not red:
        val = 0
    else:
        n = red.nef
        val = riemann_roch(model.lattice, n).chi + h1_nef(model, n)
    ctx.h0[key] = val
    return val


def cohomology(model: SurfaceModel, d: DivisorClass) -> CohomologyVector:
    chi = riemann_roch(model.lattice, d).chi
    a = h0(model, d)
    c = h0(model, model.K - d)
    b = a + c - chi
    if b < 0:
        raise ModelError(f"negative h1 for ({d}): h0={a}, h2={c}, chi={chi}; the model is inconsistent")
    return CohomologyVector(a, b, c, chi)


def h1(model: SurfaceModel, d: DivisorClass) -> int:
    return cohomology(model, d).h1


def h2(model: SurfaceModel, d: DivisorClass) -> int:
    return h0(model, model.K - d)


def minus_one_part(model: SurfaceModel, d: DivisorClass) -> DivisorClass | None:
    """``E`` when ``d = -aK + E`` for a listed (-1)-curve E and some a >= 0.

    Only classes with ``-K.d = 1`` qualify; then ``E = d + (s+1)K`` with
    ``s = (d^2 - 1)/2``.
    """
    lat = model.lattice
    if lat.anticanonical_degree(d) != 1:
        return None
    d2 = square(lat, d)
    if (d2 - 1) % 2:
        return None
    s = (d2 - 1) // 2
    r = d + lat.K * (s + 1)
    if square(lat, r) != -1 or lat.anticanonical_degree(r) != 1:
        return None
    if s + 1 < 0:
        return None
    if r not in context(model).curve_set:
        # a nef d = -aK + R has R.G = d.G >= 0 for every (-2)-curve, so R must be listed
        if model.is_elliptic:
            raise ModelError(f"({r}) is a (-1)-class missing from the curve list of {model.name!r}")
        return None
    return r


def base_locus(model: SurfaceModel, d: DivisorClass) -> BaseLocusKind:
    ctx = context(model)
    v = _coeffs(model, d)
    if not any(v):
        raise CoxnefError("base_locus: zero class")
    if not _is_nef(ctx, v):
        raise CoxnefError(f"base_locus: ({d}) is not nef")
    lat = model.lattice
    if not model.is_elliptic:
        # Picard number 9: |-K| is a pencil with one base point
        if square(lat, lat.K) == 1 and d == -lat.K:
            return SINGLE_POINT
        return FREE
    e = minus_one_part(model, d)
    if model.m == 1:
        return BaseLocusKind("Curve", e) if e is not None else FREE
    if e is not None:
        return SINGLE_POINT
    if lat.anticanonical_degree(d) == 0:
        a = _anticanonical_multiple(model, d)
        if a is not None and a % model.m:
            return BaseLocusKind("Curve", -lat.K)
    return FREE
