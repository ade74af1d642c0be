"""Picard lattices of rational surfaces: intersection pairing and Riemann-Roch."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import intmat
from .errors import LatticeError


@dataclass(frozen=True)
class DivisorClass:
    """Integer coordinates of a divisor class in the basis of ``basis_id``."""

    coeffs: tuple[int, ...]
    basis_id: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def _check(self, other: "DivisorClass") -> None:
        if len(self.coeffs) != len(other.coeffs) or self.basis_id != other.basis_id:
            raise LatticeError(
                f"classes live in different lattices: {self.basis_id}[{len(self)}] vs {other.basis_id}[{len(other)}]"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.basis_id)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.basis_id)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coeffs), self.basis_id)

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(tuple(k * a for a in self.coeffs), self.basis_id)

    __rmul__ = __mul__

    def __lt__(self, other: "DivisorClass") -> bool:
        return self.coeffs < other.coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


@dataclass(frozen=True)
class RRData:
    chi: int
    genus: int


@dataclass(frozen=True)
class PicardLattice:
    """Unimodular lattice of signature (1, rank-1) together with the canonical class."""

    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    basis_labels: tuple[str, ...]
    basis_id: str = "pic"
    # cached Gram*K, used for every anticanonical degree
    _gk: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "canonical", tuple(int(x) for x in self.canonical))
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError("gram matrix is not square")
        if len(self.canonical) != n or len(self.basis_labels) != n:
            raise LatticeError("canonical class / labels do not match the lattice rank")
        object.__setattr__(self, "_gk", tuple(intmat.mat_vec(gram, self.canonical)))

    @classmethod
    def blowup(cls, labels: Sequence[str], basis_id: str = "pic") -> "PicardLattice":
        """Blow-up basis: ``diag(1, -1, ..., -1)`` with ``K = -3H + sum E_i``."""
        n = len(labels)
        gram = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n)) for i in range(n))
        canonical = (-3,) + (1,) * (n - 1)
        return cls(gram, canonical, tuple(labels), basis_id)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def K(self) -> DivisorClass:
        return DivisorClass(self.canonical, self.basis_id)

    def cls(self, coeffs: Iterable[int]) -> DivisorClass:
        c = tuple(coeffs)
        if len(c) != self.rank:
            raise LatticeError(f"expected {self.rank} coordinates, got {len(c)}")
        return DivisorClass(c, self.basis_id)

    def zero(self) -> DivisorClass:
        return DivisorClass((0,) * self.rank, self.basis_id)

    def unit(self, i: int) -> DivisorClass:
        return DivisorClass(tuple(int(j == i) for j in range(self.rank)), self.basis_id)

    def parse(self, expr: dict[str, int]) -> DivisorClass:
        """Build a class from ``{label: coefficient}``."""
        idx = {lab: i for i, lab in enumerate(self.basis_labels)}
        coeffs = [0] * self.rank
        for lab, c in expr.items():
            if lab not in idx:
                raise LatticeError(f"unknown basis label {lab!r}")
            coeffs[idx[lab]] += c
        return DivisorClass(tuple(coeffs), self.basis_id)

    def dual(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of the linear form ``x -> v . x``."""
        return tuple(intmat.mat_vec(self.gram, v))

    def anticanonical_degree(self, d: DivisorClass) -> int:
        """``-K . D``."""
        return -intmat.dot(self._gk, d.coeffs)

    def format(self, d: DivisorClass) -> str:
        terms = []
        for c, lab in zip(d.coeffs, self.basis_labels):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign}{mag}{lab}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s[0] == "+" else s


def pairing(lat: PicardLattice, a: DivisorClass, b: DivisorClass) -> int:
    if len(a) != lat.rank or len(b) != lat.rank:
        raise LatticeError(f"dimension mismatch: lattice rank {lat.rank}, classes of length {len(a)} and {len(b)}")
    return sum(x * intmat.dot(row, b.coeffs) for x, row in zip(a.coeffs, lat.gram) if x)


def square(lat: PicardLattice, a: DivisorClass) -> int:
    return pairing(lat, a, a)


def riemann_roch(lat: PicardLattice, d: DivisorClass) -> RRData:
    """Euler characteristic and arithmetic genus of ``D``."""
    d2 = pairing(lat, d, d)
    dk = pairing(lat, d, lat.K)
    if (d2 - dk) % 2:
        raise LatticeError(f"D^2 - D.K is odd for D=({d}); canonical class is not characteristic")
    return RRData(chi=1 + (d2 - dk) // 2, genus=1 + (d2 + dk) // 2)


def validate_lattice(lat: PicardLattice) -> list[str]:
    """Return a list of diagnostics; empty means the lattice is usable."""
    problems = []
    g = lat.gram
    n = lat.rank
    for i in range(n):
        for j in range(i + 1, n):
            if g[i][j] != g[j][i]:
                problems.append(f"gram not symmetric at ({i},{j}): {g[i][j]} != {g[j][i]}")
    if problems:
        return problems
    d = intmat.det(g)
    if abs(d) != 1:
        problems.append(f"gram is not unimodular: det = {d}")
    pos, neg, zero = intmat.inertia(g)
    if (pos, neg, zero) != (1, n - 1, 0):
        problems.append(f"signature is ({pos},{neg}) with {zero} null directions, expected (1,{n - 1})")
    for i in range(n):
        e = lat.unit(i)
        if (pairing(lat, e, e) + pairing(lat, e, lat.K)) % 2:
            problems.append(f"basis vector {lat.basis_labels[i]}: C^2 + C.K is odd")
    return problems


def change_basis(lat: PicardLattice, matrix: Sequence[Sequence[int]], labels: Sequence[str], basis_id: str) -> PicardLattice:
    """Re-express ``lat`` in a new basis.

    Column ``j`` of ``matrix`` holds the old coordinates of new basis vector
    ``j``; the matrix must be unimodular.
    """
    if abs(intmat.det(matrix)) != 1:
        raise LatticeError("basis change matrix is not unimodular")
    cols = intmat.transpose(matrix)
    new_gram = [[intmat.dot(ci, intmat.mat_vec(lat.gram, cj)) for cj in cols] for ci in cols]
    sol = intmat.solve_integer(matrix, list(lat.canonical))
    assert sol is not None
    return PicardLattice(tuple(map(tuple, new_gram)), sol[0], tuple(labels), basis_id)


def to_new_basis(matrix: Sequence[Sequence[int]], d: DivisorClass, basis_id: str) -> DivisorClass:
    """Coordinates of ``d`` in the basis given by the columns of ``matrix``."""
    sol = intmat.solve_integer(matrix, list(d.coeffs))
    if sol is None:
        raise LatticeError(f"class ({d}) is not in the image of the basis change")
    return DivisorClass(sol[0], basis_id)
