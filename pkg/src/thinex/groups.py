"""Exact character theory and Fourier analysis on finite abelian groups.

A group is an ordered tuple of cyclic factor orders; an element is a
coordinate tuple reduced modulo each factor.  Complex-valued functions are
flat arrays in lexicographic coordinate order (C-order raveling), which
pins down serialization and tensor reshapes bit for bit.

Transform convention, fixed once for the whole package:

    dft(f)(g)  = sum_x f(x) * exp(+2*pi*i * sum_m g_m x_m / n_m)
    idft(F)(x) = (1/|G|) * sum_g F(g) * exp(-2*pi*i * sum_m g_m x_m / n_m)

so dft(delta_0) is the constant 1, idft inverts dft, and Plancherel reads
||dft(f)||_2^2 = |G| * ||f||_2^2.  The transform is computed factor by
factor (one FFT per cyclic factor), which is exact up to roundoff and
keeps groups like (Z/2)^14 cheap.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from ._smith import mat_vec, smith_normal_form

__all__ = [
    "FiniteAbelianGroup",
    "GroupElement",
    "GroupFunction",
    "GroupMismatchError",
    "QuotientMap",
    "SubgroupEmbedding",
    "pairing",
    "dft",
    "idft",
    "convolve",
    "lp_norm",
    "quotient_map",
    "subgroup_embedding",
    "write_group_function_csv",
    "read_group_function_csv",
]


class GroupMismatchError(ValueError):
    """Operands live on different groups (or an element is not in the group)."""


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct sum of cyclic groups Z/n_1 + ... + Z/n_r, in the given order.

    Factors of order 1 are legal; the trivial group is the empty tuple.
    Factor lists are kept verbatim (no invariant-factor normalization):
    the measure constructions deliberately produce repeated factors.
    """

    factor_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.factor_orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"factor orders must be >= 1, got {orders}")
        object.__setattr__(self, "factor_orders", orders)

    @classmethod
    def trivial(cls) -> "FiniteAbelianGroup":
        return cls(())

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls((n,))

    @classmethod
    def from_literal(cls, text: str) -> "FiniteAbelianGroup":
        """Parse a comma-separated factor list like "4,2,2".

        Unit factors are dropped, so "1" and "" both denote the trivial
        group; this keeps product constructions free of dummy coordinates.
        """
        text = text.strip()
        if not text:
            return cls.trivial()
        orders = tuple(int(part) for part in text.split(","))
        if any(n < 1 for n in orders):
            raise ValueError(f"factor orders must be >= 1, got {orders!r}")
        return cls(tuple(n for n in orders if n > 1))

    def literal(self) -> str:
        return ",".join(str(n) for n in self.factor_orders) if self.factor_orders else "1"

    @property
    def order(self) -> int:
        return math.prod(self.factor_orders)

    @property
    def rank(self) -> int:
        return len(self.factor_orders)

    def direct_sum(self, *others: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        orders = self.factor_orders
        for g in others:
            orders = orders + g.factor_orders
        return FiniteAbelianGroup(orders)

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.rank:
            raise GroupMismatchError(
                f"element has {len(coords)} coordinates, group has rank {self.rank}"
            )
        return tuple(int(c) % n for c, n in zip(coords, self.factor_orders))

    def contains(self, coords: Sequence[int]) -> bool:
        return len(coords) == self.rank and all(
            0 <= int(c) < n for c, n in zip(coords, self.factor_orders)
        )

    def index_of(self, coords: Sequence[int]) -> int:
        """Lexicographic index of a (reduced) coordinate tuple."""
        coords = self.reduce(coords)
        idx = 0
        for c, n in zip(coords, self.factor_orders):
            idx = idx * n + c
        return idx

    def coords_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise IndexError(f"index {index} out of range for group of order {self.order}")
        coords = []
        for n in reversed(self.factor_orders):
            coords.append(index % n)
            index //= n
        return tuple(reversed(coords))

    def elements(self) -> Iterator[tuple[int, ...]]:
        for idx in range(self.order):
            yield self.coords_of(idx)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple((x + y) % n for x, y, n in zip(self.reduce(a), self.reduce(b), self.factor_orders))

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple((-x) % n for x, n in zip(self.reduce(a), self.factor_orders))

    def coords_table(self) -> np.ndarray:
        """(order, rank) int64 array of all coordinate tuples in index order."""
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices(self.factor_orders).reshape(self.rank, -1)
        return grids.T.astype(np.int64)

    def __str__(self) -> str:
        return "Z/" + " + Z/".join(str(n) for n in self.factor_orders) if self.factor_orders else "0"


@dataclass(frozen=True)
class GroupElement:
    """A coordinate tuple; reduction happens at construction time."""

    coords: tuple[int, ...]

    @classmethod
    def of(cls, group: FiniteAbelianGroup, coords: Union[int, Sequence[int]]) -> "GroupElement":
        if isinstance(coords, int):
            coords = (coords,)
        return cls(group.reduce(tuple(coords)))


ElementLike = Union[GroupElement, int, Sequence[int]]


def _coords(group: FiniteAbelianGroup, element: ElementLike) -> tuple[int, ...]:
    if isinstance(element, GroupElement):
        coords = element.coords
    elif isinstance(element, (int, np.integer)):
        coords = (int(element),)
    else:
        coords = tuple(int(c) for c in element)
    if len(coords) != group.rank:
        raise GroupMismatchError(
            f"element {coords} does not belong to {group} (rank mismatch)"
        )
    return group.reduce(coords)


@dataclass(frozen=True, eq=False)
class GroupFunction:
    """Complex values indexed by group elements in lexicographic order."""

    group: FiniteAbelianGroup
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128).reshape(-1)
        if vals.shape[0] != self.group.order:
            raise ValueError(
                f"value array has length {vals.shape[0]}, group order is {self.group.order}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, group: FiniteAbelianGroup) -> "GroupFunction":
        return cls(group, np.zeros(group.order, dtype=np.complex128))

    @classmethod
    def constant(cls, group: FiniteAbelianGroup, value: complex = 1.0) -> "GroupFunction":
        return cls(group, np.full(group.order, value, dtype=np.complex128))

    @classmethod
    def delta(cls, group: FiniteAbelianGroup, element: ElementLike = 0) -> "GroupFunction":
        if isinstance(element, (int, np.integer)) and group.rank != 1:
            # convenience: a bare int indexes the flat position for any rank
            idx = int(element)
            if not 0 <= idx < group.order:
                raise IndexError(idx)
        else:
            idx = group.index_of(_coords(group, element))
        vals = np.zeros(group.order, dtype=np.complex128)
        vals[idx] = 1.0
        return cls(group, vals)

    @classmethod
    def indicator(cls, group: FiniteAbelianGroup, indices: Iterable[int]) -> "GroupFunction":
        vals = np.zeros(group.order, dtype=np.complex128)
        idx = np.asarray(sorted(int(i) for i in indices), dtype=np.int64)
        if idx.size:
            vals[idx] = 1.0
        return cls(group, vals)

    def tensor(self) -> np.ndarray:
        """Read-only view shaped like the factor list."""
        shape = self.group.factor_orders if self.group.rank else (1,)
        return self.values.reshape(shape)

    def __len__(self) -> int:
        return self.group.order


def pairing(g: ElementLike, x: ElementLike, group: FiniteAbelianGroup) -> complex:
    """Canonical duality pairing <g,x> = exp(2*pi*i * sum_m g_m x_m / n_m).

    The phase is reduced as an exact rational before exponentiating, so the
    result is a root of unity to machine precision and the pairing is
    bimultiplicative to ~1e-16.
    """
    gc = _coords(group, g)
    xc = _coords(group, x)
    phase = Fraction(0)
    for gm, xm, n in zip(gc, xc, group.factor_orders):
        phase += Fraction(gm * xm, n)
    phase -= math.floor(phase)
    return cmath.exp(2j * cmath.pi * float(phase))


def dft(f: GroupFunction) -> GroupFunction:
    """Character-sum transform with the +2*pi*i convention, factor by factor.

    numpy's ifft carries the +i kernel and a 1/n factor, so each axis
    transform is n * ifft(axis).
    """
    group = f.group
    if group.rank == 0:
        return GroupFunction(group, f.values.copy())
    vals = f.tensor().astype(np.complex128)
    for axis, n in enumerate(group.factor_orders):
        if n > 1:
            vals = np.fft.ifft(vals, axis=axis) * n
    return GroupFunction(group, vals.reshape(-1))


def idft(f: GroupFunction) -> GroupFunction:
    """Inverse of :func:`dft`: conjugate kernel and a 1/|G| normalization."""
    group = f.group
    if group.rank == 0:
        return GroupFunction(group, f.values.copy())
    vals = f.tensor().astype(np.complex128)
    for axis, n in enumerate(group.factor_orders):
        if n > 1:
            vals = np.fft.fft(vals, axis=axis) / n
    return GroupFunction(group, vals.reshape(-1))


def convolve(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """(f * g)(x) = sum_y f(y) g(x - y), computed by direct translation sums.

    This is intentionally not routed through the transform: the convolution
    theorem dft(f*g) = dft(f)*dft(g) stays an independent cross-check.
    The sparser factor drives the sum, so indicator kernels with small
    support cost support_size * |G|.
    """
    if f.group != g.group:
        raise GroupMismatchError("convolution operands live on different groups")
    group = f.group
    if group.rank == 0:
        return GroupFunction(group, f.values * g.values)
    nz_f = np.flatnonzero(f.values)
    nz_g = np.flatnonzero(g.values)
    loop, base = (f, g) if nz_f.size <= nz_g.size else (g, f)
    loop_nz = nz_f if nz_f.size <= nz_g.size else nz_g
    base_tensor = base.tensor()
    axes = tuple(range(group.rank))
    out = np.zeros_like(base_tensor)
    for flat in loop_nz:
        shift = group.coords_of(int(flat))
        out += loop.values[flat] * np.roll(base_tensor, shift, axis=axes)
    return GroupFunction(group, out.reshape(-1))


def lp_norm(f: GroupFunction, p: float) -> float:
    """Counting-measure l^p norm (sum |f|^p)^(1/p); requires finite p >= 1."""
    p = float(p)
    if not math.isfinite(p) or p < 1:
        raise ValueError(f"lp_norm requires finite p >= 1, got {p}")
    return float(np.sum(np.abs(f.values) ** p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# quotients and subgroups (exact integer lattice arithmetic)


def _generator_columns(group: FiniteAbelianGroup, generators) -> list[list[int]]:
    cols = []
    for gen in generators:
        cols.append(list(_coords(group, gen)))
    return cols


def _relation_matrix(group: FiniteAbelianGroup, extra_columns: list[list[int]]) -> list[list[int]]:
    """Columns: the given vectors followed by n_m * e_m (the group relations)."""
    r = group.rank
    mat = [[0] * (len(extra_columns) + r) for _ in range(r)]
    for j, col in enumerate(extra_columns):
        for i in range(r):
            mat[i][j] = col[i]
    for m, n in enumerate(group.factor_orders):
        mat[m][len(extra_columns) + m] = n
    return mat


@dataclass(frozen=True)
class QuotientMap:
    """Projection of a group onto its quotient by a subgroup."""

    source: FiniteAbelianGroup
    quotient: FiniteAbelianGroup
    projection: np.ndarray  # source index -> quotient index

    def __post_init__(self):
        self.projection.setflags(write=False)

    def project(self, element: ElementLike) -> tuple[int, ...]:
        idx = self.source.index_of(_coords(self.source, element))
        return self.quotient.coords_of(int(self.projection[idx]))

    def pullback(self, h: GroupFunction) -> GroupFunction:
        if h.group != self.quotient:
            raise GroupMismatchError("pullback input must live on the quotient")
        return GroupFunction(self.source, h.values[self.projection])


def quotient_map(group: FiniteAbelianGroup, generators) -> QuotientMap:
    """Quotient by the subgroup generated by the given elements.

    Smith form of the relation lattice [generators | diag(n)] gives the
    cyclic decomposition of the quotient and an explicit projection
    x -> (U x mod d); unit factors are dropped.
    """
    r = group.rank
    cols = _generator_columns(group, generators)
    if r == 0:
        return QuotientMap(group, FiniteAbelianGroup.trivial(), np.zeros(1, dtype=np.int64))
    snf = smith_normal_form(_relation_matrix(group, cols))
    diag = snf.diagonal
    keep = [i for i, d in enumerate(diag) if d > 1]
    quotient = FiniteAbelianGroup(tuple(diag[i] for i in keep))

    coords = group.coords_table()  # (|G|, r)
    u_rows = np.asarray([snf.u[i] for i in keep], dtype=np.int64) if keep else np.zeros((0, r), np.int64)
    if keep:
        moduli = np.asarray([diag[i] for i in keep], dtype=np.int64)
        mapped = (coords @ u_rows.T) % moduli  # (|G|, len(keep))
        proj = np.zeros(group.order, dtype=np.int64)
        for c, d in zip(mapped.T, moduli):
            proj = proj * d + c
    else:
        proj = np.zeros(group.order, dtype=np.int64)
    return QuotientMap(group, quotient, proj)


@dataclass(frozen=True)
class SubgroupEmbedding:
    """A subgroup of `ambient` presented as an abstract group plus an embedding."""

    ambient: FiniteAbelianGroup
    subgroup: FiniteAbelianGroup
    element_indices: np.ndarray  # abstract subgroup index -> ambient flat index

    def __post_init__(self):
        self.element_indices.setflags(write=False)

    @property
    def order(self) -> int:
        return self.subgroup.order

    def embed(self, element: ElementLike) -> tuple[int, ...]:
        idx = self.subgroup.index_of(_coords(self.subgroup, element))
        return self.ambient.coords_of(int(self.element_indices[idx]))

    def index_set(self) -> frozenset[int]:
        return frozenset(int(i) for i in self.element_indices)


def subgroup_embedding(group: FiniteAbelianGroup, generators) -> SubgroupEmbedding:
    """Cyclic decomposition of the subgroup generated by `generators`.

    Writes the subgroup lattice L = span(generators) + diag(n) Z^r, picks a
    basis B of L from the Smith form, and decomposes L / diag(n) Z^r via a
    second Smith form.  All arithmetic is exact.
    """
    r = group.rank
    cols = _generator_columns(group, generators)
    if r == 0 or not cols:
        trivial = FiniteAbelianGroup.trivial()
        return SubgroupEmbedding(group, trivial, np.zeros(1, dtype=np.int64))

    snf1 = smith_normal_form(_relation_matrix(group, cols))
    d1 = snf1.diagonal
    if any(d == 0 for d in d1):  # impossible: diag(n) has full rank
        raise AssertionError("subgroup lattice lost full rank")
    # basis of the lattice: B = U1^-1 @ diag(d1)
    basis = [[snf1.u_inv[i][j] * d1[j] for j in range(r)] for i in range(r)]
    # C = B^-1 @ diag(n) = diag(d1)^-1 @ U1 @ diag(n), exact by construction
    c_mat = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            num = snf1.u[i][j] * group.factor_orders[j]
            if num % d1[i] != 0:
                raise AssertionError("relation lattice not contained in subgroup lattice")
            c_mat[i][j] = num // d1[i]

    snf2 = smith_normal_form(c_mat)
    d2 = snf2.diagonal
    keep = [i for i, d in enumerate(d2) if d > 1]
    subgroup = FiniteAbelianGroup(tuple(d2[i] for i in keep))

    indices = np.zeros(subgroup.order, dtype=np.int64)
    for flat, coords in enumerate(subgroup.elements()):
        lifted = [0] * r
        for pos, c in zip(keep, coords):
            lifted[pos] = c
        y = mat_vec(snf2.u_inv, lifted)
        lam = mat_vec(basis, y)
        reduced = tuple(x % n for x, n in zip(lam, group.factor_orders))
        indices[flat] = group.index_of(reduced)
    if len(set(indices.tolist())) != subgroup.order:
        raise AssertionError("subgroup embedding is not injective")
    return SubgroupEmbedding(group, subgroup, indices)


# ---------------------------------------------------------------------------
# serialization: CSV with columns index, coords, re, im (17 significant digits)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_group_function_csv(f: GroupFunction, path) -> None:
    """Lexicographic CSV dump; round-trips bit-exactly at full double precision."""
    exact = ",".join(str(n) for n in f.group.factor_orders)  # keeps unit factors
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# group={exact}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "coords", "re", "im"])
        for idx in range(f.group.order):
            coords = ";".join(str(c) for c in f.group.coords_of(idx))
            v = f.values[idx]
            writer.writerow([idx, coords, _fmt(v.real), _fmt(v.imag)])


def read_group_function_csv(path) -> GroupFunction:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        first = fh.readline().strip()
        if not first.startswith("# group="):
            raise ValueError(f"{path}: missing '# group=' header line")
        spec = first.removeprefix("# group=")
        orders = tuple(int(p) for p in spec.split(",")) if spec else ()
        group = FiniteAbelianGroup(orders)
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["index", "coords", "re", "im"]:
            raise ValueError(f"{path}: unexpected header {header}")
        vals = np.zeros(group.order, dtype=np.complex128)
        count = 0
        for row in reader:
            idx = int(row[0])
            vals[idx] = complex(float(row[2]), float(row[3]))
            count += 1
        if count != group.order:
            raise ValueError(f"{path}: expected {group.order} rows, found {count}")
    return GroupFunction(group, vals)
