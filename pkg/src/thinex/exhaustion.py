"""Cutoff families, invariant subspaces, and thinness certificates.

The model: functions live on a finite abelian group G which is identified
with its dual; a measure lives on the "multiplier side".  A nested family
of neighborhoods U_1 >= U_2 >= ... of the measure's support induces
indicator multipliers sigma_i = 1 on the complement of U_i, convolution
kernels S_i with dft(S_i) = sigma_i, and multiplier subspaces

    E_i = ker(Id - S_i) = { f : dft(f) supported where sigma_i = 1 }.

F is the span of the translates of the measure's Fourier-Stieltjes
coefficients; its multiplier side is the measure's support.  Thinness
(E_i intersect F = 0 for every i, F nonzero, E_i exhausting) then reduces
to exact set arithmetic, which every certificate cross-checks against an
explicit numerical rank computation.

Everything certified here is exact at the integer level: dimensions are
support counts, sigma identities are 0/1 arithmetic, and the floating
point enters only through transforms (tolerances stated per check).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .groups import (
    FiniteAbelianGroup,
    GroupFunction,
    GroupMismatchError,
    SubgroupEmbedding,
    convolve,
    dft,
    idft,
    lp_norm,
    quotient_map,
    subgroup_embedding,
)
from .measures import TruncatedMeasure, fourier_stieltjes

__all__ = [
    "CutoffFamily",
    "SubspaceBasis",
    "ThinnessCertificate",
    "ExhaustionData",
    "InducedExhaustion",
    "PuKernelReport",
    "RankAmbiguityError",
    "CertificateLawError",
    "build_neighborhoods",
    "family_from_neighborhoods",
    "verify_telescoping",
    "kernel_subspace",
    "cyclic_invariant_subspace",
    "pu_kernel_check",
    "exhaustion_data",
    "thinness_certificate",
    "density_profile_check",
    "canonical_exhaustion",
    "induce_exhaustion",
    "numeric_rank",
    "translation_invariance_residual",
]

RANK_THRESHOLD = 1e-8
#: singular values inside this band mean the model is too large/ill-scaled
AMBIGUITY_BAND = (1e-11, 1e-5)
CONV_TOL = 1e-10
INVARIANCE_TOL = 1e-8
#: largest group for which certificates are computed
MAX_CERTIFICATE_ORDER = 4096


class RankAmbiguityError(RuntimeError):
    """A singular value fell inside the ambiguity band; use a smaller model."""


class CertificateLawError(RuntimeError):
    """Rank computation and exact set arithmetic disagree (internal bug)."""


def numeric_rank(matrix: np.ndarray, threshold: float = RANK_THRESHOLD) -> int:
    """Singular-value rank with an explicit no-ambiguity guarantee."""
    if matrix.size == 0:
        return 0
    s = np.linalg.svd(matrix, compute_uv=False)
    lo, hi = AMBIGUITY_BAND
    if np.any((s > lo) & (s < hi)):
        raise RankAmbiguityError(
            f"singular value near the pivot threshold ({s[(s > lo) & (s < hi)]}); "
            "reduce the model size"
        )
    return int(np.sum(s > threshold))


def _character_columns(group: FiniteAbelianGroup, support: np.ndarray) -> np.ndarray:
    """Unit-norm columns e(-2 pi i <chi, x>)/sqrt(|G|), one per chi in support.

    These are the inverse transforms of dual-point deltas (scaled to unit
    l2 norm): the canonical basis of a multiplier subspace.
    """
    order = group.order
    if support.size == 0:
        return np.zeros((order, 0), dtype=np.complex128)
    coords_x = group.coords_table().astype(np.float64)  # (|G|, r)
    if group.rank == 0:
        return np.ones((1, support.size), dtype=np.complex128)
    chi = np.stack([np.asarray(group.coords_of(int(i)), dtype=np.float64) for i in support])
    scaled = chi / np.asarray(group.factor_orders, dtype=np.float64)  # (dim, r)
    phases = coords_x @ scaled.T  # (|G|, dim)
    return np.exp(-2j * np.pi * phases) / math.sqrt(order)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """An explicit basis of a translation-invariant subspace."""

    ambient_group: FiniteAbelianGroup
    matrix: np.ndarray  # (|G|, dim), unit columns
    dim: int
    fourier_support: np.ndarray  # sorted dual indices (the multiplier side)
    approximate: bool = False

    def __post_init__(self):
        self.matrix.setflags(write=False)
        self.fourier_support.setflags(write=False)

    @property
    def vectors(self) -> list[GroupFunction]:
        return [GroupFunction(self.ambient_group, self.matrix[:, j]) for j in range(self.dim)]


def kernel_subspace(sigma: GroupFunction) -> SubspaceBasis:
    """Fixed space of the multiplier operator: { f : dft(f) lives where sigma = 1 }.

    For a 0/1 indicator sigma the answer is exact (dim = #{sigma = 1}).
    A non-indicator sigma only admits an approximate kernel: characters
    where |1 - sigma| < 1e-8 (the operator Id - S is diagonalized by
    characters, so these are literally its near-null singular directions);
    the result is flagged.
    """
    vals = sigma.values
    is_indicator = bool(
        np.all(vals.imag == 0) and np.all((vals.real == 0) | (vals.real == 1))
    )
    if is_indicator:
        support = np.flatnonzero(vals.real == 1)
        approx = False
    else:
        support = np.flatnonzero(np.abs(1.0 - vals) < RANK_THRESHOLD)
        approx = True
    mat = _character_columns(sigma.group, support)
    return SubspaceBasis(sigma.group, mat, int(support.size), support, approx)


def cyclic_invariant_subspace(v: GroupFunction, rel_tol: float = 1e-10) -> SubspaceBasis:
    """Span of all translates of v: the multiplier subspace over supp(dft v).

    dim equals the size of the Fourier support (finite-model exact law);
    the basis returned is the character basis of that support, which spans
    the same space as the translates.
    """
    transformed = np.abs(dft(v).values)
    peak = float(transformed.max())
    if peak == 0.0:
        raise ValueError("cannot take the invariant span of the zero vector")
    support = np.flatnonzero(transformed > rel_tol * peak)
    mat = _character_columns(v.group, support)
    return SubspaceBasis(v.group, mat, int(support.size), support)


# ---------------------------------------------------------------------------
# cutoff families


@dataclass(frozen=True, eq=False)
class CutoffFamily:
    """Nested neighborhoods with their multipliers and convolution kernels.

    Nesting is guaranteed by the builders, not by this container:
    verify_telescoping must be able to return False on hand-made
    counterexamples.
    """

    group: FiniteAbelianGroup
    neighborhoods: tuple[frozenset[int], ...]
    sigmas: tuple[GroupFunction, ...]
    kernels: tuple[GroupFunction, ...]
    indicator: bool

    @property
    def levels(self) -> int:
        return len(self.neighborhoods)

    def complement_sizes(self) -> list[int]:
        return [self.group.order - len(u) for u in self.neighborhoods]


def family_from_neighborhoods(
    group: FiniteAbelianGroup, neighborhoods: Sequence[Iterable[int]]
) -> CutoffFamily:
    """Indicator family sigma_i = 1 off U_i, S_i = idft(sigma_i); no nesting check."""
    sets = tuple(frozenset(int(i) for i in u) for u in neighborhoods)
    sigmas = []
    kernels = []
    for u in sets:
        complement = sorted(set(range(group.order)) - u)
        sigma = GroupFunction.indicator(group, complement)
        sigmas.append(sigma)
        kernels.append(idft(sigma))
    return CutoffFamily(group, sets, tuple(sigmas), tuple(kernels), indicator=True)


def _linf_circular_distance(group: FiniteAbelianGroup, support: np.ndarray) -> np.ndarray:
    """dist[x] = min over s in support of max_m circular |x_m - s_m|."""
    coords = group.coords_table()  # (|G|, r)
    sup = coords[support]  # (|K|, r)
    orders = np.asarray(group.factor_orders, dtype=np.int64)
    out = np.full(group.order, np.iinfo(np.int64).max, dtype=np.int64)
    for row in sup:
        diff = np.abs(coords - row[None, :])
        circ = np.minimum(diff, orders[None, :] - diff)
        out = np.minimum(out, circ.max(axis=1) if group.rank else np.zeros(group.order, np.int64))
    return out


def build_neighborhoods(
    support: Iterable[int],
    group: FiniteAbelianGroup,
    strategy: str,
    *,
    radii: Union[Sequence[int], None] = None,
    blocks: Union[Sequence[Sequence[int]], None] = None,
    levels: Union[int, None] = None,
) -> CutoffFamily:
    """Nested neighborhoods of a support set, by one of two strategies.

    metric-shrink: U_i = { x : dist(x, K) <= r_i } for the given
    non-increasing radii (l-infinity circular distance per coordinate).

    quotient-cylinder: `blocks` partitions coordinates into factor blocks;
    U_i is the pre-image of K's projection onto the first i blocks, i.e. a
    compact-open cylinder.  sigma_i is then locally constant and its
    kernel is supported on the subgroup dual to the first i blocks.
    """
    if group.order > MAX_CERTIFICATE_ORDER:
        raise ValueError(
            f"group order {group.order} exceeds certificate cap {MAX_CERTIFICATE_ORDER}"
        )
    k_set = frozenset(int(i) for i in support)
    if not k_set:
        raise ValueError("support must be nonempty")
    if len(k_set) >= group.order:
        raise ValueError("support equals the whole group; no room for neighborhoods")
    if any(not 0 <= i < group.order for i in k_set):
        raise ValueError("support indices out of range")

    if strategy == "metric-shrink":
        if not radii:
            raise ValueError("metric-shrink needs a list of radii")
        radii = [int(r) for r in radii]
        if any(r < 0 for r in radii):
            raise ValueError(f"radii must be >= 0, got {radii}")
        if any(b > a for a, b in zip(radii, radii[1:])):
            raise ValueError(f"radii must be non-increasing, got {radii}")
        dist = _linf_circular_distance(group, np.asarray(sorted(k_set), dtype=np.int64))
        sets = [frozenset(np.flatnonzero(dist <= r).tolist()) for r in radii]
    elif strategy == "quotient-cylinder":
        if not blocks:
            raise ValueError("quotient-cylinder needs coordinate blocks")
        blocks = [list(int(c) for c in b) for b in blocks]
        flat = [c for b in blocks for c in b]
        if len(set(flat)) != len(flat) or any(not 0 <= c < group.rank for c in flat):
            raise ValueError(f"blocks must be disjoint coordinate lists within rank {group.rank}")
        count = levels if levels is not None else len(blocks)
        if not 1 <= count <= len(blocks):
            raise ValueError(f"levels must be in 1..{len(blocks)}")
        coords = group.coords_table()
        k_idx = np.asarray(sorted(k_set), dtype=np.int64)
        sets = []
        cols: list[int] = []
        for i in range(count):
            cols.extend(blocks[i])
            proj_k = {tuple(row) for row in coords[k_idx][:, cols].tolist()}
            member = [tuple(row) in proj_k for row in coords[:, cols].tolist()]
            sets.append(frozenset(np.flatnonzero(member).tolist()))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    for u in sets:
        if not k_set <= u:
            raise AssertionError("constructed neighborhood does not contain the support")
    for a, b in zip(sets, sets[1:]):
        if not b <= a:
            raise AssertionError("constructed neighborhoods are not nested")
    return family_from_neighborhoods(group, sets)


def verify_telescoping(family: CutoffFamily) -> bool:
    """Check sigma_{i+1} * sigma_i = sigma_i and S_{i+1} * S_i = S_i per level.

    The multiplier identity is exact 0/1 arithmetic for indicator
    families; the kernel identity is a convolution check at 1e-10 per
    entry.  A single-level family passes vacuously.
    """
    for i in range(family.levels - 1):
        s_lo = family.sigmas[i].values
        s_hi = family.sigmas[i + 1].values
        if family.indicator:
            lo = s_lo.real == 1
            hi = s_hi.real == 1
            if np.any(lo & ~hi):
                return False
        else:
            if np.max(np.abs(s_hi * s_lo - s_lo)) > 1e-12:
                return False
        conv = convolve(family.kernels[i + 1], family.kernels[i])
        if np.max(np.abs(conv.values - family.kernels[i].values)) > CONV_TOL:
            return False
    return True


@dataclass(frozen=True)
class PuKernelReport:
    """Containment check: the measure's coefficients are killed by every S_i."""

    ok: bool
    witnesses: tuple[tuple[int, int], ...]  # (level, leaked atom index)
    max_residual: float

    def __bool__(self) -> bool:
        return self.ok


def pu_kernel_check(
    family: CutoffFamily, measure: TruncatedMeasure, translate_samples: int = 8
) -> PuKernelReport:
    """Verify S_i annihilates the translates of the measure's coefficients.

    Exactness route: supp(mu) inside U_i means sigma_i * density = 0
    pointwise, so any leaked atom is reported as a witness.  Numerics
    route: max |S_i * mu_hat| over levels and a deterministic sample of
    translates (convolution commutes with translation, so the identity
    translate decides; the sample guards the implementation).
    """
    if measure.group != family.group:
        raise GroupMismatchError("measure and family live on different groups")
    supp = measure.support_indices
    witnesses = []
    for i, u in enumerate(family.neighborhoods):
        for atom in supp:
            if int(atom) not in u:
                witnesses.append((i, int(atom)))
    mu_hat = fourier_stieltjes(measure)
    order = family.group.order
    shifts = sorted({0, *(int(t * order / max(translate_samples, 1)) for t in range(translate_samples))})
    max_residual = 0.0
    tensor = mu_hat.tensor()
    axes = tuple(range(family.group.rank))
    for kernel in family.kernels:
        for shift_idx in shifts:
            shifted = np.roll(tensor, family.group.coords_of(shift_idx), axis=axes) if axes else tensor
            conv = convolve(kernel, GroupFunction(family.group, shifted.reshape(-1)))
            max_residual = max(max_residual, float(np.max(np.abs(conv.values))))
    ok = not witnesses and max_residual <= CONV_TOL
    return PuKernelReport(ok, tuple(witnesses), max_residual)


# ---------------------------------------------------------------------------
# thinness certificates


@dataclass(frozen=True)
class ExhaustionData:
    """The raw subspaces of one exhaustion: E_1 <= E_2 <= ... and the cyclic F."""

    group: FiniteAbelianGroup
    subspaces: tuple[SubspaceBasis, ...]
    cyclic: SubspaceBasis


def exhaustion_data(family: CutoffFamily, measure: TruncatedMeasure) -> ExhaustionData:
    if measure.group != family.group:
        raise GroupMismatchError("measure and family live on different groups")
    subspaces = tuple(kernel_subspace(sigma) for sigma in family.sigmas)
    cyclic = cyclic_invariant_subspace(fourier_stieltjes(measure))
    return ExhaustionData(family.group, subspaces, cyclic)


def _intersection_dim(e_basis: SubspaceBasis, f_basis: SubspaceBasis, dense_limit: int) -> tuple[int, str]:
    """dim(E) + dim(F) - rank([E | F]), dense SVD or support-projected SVD."""
    group = e_basis.ambient_group
    cols = e_basis.dim + f_basis.dim
    if group.order * cols <= dense_limit:
        stacked = np.concatenate([e_basis.matrix, f_basis.matrix], axis=1)
        rank = numeric_rank(stacked)
        return e_basis.dim + f_basis.dim - rank, "dense"
    # project F off span(E): span(E) is exactly the Fourier-coordinate
    # subspace over its support, so the orthoprojector is coordinate
    # masking on the transform side; certify that before using it
    e_support = set(e_basis.fourier_support.tolist())
    f_cols = np.stack([dft(v).values for v in f_basis.vectors], axis=1) if f_basis.dim else np.zeros((group.order, 0), np.complex128)
    for j in range(e_basis.dim):
        col_hat = dft(e_basis.vectors[j]).values
        off = np.delete(np.abs(col_hat), e_basis.fourier_support)
        if off.size and off.max() > 1e-9 * math.sqrt(group.order):
            raise CertificateLawError("kernel basis is not coordinate-aligned on the Fourier side")
    mask = np.ones(group.order, dtype=bool)
    mask[np.asarray(sorted(e_support), dtype=np.int64)] = False
    projected = f_cols[mask, :] / math.sqrt(group.order)
    rank = e_basis.dim + numeric_rank(projected)
    return e_basis.dim + f_basis.dim - rank, "projected"


@dataclass(frozen=True)
class ThinnessCertificate:
    """Dimension bookkeeping and the thin verdict for one model."""

    model: str
    group: FiniteAbelianGroup
    dims_E: tuple[int, ...]
    dim_F: int
    intersection_dims: tuple[int, ...]
    density_profile: tuple[Fraction, ...]
    verdict: bool
    complement_sizes: tuple[int, ...]
    support_size: int
    pu_ok: bool
    pu_witnesses: tuple[tuple[int, int], ...]
    rank_mode: str
    tolerances: tuple[tuple[str, float], ...]

    def to_json_dict(self) -> dict:
        return {
            "model": self.model,
            "group": self.group.literal(),
            "dims_E": list(self.dims_E),
            "dim_F": self.dim_F,
            "intersection_dims": list(self.intersection_dims),
            "density_profile": [f"{d.numerator}/{d.denominator}" for d in self.density_profile],
            "verdict": self.verdict,
            "complement_sizes": list(self.complement_sizes),
            "support_size": self.support_size,
            "pu_kernel_ok": self.pu_ok,
            "pu_witnesses": [list(w) for w in self.pu_witnesses],
            "rank_mode": self.rank_mode,
            "tolerances": {k: v for k, v in self.tolerances},
        }


def thinness_certificate(
    family: CutoffFamily,
    measure: TruncatedMeasure,
    model: str = "",
    dense_limit: int = 1 << 21,
) -> ThinnessCertificate:
    """Build and cross-verify a thinness certificate.

    Two independent routes must agree or the whole computation aborts:
    (1) numerical ranks of explicit stacked bases decide dim(E_i cap F);
    (2) exact counting: dim E_i = |complement of U_i|, dim F = |supp mu|,
    and E_i cap F = 0 iff no atom of mu lies outside U_i.
    """
    if not family.indicator:
        raise ValueError("certificates require indicator cutoff families")
    data = exhaustion_data(family, measure)
    order = family.group.order
    supp = set(int(i) for i in measure.support_indices)

    dims_e = []
    inter_dims = []
    rank_mode = "dense"
    for level, (basis, u) in enumerate(zip(data.subspaces, family.neighborhoods)):
        expected_dim = order - len(u)
        if basis.dim != expected_dim:
            raise CertificateLawError(
                f"level {level}: kernel dim {basis.dim} != complement size {expected_dim}"
            )
        inter, mode = _intersection_dim(basis, data.cyclic, dense_limit)
        rank_mode = mode
        exact_inter = len(supp - u)
        if inter != exact_inter:
            raise CertificateLawError(
                f"level {level}: rank intersection {inter} != exact atom count {exact_inter}"
            )
        dims_e.append(basis.dim)
        inter_dims.append(inter)

    if data.cyclic.dim != measure.support_size:
        raise CertificateLawError(
            f"cyclic dim {data.cyclic.dim} != measure support size {measure.support_size}"
        )

    profile = tuple(Fraction(d, order) for d in dims_e)
    strictly_increasing = all(a < b for a, b in zip(profile, profile[1:]))
    verdict = data.cyclic.dim >= 1 and all(d == 0 for d in inter_dims) and strictly_increasing
    pu = pu_kernel_check(family, measure)
    return ThinnessCertificate(
        model=model,
        group=family.group,
        dims_E=tuple(dims_e),
        dim_F=data.cyclic.dim,
        intersection_dims=tuple(inter_dims),
        density_profile=profile,
        verdict=verdict,
        complement_sizes=tuple(family.complement_sizes()),
        support_size=measure.support_size,
        pu_ok=pu.ok,
        pu_witnesses=pu.witnesses,
        rank_mode=rank_mode,
        tolerances=(
            ("rank_threshold", RANK_THRESHOLD),
            ("convolution", CONV_TOL),
            ("invariance", INVARIANCE_TOL),
        ),
    )


def density_profile_check(certificate: ThinnessCertificate, target) -> bool:
    """Profile strictly increasing and the final density at least `target`."""
    profile = certificate.density_profile
    if not profile:
        return False
    increasing = all(a < b for a, b in zip(profile, profile[1:]))
    return increasing and profile[-1] >= Fraction(target)


def translation_invariance_residual(basis: SubspaceBasis) -> float:
    """max over group translates g and basis vectors v of || t_g v - P t_g v ||_2."""
    group = basis.ambient_group
    if basis.dim == 0:
        return 0.0
    q, _ = np.linalg.qr(basis.matrix)
    coords = group.coords_table()
    worst = 0.0
    tensor_shape = group.factor_orders if group.rank else (1,)
    axes = tuple(range(group.rank))
    for g in range(group.order):
        shift = coords[g]
        translated = np.stack(
            [
                np.roll(basis.matrix[:, j].reshape(tensor_shape), shift, axis=axes).reshape(-1)
                if group.rank
                else basis.matrix[:, j]
                for j in range(basis.dim)
            ],
            axis=1,
        )
        resid = translated - q @ (q.conj().T @ translated)
        worst = max(worst, float(np.linalg.norm(resid, axis=0).max()))
    return worst


# ---------------------------------------------------------------------------
# induction from subgroups


def canonical_exhaustion(
    group: FiniteAbelianGroup,
) -> tuple[CutoffFamily, TruncatedMeasure, ExhaustionData]:
    """A standard thin exhaustion on any group of order >= 2.

    The measure is the point mass at the first nonzero element e; the
    neighborhoods are (all nonzero elements, {e}) - just ({e}) when the
    group has order 2.  E_1 is the constants, the last E has codimension
    one, and F is the span of one character.
    """
    if group.order < 2:
        raise ValueError("need a nontrivial group")
    e = 1  # first nonzero flat index
    measure = TruncatedMeasure.uniform_on(group, [e])
    if group.order == 2:
        sets = [[e]]
    else:
        sets = [list(range(1, group.order)), [e]]
    family = family_from_neighborhoods(group, sets)
    return family, measure, exhaustion_data(family, measure)


@dataclass(frozen=True, eq=False)
class InducedExhaustion:
    """Subgroup exhaustion transported to the ambient group, with its checks."""

    group: FiniteAbelianGroup
    subgroup: FiniteAbelianGroup
    index: int  # [G : H]
    data: ExhaustionData  # induced subspaces on the ambient group
    dims_E_subgroup: tuple[int, ...]
    dims_E: tuple[int, ...]
    dim_F: int
    intersection_dims: tuple[int, ...]
    cocycle_ok: bool
    invariance_residual: float
    isometry_error: float
    verdict: bool

    def to_json_dict(self) -> dict:
        return {
            "group": self.group.literal(),
            "subgroup": self.subgroup.literal(),
            "index": self.index,
            "dims_E_subgroup": list(self.dims_E_subgroup),
            "dims_E": list(self.dims_E),
            "dim_F": self.dim_F,
            "intersection_dims": list(self.intersection_dims),
            "cocycle_ok": self.cocycle_ok,
            "invariance_residual": self.invariance_residual,
            "isometry_error": self.isometry_error,
            "verdict": self.verdict,
        }


def _restriction_indices(
    group: FiniteAbelianGroup, embedding: SubgroupEmbedding
) -> np.ndarray:
    """For each dual element g of G, the dual element of H it restricts to.

    The character x -> <g, embed(x)> of the abstract subgroup has
    coordinates phi_i = d_i * frac(sum_m g_m embed(e_i)_m / n_m), an exact
    integer computed in rational arithmetic.
    """
    sub = embedding.subgroup
    gens = []
    for i in range(sub.rank):
        unit = [0] * sub.rank
        unit[i] = 1
        gens.append(embedding.embed(tuple(unit)))
    out = np.zeros(group.order, dtype=np.int64)
    for g in range(group.order):
        gc = group.coords_of(g)
        coords = []
        for i, d in enumerate(sub.factor_orders):
            phase = Fraction(0)
            for gm, hm, n in zip(gc, gens[i], group.factor_orders):
                phase += Fraction(gm * hm, n)
            phase -= math.floor(phase)
            value = phase * d
            if value.denominator != 1:
                raise AssertionError("restriction of a character is not a character")
            coords.append(int(value) % d)
        out[g] = sub.index_of(tuple(coords))
    return out


def induce_exhaustion(
    h_data: ExhaustionData,
    group: FiniteAbelianGroup,
    generators,
    *,
    seed: int = 7,
) -> InducedExhaustion:
    """Transport a thin exhaustion on a subgroup H <= G to the whole group.

    Coset representatives are lexicographically minimal; the cocycle
    c(g, x) = g + s(x) - s(g.x) is verified to land in H for every pair
    (g, x).  Each subspace V on H induces the coset-block space
    {f : every coset block of f, unpacked through the section, lies in V}
    whose dimension is [G:H] * dim V; unpacking is a coordinate
    permutation, hence an exact l^p isometry (spot-checked for
    p in {2.5, 3, 4} on seeded vectors).
    """
    if group.order > MAX_CERTIFICATE_ORDER:
        raise ValueError(f"group order {group.order} exceeds cap {MAX_CERTIFICATE_ORDER}")
    embedding = subgroup_embedding(group, generators)
    if embedding.subgroup.factor_orders != h_data.group.factor_orders:
        raise GroupMismatchError(
            f"subgroup decomposes as {embedding.subgroup.literal()}, "
            f"but the exhaustion lives on {h_data.group.literal()}"
        )
    # the input model must be thin before we transport it
    for basis in h_data.subspaces:
        stacked = np.concatenate([basis.matrix, h_data.cyclic.matrix], axis=1)
        if basis.dim + h_data.cyclic.dim - numeric_rank(stacked) != 0:
            raise ValueError("subgroup exhaustion is not thin; nothing to induce")

    qm = quotient_map(group, generators)
    index = qm.quotient.order
    h_order = embedding.order
    if index * h_order != group.order:
        raise AssertionError("coset count does not match subgroup order")

    # lexicographically minimal representatives: first hit in flat order
    reps = np.full(index, -1, dtype=np.int64)
    for x in range(group.order):
        q = int(qm.projection[x])
        if reps[q] < 0:
            reps[q] = x

    h_index_set = embedding.index_set()
    coset_positions = np.zeros((index, h_order), dtype=np.int64)
    for q in range(index):
        rep = group.coords_of(int(reps[q]))
        for a in range(h_order):
            h_el = group.coords_of(int(embedding.element_indices[a]))
            coset_positions[q, a] = group.index_of(group.add(rep, h_el))

    # cocycle: c(g, x) = g + s(x) - s(g.x), must always land in H
    cocycle_ok = True
    for g in range(group.order):
        gc = group.coords_of(g)
        for q in range(index):
            s_x = group.coords_of(int(reps[q]))
            moved = group.add(gc, s_x)
            target = int(qm.projection[group.index_of(moved)])
            s_gx = group.coords_of(int(reps[target]))
            c = group.index_of(group.add(moved, group.neg(s_gx)))
            if c not in h_index_set:
                cocycle_ok = False
            if group.add(s_gx, group.coords_of(c)) != moved:
                cocycle_ok = False

    def induce_basis(basis: SubspaceBasis) -> SubspaceBasis:
        dim = index * basis.dim
        mat = np.zeros((group.order, dim), dtype=np.complex128)
        col = 0
        for q in range(index):
            for j in range(basis.dim):
                mat[coset_positions[q], col] = basis.matrix[:, j]
                col += 1
        if numeric_rank(mat) != dim:
            raise CertificateLawError("induced basis lost rank")
        restriction = _restriction_indices(group, embedding)
        support = np.flatnonzero(np.isin(restriction, basis.fourier_support))
        if support.size != dim:
            raise CertificateLawError("induced Fourier support has the wrong size")
        return SubspaceBasis(group, mat, dim, support, basis.approximate)

    induced_e = tuple(induce_basis(b) for b in h_data.subspaces)
    induced_f = induce_basis(h_data.cyclic)
    data = ExhaustionData(group, induced_e, induced_f)

    inter_dims = []
    for basis in induced_e:
        stacked = np.concatenate([basis.matrix, induced_f.matrix], axis=1)
        inter_dims.append(basis.dim + induced_f.dim - numeric_rank(stacked))

    invariance = max(
        [translation_invariance_residual(b) for b in (*induced_e, induced_f)],
        default=0.0,
    )

    rng = np.random.default_rng(seed)
    perm = coset_positions.reshape(-1)
    isometry_error = 0.0
    for p in (2.5, 3.0, 4.0):
        for _ in range(4):
            v = rng.normal(size=group.order) + 1j * rng.normal(size=group.order)
            fn = GroupFunction(group, v)
            packed = GroupFunction(group, v[perm])
            isometry_error = max(isometry_error, abs(lp_norm(fn, p) - lp_norm(packed, p)))

    verdict = (
        cocycle_ok
        and all(d == 0 for d in inter_dims)
        and induced_f.dim >= 1
        and invariance < INVARIANCE_TOL
        and isometry_error < 1e-12
    )
    return InducedExhaustion(
        group=group,
        subgroup=embedding.subgroup,
        index=index,
        data=data,
        dims_E_subgroup=tuple(b.dim for b in h_data.subspaces),
        dims_E=tuple(b.dim for b in induced_e),
        dim_F=induced_f.dim,
        intersection_dims=tuple(inter_dims),
        cocycle_ok=cocycle_ok,
        invariance_residual=invariance,
        isometry_error=isometry_error,
        verdict=verdict,
    )
