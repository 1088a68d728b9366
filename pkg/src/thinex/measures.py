"""Measure constructions and convergence diagnostics.

Two families of measures live here.

* The product construction on a tower A_0 + A_1 + ... + A_J, where A_0
  carries the uniform distribution and each A_j (j >= 1) the uniform
  distribution on its nonzero elements.  Its Fourier-Stieltjes
  coefficients, support density and l^p norms all have closed forms, and
  every closed form is paired with a direct-transform oracle.

* Circle stand-ins on Z/N: Cantor-type digit sets (null-density support)
  and Riesz products (explicit product coefficients).  Neither has both
  properties at once; the diagnostics quantify each separately.

Infinite products/series are only ever certified through finite
truncations: monotone trends plus geometric ratio tests, never claims
about actual limits.

Fourier-Stieltjes convention: for a probability vector w on the model
group, mu_hat(g) = sum_x w(x) * conj(<g,x>) = |G| * idft(w).  With the
conjugate kernel the transform of mu_hat recovers |G| * w on the nose
(no reflection), so support bookkeeping downstream is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .groups import (
    FiniteAbelianGroup,
    GroupFunction,
    dft,
    idft,
    lp_norm,
)

__all__ = [
    "ProductMeasureSpec",
    "TruncatedMeasure",
    "CantorModel",
    "RieszModel",
    "regroup_schedule",
    "build_truncated_measure",
    "fourier_stieltjes",
    "mu_hat_factor",
    "lp_norm_factor_closed_form",
    "support_haar_density",
    "support_density_decay",
    "lp_series_tail",
    "lp_norm_truncated_product",
    "lp_norm_truncated_measure_dft",
    "cantor_support",
    "riesz_product_coefficients",
    "saeki_diagnostic",
    "smooth_cutoff_coefficients",
    "arc_indices",
    "symbol_zero_diagnostics",
]

#: largest group we are willing to materialize atom weights on
MAX_MEASURE_ORDER = 1_000_000


def regroup_schedule(block_order: int, count: int) -> list[int]:
    """First `count` cell sizes of the regrouping schedule.

    The value k^n occurs exactly k^n times (n = 1, 2, ...), in
    non-decreasing order, where k is the block order.
    """
    if block_order < 2:
        raise ValueError(f"block order must be >= 2, got {block_order}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    out: list[int] = []
    n = 1
    while len(out) < count:
        cell = block_order**n
        out.extend([cell] * cell)
        n += 1
    return out[:count]


@dataclass(frozen=True)
class ProductMeasureSpec:
    """Tower A_0 + A_1 + ... + A_J built from copies of a block group.

    The j-th punctured factor A_j is block^n (n-fold direct sum) where the
    schedule says the j-th cell has size k^n; its order c_j = k^n.
    """

    base_group: FiniteAbelianGroup  # A_0, uniform in full
    block_group: FiniteAbelianGroup  # B; |B| = k >= 2
    depth: int  # J, number of punctured factors

    def __post_init__(self):
        if self.block_group.order < 2:
            raise ValueError("block group must be nontrivial")
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")

    @property
    def block_order(self) -> int:
        return self.block_group.order

    def cell_sizes(self) -> list[int]:
        """The sizes c_1..c_J of the punctured factors."""
        return regroup_schedule(self.block_order, self.depth)

    def punctured_groups(self) -> list[FiniteAbelianGroup]:
        k = self.block_order
        groups = []
        for c in self.cell_sizes():
            n = round(math.log(c, k))
            g = FiniteAbelianGroup.trivial()
            for _ in range(n):
                g = g.direct_sum(self.block_group)
            groups.append(g)
        return groups

    def group(self) -> FiniteAbelianGroup:
        return self.base_group.direct_sum(*self.punctured_groups())

    def group_order(self) -> int:
        return self.base_group.order * math.prod(self.cell_sizes())

    def support_size(self) -> int:
        return self.base_group.order * math.prod(c - 1 for c in self.cell_sizes())

    def coordinate_blocks(self) -> list[list[int]]:
        """Coordinate indices of each punctured factor inside the full group."""
        blocks = []
        offset = self.base_group.rank
        for g in self.punctured_groups():
            blocks.append(list(range(offset, offset + g.rank)))
            offset += g.rank
        return blocks


@dataclass(frozen=True)
class TruncatedMeasure:
    """A probability measure with finitely many atoms on a model group."""

    group: FiniteAbelianGroup
    weights: GroupFunction
    support_size: int
    spec: Union[ProductMeasureSpec, None] = None

    def __post_init__(self):
        w = self.weights.values
        if np.any(w.real < 0) or np.any(np.abs(w.imag) > 0):
            raise ValueError("measure weights must be non-negative reals")
        total = float(np.sum(w.real))
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {total!r}, not 1")
        count = int(np.count_nonzero(w.real > 0))
        if count != self.support_size:
            raise ValueError(
                f"declared support size {self.support_size}, counted {count}"
            )

    @classmethod
    def uniform_on(cls, group: FiniteAbelianGroup, indices: Iterable[int]) -> "TruncatedMeasure":
        idx = np.asarray(sorted(int(i) for i in indices), dtype=np.int64)
        if idx.size == 0:
            raise ValueError("uniform measure needs a nonempty support")
        vals = np.zeros(group.order, dtype=np.complex128)
        vals[idx] = 1.0 / idx.size
        return cls(group, GroupFunction(group, vals), int(idx.size))

    @property
    def support_indices(self) -> np.ndarray:
        return np.flatnonzero(self.weights.values.real > 0)


def build_truncated_measure(spec: ProductMeasureSpec, max_order: int = MAX_MEASURE_ORDER) -> TruncatedMeasure:
    """Materialize the product measure at depth J.

    Atom weights are the tensor product of the per-factor weight vectors,
    so the support count |A_0| * prod(c_j - 1) is exact by construction
    and re-verified by counting.
    """
    order = spec.group_order()
    if order > max_order:
        raise ValueError(f"group order {order} exceeds cap {max_order}")
    group = spec.group()
    weights = np.ones(1, dtype=np.float64)
    if spec.base_group.order > 1:
        weights = np.kron(weights, np.full(spec.base_group.order, 1.0 / spec.base_group.order))
    for c in spec.cell_sizes():
        block = np.full(c, 1.0 / (c - 1)) if c > 1 else np.ones(c)
        block[0] = 0.0
        weights = np.kron(weights, block)
    if weights.size != group.order:  # trivial tower: single atom at 0
        weights = np.ones(group.order, dtype=np.float64)
    return TruncatedMeasure(
        group, GroupFunction(group, weights.astype(np.complex128)), spec.support_size(), spec
    )


def fourier_stieltjes(measure: Union[TruncatedMeasure, GroupFunction]) -> GroupFunction:
    """Coefficients mu_hat(g) = sum_x mu({x}) conj(<g,x>) of an atomic measure.

    Equal to |G| * idft(weights); with this (conjugate-kernel) convention
    dft(mu_hat) = |G| * weights exactly, so the support of the measure and
    the multiplier side of mu_hat coincide without reflection.
    """
    w = measure.weights if isinstance(measure, TruncatedMeasure) else measure
    transformed = idft(w)
    return GroupFunction(w.group, transformed.values * w.group.order)


def mu_hat_factor(cell_size: int, zero: bool) -> float:
    """Coefficient of one punctured factor: 1 at the zero character, else -1/(c-1)."""
    if cell_size < 2:
        raise ValueError(f"cell size must be >= 2, got {cell_size}")
    return 1.0 if zero else -1.0 / (cell_size - 1)


def lp_norm_factor_closed_form(cell_size: int, p: float) -> float:
    """||mu_hat_j||_p^p = 1 + (c-1)^(1-p) for the uniform-on-nonzero factor."""
    if cell_size < 2:
        raise ValueError(f"cell size must be >= 2, got {cell_size}")
    if not p > 1:
        raise ValueError(f"requires p > 1, got {p}")
    return 1.0 + (cell_size - 1) ** (1.0 - p)


def support_haar_density(spec: ProductMeasureSpec) -> Fraction:
    """Exact Haar measure prod_j (1 - 1/c_j) of the truncated support."""
    density = Fraction(1)
    for c in spec.cell_sizes():
        density *= Fraction(c - 1, c)
    return density


@dataclass(frozen=True)
class DecayRow:
    depth: int
    density: Fraction
    inverse_cell_sum: Fraction


@dataclass(frozen=True)
class DecayReport:
    block_order: int
    rows: tuple[DecayRow, ...]

    @property
    def strictly_decreasing(self) -> bool:
        dens = [r.density for r in self.rows]
        return all(a > b for a, b in zip(dens, dens[1:]))


def support_density_decay(block_order: int, depth_max: int) -> DecayReport:
    """Density and partial harmonic sums sum 1/c_j along growing depth.

    Each full size-k^n cell block contributes exactly 1 to the harmonic
    sum, which is why the infinite product vanishes.
    """
    if depth_max < 1:
        raise ValueError(f"depth_max must be >= 1, got {depth_max}")
    cells = regroup_schedule(block_order, depth_max)
    rows = []
    density = Fraction(1)
    harmonic = Fraction(0)
    for j, c in enumerate(cells, start=1):
        density *= Fraction(c - 1, c)
        harmonic += Fraction(1, c)
        rows.append(DecayRow(j, density, harmonic))
    return DecayReport(block_order, tuple(rows))


@dataclass(frozen=True)
class SeriesRow:
    n: int
    term: float
    partial_sum: float
    ratio: float  # term_n / term_{n-1}; nan for the first row


@dataclass(frozen=True)
class SeriesReport:
    block_order: int
    exponent: float
    rows: tuple[SeriesRow, ...]
    limit_ratio: float  # analytic term-ratio limit k^(2-p)
    converges: bool  # analytic: p > 2

    @property
    def final_partial_sum(self) -> float:
        return self.rows[-1].partial_sum

    def geometric_tail_bound(self) -> float:
        """Upper bound on the tail after the last term, valid when ratios < 1."""
        r = self.limit_ratio
        if not r < 1:
            return math.inf
        return self.rows[-1].term * r / (1.0 - r)


def lp_series_tail(block_order: int, p: float, n_max: int) -> SeriesReport:
    """Partial sums of sum_n k^n (k^n - 1)^(1-p), the block-collapsed norm series.

    The term ratio tends to k^(2-p): geometric decay exactly when p > 2,
    terms bounded below (sums unbounded) when p <= 2.
    """
    if block_order < 2:
        raise ValueError(f"block order must be >= 2, got {block_order}")
    if not p > 1:
        raise ValueError(f"requires p > 1, got {p}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    rows = []
    total = 0.0
    prev = math.nan
    for n in range(1, n_max + 1):
        kn = block_order**n
        # exact integer kn; logs keep large kn overflow-free
        term = math.exp(math.log(kn) + (1.0 - p) * math.log(kn - 1))
        total += term
        ratio = term / prev if rows else math.nan
        rows.append(SeriesRow(n, term, total, ratio))
        prev = term
    return SeriesReport(
        block_order=block_order,
        exponent=p,
        rows=tuple(rows),
        limit_ratio=float(block_order) ** (2.0 - p),
        converges=p > 2,
    )


def lp_norm_truncated_product(spec: ProductMeasureSpec, p: float) -> float:
    """||mu_hat||_p^p of the truncated measure from per-factor closed forms.

    The A_0 factor is computed by direct transform (its coefficients are
    the indicator of the zero character, so the factor is 1); the
    punctured factors use 1 + (c-1)^(1-p).
    """
    if not p > 1:
        raise ValueError(f"requires p > 1, got {p}")
    if spec.base_group.order > 1:
        base_uniform = TruncatedMeasure.uniform_on(
            spec.base_group, range(spec.base_group.order)
        )
        base_factor = lp_norm(fourier_stieltjes(base_uniform), p) ** p
    else:
        base_factor = 1.0
    out = base_factor
    for c in spec.cell_sizes():
        out *= lp_norm_factor_closed_form(c, p)
    return out


def lp_norm_truncated_measure_dft(measure: TruncatedMeasure, p: float) -> float:
    """Independent oracle: ||fourier_stieltjes(mu)||_p^p by direct transform."""
    return lp_norm(fourier_stieltjes(measure), p) ** p


# ---------------------------------------------------------------------------
# circle stand-ins on Z/N


def cantor_support(resolution: int, base: int, digits: Sequence[int]) -> np.ndarray:
    """Residues mod N = base^m whose m base-`base` digits all lie in `digits`."""
    if base < 2:
        raise ValueError(f"digit base must be >= 2, got {base}")
    m = round(math.log(resolution, base))
    if base**m != resolution:
        raise ValueError(f"resolution {resolution} is not a power of base {base}")
    digit_set = sorted(set(int(d) for d in digits))
    if not digit_set:
        raise ValueError("allowed digit set is empty")
    if any(d < 0 or d >= base for d in digit_set):
        raise ValueError(f"digits {digit_set} out of range for base {base}")
    if len(digit_set) ** m > MAX_MEASURE_ORDER:
        raise ValueError("support too large to enumerate")
    out = np.zeros(1, dtype=np.int64)
    for _ in range(m):
        out = (out[:, None] * base + np.asarray(digit_set, dtype=np.int64)[None, :]).reshape(-1)
    out.sort()
    return out


@dataclass(frozen=True)
class CantorModel:
    """Digit-restricted subset of Z/(base^m): null-density closed support."""

    resolution: int
    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(sorted(set(int(d) for d in self.digits))))
        cantor_support(self.resolution, self.base, self.digits)  # validates

    def support(self) -> np.ndarray:
        return cantor_support(self.resolution, self.base, self.digits)

    def density(self) -> Fraction:
        m = round(math.log(self.resolution, self.base))
        return Fraction(len(self.digits), self.base) ** m

    def measure(self) -> TruncatedMeasure:
        group = FiniteAbelianGroup.cyclic(self.resolution)
        return TruncatedMeasure.uniform_on(group, self.support())


@dataclass(frozen=True)
class RieszModel:
    """Product of cosine bumps with lacunary frequencies, sampled on Z/N.

    Frequencies must satisfy n_{j+1} >= 3 n_j and sum n_j < N/2, which
    makes every signed frequency sum distinct: coefficients are then
    exactly products of the half-amplitudes.
    """

    resolution: int
    amplitudes: tuple[float, ...]
    frequencies: tuple[int, ...]

    def __post_init__(self):
        amps = tuple(float(a) for a in self.amplitudes)
        freqs = tuple(int(n) for n in self.frequencies)
        if len(amps) != len(freqs):
            raise ValueError("amplitude and frequency lists differ in length")
        if any(not 0 < a <= 1 for a in amps):
            raise ValueError(f"amplitudes must lie in (0, 1], got {amps}")
        if any(n <= 0 for n in freqs):
            raise ValueError("frequencies must be positive")
        for a, b in zip(freqs, freqs[1:]):
            if b < 3 * a:
                raise ValueError(
                    f"lacunarity violated: {b} < 3*{a}; coefficients would collide"
                )
        if 2 * sum(freqs) >= self.resolution:
            raise ValueError(
                f"frequency sum {sum(freqs)} must stay below resolution/2 = {self.resolution / 2}"
            )
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "frequencies", freqs)

    def coefficients(self) -> GroupFunction:
        return riesz_product_coefficients(self.amplitudes, self.frequencies, self.resolution)

    def norm_closed_form(self, p: float) -> float:
        """||mu_hat||_p^p = prod_j (1 + 2 (a_j/2)^p), exact when no collisions."""
        return math.prod(1.0 + 2.0 * (a / 2.0) ** p for a in self.amplitudes)

    def measure(self) -> TruncatedMeasure:
        """Sampled density (1/N) prod (1 + a_j cos(2 pi n_j t/N)); full support unless some a_j = 1."""
        group = FiniteAbelianGroup.cyclic(self.resolution)
        coeffs = self.coefficients()
        density = dft(coeffs).values / self.resolution
        if np.max(np.abs(density.imag)) > 1e-12:
            raise AssertionError("Riesz density should be real")
        w = np.where(density.real > 1e-15, density.real, 0.0)
        w = w / w.sum()
        return TruncatedMeasure(
            group,
            GroupFunction(group, w.astype(np.complex128)),
            int(np.count_nonzero(w > 0)),
        )


def riesz_product_coefficients(
    amplitudes: Sequence[float], frequencies: Sequence[int], resolution: int
) -> GroupFunction:
    """Fourier-Stieltjes coefficients of the Riesz product on Z/N.

    mu_hat(sum eps_j n_j) = prod_j (a_j/2)^|eps_j| over eps_j in {-1,0,1},
    zero elsewhere; mu_hat(0) = 1.  The empty product is the uniform
    (Lebesgue stand-in) measure: a single 1 at the zero frequency.
    """
    model_check = RieszModel(resolution, tuple(amplitudes) or (), tuple(frequencies) or ())
    group = FiniteAbelianGroup.cyclic(resolution)
    vals = np.zeros(resolution, dtype=np.complex128)
    vals[0] = 1.0
    for a, n in zip(model_check.amplitudes, model_check.frequencies):
        vals = vals + (a / 2.0) * (np.roll(vals, n) + np.roll(vals, -n))
    return GroupFunction(group, vals)


def saeki_diagnostic(mu_hat: GroupFunction, phi0: str, p: float) -> float:
    """Weighted coefficient sum  sum_g |mu_hat(g)|^2 * |phi0(|mu_hat(g)|)|.

    phi0 = "power" uses |x|^(p-2) (so the sum is exactly ||mu_hat||_p^p);
    phi0 = "exp_sqrt_log" uses exp(-sqrt(|log|x||)).  Both are pinned to 0
    at x = 0.
    """
    mags = np.abs(mu_hat.values)
    nonzero = mags > 0
    weights = np.zeros_like(mags)
    if phi0 == "power":
        weights[nonzero] = mags[nonzero] ** (p - 2.0)
    elif phi0 == "exp_sqrt_log":
        weights[nonzero] = np.exp(-np.sqrt(np.abs(np.log(mags[nonzero]))))
    else:
        raise ValueError(f"phi0 must be 'power' or 'exp_sqrt_log', got {phi0!r}")
    return float(np.sum(mags**2 * weights))


# ---------------------------------------------------------------------------
# smooth cutoffs on Z/N


def arc_indices(resolution: int, lo, hi) -> frozenset[int]:
    """Grid points x with lo <= x/N < hi on the circle; wraps when lo > hi."""
    lo = Fraction(lo)
    hi = Fraction(hi)
    lo -= math.floor(lo)
    hi -= math.floor(hi)
    xs = np.arange(resolution)
    fracs = [Fraction(int(x), resolution) for x in xs]
    if lo <= hi:
        picked = [int(x) for x, f in zip(xs, fracs) if lo <= f < hi]
    else:
        picked = [int(x) for x, f in zip(xs, fracs) if f >= lo or f < hi]
    return frozenset(picked)


def _circular_distance_to(resolution: int, indices: np.ndarray) -> np.ndarray:
    """dist[x] = min over s in indices of circular distance |x - s|."""
    xs = np.arange(resolution)[:, None]
    ss = np.asarray(indices, dtype=np.int64)[None, :]
    diff = np.abs(xs - ss)
    return np.minimum(diff, resolution - diff).min(axis=1)


def _bump_step(s: np.ndarray) -> np.ndarray:
    """The standard C-infinity step h(s)/(h(s)+h(1-s)), h(t)=exp(-1/t)."""

    def h(t):
        out = np.zeros_like(t)
        pos = t > 0
        out[pos] = np.exp(-1.0 / t[pos])
        return out

    hs = h(s)
    return hs / (hs + h(1.0 - s))


@dataclass(frozen=True)
class SmoothCutoff:
    """Sampled cutoff, its coefficient kernel, and the decay certificate."""

    resolution: int
    order: int
    sigma: GroupFunction
    kernel: GroupFunction  # S = dft(sigma)/N
    weighted_max: tuple[float, ...]  # m -> max_n |S(n)| (1+|n|)^m, m = 0..order
    l1_norm: float

    def weighted_max_windowed(self, half_width: int) -> tuple[float, ...]:
        """Same maxima restricted to |n| <= half_width (for cross-resolution comparison)."""
        n = np.arange(self.resolution)
        circ = np.minimum(n, self.resolution - n)
        mask = circ <= half_width
        mags = np.abs(self.kernel.values)[mask]
        weights = 1.0 + circ[mask].astype(np.float64)
        return tuple(float(np.max(mags * weights**m)) for m in range(self.order + 1))


def smooth_cutoff_coefficients(
    resolution: int,
    outer: Iterable[int],
    inner: Iterable[int],
    order: int,
) -> SmoothCutoff:
    """Sample a smooth 0/1 transition: 0 on the inner set (plus one guard
    step, the grid proxy for its closure), 1 off the outer set, a fixed
    exp(-1/x) smoothstep ramp on the gap.

    Reports max_n |S(n)| (1+|n|)^m for m up to `order` and the l1 mass of
    S = dft(sigma)/N, the finite proxies for coefficient summability.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    group = FiniteAbelianGroup.cyclic(resolution)
    outer_set = frozenset(int(i) % resolution for i in outer)
    inner_set = frozenset(int(i) % resolution for i in inner)
    if inner_set and not inner_set <= outer_set:
        raise ValueError("inner set must be contained in the outer set")
    if inner_set:
        closure = inner_set | {(i + 1) % resolution for i in inner_set} | {
            (i - 1) % resolution for i in inner_set
        }
        if not closure <= outer_set:
            raise ValueError("need at least one grid step between inner closure and outer boundary")

    sigma = np.ones(resolution, dtype=np.float64)
    if inner_set:
        d_in = _circular_distance_to(resolution, np.asarray(sorted(inner_set)))
        complement = sorted(set(range(resolution)) - outer_set)
        if complement:
            d_out = _circular_distance_to(resolution, np.asarray(complement))
        else:
            d_out = np.full(resolution, resolution, dtype=np.int64)
        sigma[np.asarray(sorted(closure), dtype=np.int64)] = 0.0
        gap = np.asarray(sorted(outer_set - closure), dtype=np.int64)
        if gap.size:
            s = (d_in[gap] - 1.0) / (d_in[gap] - 1.0 + d_out[gap])
            sigma[gap] = _bump_step(s)

    sigma_fn = GroupFunction(group, sigma.astype(np.complex128))
    kernel = GroupFunction(group, dft(sigma_fn).values / resolution)
    n = np.arange(resolution)
    circ = np.minimum(n, resolution - n).astype(np.float64)
    mags = np.abs(kernel.values)
    weighted = tuple(float(np.max(mags * (1.0 + circ) ** m)) for m in range(order + 1))
    return SmoothCutoff(
        resolution=resolution,
        order=order,
        sigma=sigma_fn,
        kernel=kernel,
        weighted_max=weighted,
        l1_norm=float(np.sum(mags)),
    )


# ---------------------------------------------------------------------------
# symbol sublevel diagnostics for translation-invariant operators on Z^d


@dataclass(frozen=True)
class SublevelRow:
    threshold: float
    fraction: float


@dataclass(frozen=True)
class SymbolReport:
    dimension: int
    resolution: int
    rows: tuple[SublevelRow, ...]
    slope: Union[float, None]  # fitted d log(fraction) / d log(threshold)
    inverse_moments: tuple[tuple[float, float], ...]  # (q, mean |symbol|^-q)
    min_abs: float
    max_abs: float


def symbol_zero_diagnostics(
    coefficients: dict,
    resolution: int,
    thresholds: Union[Sequence[float], None] = None,
    q_exponents: Sequence[float] = (0.5, 1.0, 2.0),
) -> SymbolReport:
    """Grid study of the trigonometric symbol sum_t c_t exp(2 pi i t.theta).

    Samples at cell centers (j+1/2)/R (dodging lattice zeros), reports the
    fraction of cells with |symbol| < theta for a threshold sweep, a
    log-log slope fit as the empirical sublevel-scaling exponent, and grid
    means of |symbol|^-q as integrability probes.
    """
    terms = [(tuple(int(c) for c in (k if isinstance(k, tuple) else (k,))), complex(v))
             for k, v in coefficients.items()]
    terms = [(k, v) for k, v in terms if v != 0]
    if not terms:
        raise ValueError("zero polynomial has no symbol diagnostics")
    dim = len(terms[0][0])
    if any(len(k) != dim for k, _ in terms):
        raise ValueError("all coefficient multi-indices must share one dimension")
    if not 1 <= dim <= 3:
        raise ValueError(f"dimension must be 1..3, got {dim}")
    if not 2 <= resolution <= 512:
        raise ValueError(f"resolution must be in [2, 512], got {resolution}")

    theta = (np.arange(resolution) + 0.5) / resolution
    shape = (resolution,) * dim
    symbol = np.zeros(shape, dtype=np.complex128)
    for multi, coeff in terms:
        phase = np.zeros(shape)
        for axis, t in enumerate(multi):
            if t:
                view = [None] * dim
                view[axis] = slice(None)
                phase = phase + t * theta[tuple(view)]
        symbol += coeff * np.exp(2j * np.pi * phase)
    mags = np.abs(symbol).reshape(-1)

    if thresholds is None:
        thresholds = [2.0**-k for k in range(0, 11)]
    rows = tuple(
        SublevelRow(float(t), float(np.mean(mags < t))) for t in sorted(thresholds, reverse=True)
    )

    fit_pts = [(math.log(r.threshold), math.log(r.fraction)) for r in rows if 0 < r.fraction < 1]
    slope = None
    if len(fit_pts) >= 3:
        xs, ys = zip(*fit_pts)
        slope = float(np.polyfit(xs, ys, 1)[0])

    moments = tuple(
        (float(q), float(np.mean(np.maximum(mags, 1e-300) ** (-float(q)))))
        for q in q_exponents
    )
    return SymbolReport(
        dimension=dim,
        resolution=resolution,
        rows=rows,
        slope=slope,
        inverse_moments=moments,
        min_abs=float(mags.min()),
        max_abs=float(mags.max()),
    )
