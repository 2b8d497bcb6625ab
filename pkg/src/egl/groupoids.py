"""Chart-level groupoid local models.

Every model is a carrier coordinate domain (flat tuples of reals,
complex coordinates stored as consecutive real pairs) together with
closed-form evaluators for source, target, multiplication, inverse and
unit, plus a chart-validity predicate.  Two access layers coexist: fast
scalar operations on flat tuples, used by the sampled verification
suites, and SmoothMap views of the same formulas for the numerical
kernel (Jacobians, pullbacks).  All models are immutable value objects;
samplers draw from an explicit seeded generator, so a fixed seed fixes
every report.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .divisors import DivisorLocalModel, residue_model_frame
from .errors import (ChartInvalid, DimensionMismatch, NotComposable,
                     NotTransverse, SamplerExhausted)
from .kernel import DEFAULT_PROFILE, SmoothMap, jacobian

__all__ = [
    "GroupoidChartModel",
    "pair_groupoid",
    "case1_model",
    "caseIV_model",
    "case2_quotient_model",
    "smooth_factor_model",
    "ssc_surface_model",
    "action_groupoid_model",
    "fibre_product",
    "elliptic_ideal_pullback",
]


def _cx(g, i) -> complex:
    return complex(g[i], g[i + 1])


def _pair(z: complex) -> Tuple[float, float]:
    return (z.real, z.imag)


def _maxdiff(a, b) -> float:
    return max(abs(x - y) for x, y in zip(a, b)) if a else 0.0


def _finite(seq) -> bool:
    return all(math.isfinite(x) for x in seq)


def _annulus(rng, rmin, rmax) -> complex:
    mag = float(rng.uniform(rmin, rmax))
    ph = float(rng.uniform(-math.pi, math.pi))
    return complex(mag * math.cos(ph), mag * math.sin(ph))


def _box(rng, half=1.0) -> float:
    return float(rng.uniform(-half, half))


@dataclass(frozen=True)
class GroupoidChartModel:
    """A groupoid local model on a single coordinate chart.

    Scalar operations work on flat tuples; ``s``, ``t``, ``m``, ``inv``,
    ``unit`` expose the same formulas as SmoothMaps for the numerical
    kernel.  ``composable_tol`` is how exactly ``source(g) == target(h)``
    must hold before ``compose`` accepts a pair; samplers construct
    exactly composable data rather than relying on slack.
    ``algebroid_maps``, when set, supplies (s, t, unit) SmoothMaps on a
    smooth sector suitable for finite differencing (used where the full
    chart carries a discrete coordinate or a gluing constraint).
    """

    name: str
    arrow_dim: int
    base_dim: int
    source_of: Callable
    target_of: Callable
    compose_raw: Callable          # (g, h) -> tuple, no composability check
    invert: Callable
    unit_at: Callable
    arrow_valid: Callable
    base_valid: Callable = _finite
    composable_tol: float = 1e-9
    is_hausdorff: bool = True
    expected_frame: Optional[Callable] = None   # base point -> frame rows
    beta_map: Optional[Callable] = None         # arrow -> (target ++ source) blow-down
    arrow_between: Optional[Callable] = None    # (p, q, rng) -> arrow with t=p, s=q
    sample_arrow: Optional[Callable] = None     # rng -> arrow
    sample_base: Optional[Callable] = None      # rng -> base point
    sample_base_like: Optional[Callable] = None  # (p, rng) -> point on p's stratum
    divisor_factors: Optional[Callable] = None  # arrow -> [(a_j, b_j)]
    algebroid_maps: Optional[tuple] = None      # (s, t, unit) SmoothMaps for FD

    # -- scalar layer ------------------------------------------------------

    def require_valid(self, g):
        if not self.arrow_valid(g):
            raise ChartInvalid(f"{self.name}: invalid arrow {g}")

    def compose(self, g, h):
        """Groupoid multiplication with composability check."""
        self.require_valid(g)
        self.require_valid(h)
        gap = _maxdiff(self.source_of(g), self.target_of(h))
        if gap > self.composable_tol:
            err = NotComposable(f"{self.name}: endpoint gap {gap:.3e}")
            err.gap = gap
            raise err
        out = self.compose_raw(g, h)
        self.require_valid(out)
        return out

    def random_arrow(self, rng):
        if self.sample_arrow is None:
            raise SamplerExhausted(f"{self.name}: no arrow sampler")
        return self.sample_arrow(rng)

    def random_base(self, rng):
        if self.sample_base is None:
            raise SamplerExhausted(f"{self.name}: no base sampler")
        return self.sample_base(rng)

    def extend_from(self, p, rng):
        """A random arrow whose target is exactly the base point p."""
        if self.arrow_between is None:
            raise SamplerExhausted(f"{self.name}: no endpoint-constrained sampler")
        for _ in range(64):
            q = (self.sample_base_like(p, rng) if self.sample_base_like
                 else self.random_base(rng))
            try:
                return self.arrow_between(p, q, rng)
            except NotComposable:
                continue
        raise SamplerExhausted(f"{self.name}: could not extend from {p}")

    def random_composable_pair(self, rng):
        """An exactly composable pair, built by extending a random arrow."""
        g = self.random_arrow(rng)
        h = self.extend_from(self.source_of(g), rng)
        return g, h

    def random_composable_triple(self, rng):
        g, h = self.random_composable_pair(rng)
        k = self.extend_from(self.source_of(h), rng)
        return g, h, k

    # -- SmoothMap layer ----------------------------------------------------

    @property
    def s(self) -> SmoothMap:
        return SmoothMap(
            self.arrow_dim, self.base_dim,
            lambda g: np.asarray(self.source_of(tuple(g)), dtype=float),
            lambda g: self.arrow_valid(tuple(g)), f"{self.name}.s")

    @property
    def t(self) -> SmoothMap:
        return SmoothMap(
            self.arrow_dim, self.base_dim,
            lambda g: np.asarray(self.target_of(tuple(g)), dtype=float),
            lambda g: self.arrow_valid(tuple(g)), f"{self.name}.t")

    @property
    def inv(self) -> SmoothMap:
        return SmoothMap(
            self.arrow_dim, self.arrow_dim,
            lambda g: np.asarray(self.invert(tuple(g)), dtype=float),
            lambda g: self.arrow_valid(tuple(g)), f"{self.name}.inv")

    @property
    def unit(self) -> SmoothMap:
        return SmoothMap(
            self.base_dim, self.arrow_dim,
            lambda p: np.asarray(self.unit_at(tuple(p)), dtype=float),
            lambda p: self.base_valid(tuple(p)), f"{self.name}.unit")

    @property
    def m(self) -> SmoothMap:
        d = self.arrow_dim

        def pred(gh):
            g, h = tuple(gh[:d]), tuple(gh[d:])
            if not (self.arrow_valid(g) and self.arrow_valid(h)):
                return False
            return _maxdiff(self.source_of(g), self.target_of(h)) <= self.composable_tol

        return SmoothMap(
            2 * d, d,
            lambda gh: np.asarray(self.compose_raw(tuple(gh[:d]), tuple(gh[d:])),
                                  dtype=float),
            pred, f"{self.name}.m")

    @property
    def beta(self) -> Optional[SmoothMap]:
        if self.beta_map is None:
            return None
        return SmoothMap(self.arrow_dim, 2 * self.base_dim,
                         lambda g: np.asarray(self.beta_map(tuple(g)), dtype=float),
                         lambda g: self.arrow_valid(tuple(g)), f"{self.name}.beta")

    def maps_for_algebroid(self):
        if self.algebroid_maps is not None:
            return self.algebroid_maps
        return (self.s, self.t, self.unit)

    def extra_kernel_rows(self, arrow_point):
        """Extra Jacobian rows constraining the arrow space (fibre products)."""
        return None


# ---------------------------------------------------------------------------
# pair groupoid
# ---------------------------------------------------------------------------

def pair_groupoid(dim: int, half: float = 1.2) -> GroupoidChartModel:
    """The pair groupoid of R^dim: arrows (p, q), s = q, t = p."""

    def sample_base(rng):
        return tuple(_box(rng, half) for _ in range(dim))

    return GroupoidChartModel(
        name=f"pair({dim})", arrow_dim=2 * dim, base_dim=dim,
        source_of=lambda g: tuple(g[dim:]),
        target_of=lambda g: tuple(g[:dim]),
        compose_raw=lambda g, h: tuple(g[:dim]) + tuple(h[dim:]),
        invert=lambda g: tuple(g[dim:]) + tuple(g[:dim]),
        unit_at=lambda p: tuple(p) + tuple(p),
        arrow_valid=_finite,
        expected_frame=lambda p: np.eye(dim),
        beta_map=lambda g: tuple(g),
        arrow_between=lambda p, q, rng: tuple(p) + tuple(q),
        sample_arrow=lambda rng: tuple(_box(rng, half) for _ in range(2 * dim)),
        sample_base=sample_base,
        sample_base_like=lambda p, rng: sample_base(rng),
    )


# ---------------------------------------------------------------------------
# smooth coorientable divisor (blow-up chart of the pair groupoid)
# ---------------------------------------------------------------------------

def case1_model(n: int, composable_tol: float = 1e-9) -> GroupoidChartModel:
    """Blow-up local model for a smooth coorientable divisor in dimension n.

    Arrows (x, y, a, b) with x, y real (n-2)-vectors, a complex, b
    nonzero complex; base (x, v) with v complex.  The blow-down sends an
    arrow to the base pair ((x, a), (y, ab)); multiplication, inverse
    and unit are the closed forms obtained by conjugating the pair
    groupoid through it and extending over the exceptional locus, where
    the multiplication is (x,y,0,b1).(y,z,0,b2) = (x,z,0,b1*b2).
    """
    if n < 2:
        raise ValueError("case1_model requires n >= 2")
    nx = n - 2
    ia, ib = 2 * nx, 2 * nx + 2

    def source_of(g):
        ab = _cx(g, ia) * _cx(g, ib)
        return tuple(g[nx:2 * nx]) + _pair(ab)

    def target_of(g):
        return tuple(g[:nx]) + (g[ia], g[ia + 1])

    def compose_raw(g, h):
        b = _cx(g, ib) * _cx(h, ib)
        return tuple(g[:nx]) + tuple(h[nx:2 * nx]) + (g[ia], g[ia + 1]) + _pair(b)

    def invert(g):
        ab = _cx(g, ia) * _cx(g, ib)
        binv = 1.0 / _cx(g, ib)
        return tuple(g[nx:2 * nx]) + tuple(g[:nx]) + _pair(ab) + _pair(binv)

    def unit_at(p):
        return tuple(p[:nx]) + tuple(p[:nx]) + (p[nx], p[nx + 1]) + (1.0, 0.0)

    def arrow_valid(g):
        return len(g) == 2 * n and _finite(g) and _cx(g, ib) != 0

    def beta_map(g):
        return target_of(g) + source_of(g)

    divisor = DivisorLocalModel(n=n, k=1)

    def sample_base(rng, on_divisor_prob=0.25):
        x = tuple(_box(rng) for _ in range(nx))
        v = 0j if rng.uniform() < on_divisor_prob else _annulus(rng, 0.15, 1.2)
        return x + _pair(v)

    def sample_base_like(p, rng):
        x = tuple(_box(rng) for _ in range(nx))
        v = 0j if _cx(p, nx) == 0 else _annulus(rng, 0.15, 1.2)
        return x + _pair(v)

    def arrow_between(p, q, rng):
        vp, vq = _cx(p, nx), _cx(q, nx)
        if vp == 0 and vq == 0:
            a, b = 0j, _annulus(rng, 0.3, 1.6)
        elif vp == 0 or vq == 0:
            raise NotComposable("no arrow between different strata")
        else:
            a, b = vp, vq / vp
        return tuple(p[:nx]) + tuple(q[:nx]) + _pair(a) + _pair(b)

    def sample_arrow(rng):
        x = tuple(_box(rng) for _ in range(nx))
        y = tuple(_box(rng) for _ in range(nx))
        a = 0j if rng.uniform() < 0.25 else _annulus(rng, 0.1, 1.2)
        b = _annulus(rng, 0.3, 1.6)
        return x + y + _pair(a) + _pair(b)

    return GroupoidChartModel(
        name=f"case1({n})", arrow_dim=2 * n, base_dim=n,
        source_of=source_of, target_of=target_of, compose_raw=compose_raw,
        invert=invert, unit_at=unit_at, arrow_valid=arrow_valid,
        composable_tol=composable_tol,
        expected_frame=lambda p: divisor.algebroid_frame(np.asarray(p)).vectors,
        beta_map=beta_map,
        arrow_between=arrow_between, sample_arrow=sample_arrow,
        sample_base=sample_base, sample_base_like=sample_base_like,
        divisor_factors=lambda g: [(_cx(g, ia), _cx(g, ib))],
    )


# ---------------------------------------------------------------------------
# normal-crossing divisor, untwisted coorientable (componentwise blow-up)
# ---------------------------------------------------------------------------

def caseIV_model(n: int, k: int, composable_tol: float = 1e-9) -> GroupoidChartModel:
    """Iterated-blow-up local model around a multiplicity-k stratum.

    Arrows (x, y, a_1..a_k, b_1..b_k); source (y, a_1 b_1, .., a_k b_k),
    target (x, a); multiplication, inverse and unit extend the smooth
    model factor by factor, with u(x) = (x, x, z, 1, .., 1).
    """
    if not (n >= 2 * k >= 2):
        raise ValueError("caseIV_model requires n >= 2k >= 2")
    nx = n - 2 * k
    ia = 2 * nx
    ib = 2 * nx + 2 * k

    def _as(g):
        return [_cx(g, ia + 2 * j) for j in range(k)]

    def _bs(g):
        return [_cx(g, ib + 2 * j) for j in range(k)]

    def source_of(g):
        out = tuple(g[nx:2 * nx])
        for a, b in zip(_as(g), _bs(g)):
            out += _pair(a * b)
        return out

    def target_of(g):
        return tuple(g[:nx]) + tuple(g[ia:ia + 2 * k])

    def compose_raw(g, h):
        out = tuple(g[:nx]) + tuple(h[nx:2 * nx]) + tuple(g[ia:ia + 2 * k])
        for bg, bh in zip(_bs(g), _bs(h)):
            out += _pair(bg * bh)
        return out

    def invert(g):
        out = tuple(g[nx:2 * nx]) + tuple(g[:nx])
        for a, b in zip(_as(g), _bs(g)):
            out += _pair(a * b)
        for b in _bs(g):
            out += _pair(1.0 / b)
        return out

    def unit_at(p):
        return tuple(p[:nx]) + tuple(p[:nx]) + tuple(p[nx:nx + 2 * k]) + (1.0, 0.0) * k

    def arrow_valid(g):
        return len(g) == 2 * n and _finite(g) and all(b != 0 for b in _bs(g))

    divisor = DivisorLocalModel(n=n, k=k)

    def sample_base(rng, on_divisor_prob=0.3):
        out = tuple(_box(rng) for _ in range(nx))
        for _ in range(k):
            z = 0j if rng.uniform() < on_divisor_prob else _annulus(rng, 0.15, 1.2)
            out += _pair(z)
        return out

    def sample_base_like(p, rng):
        out = tuple(_box(rng) for _ in range(nx))
        for j in range(k):
            z = 0j if _cx(p, nx + 2 * j) == 0 else _annulus(rng, 0.15, 1.2)
            out += _pair(z)
        return out

    def arrow_between(p, q, rng):
        out = tuple(p[:nx]) + tuple(q[:nx])
        avals, bvals = [], []
        for j in range(k):
            vp, vq = _cx(p, nx + 2 * j), _cx(q, nx + 2 * j)
            if vp == 0 and vq == 0:
                avals.append(0j)
                bvals.append(_annulus(rng, 0.3, 1.6))
            elif vp == 0 or vq == 0:
                raise NotComposable("no arrow between different strata")
            else:
                avals.append(vp)
                bvals.append(vq / vp)
        for a in avals:
            out += _pair(a)
        for b in bvals:
            out += _pair(b)
        return out

    def sample_arrow(rng):
        out = tuple(_box(rng) for _ in range(nx)) + tuple(_box(rng) for _ in range(nx))
        for _ in range(k):
            a = 0j if rng.uniform() < 0.3 else _annulus(rng, 0.1, 1.2)
            out += _pair(a)
        for _ in range(k):
            out += _pair(_annulus(rng, 0.3, 1.6))
        return out

    return GroupoidChartModel(
        name=f"caseIV({n},{k})", arrow_dim=2 * n, base_dim=n,
        source_of=source_of, target_of=target_of, compose_raw=compose_raw,
        invert=invert, unit_at=unit_at, arrow_valid=arrow_valid,
        composable_tol=composable_tol,
        expected_frame=lambda p: divisor.algebroid_frame(np.asarray(p)).vectors,
        beta_map=lambda g: target_of(g) + source_of(g),
        arrow_between=arrow_between, sample_arrow=sample_arrow,
        sample_base=sample_base, sample_base_like=sample_base_like,
        divisor_factors=lambda g: list(zip(_as(g), _bs(g))),
    )


# ---------------------------------------------------------------------------
# coorientation double cover quotient
# ---------------------------------------------------------------------------

def case2_quotient_model(n: int, composable_tol: float = 1e-9) -> GroupoidChartModel:
    """Quotient of the double-cover model by the deck involution.

    Arrows carry the smooth-model chart data plus a sheet-difference bit
    delta, stored as a final 0/1 coordinate.  The deck involution
    conjugates the normal complex coordinate, so the source of a
    sheet-crossing arrow reads through conjugation and composition
    conjugates the second factor's data before the chart-level product.
    The isotropy over the divisor is C* x| Z/2 acting by conjugation.
    """
    base = case1_model(n, composable_tol)
    nx = n - 2
    ia, ib = 2 * nx, 2 * nx + 2
    d = base.arrow_dim

    def _delta(g):
        return int(round(g[d]))

    def _conj(z, flag):
        return z.conjugate() if flag else z

    def source_of(g):
        ab = _conj(_cx(g, ia) * _cx(g, ib), _delta(g))
        return tuple(g[nx:2 * nx]) + _pair(ab)

    def target_of(g):
        return tuple(g[:nx]) + (g[ia], g[ia + 1])

    def compose_raw(g, h):
        d1, d2 = _delta(g), _delta(h)
        b = _cx(g, ib) * _conj(_cx(h, ib), d1)
        return (tuple(g[:nx]) + tuple(h[nx:2 * nx]) + (g[ia], g[ia + 1]) + _pair(b)
                + (float((d1 + d2) % 2),))

    def invert(g):
        dd = _delta(g)
        ab = _conj(_cx(g, ia) * _cx(g, ib), dd)
        bstar = 1.0 / _conj(_cx(g, ib), dd)
        return (tuple(g[nx:2 * nx]) + tuple(g[:nx]) + _pair(ab) + _pair(bstar)
                + (float(dd),))

    def unit_at(p):
        return base.unit_at(p) + (0.0,)

    def arrow_valid(g):
        return (len(g) == d + 1 and _finite(g) and _cx(g, ib) != 0
                and g[d] in (0.0, 1.0))

    def sample_arrow(rng):
        return base.sample_arrow(rng) + (float(rng.integers(0, 2)),)

    def arrow_between(p, q, rng):
        chart = base.arrow_between(p, q, rng)
        dd = float(rng.integers(0, 2))
        if dd and _cx(chart, ia) != 0:
            # re-solve b so the delta-twisted source still lands on q
            vq = _cx(q, nx)
            b = vq.conjugate() / _cx(chart, ia)
            chart = chart[:ib] + _pair(b)
        return chart + (dd,)

    return GroupoidChartModel(
        name=f"case2({n})", arrow_dim=d + 1, base_dim=n,
        source_of=source_of, target_of=target_of, compose_raw=compose_raw,
        invert=invert, unit_at=unit_at, arrow_valid=arrow_valid,
        composable_tol=composable_tol, is_hausdorff=True,
        expected_frame=base.expected_frame,
        arrow_between=arrow_between, sample_arrow=sample_arrow,
        sample_base=base.sample_base, sample_base_like=base.sample_base_like,
        divisor_factors=lambda g: [(_cx(g, ia), _cx(g, ib))],
        algebroid_maps=(base.s, base.t, base.unit),
    )


# ---------------------------------------------------------------------------
# smooth factor inside a normal-crossing base (for fibre products)
# ---------------------------------------------------------------------------

def smooth_factor_model(n: int, k: int, j: int,
                        composable_tol: float = 1e-9) -> GroupoidChartModel:
    """Smooth-divisor model for the j-th factor of a k-factor base.

    The base keeps the normal-crossing layout (x real, z_1..z_k complex)
    but only {z_j = 0} is blown up; the other complex pairs ride along
    untouched.  Implemented by conjugating the smooth model through the
    base-coordinate shuffle that moves pair j to the end.
    """
    if not (0 <= j < k):
        raise ValueError("factor index out of range")
    nx = n - 2 * k
    inner = case1_model(n, composable_tol)

    # shared layout index of pair j, and the shuffle into case1 layout
    pj = nx + 2 * j
    order = list(range(nx)) + [nx + 2 * i + c for i in range(k) if i != j for c in (0, 1)]
    order += [pj, pj + 1]
    inverse_order = [0] * n
    for dst, src in enumerate(order):
        inverse_order[src] = dst

    def to_inner(p):
        return tuple(p[i] for i in order)

    def from_inner(p):
        return tuple(p[i] for i in inverse_order)

    divisor_rows = np.zeros((n, n))
    for i in range(n):
        if i not in (pj, pj + 1):
            divisor_rows[i, i] = 1.0

    def expected_frame(p):
        rows = divisor_rows.copy()
        v1, v2 = p[pj], p[pj + 1]
        rows[pj, pj], rows[pj, pj + 1] = v1, v2
        rows[pj + 1, pj], rows[pj + 1, pj + 1] = -v2, v1
        return rows

    def sample_base(rng, on_divisor_prob=0.3):
        out = tuple(_box(rng) for _ in range(nx))
        for i in range(k):
            z = 0j if (i == j and rng.uniform() < on_divisor_prob) \
                else _annulus(rng, 0.15, 1.2) if i == j else complex(_box(rng), _box(rng))
            out += _pair(z)
        return out

    def sample_base_like(p, rng):
        out = tuple(_box(rng) for _ in range(nx))
        for i in range(k):
            if i == j:
                z = 0j if _cx(p, nx + 2 * i) == 0 else _annulus(rng, 0.15, 1.2)
            else:
                z = complex(_box(rng), _box(rng))
            out += _pair(z)
        return out

    return GroupoidChartModel(
        name=f"smooth-factor({n},{k},{j})", arrow_dim=inner.arrow_dim, base_dim=n,
        source_of=lambda g: from_inner(inner.source_of(g)),
        target_of=lambda g: from_inner(inner.target_of(g)),
        compose_raw=inner.compose_raw,
        invert=inner.invert,
        unit_at=lambda p: inner.unit_at(to_inner(p)),
        arrow_valid=inner.arrow_valid,
        composable_tol=composable_tol,
        expected_frame=expected_frame,
        arrow_between=lambda p, q, rng: inner.arrow_between(to_inner(p), to_inner(q), rng),
        sample_arrow=inner.sample_arrow,
        sample_base=sample_base, sample_base_like=sample_base_like,
        divisor_factors=inner.divisor_factors,
    )


# ---------------------------------------------------------------------------
# source-simply-connected surface model
# ---------------------------------------------------------------------------

def ssc_surface_model(composable_tol: float = 1e-9) -> GroupoidChartModel:
    """Exponential model over the plane with divisor the origin.

    Arrows (Z, zeta) in C^2 with s = zeta, t = zeta e^Z; composition
    adds the exponents: (Z, xi e^W).(W, xi) = (Z + W, xi).  Restricted
    to nonzero zeta this presents the fundamental groupoid of the
    punctured plane: arrows with equal endpoints have Z in 2 pi i Z and
    compose additively.
    """

    def source_of(g):
        return (g[2], g[3])

    def target_of(g):
        return _pair(_cx(g, 2) * cmath.exp(_cx(g, 0)))

    def compose_raw(g, h):
        return _pair(_cx(g, 0) + _cx(h, 0)) + (h[2], h[3])

    def invert(g):
        z = _cx(g, 0)
        return _pair(-z) + _pair(_cx(g, 2) * cmath.exp(z))

    def unit_at(p):
        return (0.0, 0.0, p[0], p[1])

    def sample_base(rng, on_divisor_prob=0.15):
        if rng.uniform() < on_divisor_prob:
            return (0.0, 0.0)
        return _pair(_annulus(rng, 0.2, 1.5))

    def sample_base_like(p, rng):
        if _cx(p, 0) == 0:
            return (0.0, 0.0)
        return _pair(_annulus(rng, 0.2, 1.5))

    def arrow_between(p, q, rng):
        zp, zq = _cx(p, 0), _cx(q, 0)
        if zp == 0 and zq == 0:
            Z = complex(_box(rng, 1.2), _box(rng, 1.2))
            return _pair(Z) + (0.0, 0.0)
        if zp == 0 or zq == 0:
            raise NotComposable("no arrow between the puncture and its complement")
        return _pair(cmath.log(zp / zq)) + _pair(zq)

    def sample_arrow(rng):
        Z = complex(_box(rng, 1.2), _box(rng, 1.2))
        zeta = 0j if rng.uniform() < 0.15 else _annulus(rng, 0.2, 1.5)
        return _pair(Z) + _pair(zeta)

    frame_model = DivisorLocalModel(n=2, k=1)

    return GroupoidChartModel(
        name="ssc-surface", arrow_dim=4, base_dim=2,
        source_of=source_of, target_of=target_of, compose_raw=compose_raw,
        invert=invert, unit_at=unit_at,
        arrow_valid=_finite,
        composable_tol=composable_tol,
        expected_frame=lambda p: frame_model.algebroid_frame(np.asarray(p)).vectors,
        arrow_between=arrow_between, sample_arrow=sample_arrow,
        sample_base=sample_base, sample_base_like=sample_base_like,
    )


# ---------------------------------------------------------------------------
# action groupoid of the affine group on the plane-pair
# ---------------------------------------------------------------------------

def action_groupoid_model(composable_tol: float = 1e-9) -> GroupoidChartModel:
    """Action groupoid of C* x| C acting on C^2.

    Arrows ((b, c), (z1, z2)) with b nonzero; the group element acts by
    (z1, z2) -> (b z1, z2 + c z1), target is the carried point and
    source its image.  Group elements multiply in the affine convention
    (b, c)(b', c') = (b b', c + b c'), matching the divisor isotropy of
    the zero-residue symplectic model.
    """

    def _act(b, c, z1, z2):
        return (b * z1, z2 + c * z1)

    def source_of(g):
        w1, w2 = _act(_cx(g, 0), _cx(g, 2), _cx(g, 4), _cx(g, 6))
        return _pair(w1) + _pair(w2)

    def target_of(g):
        return tuple(g[4:8])

    def compose_raw(g, h):
        b1, c1 = _cx(g, 0), _cx(g, 2)
        b2, c2 = _cx(h, 0), _cx(h, 2)
        return _pair(b1 * b2) + _pair(c1 + b1 * c2) + tuple(g[4:8])

    def invert(g):
        b, c = _cx(g, 0), _cx(g, 2)
        w1, w2 = _act(b, c, _cx(g, 4), _cx(g, 6))
        return _pair(1.0 / b) + _pair(-c / b) + _pair(w1) + _pair(w2)

    def unit_at(p):
        return (1.0, 0.0, 0.0, 0.0) + tuple(p)

    def arrow_valid(g):
        return _finite(g) and _cx(g, 0) != 0

    def sample_base(rng, on_divisor_prob=0.25):
        z1 = 0j if rng.uniform() < on_divisor_prob else _annulus(rng, 0.15, 1.2)
        return _pair(z1) + (_box(rng), _box(rng))

    def sample_base_like(p, rng):
        if _cx(p, 0) == 0:
            return tuple(p)  # divisor points are single-point orbits
        return _pair(_annulus(rng, 0.15, 1.2)) + (_box(rng), _box(rng))

    def arrow_between(p, q, rng):
        z1, z2 = _cx(p, 0), _cx(p, 2)
        w1, w2 = _cx(q, 0), _cx(q, 2)
        if z1 == 0 and w1 == 0:
            if w2 != z2:
                raise NotComposable("points of the divisor plane are distinct orbits")
            b = _annulus(rng, 0.3, 1.6)
            c = complex(_box(rng), _box(rng))
            return _pair(b) + _pair(c) + tuple(p)
        if z1 == 0 or w1 == 0:
            raise NotComposable("no arrow between different orbits")
        # act takes the carried point (target) to the source
        b = w1 / z1
        c = (w2 - z2) / z1
        return _pair(b) + _pair(c) + tuple(p)

    def sample_arrow(rng):
        b = _annulus(rng, 0.3, 1.6)
        c = complex(_box(rng), _box(rng))
        z1 = 0j if rng.uniform() < 0.25 else _annulus(rng, 0.15, 1.2)
        return _pair(b) + _pair(c) + _pair(z1) + (_box(rng), _box(rng))

    frame = residue_model_frame("zero")

    return GroupoidChartModel(
        name="action-groupoid", arrow_dim=8, base_dim=4,
        source_of=source_of, target_of=target_of, compose_raw=compose_raw,
        invert=invert, unit_at=unit_at, arrow_valid=arrow_valid,
        composable_tol=composable_tol,
        expected_frame=lambda p: frame(np.asarray(p)),
        arrow_between=arrow_between, sample_arrow=sample_arrow,
        sample_base=sample_base, sample_base_like=sample_base_like,
    )


# ---------------------------------------------------------------------------
# strong fibre product over base x base
# ---------------------------------------------------------------------------

class _FibreProductModel(GroupoidChartModel):
    """Pairs of arrows with equal (target, source) base pairs."""

    def extra_kernel_rows(self, arrow_point):
        m1, m2 = self.factors
        d1 = m1.arrow_dim
        g = np.asarray(arrow_point, dtype=float)
        j1 = np.vstack([jacobian(m1.t, g[:d1], DEFAULT_PROFILE),
                        jacobian(m1.s, g[:d1], DEFAULT_PROFILE)])
        j2 = np.vstack([jacobian(m2.t, g[d1:], DEFAULT_PROFILE),
                        jacobian(m2.s, g[d1:], DEFAULT_PROFILE)])
        return np.hstack([j1, -j2])


def fibre_product(m1: GroupoidChartModel, m2: GroupoidChartModel,
                  check_transverse: bool = True, seed: int = 11,
                  sample_base=None, sample_base_like=None) -> GroupoidChartModel:
    """Strong fibre product of two models over base x base.

    Arrows are pairs (g1, g2) with matching (target, source) base
    pairs; structure maps act componentwise.  The two chart-to-base-pair
    maps must be transverse, verified numerically by the rank of the
    combined Jacobian at sampled arrows (NotTransverse reports it).
    The Hausdorff flag is the conjunction of the factors' flags.  Base
    samplers default to the first factor's but can be overridden when
    the joint divisor has more strata than either factor sees alone.
    """
    if m1.base_dim != m2.base_dim:
        raise DimensionMismatch("fibre_product: factors over different bases")
    d1, d2 = m1.arrow_dim, m2.arrow_dim
    nd = m1.base_dim
    tol = max(m1.composable_tol, m2.composable_tol)
    glue_tol = 1e-7
    base_sampler = sample_base or m1.sample_base
    base_like = sample_base_like or m1.sample_base_like

    def split(g):
        return tuple(g[:d1]), tuple(g[d1:])

    def arrow_valid(g):
        if len(g) != d1 + d2:
            return False
        g1, g2 = split(g)
        if not (m1.arrow_valid(g1) and m2.arrow_valid(g2)):
            return False
        pair1 = m1.target_of(g1) + m1.source_of(g1)
        pair2 = m2.target_of(g2) + m2.source_of(g2)
        return _maxdiff(pair1, pair2) <= glue_tol

    def arrow_between(p, q, rng):
        return m1.arrow_between(p, q, rng) + m2.arrow_between(p, q, rng)

    def sample_arrow(rng):
        for _ in range(64):
            p = base_sampler(rng)
            q = base_like(p, rng) if base_like else base_sampler(rng)
            try:
                return arrow_between(p, q, rng)
            except NotComposable:
                continue
        raise SamplerExhausted("fibre product sampler: no compatible base pair")

    def expected_frame(p):
        if m1.expected_frame is None or m2.expected_frame is None:
            return None
        return _span_intersection(np.atleast_2d(m1.expected_frame(p)),
                                  np.atleast_2d(m2.expected_frame(p)))

    has_factors = m1.divisor_factors or m2.divisor_factors

    def divisor_factors(g):
        out = []
        for mm, part in zip((m1, m2), split(g)):
            if mm.divisor_factors is not None:
                out.extend(mm.divisor_factors(part))
        return out

    # finite differencing must see the ambient product chart; the gluing
    # constraint enters the algebroid computation as extra Jacobian rows
    def ambient_valid(g):
        g1, g2 = split(g)
        return m1.arrow_valid(g1) and m2.arrow_valid(g2)

    fd_s = SmoothMap(d1 + d2, nd,
                     lambda g: np.asarray(m1.source_of(tuple(g[:d1])), dtype=float),
                     lambda g: ambient_valid(tuple(g)), "fibre.s(ambient)")
    fd_t = SmoothMap(d1 + d2, nd,
                     lambda g: np.asarray(m1.target_of(tuple(g[:d1])), dtype=float),
                     lambda g: ambient_valid(tuple(g)), "fibre.t(ambient)")
    fd_unit = SmoothMap(nd, d1 + d2,
                        lambda p: np.asarray(m1.unit_at(tuple(p))
                                             + m2.unit_at(tuple(p)), dtype=float),
                        None, "fibre.unit")

    model = _FibreProductModel(
        name=f"fibre:{m1.name},{m2.name}", arrow_dim=d1 + d2, base_dim=nd,
        source_of=lambda g: m1.source_of(split(g)[0]),
        target_of=lambda g: m1.target_of(split(g)[0]),
        compose_raw=lambda g, h: (m1.compose_raw(split(g)[0], split(h)[0])
                                  + m2.compose_raw(split(g)[1], split(h)[1])),
        invert=lambda g: m1.invert(split(g)[0]) + m2.invert(split(g)[1]),
        unit_at=lambda p: m1.unit_at(p) + m2.unit_at(p),
        arrow_valid=arrow_valid,
        composable_tol=tol, is_hausdorff=m1.is_hausdorff and m2.is_hausdorff,
        expected_frame=expected_frame,
        arrow_between=arrow_between, sample_arrow=sample_arrow,
        sample_base=base_sampler, sample_base_like=base_like,
        divisor_factors=divisor_factors if has_factors else None,
        algebroid_maps=(fd_s, fd_t, fd_unit),
    )
    object.__setattr__(model, "factors", (m1, m2))

    if check_transverse:
        rng = np.random.Generator(np.random.Philox(key=seed))
        # the origin unit sits on the deepest stratum of every chart
        # model here, which is where blow-down ranks can drop
        probes = [model.unit_at((0.0,) * nd)]
        probes += [model.unit_at(base_sampler(rng)) for _ in range(6)]
        probes += [model.random_arrow(rng) for _ in range(4)]
        for g in probes:
            rows = model.extra_kernel_rows(g)
            rank = np.linalg.matrix_rank(rows, tol=1e-8)
            if rank < 2 * nd:
                raise NotTransverse(
                    f"fibre_product: combined Jacobian rank {rank} < {2 * nd}")
    return model


def _span_intersection(f1: np.ndarray, f2: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Rows spanning span(f1) (cap) span(f2)."""
    def onb(a):
        a = np.atleast_2d(a)
        if not a.any():
            return np.zeros((0, a.shape[1]))
        _, sv, vt = np.linalg.svd(a, full_matrices=False)
        return vt[sv > tol * sv[0]]

    q1, q2 = onb(f1), onb(f2)
    n = f1.shape[1]
    if q1.shape[0] == 0 or q2.shape[0] == 0:
        return np.zeros((0, n))
    p1 = q1.T @ q1
    p2 = q2.T @ q2
    w, v = np.linalg.eigh(p1 @ p2 @ p1)
    return v[:, w > 1 - 1e-9].T


# ---------------------------------------------------------------------------
# elliptic ideal on the arrow space
# ---------------------------------------------------------------------------

def elliptic_ideal_pullback(model: GroupoidChartModel, g) -> Tuple[float, float, float]:
    """Source/target pullbacks of the elliptic ideal generator at an arrow.

    Returns (s_value, t_value, ratio): products over the divisor factors
    of |a_j b_j|^2, |a_j|^2 and |b_j|^2 respectively.  The ratio is the
    invertible comparison factor, returned even when both pullback
    values are 0; it never vanishes on a valid arrow.
    """
    if model.divisor_factors is None:
        raise ChartInvalid(f"{model.name}: no divisor factor data")
    model.require_valid(g)
    s_value = t_value = ratio = 1.0
    for a, b in model.divisor_factors(g):
        s_value *= abs(a * b) ** 2
        t_value *= abs(a) ** 2
        ratio *= abs(b) ** 2
    return (s_value, t_value, ratio)
