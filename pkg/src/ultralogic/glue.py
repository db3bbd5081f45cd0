"""Sinusoidal smoothing of step functions with closed-form derivatives,
plus special partitions, avoiding selections, telescoping sums, and
resolving processes.

A step function g takes value r_j on the j-th subinterval of a partition
a_0 < ... < a_{n+1}.  The glued version G replaces each jump at an
interior point a_j by the transition
    (1/2)(r_{j+1} - r_j)(sin((x - a_j) pi / (2 delta)) + 1) + r_j
on [a_j - delta, a_j + delta].  delta is either a positive infinitesimal
(kernel mode) or a positive rational small enough that transitions stay
disjoint (standard mode).

Derivatives carry their power of pi symbolically: the m-th derivative on
a transition is (1/2)(r_{j+1} - r_j)(pi/(2 delta))^m sin(u pi/2 + m pi/2)
with u = (x - a_j)/delta, and the rational series factor is kept separate
from pi^m so the closed forms reproduce exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .hyper import (
    DEFAULT_PRECISION,
    HyperReal,
    as_hyper,
    pi_fraction,
    sin_halfpi,
)


class GlueError(Exception):
    pass


class OverlappingTransitions(GlueError):
    pass


class NonPositiveDelta(GlueError):
    pass


class OutOfDomain(GlueError):
    pass


class OnPartitionPoint(GlueError):
    pass


class AvoidSetBlocksEndpoints(GlueError):
    pass


class SelectionHitsDiscontinuity(GlueError):
    pass


@dataclass(frozen=True)
class StepSpec:
    partition: Tuple[Fraction, ...]  # a_0 < a_1 < ... < a_{n+1}
    values: Tuple[Fraction, ...]  # r_1 ... r_{n+1}

    def __post_init__(self):
        pts = tuple(Fraction(p) for p in self.partition)
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "partition", pts)
        object.__setattr__(self, "values", vals)
        if len(pts) < 2 or any(a >= b for a, b in zip(pts, pts[1:])):
            raise GlueError("partition must be strictly increasing with >= 2 points")
        if len(vals) != len(pts) - 1:
            raise GlueError("need one value per subinterval")

    @property
    def interior(self) -> Tuple[Fraction, ...]:
        return self.partition[1:-1]

    def step_eval(self, x) -> Fraction:
        """The raw step function; undefined at interior partition points."""
        x = Fraction(x)
        pts = self.partition
        if not pts[0] <= x <= pts[-1]:
            raise OutOfDomain(f"{x} outside [{pts[0]}, {pts[-1]}]")
        if x in self.interior:
            raise OnPartitionPoint(f"{x} is a jump point")
        for j in range(len(self.values)):
            if pts[j] <= x < pts[j + 1]:
                return self.values[j]
        return self.values[-1]


@dataclass(frozen=True)
class PiValue:
    """A hyperreal series times an integer power of pi."""

    series: HyperReal
    pi_power: int

    def approx(self, digits: int = DEFAULT_PRECISION) -> HyperReal:
        if self.pi_power == 0 or self.series.is_zero():
            return self.series
        return self.series * (pi_fraction(digits) ** self.pi_power)

    def is_zero(self) -> bool:
        return self.series.is_zero()


@dataclass(frozen=True)
class GlueFunction:
    spec: StepSpec
    delta: Union[HyperReal, Fraction]

    @property
    def infinitesimal_mode(self) -> bool:
        return isinstance(self.delta, HyperReal)

    def _delta_hyper(self) -> HyperReal:
        return self.delta if self.infinitesimal_mode else as_hyper(self.delta)

    # -- region resolution ---------------------------------------------

    def _resolve(self, x: HyperReal):
        """('const', j) or ('trans', j) with j indexing values/interior."""
        pts = self.spec.partition
        d = self._delta_hyper()
        if x.compare(pts[0]) < 0 or x.compare(pts[-1]) > 0:
            raise OutOfDomain("point outside the glued domain")
        for j, a in enumerate(self.spec.interior):
            lo = as_hyper(a) - d
            hi = as_hyper(a) + d
            if lo.compare(x) <= 0 and x.compare(hi) <= 0:
                return "trans", j
        for j in range(len(self.spec.values)):
            hi = as_hyper(pts[j + 1]) - d if j + 1 < len(pts) - 1 else as_hyper(pts[-1])
            if x.compare(hi) <= 0:
                return "const", j
        return "const", len(self.spec.values) - 1

    def _phase(self, x: HyperReal, j: int) -> HyperReal:
        return (x - self.spec.interior[j]) / self._delta_hyper()

    # -- evaluation -------------------------------------------------------

    def eval(self, x, digits: int = DEFAULT_PRECISION):
        x = as_hyper(Fraction(x)) if isinstance(x, (int, Fraction)) else x
        region, j = self._resolve(x)
        if region == "const":
            r = self.spec.values[j]
            return Fraction(r) if not self.infinitesimal_mode else as_hyper(r)
        r_lo = self.spec.values[j]
        r_hi = self.spec.values[j + 1]
        u = self._phase(x, j)
        s = sin_halfpi(u, digits)
        val = Fraction(r_hi - r_lo, 2) * (s + 1) + r_lo
        if self.infinitesimal_mode:
            return val
        return val.st()

    def derivative(self, m: int, x, digits: int = DEFAULT_PRECISION) -> PiValue:
        """m-th derivative as a PiValue (series times pi^m)."""
        if m < 1:
            raise ValueError("derivative order must be >= 1")
        x = as_hyper(Fraction(x)) if isinstance(x, (int, Fraction)) else x
        region, j = self._resolve(x)
        zero = PiValue(HyperReal({}, self._delta_hyper().order), m)
        if region == "const":
            return zero
        u = self._phase(x, j)
        boundary = u.compare(1) == 0 or u.compare(-1) == 0
        if boundary and m % 2 == 1 and m >= 3:
            # odd orders >= 3 are assigned 0 at the seam by convention
            return zero
        r_lo = self.spec.values[j]
        r_hi = self.spec.values[j + 1]
        scale = Fraction(r_hi - r_lo, 2) * (1 / (2 * self._delta_hyper())) ** m
        s = sin_halfpi(u + m, digits)
        return PiValue(scale * s, m)

    def st_restrict(self, x) -> Fraction:
        """Standard part of G at a standard point off the jump set."""
        x = Fraction(x)
        if x in self.spec.interior:
            raise OnPartitionPoint(f"{x} is excluded from D")
        if self.infinitesimal_mode:
            v = self.eval(as_hyper(x))
            return v.st()
        # standard mode has real transition width; report the step value
        return self.spec.step_eval(x)

    def range_check(self, samples: int = 50):
        """(c, d) = (min, max) of the step values, certified by sampling.

        Samples each transition at the seam points and midpoints plus a
        grid over the constant pieces; every sample must land in [c, d]
        and the endpoints must be attained.
        """
        c = min(self.spec.values)
        d = max(self.spec.values)
        attained = set()
        pts = []
        for j, a in enumerate(self.spec.interior):
            for u in (-1, 0, 1):
                x = as_hyper(a) + u * self._delta_hyper()
                pts.append(x)
        lo, hi = self.spec.partition[0], self.spec.partition[-1]
        for k in range(samples + 1):
            x = lo + Fraction(k, samples) * (hi - lo)
            if any(abs(x - a) <= self.delta for a in self.spec.interior) and self.infinitesimal_mode is False:
                continue
            try:
                pts.append(as_hyper(x))
            except OutOfDomain:
                continue
        for x in pts:
            v = self.eval(x)
            v = v if isinstance(v, HyperReal) else as_hyper(v)
            if v.compare(c) < 0 or v.compare(d) > 0:
                return c, d, False
            sv = v.st() if v.is_limited() else None
            if sv in (c, d):
                attained.add(sv)
        return c, d, {c, d} <= attained or c == d


def build_glue(spec: StepSpec, delta) -> GlueFunction:
    if isinstance(delta, HyperReal):
        if delta.classify() != "infinitesimal" or delta.compare(0) <= 0:
            raise NonPositiveDelta("kernel-mode delta must be a positive infinitesimal")
        return GlueFunction(spec, delta)
    delta = Fraction(delta)
    if delta <= 0:
        raise NonPositiveDelta("delta must be positive")
    gaps = [b - a for a, b in zip(spec.partition, spec.partition[1:])]
    if any(2 * delta >= gap for gap in gaps):
        raise OverlappingTransitions("2*delta must be smaller than every partition gap")
    return GlueFunction(spec, delta)


# -- partitions ------------------------------------------------------------


@dataclass(frozen=True)
class Partition1D:
    points: Tuple[Fraction, ...]
    mesh: Fraction

    def __post_init__(self):
        pts = tuple(Fraction(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "mesh", Fraction(self.mesh))
        if any(b < a for a, b in zip(pts, pts[1:])):
            raise GlueError("partition points must be nondecreasing")
        if any(b - a > self.mesh for a, b in zip(pts, pts[1:])):
            raise GlueError("a gap exceeds the declared mesh")


def special_partition(a, big_t, dt) -> Partition1D:
    """Uniform partition t_i = a + i*dt, closed off with t_{n+1} = T.

    n is the largest natural with a + n*dt <= T; the last cell may be
    degenerate (t_{n+1} = t_n when dt divides T - a).
    """
    a, big_t, dt = Fraction(a), Fraction(big_t), Fraction(dt)
    if not (a < big_t and dt > 0):
        raise GlueError("need a < T and dt > 0")
    n = (big_t - a) // dt
    points = [a + i * dt for i in range(n + 1)] + [big_t]
    return Partition1D(tuple(points), mesh=dt)


def avoiding_refinement(p: Partition1D, avoid) -> Tuple[Fraction, ...]:
    """Pick t'_i in [t_i, t_{i+1}] off the avoid set, keeping endpoints.

    Deterministic: midpoint first, then nudges of mesh/7 alternating
    around it.  Endpoints are forced, so they may not be avoidable.
    """
    avoid = {Fraction(z) for z in avoid}
    pts = p.points
    a, big_t = pts[0], pts[-1]
    if a in avoid or big_t in avoid:
        raise AvoidSetBlocksEndpoints("an endpoint lies in the avoid set")
    out: List[Fraction] = [a]
    step = p.mesh / 7 if p.mesh else Fraction(1, 7)
    for i in range(len(pts) - 1):
        lo, hi = pts[i], pts[i + 1]
        lo = max(lo, out[-1])
        if lo > hi:
            raise GlueError("selection cannot stay nondecreasing")
        mid = (lo + hi) / 2
        pick = None
        for k in range(50):
            for cand in (mid + k * step, mid - k * step):
                if lo <= cand <= hi and cand not in avoid and cand >= out[-1]:
                    pick = cand
                    break
            if pick is not None:
                break
        if pick is None:
            raise GlueError("avoid set saturates a cell")
        out.append(pick)
    out.append(big_t)
    return tuple(out)


def telescope(fn, points: Sequence[Fraction]):
    """Increments of fn over consecutive points; the total telescopes.

    Returns (increments, total, max_abs_increment).
    """
    pts = [Fraction(p) for p in points]
    vals = [fn(p) for p in pts]
    incs = [b - a for a, b in zip(vals, vals[1:])]
    total = vals[-1] - vals[0]
    assert sum(incs, Fraction(0)) == total
    max_abs = max((abs(i) for i in incs), default=Fraction(0))
    return incs, total, max_abs


def resolving_process(spec: StepSpec, selection: Sequence[Fraction]):
    """Per-interval increments N(T_i) = Q(t'_{i+1}) - Q(t'_i).

    The selection must avoid the jump points of Q; a hit means the step
    function has no value there.
    """
    sel = [Fraction(p) for p in selection]
    for t in sel:
        if t in spec.interior:
            raise SelectionHitsDiscontinuity(f"selection hits jump point {t}")
    out = []
    for a, b in zip(sel, sel[1:]):
        out.append(((a, b), spec.step_eval(b) - spec.step_eval(a)))
    return out
