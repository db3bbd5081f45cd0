import random
from fractions import Fraction

import pytest

from ultralogic.glue import (
    AvoidSetBlocksEndpoints,
    GlueError,
    NonPositiveDelta,
    OnPartitionPoint,
    OutOfDomain,
    OverlappingTransitions,
    Partition1D,
    SelectionHitsDiscontinuity,
    StepSpec,
    avoiding_refinement,
    build_glue,
    resolving_process,
    special_partition,
    telescope,
)
from ultralogic.hyper import HyperReal, as_hyper, pi_fraction

EPS = HyperReal.eps()
NEUTRON = StepSpec(partition=(0, 1, 2), values=(2, 3))


def test_build_glue_modes_and_errors():
    g = build_glue(NEUTRON, EPS)
    assert g.infinitesimal_mode
    g0 = build_glue(NEUTRON, Fraction(1, 100))
    assert not g0.infinitesimal_mode
    with pytest.raises(OverlappingTransitions):
        build_glue(NEUTRON, Fraction(6, 10))
    with pytest.raises(NonPositiveDelta):
        build_glue(NEUTRON, -EPS)
    with pytest.raises(NonPositiveDelta):
        build_glue(NEUTRON, as_hyper(1))
    with pytest.raises(NonPositiveDelta):
        build_glue(NEUTRON, Fraction(0))


def test_eval_regions():
    g = build_glue(NEUTRON, EPS)
    assert g.eval(Fraction(1, 2)) == 2
    assert g.eval(as_hyper(1)) == Fraction(5, 2)
    assert g.eval(as_hyper(1) + EPS) == 3
    assert g.eval(as_hyper(1) - EPS) == 2
    assert g.eval(Fraction(3, 2)) == 3
    with pytest.raises(OutOfDomain):
        g.eval(Fraction(-1))
    with pytest.raises(OutOfDomain):
        g.eval(as_hyper(2) + EPS)


def test_derivative_closed_forms():
    g = build_glue(NEUTRON, EPS)
    d1 = g.derivative(1, as_hyper(1))
    assert d1.pi_power == 1
    assert d1.series == HyperReal.omega() * Fraction(1, 4)
    assert g.derivative(1, as_hyper(1) + EPS).is_zero()
    assert g.derivative(1, as_hyper(1) - EPS).is_zero()
    d2 = g.derivative(2, as_hyper(1) + EPS)
    assert d2.pi_power == 2
    assert abs(d2.series.coefficient(-2)) == Fraction(1, 8)
    assert g.derivative(3, as_hyper(1) - EPS).is_zero()
    # constant regions are flat at every order
    assert g.derivative(1, Fraction(1, 2)).is_zero()
    assert g.derivative(5, Fraction(7, 4)).is_zero()


def test_derivative_scales_with_jump():
    spec = StepSpec(partition=(0, 1, 2), values=(Fraction(3), Fraction(1, 2)))
    g = build_glue(spec, EPS)
    d1 = g.derivative(1, as_hyper(1))
    assert d1.series == HyperReal.omega() * Fraction(Fraction(1, 2) - 3, 4)


def test_st_restrict():
    g = build_glue(NEUTRON, EPS)
    assert g.st_restrict(Fraction(1, 2)) == 2
    assert g.st_restrict(Fraction(3, 2)) == 3
    with pytest.raises(OnPartitionPoint):
        g.st_restrict(1)


def test_st_restrict_random_specs():
    rng = random.Random(3)
    for _ in range(10):
        cuts = sorted(rng.sample(range(1, 40), 3))
        pts = tuple([0] + cuts + [40])
        vals = tuple(Fraction(rng.randint(-5, 5)) for _ in range(4))
        spec = StepSpec(partition=pts, values=vals)
        g = build_glue(spec, EPS)
        for k in range(1, 100):
            x = Fraction(40 * k, 100)
            if x in spec.interior:
                continue
            assert g.st_restrict(x) == spec.step_eval(x)


def test_range_check():
    c, d, ok = build_glue(NEUTRON, EPS).range_check()
    assert (c, d, ok) == (2, 3, True)
    flat = StepSpec(partition=(0, 1, 2), values=(5, 5))
    assert build_glue(flat, EPS).range_check()[:2] == (5, 5)
    spec = StepSpec(partition=(0, 1, 2, 3), values=(3, 1, 4))
    c, d, ok = build_glue(spec, Fraction(1, 10)).range_check()
    assert (c, d, ok) == (1, 4, True)


def test_monotone_spec_is_nondecreasing():
    spec = StepSpec(partition=(0, 1, 2, 3), values=(1, 2, 5))
    g = build_glue(spec, Fraction(1, 8))
    xs = [Fraction(3 * k, 200) for k in range(201)]
    ys = [g.eval(x) for x in xs]
    assert all(a <= b for a, b in zip(ys, ys[1:]))


def test_special_partition():
    p = special_partition(0, 1, Fraction(3, 10))
    assert p.points == (0, Fraction(3, 10), Fraction(6, 10), Fraction(9, 10), 1)
    p2 = special_partition(0, 1, Fraction(1, 2))
    assert p2.points == (0, Fraction(1, 2), 1, 1)
    p3 = special_partition(0, 1, 2)
    assert p3.points == (0, 1)
    with pytest.raises(GlueError):
        special_partition(1, 0, Fraction(1, 2))


def test_avoiding_refinement():
    p = special_partition(0, 1, Fraction(1, 2))
    sel = avoiding_refinement(p, avoid={Fraction(1, 2)})
    assert sel[0] == 0 and sel[-1] == 1
    assert all(a <= b for a, b in zip(sel, sel[1:]))
    assert Fraction(1, 2) not in sel
    assert avoiding_refinement(p, avoid=set())
    with pytest.raises(AvoidSetBlocksEndpoints):
        avoiding_refinement(p, avoid={Fraction(0)})
    # selections stay within their cells
    pts = p.points
    for i, t in enumerate(sel[1:-1], start=1):
        assert any(lo <= t <= hi for lo, hi in zip(pts, pts[1:]))


def test_telescope_identity():
    g = build_glue(NEUTRON, Fraction(1, 100))
    p = special_partition(0, 2, Fraction(1, 10))
    incs, total, max_inc = telescope(lambda x: g.eval(x), p.points)
    assert total == 1
    assert sum(incs) == total
    _, tot2, _ = telescope(lambda x: Fraction(7), p.points)
    assert tot2 == 0
    bound = (pi_fraction() + 1) / (4 * Fraction(1, 100)) * p.mesh
    assert max_inc <= bound


def test_resolving_process():
    p = special_partition(0, 2, Fraction(1, 4))
    sel = avoiding_refinement(p, avoid={Fraction(1)})
    rows = resolving_process(NEUTRON, sel)
    nonzero = [(iv, inc) for iv, inc in rows if inc != 0]
    assert len(nonzero) == 1 and nonzero[0][1] == 1
    assert sum(inc for _, inc in rows) == 1
    (lo, hi), _ = nonzero[0]
    assert lo < 1 < hi
    with pytest.raises(SelectionHitsDiscontinuity):
        resolving_process(NEUTRON, [0, 1, 2])
    flat = StepSpec(partition=(0, 1, 2), values=(4, 4))
    assert all(inc == 0 for _, inc in resolving_process(flat, sel))


def test_partition_mesh_invariant():
    with pytest.raises(GlueError):
        Partition1D(points=(0, 2), mesh=1)
