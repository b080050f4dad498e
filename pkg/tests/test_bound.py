"""Bound-state ladders via the compact transcendental root problem."""

import numpy as np
import pytest

from bilayer1d import (
    BoundLadder,
    DoubleLayerSpec,
    SqueezeFamily,
    build_chi_problem,
    find_roots,
    poles_of_y,
    realize,
    verify_ladder,
)
from bilayer1d.core import EV_TO_INV_NM2 as EV
from bilayer1d.oracle import integrate_bound

from helpers import random_spec, single_well_kappas


def _well_spec(rng):
    # at least one genuine well so ladders are usually nonempty
    v1 = -rng.uniform(0.5, 4.0)
    v2 = rng.uniform(-4.0, 1.0)
    return DoubleLayerSpec.make(
        v1, rng.uniform(0.3, 2.0), v2, rng.uniform(0.3, 2.0), rng.uniform(0.0, 1.5)
    )


def test_ladder_fields_are_consistent():
    spec = DoubleLayerSpec.make(-2.5, 1.4, -1.0, 0.9, 0.5)
    problem = build_chi_problem(spec)
    ladder = find_roots(problem)
    assert ladder.branch in (1, 2)
    assert np.all(ladder.chis > 0.0)
    assert np.all(ladder.chis < ladder.rho)
    # parallel arrays, ordered from shallowest to deepest binding
    assert np.all(np.diff(ladder.kappas) > 0.0)
    assert np.all(np.diff(ladder.chis) < 0.0)
    implied = np.sqrt(ladder.rho**2 - ladder.chis**2) / ladder.l
    assert np.allclose(ladder.kappas, implied, rtol=1e-12)


def test_single_layer_reduces_to_textbook_well():
    for depth, width in ((2.2, 1.7), (7.5, 2.4), (0.9, 0.8)):
        spec = DoubleLayerSpec.make(-depth, width, 0.0, 0.0, 0.0)
        ladder = find_roots(build_chi_problem(spec))
        reference = single_well_kappas(depth, width)
        assert ladder.chis.size == len(reference)
        got = np.sort(ladder.kappas)
        assert np.max(np.abs(got - reference)) < 1e-9


def test_ladders_match_direct_integration():
    rng = np.random.default_rng(21)
    compared = 0
    for _ in range(25):
        spec = _well_spec(rng)
        ladder = find_roots(build_chi_problem(spec))
        reference = integrate_bound(spec)
        assert ladder.chis.size == len(reference)
        if ladder.chis.size:
            got = np.sort(ladder.kappas)
            assert np.max(np.abs(got - np.sort(reference))) < 1e-7
            compared += 1
    assert compared >= 10


def test_barrier_pair_has_no_bound_sector():
    spec = DoubleLayerSpec.make(2.0, 1.0, 1.0, 0.5, 0.3)
    with pytest.raises(ValueError):
        build_chi_problem(spec)


def test_both_branches_agree_for_symmetric_double_wells():
    # for mirror-symmetric wells neither branch can run out of headroom,
    # so referencing either layer must give the same physical ladder
    rng = np.random.default_rng(22)
    for _ in range(10):
        depth = rng.uniform(0.8, 3.0)
        width = rng.uniform(0.5, 1.5)
        spec = DoubleLayerSpec.make(
            -depth, width, -depth, width, rng.uniform(0.0, 1.0)
        )
        first = find_roots(build_chi_problem(spec, branch=1))
        second = find_roots(build_chi_problem(spec, branch=2))
        assert first.chis.size == second.chis.size
        if first.chis.size:
            assert np.max(np.abs(first.kappas - second.kappas)) < 1e-8


def test_auto_branch_matches_forced_choice():
    rng = np.random.default_rng(23)
    for _ in range(10):
        spec = DoubleLayerSpec.make(
            -rng.uniform(0.5, 3.0),
            rng.uniform(0.4, 1.5),
            rng.uniform(-3.0, 1.0),
            rng.uniform(0.4, 1.5),
            rng.uniform(0.0, 1.0),
        )
        auto = find_roots(build_chi_problem(spec))
        forced = find_roots(build_chi_problem(spec, branch=auto.branch))
        assert np.array_equal(auto.chis, forced.chis)
        report = verify_ladder(spec, auto)
        assert report.ok


def test_verify_ladder_accepts_complete_and_flags_truncated():
    spec = DoubleLayerSpec.make(-2.5, 1.4, -1.0, 0.9, 0.5)
    ladder = find_roots(build_chi_problem(spec))
    assert ladder.chis.size >= 2
    report = verify_ladder(spec, ladder)
    assert report.ok
    assert len(report.missed) == 0
    assert max(abs(r) for r in report.residuals) < 1e-8
    truncated = BoundLadder(
        ladder.chis[1:], ladder.kappas[1:], ladder.rho, ladder.l, ladder.branch
    )
    broken = verify_ladder(spec, truncated)
    assert not broken.ok
    assert len(broken.missed) >= 1


def test_single_well_interface_pole_sits_at_rho_over_sqrt2():
    spec = DoubleLayerSpec.make(-3.0, 1.5, 0.0, 0.0, 0.0)
    problem = build_chi_problem(spec)
    poles = np.asarray(poles_of_y(problem))
    target = problem.rho / np.sqrt(2.0)
    assert np.min(np.abs(poles - target)) < 1e-9 * problem.rho


def test_edge_hugging_survivor_is_not_lost():
    # strongly squeezed realization whose only root sits within ~3e-9 of the
    # chi-interval edge; a uniform scan would step right over it
    family = SqueezeFamily(
        2.0, 2.0, 2.0, 0.5 * EV, -0.5 * EV, 1.0121526769027671, 0.6, 2.0
    )
    spec = realize(family, 1e-4)
    ladder = find_roots(build_chi_problem(spec))
    assert ladder.chis.size == 1
    assert ladder.kappas[0] == pytest.approx(0.88417295, abs=5e-7)
