"""Check reports, negative controls, algebroid recovery, A-paths."""

import math

import numpy as np
import pytest

from egl.apaths import PolarCurve, apath_anchor_residual, apath_rescale
from egl.checks import (check_algebroid, check_groupoid_axioms, check_isotropy,
                        lie_algebroid_of, perturbed_model)
from egl.divisors import residue_model_frame
from egl.errors import DegenerateRadius
from egl.groupoids import case1_model, caseIV_model, ssc_surface_model
from egl.kernel import DEFAULT_PROFILE, subspace_angle, subspace_equal
from egl.symplectic import (symplectic_nonzero_residue_model,
                            symplectic_zero_residue_model)

PROF = DEFAULT_PROFILE


def test_reports_are_deterministic():
    model = case1_model(4)
    r1 = check_groupoid_axioms(model, n_samples=500, seed=19)
    r2 = check_groupoid_axioms(model, n_samples=500, seed=19)
    assert r1.to_dict() == r2.to_dict()
    assert r1.ok and not r1.witnesses  # witnesses nonempty iff fail
    r3 = check_groupoid_axioms(model, n_samples=500, seed=20)
    assert r3.to_dict() != r1.to_dict()


def test_case1_axiom_suite_at_full_scale():
    rep = check_groupoid_axioms(case1_model(4), n_samples=10_000, seed=7)
    assert rep.ok
    assert rep.max_residual < 1e-9


def test_pair_groupoid_multiplicativity_is_exact():
    from egl.checks import check_multiplicative
    from egl.symplectic import pair_groupoid_symplectic

    rep = check_multiplicative(pair_groupoid_symplectic(), n_samples=60, seed=3,
                               tol=1e-9)
    assert rep.ok
    assert rep.max_residual < 1e-10


def test_negative_control_fails_with_witnesses():
    model = perturbed_model(case1_model(4), epsilon=1e-3, component=0)
    rep = check_groupoid_axioms(model, n_samples=200, seed=19)
    assert not rep.ok
    assert rep.witnesses
    assert rep.max_residual >= 1e-3
    assert len(rep.witnesses) <= 20


def test_lie_algebroid_case1_over_divisor():
    # dt(ker ds) over a divisor point spans exactly the coordinate
    # directions along the stratum; radial and angular fields vanish
    model = case1_model(4)
    p = (0.3, -0.9, 0.0, 0.0)
    frame = lie_algebroid_of(model, p, PROF)
    expected = model.expected_frame(p)
    assert subspace_equal(frame, expected, 1e-6)
    ranks = np.linalg.matrix_rank(expected, tol=1e-8)
    assert ranks == 2


def test_lie_algebroid_nonzero_residue_example():
    sym = symplectic_nonzero_residue_model()
    p = (0.3, 0.4)
    frame = lie_algebroid_of(sym.model, p, PROF)
    assert subspace_equal(frame, residue_model_frame("nonzero")(p), 1e-6)
    # over the divisor both collapse to rank zero
    zero_frame = lie_algebroid_of(sym.model, (0.0, 0.0), PROF)
    assert subspace_angle(zero_frame, np.zeros((0, 2))) == 0.0


def test_lie_algebroid_zero_residue_realified_span(rng):
    sym = symplectic_zero_residue_model()
    frame_fn = residue_model_frame("zero")
    for _ in range(10):
        p = (float(rng.uniform(0.3, 1.0)), float(rng.uniform(-1, 1)),
             float(rng.uniform(-1, 1)), float(rng.uniform(-1, 1)))
        frame = lie_algebroid_of(sym.model, p, PROF)
        assert subspace_equal(frame, frame_fn(p), 1e-5)


def test_check_algebroid_anchor_rank(rng):
    # pushing the recovered frame through the identity reproduces
    # rank n - 2 mult at sampled base points
    model = caseIV_model(4, 2)
    for _ in range(20):
        p = model.random_base(rng)
        frame = lie_algebroid_of(model, p, PROF)
        mult = sum(1 for j in (0, 1) if complex(p[2 * j], p[2 * j + 1]) == 0)
        rank = np.linalg.matrix_rank(frame, tol=1e-6) if frame.size else 0
        assert rank == 4 - 2 * mult


def test_check_algebroid_metadata():
    rep = check_algebroid(ssc_surface_model(), n_points=50, seed=3)
    assert rep.ok
    assert rep.samples == 50
    assert rep.tolerance == PROF.subspace_tol


def test_isotropy_checks_pass():
    from egl.groupoids import action_groupoid_model, case2_quotient_model

    for model in (case2_quotient_model(4), caseIV_model(6, 2),
                  action_groupoid_model(),
                  symplectic_zero_residue_model().model):
        rep = check_isotropy(model, n_samples=200, seed=3)
        assert rep.ok, model.name


# ---------------------------------------------------------------------------
# algebroid paths and the rescaling limit
# ---------------------------------------------------------------------------

def _helix(nx=2):
    return PolarCurve(
        x=lambda tau: tuple(float(f(tau)) for f in (math.sin, math.cos)[:nx]),
        r=lambda tau: math.exp(tau),
        theta=lambda tau: 2.0 * tau,
    )


def test_apath_constant_radius_has_zero_radial_coefficient():
    curve = PolarCurve(x=lambda tau: (tau,), r=lambda tau: 0.7,
                       theta=lambda tau: tau ** 2)
    for t in (1.0, 0.01):
        path = apath_rescale(curve, t)
        for tau in (0.2, 0.5, 0.8):
            assert abs(path.coeffs(tau)[-2]) < 1e-9


def test_apath_exponential_radius_coefficient_is_one():
    curve = _helix()
    path = apath_rescale(curve, 0.5)
    for tau in (0.1, 0.4, 0.9):
        assert path.coeffs(tau)[-2] == pytest.approx(1.0, abs=1e-9)


def test_apath_coefficients_independent_of_rescaling():
    curve = _helix()
    taus = np.linspace(0.1, 0.9, 9)
    reference = [apath_rescale(curve, 1.0).coeffs(tau) for tau in taus]
    for t in (0.1, 1e-2, 1e-4, 1e-6):
        path = apath_rescale(curve, t)
        for ref, tau in zip(reference, taus):
            assert np.max(np.abs(path.coeffs(tau) - ref)) < 1e-12
        # the base path collapses onto the stratum
        assert max(abs(path.base(tau)[-1]) + abs(path.base(tau)[-2])
                   for tau in taus) < 3 * t * math.e


def test_apath_anchor_property():
    curve = _helix()
    for t in (1.0, 0.05):
        path = apath_rescale(curve, t)
        assert apath_anchor_residual(path, np.linspace(0.1, 0.9, 7)) < 1e-6


def test_apath_degenerate_radius():
    curve = PolarCurve(x=lambda tau: (0.0,), r=lambda tau: tau - 0.5,
                       theta=lambda tau: 0.0)
    path = apath_rescale(curve, 1.0)
    with pytest.raises(DegenerateRadius):
        path.base(0.2)
    with pytest.raises(ValueError):
        apath_rescale(curve, 0.0)
