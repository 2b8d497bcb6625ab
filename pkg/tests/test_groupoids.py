"""Chart-level groupoid models: structure maps, blow-down, fibre products."""

import numpy as np
import pytest

from egl.checks import check_groupoid_axioms, lie_algebroid_of, rng_for
from egl.errors import ChartInvalid, NotComposable, NotTransverse
from egl.groupoids import (action_groupoid_model, case1_model,
                           case2_quotient_model, caseIV_model,
                           elliptic_ideal_pullback, fibre_product,
                           pair_groupoid, smooth_factor_model,
                           ssc_surface_model)
from egl.kernel import subspace_equal
from egl.signedperm import SignedPermutation, semidirect_mul


def test_case1_multiplication_over_divisor():
    model = case1_model(4)
    b1, b2 = 0.5 + 1j, -2 + 0.25j
    g = (0.1, 0.2, 0.3, 0.4, 0.0, 0.0, b1.real, b1.imag)
    h = (0.3, 0.4, 0.5, 0.6, 0.0, 0.0, b2.real, b2.imag)
    out = model.compose(g, h)
    b = b1 * b2
    assert out == (0.1, 0.2, 0.5, 0.6, 0.0, 0.0, b.real, b.imag)


def test_case1_unit_maps_to_diagonal():
    model = case1_model(4)
    p = (0.7, -0.3, 0.2, 0.9)
    u = model.unit_at(p)
    assert model.beta_map(u) == p + p


def test_case1_inverse_against_blowdown_oracle(rng):
    # the inverse must be the conjugate of the pair-groupoid swap by the
    # blow-down wherever the arrow lies over the dense chart: the unique
    # arrow with swapped base pair has a' = v_s and b' = v_t / v_s
    model = case1_model(4)
    nx = 2
    for _ in range(10_000):
        g = model.random_arrow(rng)
        inv = model.invert(g)
        t, s = model.target_of(g), model.source_of(g)
        assert model.target_of(inv) == pytest.approx(s, abs=1e-12)
        assert model.source_of(inv) == pytest.approx(t, abs=1e-12)
        vs = complex(s[nx], s[nx + 1])
        vt = complex(t[nx], t[nx + 1])
        if vs != 0:
            oracle = s[:nx] + t[:nx] + (vs.real, vs.imag) \
                + ((vt / vs).real, (vt / vs).imag)
            assert max(abs(a - b) for a, b in zip(inv, oracle)) < 1e-12


def test_case1_chart_invalid_when_b_zero():
    model = case1_model(4)
    with pytest.raises(ChartInvalid):
        model.require_valid((0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0))


def test_case1_not_composable():
    model = case1_model(2)
    g = (0.5, 0.0, 1.0, 0.0)   # s = 0.5
    h = (0.9, 0.0, 1.0, 0.0)   # t = 0.9
    with pytest.raises(NotComposable):
        model.compose(g, h)


def test_caseIV_reduces_to_case1_pointwise(rng):
    m1 = case1_model(5)
    mk = caseIV_model(5, 1)
    for _ in range(200):
        g = m1.random_arrow(rng)
        h = m1.extend_from(m1.source_of(g), rng)
        assert mk.source_of(g) == m1.source_of(g)
        assert mk.target_of(g) == m1.target_of(g)
        assert mk.compose(g, h) == m1.compose(g, h)
        assert mk.invert(g) == m1.invert(g)
    p = m1.random_base(rng)
    assert mk.unit_at(p) == m1.unit_at(p)


def test_caseIV_unit_formula():
    model = caseIV_model(6, 2)
    p = (0.5, -1.0, 0.1, 0.2, 0.3, 0.4)
    assert model.unit_at(p) == (0.5, -1.0, 0.5, -1.0, 0.1, 0.2, 0.3, 0.4,
                                1.0, 0.0, 1.0, 0.0)


def test_caseIV_associativity_sampled(rng):
    model = caseIV_model(6, 3)
    worst = 0.0
    for _ in range(10_000):
        g, h, k = model.random_composable_triple(rng)
        lhs = model.compose(model.compose(g, h), k)
        rhs = model.compose(g, model.compose(h, k))
        worst = max(worst, max(abs(a - b) for a, b in zip(lhs, rhs)))
    assert worst < 1e-9


def test_multiplication_smooth_map_view(rng):
    # the SmoothMap view of m evaluates on exactly composable flat pairs
    # and its predicate rejects endpoint gaps beyond the tolerance
    model = case1_model(4)
    g, h = model.random_composable_pair(rng)
    gh = np.asarray(g + h, dtype=float)
    assert model.m.defined_at(gh)
    assert tuple(model.m(gh)) == model.compose(g, h)
    bad = np.array(g + tuple(x + 0.1 for x in h))
    assert not model.m.defined_at(bad)


def test_beta_intertwines_multiplication_off_divisor(rng):
    for model in (case1_model(4), caseIV_model(4, 2)):
        pair = pair_groupoid(model.base_dim)
        for _ in range(500):
            g, h = model.random_composable_pair(rng)
            bg, bh = model.beta_map(g), model.beta_map(h)
            lhs = model.beta_map(model.compose(g, h))
            rhs = pair.compose_raw(bg, bh)
            assert max(abs(a - b) for a, b in zip(lhs, rhs)) < 1e-12


def test_case2_delta_zero_sector_is_case1(rng):
    base = case1_model(4)
    model = case2_quotient_model(4)
    for _ in range(300):
        g0 = base.random_arrow(rng)
        h0 = base.extend_from(base.source_of(g0), rng)
        g, h = g0 + (0.0,), h0 + (0.0,)
        assert model.compose(g, h)[:-1] == base.compose(g0, h0)
        assert model.compose(g, h)[-1] == 0.0
        assert model.invert(g)[:-1] == base.invert(g0)
        assert model.source_of(g) == base.source_of(g0)


def test_case2_isotropy_is_cstar_semidirect_z2():
    model = case2_quotient_model(4)
    lam, mu = 1.2 - 0.4j, 0.3 + 0.8j
    x0 = (0.5, 0.6)

    def iso(z, delta):
        return x0 + x0 + (0.0, 0.0) + (z.real, z.imag) + (float(delta),)

    out = model.compose(iso(lam, 1), iso(mu, 1))
    assert complex(out[6], out[7]) == lam * mu.conjugate()
    assert out[-1] == 0.0
    # cross-oracle: the exact semidirect product gives the same law
    flip = SignedPermutation((0,), (1,))
    (z,), sp = semidirect_mul(((lam,), flip), ((mu,), flip))
    assert z == lam * mu.conjugate() and sp.is_identity()


def test_case2_axioms_and_st_contract(rng):
    model = case2_quotient_model(4)
    report = check_groupoid_axioms(model, n_samples=2000, seed=3)
    assert report.ok, report.witnesses[:2]


def test_fibre_with_pair_groupoid_is_case1_arrow_for_arrow(rng):
    n = 4
    base = case1_model(n)
    model = fibre_product(base, pair_groupoid(n))
    for _ in range(300):
        g1 = base.random_arrow(rng)
        pairpart = base.target_of(g1) + base.source_of(g1)
        g = g1 + pairpart
        assert model.arrow_valid(g)
        assert model.source_of(g) == base.source_of(g1)
        assert model.target_of(g) == base.target_of(g1)
        inv = model.invert(g)
        assert inv[:base.arrow_dim] == base.invert(g1)
        # the second component stays determined by the first (up to rounding)
        expected = base.target_of(inv[:base.arrow_dim]) \
            + base.source_of(inv[:base.arrow_dim])
        assert inv[base.arrow_dim:] == pytest.approx(expected, abs=1e-12)


def test_fibre_of_transverse_factors_recovers_nc_algebroid(rng):
    m1 = smooth_factor_model(4, 2, 0)
    m2 = smooth_factor_model(4, 2, 1)
    nc = caseIV_model(4, 2)
    model = fibre_product(m1, m2, sample_base=nc.sample_base,
                          sample_base_like=nc.sample_base_like)
    for p in [(0.3, -0.2, 0.5, 0.1), (0.0, 0.0, 0.4, -0.3),
              (0.25, 0.5, 0.0, 0.0), (0.0, 0.0, 0.0, 0.0)]:
        recovered = lie_algebroid_of(model, p)
        expected = nc.expected_frame(p)
        assert subspace_equal(recovered, expected, 1e-5)


def test_fibre_hausdorff_flag_is_conjunction():
    m1 = case1_model(4)
    m2 = pair_groupoid(4)
    assert fibre_product(m1, m2).is_hausdorff
    m3 = case1_model(4)
    object.__setattr__(m3, "is_hausdorff", False)
    assert not fibre_product(m3, m2).is_hausdorff


def test_fibre_requires_transversality():
    # pairing a model with itself duplicates the blow-down directions:
    # the combined Jacobian drops rank over the divisor
    m = smooth_factor_model(4, 2, 0)
    dup = smooth_factor_model(4, 2, 0)
    with pytest.raises(NotTransverse):
        fibre_product(m, dup, seed=5)


def test_ssc_surface_examples(rng):
    model = ssc_surface_model()
    report = check_groupoid_axioms(model, n_samples=10_000, seed=11)
    assert report.ok and report.max_residual < 1e-12
    for _ in range(200):
        g = model.random_arrow(rng)
        inv = model.invert(g)
        # t(inv) = s(g) exactly: zeta e^Z e^{-Z} = zeta
        assert model.target_of(inv) == pytest.approx(model.source_of(g), abs=1e-14)


def test_ssc_surface_presents_fundamental_groupoid():
    model = ssc_surface_model()
    two_pi = 2 * np.pi
    zeta = (0.4, 0.7)
    for m in (-2, 1, 3):
        for n in (-1, 2):
            g = (0.0, two_pi * m) + zeta
            h = (0.0, two_pi * n) + zeta
            assert model.source_of(g) == pytest.approx(model.target_of(g), abs=1e-12)
            out = model.compose(g, h)
            assert out[1] == pytest.approx(two_pi * (m + n))


def test_action_groupoid_matches_zero_residue_isotropy(rng):
    from egl.symplectic import symplectic_zero_residue_model

    act = action_groupoid_model()
    sym = symplectic_zero_residue_model().model

    # the chart relabelling (z, a, b, c) -> ((b, c), (a, z)) intertwines
    # the two models on samples
    def to_action(g):
        return (g[4], g[5], g[6], g[7], g[2], g[3], g[0], g[1])

    for _ in range(500):
        g, h = sym.random_composable_pair(rng)
        lhs = to_action(sym.compose(g, h))
        rhs = act.compose(to_action(g), to_action(h))
        assert max(abs(a - b) for a, b in zip(lhs, rhs)) < 1e-12
        assert act.source_of(to_action(g)) == pytest.approx(
            (sym.source_of(g)[0], sym.source_of(g)[1],
             sym.source_of(g)[2], sym.source_of(g)[3]), abs=1e-13)


def test_elliptic_ideal_pullback_examples(rng):
    model = case1_model(4)
    # a = 0, b = 2: source and target pullbacks vanish, ratio |b|^2 = 4
    g = (0.1, 0.2, 0.3, 0.4, 0.0, 0.0, 2.0, 0.0)
    assert elliptic_ideal_pullback(model, g) == (0.0, 0.0, 4.0)
    # units have ratio exactly 1
    u = model.unit_at((0.5, 0.5, 0.3, -0.2))
    assert elliptic_ideal_pullback(model, u)[2] == 1.0
    # the ratio is strictly positive on every valid arrow
    nc = caseIV_model(6, 2)
    for _ in range(1000):
        g = nc.random_arrow(rng)
        s_val, t_val, ratio = elliptic_ideal_pullback(nc, g)
        assert ratio > 0
        assert s_val == pytest.approx(t_val * ratio, rel=1e-12, abs=1e-300)
