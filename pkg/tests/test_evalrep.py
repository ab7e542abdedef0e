"""Evaluation modules: entry and half-current images, the Gauss
decomposition consistency, exchange-relation suites, Drinfeld ratios and
the l = 1 gauge comparison."""

import cmath

import numpy as np
import pytest

from ellqg import verify as vf
from ellqg.amplitude import ONE
from ellqg.errors import PoleError
from ellqg.evalrep import (EvalModule, entry_op, half_current_op, phi_l,
                           rho_1l)
from ellqg.theta import bracket

RNG = np.random.default_rng(13)
P_PTS = [1.3 + 0.137j, -0.7 + 0.4j, 0.45 - 1.1j]


def rand_c(n=1, box=1.5):
    pts = [complex(re, 0.3 * im) + 0.137j
           for re, im in RNG.uniform(-box, box, (n, 2))]
    return pts if n > 1 else pts[0]


def test_phi_l_reductions(pa):
    u = 0.8 + 0.21j
    assert abs(phi_l(u, 0, pa) + bracket(u + 0.5, pa)) < 1e-12
    got = phi_l(0.6, 1, pa)
    assert abs(got - 0.39122131148974904) < 1e-10  # frozen composition oracle
    for l in (1, 2, 3):
        lhs = phi_l(u, l, pa) * phi_l(u - 1, l, pa)
        rhs = bracket(u - (l + 1) / 2, pa) * bracket(u + (l + 1) / 2, pa)
        assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))


def test_rho_1l_matches_rho_plus_pattern(pa):
    # rho+_{11} = q^(1/2) z^{-1/2r} rho+(u)
    from ellqg.rmatrix import rho_plus
    from ellqg.theta import upow

    u = 0.8
    z = cmath.exp(2 * u * pa.logq)
    lhs = rho_1l(z, 1, pa)
    rhs = cmath.sqrt(pa.q) * rho_plus(u, pa) / upow(u, 1 / (2 * pa.r), pa)
    assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))


def test_delta_is_single_atom_with_unit_coeff_at_l0(pa):
    mod = EvalModule(0, 0.27 - 0.11j, pa)
    op = entry_op("delta", 0.4 + 0.21j, mod)
    assert len(op.atoms) == 1
    a = op.atoms[0]
    assert a.qshift == -1 and a.src == a.dst == 0
    assert abs(a.coeff(1.3) - 1.0) < 1e-12


def test_gamma_kills_highest_weight(pa):
    mod = EvalModule(2, 0.27 - 0.11j, pa)
    out = entry_op("gamma", 0.4 + 0.21j, mod).apply({0: ONE})
    assert out == {}


def test_E_kills_boundary(pa):
    mod = EvalModule(2, 0.27 - 0.11j, pa)
    # raising direction leaves the module at m = 0; F at m = l
    out = half_current_op("E", 0.4 + 0.21j, mod).apply({0: ONE})
    assert out == {}
    out = half_current_op("F", 0.4 + 0.21j, mod).apply({2: ONE})
    assert out == {}


def test_alpha_coefficient_l1_m1(pa):
    # closed coefficient at l = 1, m = 1 (weight -1), qshift +1
    u, v, P = 0.4 + 0.21j, 0.27 - 0.11j, 1.3 + 0.137j
    mod = EvalModule(1, v, pa)
    op = entry_op("alpha", u, mod)
    a = [x for x in op.atoms if x.src == 1][0]
    assert a.qshift == +1 and a.dst == 1
    d = u - v
    want = -bracket(d, pa) * bracket(P - 1, pa) * bracket(P + 1, pa) \
        / (phi_l(d, 1, pa) * bracket(P, pa) ** 2)
    assert abs(a.coeff(P) - want) < 1e-12 * max(1.0, abs(want))


def test_gauss_decomposition_consistency(pa):
    from ellqg.atoms import SlotOperator

    u = 0.4 + 0.21j
    for l in (1, 2, 3):
        mod = EvalModule(l, 0.27 - 0.11j, pa)
        K = half_current_op("K", u, mod)
        Ki = half_current_op("Kinv", u, mod)
        E = half_current_op("E", u, mod)
        F = half_current_op("F", u, mod)
        eye = SlotOperator.identity(mod.dim)
        assert vf.op_residual(K @ Ki, eye, P_PTS) < 1e-12
        assert vf.op_residual(Ki @ K, eye, P_PTS) < 1e-12
        assert vf.op_residual(entry_op("delta", u, mod), Ki, P_PTS) < 1e-12
        assert vf.op_residual(entry_op("gamma", u, mod), Ki @ E, P_PTS) < 1e-12
        assert vf.op_residual(entry_op("beta", u, mod), F @ Ki, P_PTS) < 1e-12
        alpha_built = half_current_op("K", u - 1, mod) + (F @ Ki @ E)
        assert vf.op_residual(entry_op("alpha", u, mod), alpha_built, P_PTS) < 1e-11


def test_H_eigenvalue_on_highest_weight(pa):
    u, v = 0.4 + 0.21j, 0.27 - 0.11j
    for l in (1, 2, 3):
        mod = EvalModule(l, v, pa)
        H = half_current_op("H", u, mod)
        a = [x for x in H.atoms if x.src == 0 and x.dst == 0][0]
        assert a.qshift == 2
        want = bracket(u - v + (l + 1) / 2, pa) / bracket(u - v - (l - 1) / 2, pa)
        assert abs(a.coeff(P_PTS[0]) - want) < 1e-11 * max(1.0, abs(want))


def test_delta_commutator_vanishes(pa):
    mod = EvalModule(2, 0.27 - 0.11j, pa)
    d1 = entry_op("delta", 0.4 + 0.21j, mod)
    d2 = entry_op("delta", -0.55 + 0.34j, mod)
    assert vf.op_residual(d1 @ d2, d2 @ d1, P_PTS) < 1e-13


def test_beta_squared_qshift(pa):
    mod = EvalModule(2, 0.27 - 0.11j, pa)
    b = entry_op("beta", 0.4 + 0.21j, mod)
    for a in (b @ b).atoms:
        assert a.qshift == -2


def test_rll_relations_all_l(pa):
    for l in (1, 2, 3):
        for _ in range(5):
            u1, u2, P, v = rand_c(4)
            mod = EvalModule(l, v, pa)
            for name, lhs, rhs in vf.rll_relations(mod, u1, u2):
                assert vf.op_residual(lhs, rhs, [P]) < 1e-9, name


def test_rll_negative_control(pa):
    mod = EvalModule(1, 0.27 - 0.11j, pa)
    lhs, rhs = vf.rll_negative_control(mod, 0.4 + 0.21j, -0.55 + 0.34j)
    assert vf.op_residual(lhs, rhs, [1.3 + 0.137j]) > 1e-3


def test_half_current_relations(pa):
    for l in (1, 2):
        for _ in range(5):
            u1, u2, P, v = rand_c(4)
            mod = EvalModule(l, v, pa)
            for name, lhs, rhs in vf.half_current_relations(mod, u1, u2):
                assert vf.op_residual(lhs, rhs, [P]) < 1e-9, name


def test_half_current_coincident_points_pole(pa):
    mod = EvalModule(1, 0.27 - 0.11j, pa)
    with pytest.raises(PoleError):
        vf.half_current_relations(mod, 0.4 + 0.21j, 0.4 + 0.21j)


def test_drinfeld_poly_checks(pa):
    for l in (1, 2, 3):
        ratio, rshift, taushift = vf.drinfeld_poly_check(
            l, 0.27 - 0.11j, pa, [0.4 + 0.21j, -0.55 + 0.34j])
        assert ratio < 1e-10
        assert rshift < 1e-10
        assert taushift < 1e-8


def test_drinfeld_l1_ratio_explicit(pa):
    from ellqg.cgkit import drinfeld_poly, single_module_h_ratio

    u, v = 0.4 + 0.21j, 0.27 - 0.11j
    got = single_module_h_ratio(1, v, u, pa)
    want = bracket(u - v + 1, pa) / bracket(u - v, pa)
    assert abs(got - want) < 1e-12
    # telescoping at l = 3: same ratio from the full product
    got = drinfeld_poly(3, v, u + 1, pa) / drinfeld_poly(3, v, u, pa)
    want = bracket(u - v + 2, pa) / bracket(u - v - 1, pa)
    assert abs(got - want) < 1e-10 * max(1.0, abs(want))


def test_l1_gauge_check(pa):
    spread, zero_ok = vf.l1_gauge_check(0.4 + 0.21j, 0.27 - 0.11j, pa, P_PTS)
    assert spread < 1e-8 and zero_ok
    spread, _ = vf.l1_gauge_check(0.4 + 0.21j, 0.27 - 0.11j, pa, P_PTS,
                                  v_offset=0.1)
    assert spread > 1e-2
