"""Hopf-algebroid layer: antipode images and axioms, counit consistency on
either slot, coproduct structure and iterated-coproduct bookkeeping."""

import numpy as np

from ellqg import verify as vf
from ellqg.amplitude import PAmplitude
from ellqg.atoms import TensorState, apply_tensor
from ellqg.evalrep import (ENTRY_QSHIFT, EvalModule, antipode_op,
                           coproduct_op, entry_op)

RNG = np.random.default_rng(14)
P_PTS = [1.3 + 0.137j, -0.7 + 0.4j, 0.45 - 1.1j]
KINDS = ("alpha", "beta", "gamma", "delta")


def rand_c(n=1, box=1.5):
    pts = [complex(re, 0.3 * im) + 0.137j
           for re, im in RNG.uniform(-box, box, (n, 2))]
    return pts if n > 1 else pts[0]


def test_antipode_of_alpha_is_shifted_delta(pa):
    u = 0.4 + 0.21j
    mod = EvalModule(2, 0.27 - 0.11j, pa)
    got = antipode_op("alpha", u, mod)
    want = entry_op("delta", u - 1, mod)
    assert vf.op_residual(got, want, P_PTS) == 0.0


def test_antipode_axiom_all_entries(pa):
    for kind in KINDS:
        for _ in range(5):
            u, v, P = rand_c(3)
            mod = EvalModule(2, v, pa)
            assert vf.antipode_residual(kind, u, mod, [P], "right") < 1e-9, kind
            assert vf.antipode_residual(kind, u, mod, [P], "left") < 1e-9, kind


def test_antipode_squared_finite(pa):
    # S^2 dressing stays finite and consistent at sampled P (smoke)
    u = 0.4 + 0.21j
    mod = EvalModule(1, 0.27 - 0.11j, pa)
    op = antipode_op("beta", u, mod)
    for a in op.atoms:
        val = a.coeff(P_PTS[0])
        assert np.isfinite(val.real) and np.isfinite(val.imag)


def test_coproduct_grading(pa):
    mods = (EvalModule(1, 0.27 - 0.11j, pa), EvalModule(1, -0.4 + 0.17j, pa))
    for kind in KINDS:
        top = coproduct_op(kind, 0.4 + 0.21j, mods)
        for term in top.terms:
            # slot-2 qshift equals the entry's column sign in every term
            for a in term[1].atoms:
                assert a.qshift == ENTRY_QSHIFT[kind]


def test_coproduct_delta_on_double_highest_weight(pa):
    # gamma kills both highest weights, so only delta (x) delta survives
    mods = (EvalModule(2, 0.27 - 0.11j, pa), EvalModule(1, -0.4 + 0.17j, pa))
    u = 0.4 + 0.21j
    top = coproduct_op("delta", u, mods)
    st = TensorState(tuple(m.weights for m in mods),
                     {(0, 0): PAmplitude.const(1.0)})
    out = apply_tensor(top, st)
    d1 = entry_op("delta", u, mods[0]).atoms[0].coeff(0)
    d2 = entry_op("delta", u, mods[1]).atoms[0].coeff(0)
    got = out.amps[(0, 0)](P_PTS[0])
    assert abs(got - d1 * d2) < 1e-12 * max(1.0, abs(d1 * d2))


def test_coproduct_gamma_shifts_carried_amplitude(pa):
    # term-by-term: the gamma (x) alpha piece reads the carried amplitude
    # at P+1, the delta (x) gamma piece at P-1
    from ellqg.atoms import TensorOperator

    mods = (EvalModule(2, 0.27 - 0.11j, pa), EvalModule(2, -0.4 + 0.17j, pa))
    u = 0.4 + 0.21j
    C = PAmplitude(lambda P: 1.0 / (P - (3.3 + 1.1j)))
    st = TensorState(tuple(m.weights for m in mods), {(1, 1): C})
    terms = {(t[0].atoms[0].qshift if t[0].atoms else None): t
             for t in coproduct_op("gamma", u, mods).terms}
    ga1 = entry_op("gamma", u, mods[0])
    al2 = entry_op("alpha", u, mods[1])
    out = apply_tensor(TensorOperator([terms[+1]]), st)  # gamma (x) alpha
    a_g = [a for a in ga1.atoms if a.src == 1][0]
    a_a = [a for a in al2.atoms if a.src == 1][0]
    for P in P_PTS:
        want = a_g.coeff(P) * C(P + 1) * a_a.coeff(P - mods[1].weight(1))
        assert abs(out.amps[(0, 1)](P) - want) < 1e-12 * max(1.0, abs(want))
    out = apply_tensor(TensorOperator([terms[-1]]), st)  # delta (x) gamma
    de1 = [a for a in entry_op("delta", u, mods[0]).atoms if a.src == 1][0]
    ga2 = [a for a in entry_op("gamma", u, mods[1]).atoms if a.src == 1][0]
    for P in P_PTS:
        want = de1.coeff(P) * C(P - 1) * ga2.coeff(P - mods[1].weight(0))
        assert abs(out.amps[(1, 0)](P) - want) < 1e-12 * max(1.0, abs(want))


def test_counit_consistency_both_slots(pa):
    for kind in KINDS:
        for slot in (1, 2):
            for _ in range(3):
                u, v, P = rand_c(3)
                mod = EvalModule(2, v, pa)
                assert vf.counit_residual(kind, u, mod, [P], slot) < 1e-9, \
                    (kind, slot)


def test_counit_is_l0_module(pa):
    # the l = 0 module realizes the counit: alpha -> T_+, delta -> T_-,
    # off-diagonal entries -> 0, independent of the evaluation point
    mod = EvalModule(0, 0.91 + 0.3j, pa)
    al = entry_op("alpha", 0.4 + 0.21j, mod).atoms[0]
    de = entry_op("delta", 0.4 + 0.21j, mod).atoms[0]
    assert abs(al.coeff(P_PTS[0]) - 1.0) < 1e-12 and al.qshift == +1
    assert abs(de.coeff(P_PTS[0]) - 1.0) < 1e-12 and de.qshift == -1
    assert entry_op("beta", 0.4 + 0.21j, mod).atoms == ()
    assert entry_op("gamma", 0.4 + 0.21j, mod).atoms == ()


def test_coassociativity_triple_l1(pa):
    for kind in KINDS:
        for _ in range(3):
            u, P = rand_c(2)
            mods = tuple(EvalModule(1, v, pa) for v in rand_c(3))
            assert vf.coassoc_residual(kind, u, mods, [P]) < 1e-9, kind


def test_coproduct_is_algebra_map_on_products(pa):
    # Delta(delta(u) delta(u')) applied once equals composing the
    # coproducts slot-locally in either grouping
    mods = (EvalModule(1, 0.27 - 0.11j, pa), EvalModule(1, -0.4 + 0.17j, pa))
    u1, u2 = 0.4 + 0.21j, -0.55 + 0.34j
    lhs = coproduct_op("delta", u1, mods) @ coproduct_op("delta", u2, mods)
    rhs = coproduct_op("delta", u2, mods) @ coproduct_op("delta", u1, mods)
    st = TensorState(tuple(m.weights for m in mods), {(0, 1): vf.PROBE})
    oa, ob = apply_tensor(lhs, st), apply_tensor(rhs, st)
    for key in set(oa.amps) | set(ob.amps):
        for P in P_PTS:
            va = oa.amps[key](P) if key in oa.amps else 0.0
            vb = ob.amps[key](P) if key in ob.amps else 0.0
            assert abs(va - vb) < 1e-11 * max(1.0, abs(va), abs(vb))
