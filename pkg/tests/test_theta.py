"""Theta kernel: truncated products against direct-product oracles,
bracket quasi-periodicities, the four-term addition identity."""

import cmath

import numpy as np
import pytest

from ellqg.errors import DomainError
from ellqg.params import ModularParams
from ellqg.theta import (bracket, bracket_fact, qpoch, quasiperiod_tau_factor,
                         theta_big, upow)

RNG = np.random.default_rng(20240811)


def rand_u(n=1, box=2.0):
    pts = [complex(re, 0.3 * im) + 0.137j
           for re, im in RNG.uniform(-box, box, (n, 2))]
    return pts if n > 1 else pts[0]


# --- oracles: direct products, independent of the kernel path -----------


def oracle_qpoch1(z, b, eps=1e-18):
    acc, w = 1.0 + 0j, 1.0 + 0j
    while abs(z * w) > eps:
        acc *= 1 - z * w
        w *= b
    return acc


def oracle_theta(z, p):
    return oracle_qpoch1(z, p) * oracle_qpoch1(p / z, p) * oracle_qpoch1(p, p)


def oracle_bracket(u, q, r):
    logq = cmath.log(q)
    p = cmath.exp(2 * r * logq)
    z = cmath.exp(2 * u * logq)
    return cmath.exp((u * u / r - u) * logq) * oracle_theta(z, p) \
        / oracle_qpoch1(p, p) ** 3


def test_qpoch_trivials():
    assert qpoch(0.0, [0.1], 50) == 1.0
    assert qpoch(1.0, [0.1], 50) == 0.0


def test_qpoch_against_oracle():
    got = qpoch(0.5, [0.1], 50)
    assert abs(got - oracle_qpoch1(0.5, 0.1)) < 1e-12
    # frozen oracle value
    assert abs(got - 0.4723624438165722) < 1e-12


def test_qpoch_rejects_bad_base():
    with pytest.raises(DomainError):
        qpoch(0.5, [1.1], 10)
    with pytest.raises(DomainError):
        qpoch(0.5, [0.1], 0)


def test_qpoch_two_bases_matches_nested_oracle():
    z, b1, b2 = 0.3 + 0.1j, 0.1, 0.2
    acc = 1.0 + 0j
    for i in range(60):
        for j in range(60):
            acc *= 1 - z * b1 ** i * b2 ** j
    assert abs(qpoch(z, [b1, b2], 60) - acc) < 1e-12


def test_theta_big_zero_and_oracle():
    pa = ModularParams(0.5, cmath.log(0.05) / (2 * cmath.log(0.5)))
    assert theta_big(1.0, pa) == 0.0
    got = theta_big(0.4, pa)
    assert abs(got - oracle_theta(0.4, 0.05)) < 1e-12
    assert abs(got - 0.48377300626318887) < 1e-12
    with pytest.raises(DomainError):
        theta_big(0.0, pa)


def test_theta_quasiperiodicity_direct():
    # Theta_p(p z) = -z^{-1} Theta_p(z) at z = 0.3 + 0.1i, p = 0.05
    pa = ModularParams(0.5, cmath.log(0.05) / (2 * cmath.log(0.5)))
    z = 0.3 + 0.1j
    lhs = theta_big(0.05 * z, pa) * z
    assert abs(lhs + theta_big(z, pa)) < 1e-12


def test_bracket_zero_and_oracle(pa):
    assert bracket(0.0, pa) == 0.0
    got = bracket(0.3, pa)
    assert abs(got - oracle_bracket(0.3, 0.5, 3.0)) < 1e-12
    assert abs(got - 0.4090926861328713) < 1e-12


def test_bracket_oddness(pa):
    for u in rand_u(100):
        assert abs(bracket(-u, pa) + bracket(u, pa)) \
            <= 1e-12 * max(1.0, abs(bracket(u, pa)))


def test_bracket_r_quasiperiodicity(pa):
    for u in rand_u(100):
        b = bracket(u, pa)
        assert abs(bracket(u + pa.r, pa) + b) < 1e-10 * max(1.0, abs(b))


def test_bracket_tau_quasiperiodicity(pa):
    # the exact law carries a sign relative to the usual citation; see
    # quasiperiod_tau_factor
    for u in rand_u(100):
        lhs = bracket(u + pa.r * pa.tau, pa)
        rhs = quasiperiod_tau_factor(u, pa) * bracket(u, pa)
        assert abs(lhs - rhs) < 1e-8 * max(1.0, abs(lhs), abs(rhs))


def test_addition_identity(pa):
    br = lambda t: bracket(t, pa)
    for _ in range(100):
        u, v, x, y = rand_u(4)
        lhs = br(u + x) * br(u - x) * br(v + y) * br(v - y) \
            - br(u + y) * br(u - y) * br(v + x) * br(v - x)
        rhs = br(x - y) * br(x + y) * br(u + v) * br(u - v)
        assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs), abs(rhs))


def test_bracket_fact(pa):
    assert bracket_fact(0.7 + 0.3j, 0, pa) == 1.0
    assert bracket_fact(-2.0, 3, pa) == 0.0  # contains [0]
    got = bracket_fact(0.7, 4, pa)
    want = 1.0
    for j in range(4):
        want *= bracket(0.7 + j, pa)
    assert got == want  # same recursion by construction
    assert abs(got - (-0.4158829289966593)) < 1e-12
    with pytest.raises(DomainError):
        bracket_fact(0.7, -1, pa)


def test_bracket_fact_recursion_against_recomputation(pa):
    u = 0.9 + 0.21j
    for m in range(1, 6):
        lhs = bracket_fact(u, m, pa)
        rhs = bracket_fact(u, m - 1, pa) * bracket(u + m - 1, pa)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


def test_upow(pa):
    u = 0.8 - 0.2j
    assert upow(u, 0.0, pa) == 1.0
    assert abs(upow(u, 1.0, pa) - cmath.exp(2 * u * cmath.log(0.5))) < 1e-15
    got = upow(0.5, 1.0 / 6.0, pa)
    assert abs(got - cmath.exp(2 * 0.5 * (1 / 6) * cmath.log(0.5))) < 1e-15
    assert abs(got - 0.8908987181403393) < 1e-12
    # multiplicative in the exponent
    assert abs(upow(u, 0.3, pa) * upow(u, 0.45, pa) - upow(u, 0.75, pa)) < 1e-14


def test_starred_bracket_uses_r_star(pa_star):
    u = 0.61 + 0.137j
    assert abs(bracket(u, pa_star, starred=True)
               - oracle_bracket(u, 0.5, 2.5)) < 1e-12


def test_trunc_invariant_enforced():
    with pytest.raises(DomainError):
        ModularParams(0.5, 3.0, trunc_N=4)


@pytest.mark.parametrize("b,m1", [(1, 1), (2, 1), (2, 3), (3, 2)])
def test_factorial_splitting_identities(pao, b, m1):
    # [a]_{m1+b} = [a]_b [a+b]_{m1}
    # [a-b]_{m1+b} = (-1)^b [-a+1]_b [a]_{m1}
    # [a+k]_{k-m1} = (-1)^{m1} [a+k]_k / [-a-2k+1]_{m1}   (k >= m1)
    a = 0.83 + 0.29j
    lhs = bracket_fact(a, m1 + b, pao)
    rhs = bracket_fact(a, b, pao) * bracket_fact(a + b, m1, pao)
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))
    lhs = bracket_fact(a - b, m1 + b, pao)
    rhs = (-1) ** b * bracket_fact(-a + 1, b, pao) * bracket_fact(a, m1, pao)
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))
    k = m1 + 1
    lhs = bracket_fact(a + k, k - m1, pao)
    rhs = (-1) ** m1 * bracket_fact(a + k, k, pao) \
        / bracket_fact(-a - 2 * k + 1, m1, pao)
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


def test_upoint_branch(pa):
    from ellqg.params import UPoint

    pt = UPoint.of(0.8 - 0.2j, pa)
    assert abs(pt.z - cmath.exp(2 * pt.u * cmath.log(0.5))) < 1e-15
    # fractional powers are single-valued in u through the same branch
    assert abs(upow(pt.u, 1.0, pa) - pt.z) < 1e-15
