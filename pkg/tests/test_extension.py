import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from scaffold_order import (CoprimalityError, MonotonicityError, NormalizationError, PrimePower,
                            RangeError, RhoAction, d_value, epsilon_threshold, error_term_admissible,
                            psi_action_on_rho, psi_mult, ramification_breaks, rho_valuation,
                            validate_params)

from _oracles import dominated


def test_validate_params_examples():
    assert validate_params(2, 1, 3, [0, -1]).m == (1,)
    assert validate_params(3, 2, 2, [0, -1, -1]).m == (1, 0)
    with pytest.raises(CoprimalityError):
        validate_params(2, 1, 4, [0, -1])
    with pytest.raises(NormalizationError):
        validate_params(2, 1, 3, [-1, -1])
    with pytest.raises(MonotonicityError):
        validate_params(3, 2, 2, [0, -2, -1])
    with pytest.raises(MonotonicityError):
        validate_params(2, 1, 3, [0, 1])
    with pytest.raises(RangeError):
        validate_params(2, 1, 3, [0])
    with pytest.raises(RangeError):
        validate_params(2, 1, 0, [0, 0])


def test_default_omegas_and_flag():
    params = validate_params(5, 2, 7)
    assert params.omega_vals == (0, 0, 0)
    assert params.independence_assumed
    assert ramification_breaks(params).distinct_breaks == (7,)


@pytest.mark.parametrize("p,n,b,om,breaks,distinct,b_max", [
    (2, 1, 3, [0, -1], (3, 7), (3, 7), 7),
    (2, 1, 3, [0, 0], (3, 3), (3,), 3),
    (3, 2, 2, [0, -1, -3], (2, 29, 191), (2, 29, 191), 191),
    (5, 0, 7, [0], (7,), (7,), 7),
])
def test_ramification_breaks(p, n, b, om, breaks, distinct, b_max):
    ram = ramification_breaks(validate_params(p, n, b, om))
    assert (ram.breaks, ram.distinct_breaks, ram.b_max) == (breaks, distinct, b_max)


@st.composite
def extension_params(draw, max_q=729):
    pp = draw(st.sampled_from([PrimePower(p, n) for p in (2, 3, 5, 7) for n in range(8) if p ** (n + 1) <= max_q]))
    b = draw(st.integers(1, 5000).filter(lambda x: x % pp.p))
    drops = draw(st.lists(st.integers(0, 6), min_size=pp.n, max_size=pp.n))
    om = [0]
    for m in drops:
        om.append(om[-1] - m)
    return validate_params(pp.p, pp.n, b, om)


@given(extension_params())
def test_breaks_congruent_and_sorted(params):
    ram = ramification_breaks(params)
    q = params.pp.q
    assert ram.breaks[0] == params.b
    assert list(ram.breaks) == sorted(ram.breaks)
    assert all(x % q == params.b % q for x in ram.breaks)
    assert ram.b_max == ram.breaks[-1] == max(ram.distinct_breaks)
    assert all(x < y for x, y in zip(ram.distinct_breaks, ram.distinct_breaks[1:]))


def test_epsilon_threshold_examples():
    params = validate_params(2, 1, 3, [0, -1])
    assert epsilon_threshold(params, 1) == Fraction(-7, 2)
    assert epsilon_threshold(params, 0) == Fraction(-3, 2)
    assert error_term_admissible(params, 1, -3)
    assert not error_term_admissible(params, 1, -4)
    assert error_term_admissible(params, 0, math.inf)
    with pytest.raises(RangeError):
        epsilon_threshold(params, 2)
    for p in (2, 3, 7):
        assert epsilon_threshold(validate_params(p, 0, 11), 0) == -11


def test_epsilon_threshold_hand_values():
    # -2 + 8*2/9 - 2*(3*(-1))
    assert epsilon_threshold(validate_params(3, 2, 2, [0, -1, -1]), 0) == Fraction(52, 9)
    # 4*(-1) - 1 + 3/4 - (2*(-1))
    assert epsilon_threshold(validate_params(2, 2, 1, [0, -1, -1]), 2) == Fraction(-9, 4)


def test_epsilon_admissibility_is_strict():
    # with n = 0 the threshold is the integer -b, so equality is reachable
    params = validate_params(5, 0, 7)
    assert not error_term_admissible(params, 0, -7)
    assert error_term_admissible(params, 0, -6)
    frac = validate_params(3, 2, 2, [0, -1, -1])
    assert not error_term_admissible(frac, 0, 5)
    assert error_term_admissible(frac, 0, 6)


def test_d_value_examples():
    assert [d_value(a, 3, 4) for a in range(4)] == [0, 1, 2, 3]
    assert [d_value(a, 7, 4) for a in range(4)] == [1, 3, 5, 7]
    assert d_value(26, 191, 27) == 191
    with pytest.raises(RangeError):
        d_value(4, 3, 4)


def test_rho_valuation_examples():
    assert rho_valuation(0, 3, 4) == 3
    assert rho_valuation(1, 3, 4) == 2
    assert sorted(rho_valuation(a, 3, 4) for a in range(4)) == [0, 1, 2, 3]
    assert [rho_valuation(a, 3, 4) for a in range(4)] == [3, 2, 1, 0]


@pytest.mark.parametrize("p,n", [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_rho_valuation_bijective(p, n):
    q = p ** (n + 1)
    for b_max in [b for b in range(1, 3 * q) if b % p]:
        assert sorted(rho_valuation(a, b_max, q) for a in range(q)) == list(range(q))


def test_psi_mult_examples():
    pp = PrimePower(2, 1)
    assert psi_mult(1, 2, pp) == 3
    assert psi_mult(1, 1, pp) is None
    assert all(psi_mult(0, j, pp) == j for j in range(4))


def test_psi_action_examples():
    pp = PrimePower(2, 1)
    assert psi_action_on_rho(1, 0, 3, pp) == RhoAction(1, 1)
    assert psi_action_on_rho(1, 1, 3, pp) is None
    assert all(psi_action_on_rho(0, a, 3, pp) == RhoAction(0, a) for a in range(4))


def _mul(x, y, pp):
    return None if x is None or y is None else psi_mult(x, y, pp)


@pytest.mark.parametrize("p,n", [(2, 0), (2, 2), (2, 5), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_psi_mult_algebra(p, n):
    pp = PrimePower(p, n)
    q = pp.q
    for a in range(q):
        for j in range(q):
            assert psi_mult(a, j, pp) == psi_mult(j, a, pp)
            assert (psi_mult(a, j, pp) is not None) == dominated(a, q - 1 - j, p, n + 1)
    rng = random.Random(q)
    triples = [(x, y, z) for x in range(q) for y in range(q) for z in range(q)] if q <= 27 else \
        [(rng.randrange(q), rng.randrange(q), rng.randrange(q)) for _ in range(20000)]
    for x, y, z in triples:
        assert _mul(_mul(x, y, pp), z, pp) == _mul(x, _mul(y, z, pp), pp)


@pytest.mark.parametrize("p,n", [(2, 1), (2, 3), (3, 1), (5, 1)])
def test_composition_consistency(p, n):
    pp = PrimePower(p, n)
    q = pp.q
    for b_max in (1, 3 * q + 1, 2 * q - 1):
        if b_max % p == 0:
            continue
        for a in range(q):
            for i in range(q):
                for j in range(q):
                    first = psi_action_on_rho(j, a, b_max, pp)
                    two = None if first is None else psi_action_on_rho(i, first.target, b_max, pp)
                    k = psi_mult(i, j, pp)
                    one = None if k is None else psi_action_on_rho(k, a, b_max, pp)
                    if two is None:
                        assert one is None
                    else:
                        assert one == RhoAction(first.t_exponent + two.t_exponent, two.target)


@settings(max_examples=200)
@given(st.sampled_from([(2, 1), (2, 4), (3, 2), (5, 1), (7, 1)]), st.integers(1, 10**6), st.data())
def test_scaffold_valuation_shift(pn, b_max, data):
    """v(Psi^(j) rho_a) = v(rho_a) + j*b_max, read off the t-exponent and target."""
    p, n = pn
    if b_max % p == 0:
        b_max += 1
    pp = PrimePower(p, n)
    q = pp.q
    a = data.draw(st.integers(0, q - 1))
    j = data.draw(st.integers(0, q - 1))
    act = psi_action_on_rho(j, a, b_max, pp)
    if act is not None:
        lhs = q * act.t_exponent + rho_valuation(act.target, b_max, q)
        assert lhs == rho_valuation(a, b_max, q) + j * b_max
