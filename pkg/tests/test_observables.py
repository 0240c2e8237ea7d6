import math

import numpy as np
import pytest

from pairwalk import (
    Lattice,
    PairState,
    avg_separation,
    correlation,
    joint_distribution,
    make_initial_pair,
    make_initial_single,
    marginals,
    run,
    sigma,
)
from pairwalk.coins import Hadamard, InteractionRule, PairCoinSpec
from pairwalk.lattice import UNBIASED_SPINOR
from pairwalk.observables import JointDistribution

from .conftest import COIN_COMBINATIONS, INITIALS, INTERACTIONS

HH = PairCoinSpec(Hadamard(), Hadamard())


def _after(initial, spec, steps):
    return joint_distribution(run(make_initial_pair(Lattice.for_steps(steps), initial), spec, steps))


def test_fresh_sep_is_point_mass():
    d = joint_distribution(make_initial_pair(Lattice(3), "sep"))
    assert d.at(0, 0) == pytest.approx(1.0, abs=1e-15)
    assert d.total() == pytest.approx(1.0, abs=1e-15)
    px, py = marginals(d)
    assert px[3] == pytest.approx(1.0) and py[3] == pytest.approx(1.0)
    assert correlation(d) == 0.0
    assert avg_separation(d) == 0.0


def test_bell_one_step_values():
    plus = _after("psi-plus", HH, 1)
    assert plus.at(1, 1) == pytest.approx(0.5, abs=1e-15)
    assert plus.at(-1, -1) == pytest.approx(0.5, abs=1e-15)
    assert correlation(plus) == pytest.approx(1.0, abs=1e-12)
    assert avg_separation(plus) == pytest.approx(0.0, abs=1e-12)
    minus = _after("psi-minus", HH, 1)
    assert minus.at(1, -1) == pytest.approx(0.5, abs=1e-15)
    assert correlation(minus) == pytest.approx(-1.0, abs=1e-12)
    assert avg_separation(minus) == pytest.approx(2.0, abs=1e-12)


def test_product_distribution_has_zero_correlation(rng):
    lat = Lattice(6)
    px, py = rng.random(lat.size), rng.random(lat.size)
    d = JointDistribution(lat, np.outer(px / px.sum(), py / py.sum()))
    assert abs(correlation(d)) < 1e-12


def test_sigma_examples():
    lat = Lattice(3)
    assert sigma(make_initial_single(lat, UNBIASED_SPINOR)) == 0.0
    assert sigma(run(make_initial_single(lat, UNBIASED_SPINOR), Hadamard(), 1)) == pytest.approx(1.0)


@pytest.mark.parametrize("initial", INITIALS)
@pytest.mark.parametrize("rule", INTERACTIONS)
@pytest.mark.parametrize("combo", list(COIN_COMBINATIONS))
def test_distribution_inequalities_every_step(initial, rule, combo):
    n = 25
    lat = Lattice.for_steps(n)
    x = lat.positions.astype(float)

    def check(k, state):
        d = joint_distribution(state)
        assert abs(d.total() - 1) < 1e-10
        px, py = marginals(d)
        assert abs(px.sum() - 1) < 1e-10 and abs(py.sum() - 1) < 1e-10
        var_x = x * x @ px - (x @ px) ** 2
        var_y = x * x @ py - (x @ py) ** 2
        assert abs(correlation(d)) <= math.sqrt(max(var_x * var_y, 0.0)) + 1e-12
        delta = avg_separation(d)
        assert 0 <= delta <= np.abs(x) @ px + np.abs(x) @ py + 1e-12

    run(make_initial_pair(lat, initial), PairCoinSpec(*COIN_COMBINATIONS[combo], rule), n, [check])


@pytest.mark.parametrize("initial", ["psi-plus", "psi-minus"])
@pytest.mark.parametrize("rule", INTERACTIONS)
@pytest.mark.parametrize("combo", ["I", "III"])
def test_exchange_symmetry_for_bell_states(initial, rule, combo):
    n = 40
    worst = []
    spec = PairCoinSpec(*COIN_COMBINATIONS[combo], rule)

    def check(k, state):
        p = joint_distribution(state).p
        worst.append(np.max(np.abs(p - p.T)))

    run(make_initial_pair(Lattice.for_steps(n), initial), spec, n, [check])
    assert max(worst) < 1e-12


def test_symmetric_start_has_centered_marginals():
    # psi-plus with identical Hadamard coins is mirror symmetric up to a global phase
    d = _after("psi-plus", PairCoinSpec(Hadamard(), Hadamard(), InteractionRule.PI_PHASE), 30)
    x = d.lattice.positions
    px, py = marginals(d)
    assert abs(x @ px) < 1e-10 and abs(x @ py) < 1e-10


def test_diagonal_distribution_has_zero_separation():
    lat = Lattice(4)
    p = np.diag(np.full(lat.size, 1 / lat.size))
    assert avg_separation(JointDistribution(lat, p)) == 0.0


def test_zero_state_distribution_is_empty():
    assert joint_distribution(PairState.zeros(Lattice(2))).total() == 0.0
