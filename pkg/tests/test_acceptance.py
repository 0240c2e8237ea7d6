"""Acceptance suite: each test checks one numbered criterion at its stated tolerance.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary lists one
PASS/FAIL line per criterion.  Pair presets are evolved once per session and
shared between the criteria that read them.
"""

import itertools
import time

import numpy as np
import pytest

from pairwalk import (
    PRESETS,
    Lattice,
    entanglement_entropy,
    fit_exponent,
    joint_distribution,
    make_initial_pair,
    make_initial_single,
    norm,
    oracle_evolve,
    run,
    step_single,
)
from pairwalk.coins import Hadamard, InteractionRule, PairCoinSpec
from pairwalk.lattice import UNBIASED_SPINOR
from pairwalk.observables import avg_separation, correlation

from .conftest import COIN_COMBINATIONS, INITIALS, INTERACTIONS

pytestmark = pytest.mark.slow

PAIR_PRESETS = sorted(name for name, cfg in PRESETS.items() if cfg.mode == "pair")
NORM_TOL = 1e-12


def _local_maxima(values):
    v = np.asarray(values)
    return np.flatnonzero((v[1:-1] > v[:-2]) & (v[1:-1] >= v[2:])) + 1


class Trace:
    """Per-step observables of one pair run, gathered in a single pass."""

    def __init__(self, config):
        self.config = config
        n = config.steps
        lattice = Lattice.for_steps(n)
        spec = PairCoinSpec(config.coin1, config.coin2, config.interaction)
        start = make_initial_pair(lattice, config.initial)
        self.norm = np.empty(n + 1)
        self.c12 = np.empty(n + 1)
        self.delta = np.empty(n + 1)
        self.entropy = np.empty(n + 1)
        self.asymmetry = np.empty(n + 1)
        self.factor_error = None
        singles = None
        if config.interaction is InteractionRule.NONE and config.initial == "sep":
            self.factor_error = np.empty(n + 1)
            singles = [make_initial_single(lattice, UNBIASED_SPINOR) for _ in range(2)]

        def observe(k, state):
            nonlocal singles
            d = joint_distribution(state)
            self.norm[k] = norm(state)
            self.c12[k] = correlation(d)
            self.delta[k] = avg_separation(d)
            self.entropy[k] = entanglement_entropy(state)
            self.asymmetry[k] = np.max(np.abs(d.p - d.p.T))
            if singles is not None:
                if k > 0:
                    singles = [step_single(singles[0], config.coin1, k - 1), step_single(singles[1], config.coin2, k - 1)]
                product = np.outer(singles[0].probabilities(), singles[1].probabilities())
                self.factor_error[k] = np.max(np.abs(d.p - product))

        t0 = time.perf_counter()
        run(start, spec, n, [observe])
        self.seconds = time.perf_counter() - t0


@pytest.fixture(scope="session")
def traces():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = Trace(PRESETS[name])
        return cache[name]

    return get


# ---- 1 ---------------------------------------------------------------------


@pytest.mark.criterion(1, "spreading exponents of the alpha coin")
def test_c01_spreading_exponents():
    t0 = time.perf_counter()
    sig = {}
    for a in ("0", "0.25", "0.5", "0.75", "1.25"):
        est = PRESETS[f"single-alpha{a}"].estimator().fit()
        np.testing.assert_allclose(est.norms_, 1.0, atol=NORM_TOL, rtol=0)
        sig[a] = est.sigma_
    elapsed = time.perf_counter() - t0

    def slope(a):
        return fit_exponent(list(enumerate(sig[a])), 100, 1000)

    assert slope("0") == pytest.approx(1.0, abs=0.03)
    assert 0.55 < slope("0.25") < 0.97
    assert slope("0.5") == pytest.approx(0.5, abs=0.07)
    assert 0.05 < slope("0.75") < 0.45
    assert sig["1.25"][1000] - sig["1.25"][500] < 0.1
    assert elapsed < 5.0


# ---- 2 ---------------------------------------------------------------------


@pytest.mark.criterion(2, "dynamical localization of the phi coin")
def test_c02_phi_dynamical_localization():
    t0 = time.perf_counter()
    sig = PRESETS["single-phi-q1p50"].estimator().fit().sigma_
    for k in (1, 2, 3, 4):
        lo, hi = 50 * k - 5, min(50 * k + 5, 200)
        assert sig[lo : hi + 1].min() < 0.25 * sig[: 50 * k + 1].max()

    sig3 = PRESETS["single-phi-q3p50"].estimator().fit().sigma_
    smooth = np.convolve(sig3[:51], np.ones(3) / 3, mode="valid")
    assert len(_local_maxima(smooth)) == 3
    assert time.perf_counter() - t0 < 2.0


# ---- 3 ---------------------------------------------------------------------


@pytest.mark.criterion(3, "one-step Bell-state bunching and anti-bunching")
def test_c03_bell_dichotomy():
    spec = PairCoinSpec(Hadamard(), Hadamard())
    plus = joint_distribution(run(make_initial_pair(Lattice(3), "psi-plus"), spec, 1))
    assert abs(plus.at(1, 1) - 0.5) < 1e-12 and abs(plus.at(-1, -1) - 0.5) < 1e-12
    assert abs(correlation(plus) - 1) < 1e-12
    assert abs(avg_separation(plus)) < 1e-12
    minus = joint_distribution(run(make_initial_pair(Lattice(3), "psi-minus"), spec, 1))
    assert abs(minus.at(1, -1) - 0.5) < 1e-12 and abs(minus.at(-1, 1) - 0.5) < 1e-12
    assert abs(correlation(minus) + 1) < 1e-12
    assert abs(avg_separation(minus) - 2) < 1e-12


# ---- 4 ---------------------------------------------------------------------


def _identity_sep_cases():
    cases = {f"comb-{k}": v for k, v in COIN_COMBINATIONS.items()}
    for name in PAIR_PRESETS:
        cfg = PRESETS[name]
        if name.startswith("fig-sep-one-"):
            cases[name] = (cfg.coin1, cfg.coin2)
    return cases


@pytest.mark.criterion(4, "identity-interaction bunching pillar")
@pytest.mark.parametrize("case", sorted(_identity_sep_cases()))
def test_c04_identity_bunching_pillar(case):
    n = 100
    coins = _identity_sep_cases()[case]
    c12 = []

    def observe(k, state):
        c12.append(correlation(joint_distribution(state)))

    final = run(
        make_initial_pair(Lattice.for_steps(n), "sep"),
        PairCoinSpec(*coins, InteractionRule.IDENTITY),
        n,
        [observe],
    )
    d = joint_distribution(final)
    assert abs(d.at(n, n) - 0.25) < 1e-10
    assert abs(d.at(-n, -n) - 0.25) < 1e-10
    assert np.all(np.diff(c12[10:]) > 0)


# ---- 5 ---------------------------------------------------------------------


@pytest.mark.criterion(5, "non-interacting saturation of the separation")
def test_c05_noninteracting_saturation(traces):
    delta = traces("fig-sep-noninteracting-a1.25").delta[100]
    assert 1.2 <= delta <= 1.6, f"delta12(100) = {delta:.4f}"


# ---- 6 ---------------------------------------------------------------------


@pytest.mark.criterion(6, "two-body dynamic localization of all observables")
def test_c06_two_body_dynamic_localization(traces):
    tr = traces("dynloc-one-psiplus-q1p50")
    c_max = np.max(np.abs(tr.c12))
    d_max = np.max(tr.delta)
    for n in (50, 100, 150, 200):
        assert abs(tr.entropy[n] - 1) <= 0.15
        assert abs(tr.c12[n]) <= 0.1 * c_max
        assert tr.delta[n] <= 0.1 * d_max
    assert d_max > 1
    assert tr.seconds < 60


# ---- 7 ---------------------------------------------------------------------


@pytest.mark.criterion(7, "pi-phase correlated oscillatory spreading")
def test_c07_pi_phase_oscillatory_spreading(traces):
    tr = traces("dynloc-piphase-sep-q1p50")
    assert tr.delta[150:201].mean() > tr.delta[50:101].mean()
    peaks = _local_maxima(tr.delta)
    for start in (0, 50, 100, 150):
        assert np.count_nonzero((peaks >= start) & (peaks < start + 50)) >= 2
    assert np.all(tr.c12[100:] > 0)


# ---- 8 ---------------------------------------------------------------------


@pytest.mark.criterion(8, "entropy bound and Bell baseline for every preset")
@pytest.mark.parametrize("name", PAIR_PRESETS)
def test_c08_entropy_bounds(name, traces):
    tr = traces(name)
    n = np.arange(tr.config.steps + 1)
    assert np.all(tr.entropy >= 0)
    assert np.all(tr.entropy <= 1 + np.log2(2 * n + 1))
    if tr.config.initial in ("psi-plus", "psi-minus"):
        assert abs(tr.entropy[0] - 1) < 1e-10
    if tr.config.initial == "sep" and tr.config.interaction is InteractionRule.NONE:
        assert np.max(tr.entropy) < 1e-9


# ---- 9 ---------------------------------------------------------------------


@pytest.mark.criterion(9, "kernel and dense-oracle equivalence")
def test_c09_oracle_equivalence():
    t0 = time.perf_counter()
    lattice = Lattice(9)
    worst = 0.0
    configs = list(itertools.product(INITIALS, INTERACTIONS, COIN_COMBINATIONS.values()))
    assert len(configs) == 36
    for initial, rule, coins in configs:
        spec = PairCoinSpec(*coins, rule)
        start = make_initial_pair(lattice, initial)
        worst = max(worst, np.max(np.abs(run(start, spec, 8).amp - oracle_evolve(start, spec, 8).amp)))
    assert worst < 1e-12
    assert time.perf_counter() - t0 < 10


# ---- 10 --------------------------------------------------------------------


@pytest.mark.criterion(10, "norm, exchange symmetry and factorization")
@pytest.mark.parametrize("name", PAIR_PRESETS)
def test_c10_conservation(name, traces):
    tr = traces(name)
    assert np.max(np.abs(tr.norm - 1)) <= NORM_TOL
    if tr.config.initial in ("psi-plus", "psi-minus") and tr.config.coin1 == tr.config.coin2:
        assert np.max(tr.asymmetry) < 1e-12
    if tr.factor_error is not None:
        assert np.max(tr.factor_error) < 1e-12


@pytest.mark.criterion(10, "norm, exchange symmetry and factorization")
def test_c10_single_walk_norms():
    for name, cfg in PRESETS.items():
        if cfg.mode == "single":
            est = cfg.estimator().fit()
            assert np.max(np.abs(est.norms_ - 1)) <= NORM_TOL, name
