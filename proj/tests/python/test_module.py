import cmath
import math

import numpy as np
import pytest

qwres = pytest.importorskip("qwres")


def test_double_barrier_resonances():
    d = qwres.double_barrier(3, 0.5)
    rep = qwres.find_resonances(d["coins"], "both")
    lams = [r["lambda"] for r in rep["resonances"]]
    assert len(lams) == 6
    assert rep["cross_distance"] < 1e-9
    for z in lams:
        assert abs(z**6 - d["alpha"]) < 1e-12
    assert rep["Lambda0"] == pytest.approx(0.5 ** (1 / 3))


def test_triple_barrier_double_roots():
    t = qwres.triple_barrier(0.75, 12 / 13, 1 / 3)
    assert t["multiplicity_two"]
    rep = qwres.find_resonances(t["coins"])
    assert [r["mult"] for r in rep["resonances"]] == [2, 2]
    chain = qwres.resonant_chain(t["coins"], rep["resonances"][0]["lambda"], 2, (-4, 4))
    assert chain["residual"] < 1e-10
    assert len(chain["members"]) == 2


def test_evolution_is_unitary_and_matches_expansion():
    coins = qwres.double_barrier(2, 0.6)["coins"]
    psi = qwres.WalkState({0: (0.6, 0.0), 1: (0.0, 0.8j)})
    assert psi.norm() == pytest.approx(1.0)
    later = qwres.evolve(coins, psi, 30)
    assert later.norm() == pytest.approx(1.0, abs=1e-12)
    e = qwres.expand(coins, psi, (0, 2))
    assert e["residual"] < 1e-10
    pred = qwres.predict_evolution(coins, psi, (0, 2), 30)
    for x in range(0, 3):
        a, b = pred.at(x), later.at(x)
        assert abs(a[0] - b[0]) + abs(a[1] - b[1]) < 1e-10


def test_coin_validation_and_scattering():
    with pytest.raises(qwres.DomainError):
        qwres.Coin(np.array([[0, 1], [1, 0]], dtype=complex))
    coins = qwres.CoinSequence({0: qwres.Coin.rotation(0.4), 2: qwres.Coin.rotation(0.7)})
    assert coins.hull == (0, 2)
    s = qwres.scattering_matrix(coins, cmath.exp(0.3j))
    assert np.allclose(s.conj().T @ s, np.eye(2), atol=1e-12)


def test_json_round_trip():
    coins = qwres.random_walk(42)
    back = qwres.CoinSequence.from_json(coins.to_json())
    assert back.support() == coins.support()
    s = qwres.sigma(coins)
    assert len(s["coeffs"]) == 2 * s["k"] + 1


def test_survival_and_upsilon():
    coins = qwres.double_barrier(1, 0.5)["coins"]
    psi = qwres.WalkState({0: (0.0, 1.0)})
    s = qwres.survival(coins, psi, (0, 1), 120)
    assert s["slope"] == pytest.approx(math.log(0.5), rel=1e-3)
    assert qwres.upsilon(1, 0.5) == pytest.approx(2 / 0.75**2)
