import cmath
import math

import pytest

import primeangles as pa


@pytest.fixture(scope="module")
def cubic():
    return pa.bundled_field("cubic23")


def test_field_basics(cubic):
    assert cubic.degree == 3
    assert cubic.signature == (1, 1)
    assert cubic.discriminant == -23
    assert cubic.norm([-2, 1, 0]) == -5
    assert cubic.norm([-2, 0, 1]) == -1
    assert cubic.mul([0, 1, 0], [0, 0, 1]) == [1, 1, 0]
    real, cx = cubic.embed([0, 1, 0])
    assert real[0] == pytest.approx(1.324717957244746)
    assert abs(cx[0]) == pytest.approx(1 / math.sqrt(real[0]))


def test_golden_angle(cubic):
    t = cubic.rho([2, -1, 0], 5)
    assert t == pytest.approx([0.6959262273291580, 0.2487804016928985], abs=1e-12)
    g = cubic.golden()
    assert g["ok"]
    assert round(g["theta"], 4) == 1.3247


def test_angle_independent_of_generator(cubic):
    base = cubic.rho([2, -1, 0], 5)
    unit = [0, 1, 0]
    alpha = cubic.mul(unit, [2, -1, 0])
    for v in (alpha, [-c for c in alpha]):
        t = cubic.rho(v, 5)
        assert all(min(abs(a - b), 1 - abs(a - b)) < 1e-9 for a, b in zip(t, base))


def test_prime_ideals(cubic):
    norms = [r["norm"] for r in cubic.prime_ideals(30)]
    assert norms == [5, 7, 8, 11, 17, 19, 23, 23, 25, 27]
    gens = cubic.generator(7, "5")
    assert abs(cubic.norm(gens)) == 7


def test_prime_ideal_theorem():
    g = pa.bundled_field("gaussian")
    n = len(g.prime_ideals(100000))
    assert 0.95 < n / pa.log_integral(1e5) < 1.05


def test_gaussian_angle_against_atan2():
    g = pa.bundled_field("gaussian")
    for a, b in [(1, 2), (2, 1), (5, 4), (1, 4)]:
        expect = (math.atan2(b, a) * 2 / math.pi) % 1.0
        assert g.rho([a, b], a * a + b * b)[0] == pytest.approx(expect, abs=1e-12)


def test_weyl_trivial_and_decay(cubic):
    rows = cubic.weyl([0, 0], [1000, 10000])
    assert all(r[3] == pytest.approx(1.0) for r in rows)
    rows = cubic.weyl([1, 0], [10000])
    assert rows[0][1] == 1225
    assert rows[0][3] == pytest.approx(0.016333640855543514, rel=1e-9)
    assert isinstance(rows[0][2], complex)


def test_function_field():
    assert pa.irreducible_count(2, 3) == 2
    assert pa.irreducible_count(2, 4) == 3
    assert pa.irreducibles(3, 2) == [[1, 0, 1], [2, 1, 1], [2, 2, 1]]
    assert pa.necklace_count(2, 14) == 1161
    rep = pa.class_counts(3, [0, 1], 2)
    assert rep["phi"] == 2
    assert rep["rows"][1]["counts"] == [1, 2]
    assert rep["sums_ok"]


def test_cocycle_is_exact():
    from fractions import Fraction

    assert pa.rn_cocycle([5], [0], [1]) == Fraction(1, 5)
    assert pa.rn_cocycle([5, 7], [2, 0], [0, 1]) == Fraction(25, 7)


def test_errors_carry_codes(cubic):
    with pytest.raises(pa.AnglesError) as e:
        cubic.rho([0, 0, 0], 1)
    assert e.value.args[0] == "ZeroElement"
    with pytest.raises(pa.AnglesError) as e:
        pa.bundled_field("sqrt2").golden()
    assert e.value.args[0] == "UnsupportedField"
    with pytest.raises(ValueError):
        pa.bundled_field("nope")
