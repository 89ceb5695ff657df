import math

import pytest

import kloo


def test_k1_mod_3():
    r = kloo.evaluate(1, 1, 3, 1)
    assert r["value"]["re"] == pytest.approx(-1.0)
    assert r["value"]["exact_coeffs"] == ["-1"]


def test_k1_mod_9():
    r = kloo.evaluate(1, 1, 3, 2)
    assert r["value"]["re"] == pytest.approx(6 * math.cos(4 * math.pi / 9))


def test_reduced_and_salie_agree_with_brute():
    brute = kloo.evaluate(1, 1, 5, 2)
    reduced = kloo.evaluate(1, 1, 5, 2, method="reduced")
    salie = kloo.evaluate(1, 1, 5, 2, method="salie")
    assert reduced["value"]["exact_coeffs"] == brute["value"]["exact_coeffs"]
    assert salie["value"]["re"] == pytest.approx(brute["value"]["re"])


def test_vanishing_and_list_input():
    r = kloo.evaluate([[1, 0], [0, 1]], [[3, 0], [0, 3]], 3, 2)
    assert r["value"]["abs"] == 0


def test_count_nilpotent():
    assert int(kloo.count("0,1;0,0", p=3)["value"]) == 6
    assert int(kloo.count("0,1;0,0", p=3, method="brute")["value"]) == 6


def test_gauss_sqrt5():
    g = kloo.gauss(0, 1, 5)
    assert g["brute"]["abs"] == pytest.approx(math.sqrt(5))
    assert g["agree"]


def test_bounds_and_errors():
    names = [e["name"] for e in kloo.bounds("1,0;0,1", "1,0;0,1", 3, 2)]
    assert "thm1.7(2) generic" in names
    with pytest.raises(kloo.KlooError):
        kloo.bounds(0, 0, 3, 1)
    with pytest.raises(kloo.KlooError):
        kloo.evaluate("1,0;0,1", "1,0;0,1", 5, 2, method="salie")


def test_centralizer_and_semisimple():
    assert kloo.centralizer_order([1], 3) == 2
    assert kloo.centralizer_order([2], 2) == 2
    assert kloo.regular_semisimple("0,1;2,0", 3)
    assert not kloo.regular_semisimple("1,0;0,1", 5)


def test_verify_is_deterministic():
    first = kloo.verify("gauss", seed=7)
    assert first and all("checks" in r for r in first)
    assert kloo.verify("gauss", seed=7) == first
