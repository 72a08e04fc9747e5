import pytest

from l00p3r.core.verification import (
    NamedCheck,
    VerificationSuite,
    brute_force_polygons,
    check_corner,
    check_partition,
    check_quoted_coefficients,
    check_squares,
    check_store,
    check_symmetry,
    check_triangular_exact,
    default_suite,
    is_success,
    relative_gap,
)


def _boom():
    raise RuntimeError("boom")


def test_named_check_swallows_errors():
    assert NamedCheck(lambda: True, "ok")() is True
    assert NamedCheck(_boom, "crash")() is False
    assert repr(NamedCheck(_boom, "crash")) == "crash"


def test_suite_runs_every_check():
    suite = VerificationSuite()
    suite.add(lambda: True, "first").add(_boom, "second").add(lambda: False, "third")
    assert suite.names == ["first", "second", "third"]
    outcome = suite.run()
    assert outcome == {"first": True, "second": False, "third": False}
    assert not is_success(outcome)
    assert is_success({"first": True})
    assert not is_success({})


def test_relative_gap():
    assert relative_gap(1.0, 1.0) == 0.0
    assert relative_gap(2.0, 1.0) == pytest.approx(0.5)


def test_brute_force_small():
    assert brute_force_polygons(4) == ["RULD"]


def test_individual_checks(small_table):
    assert check_quoted_coefficients(small_table)
    assert check_triangular_exact(30)
    assert check_partition(8)
    assert check_store(8)
    assert check_corner(small_table)
    assert check_squares(small_table, 2)
    assert check_symmetry(small_table, 8, count=3)


def test_default_suite_names():
    names = default_suite(max_length=6).names
    assert "green: harmonicity" in names
    assert "store: roundtrip" in names
    assert len(names) == len(set(names))


@pytest.mark.slow
def test_default_suite_passes():
    assert is_success(default_suite(max_length=10).run())
