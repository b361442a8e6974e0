import pytest

import arbor


def test_reduce():
    assert arbor.reduce("a b b^-1 a") == "a a"
    assert arbor.reduce("a a^-1") == ""


def test_builtin_groups():
    v = arbor.builtin_group("C2xC2")
    assert v.order == 4
    assert v.separated
    assert "S3" in arbor.builtin_group_names()
    with pytest.raises(arbor.InputError):
        arbor.builtin_group("nope")


def test_core_membership():
    h = arbor.subgroup_core(["a^2", "b"])
    assert h.member("a^2 b a^-2")
    assert not h.member("a")


def test_ext_order():
    v = arbor.builtin_group("C2xC2")
    assert arbor.ext_order(v, 2) == 128
    assert arbor.ext_enumerate(v, 2).order == 128
    # the commutator survives in the extension
    assert not arbor.ext_equal(v, 2, "a b", "b a")
    # each Cayley edge is crossed twice
    assert arbor.ext_equal(v, 2, "a^4", "")
    assert not arbor.ext_equal(v, 2, "a^2", "")


def test_dissolves_all():
    j = arbor.ext_enumerate(arbor.builtin_group("C2xC2"), 2)
    r = arbor.dissolves_all(j, arbor.builtin_group("C2xC2"))
    assert r["constellations"] == r["dissolved"] == 50094


def test_member_product():
    ok, factors = arbor.member_product([["a"], ["b"]], "a^3 b^-2")
    assert ok and factors == ["a a a", "b^-1 b^-1"]
    ok, _ = arbor.member_product([["a"], ["b"]], "b a")
    assert not ok


def test_tower():
    t = arbor.Tower("C2xC2", [2, 2, 2])
    assert t.order(1) == "128"
    assert not t.equal(2, "a b a^-1 b^-1", "")
    rep = arbor.treelike_campaign(t, 1)
    assert rep["passed"]
    rz = arbor.rz_experiment(t, [["a"], ["b"]], "b a")
    assert rz["status"] == "separated"


def test_precondition():
    with pytest.raises(arbor.PreconditionError):
        arbor.Tower("C2", [2])
