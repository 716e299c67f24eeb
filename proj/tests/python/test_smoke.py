import pytest

import _treeverb as tv


def test_odometer_action():
    t = tv.Automorphism.adding_machine(3)
    assert t.degree == 3
    assert t.apply([3, 1]) == [1, 2]
    assert t.is_level_transitive(4)
    assert (t * t.inverse()).is_identity()


def test_parse_and_serialize_round_trip():
    t = tv.Automorphism.adding_machine(3)
    assert tv.Automorphism.parse(t.serialize()) == t
    with pytest.raises(ValueError):
        tv.Automorphism.parse("degree 3\nstate a = (1, 1) id\nroot a\n")


def test_parity_and_classification():
    t2 = tv.Automorphism.adding_machine(2)
    assert t2.parity() == "pre=;per=1"
    t3 = tv.Automorphism.adding_machine(3)
    assert t3.parity() == "pre=;per=0"
    assert t3.classify() == "M1"
    assert tv.Automorphism.identity(3).classify() == "trivial"
    assert tv.Automorphism.rooted([2, 1, 3]).classify() == "M0"


def test_alt_exponent():
    assert tv.alt_exponent(3) == 3
    assert tv.alt_exponent(5) == 30
    assert tv.alt_exponent(7) == 420


def test_decompose_and_commutator_form():
    t3 = tv.Automorphism.adding_machine(3)
    g = t3 * tv.Automorphism.rooted([2, 3, 1]).inverse()
    assert g.parity() == "pre=;per=0"
    u, y = tv.decompose(g, 2)
    assert (u * u.conjugate(y)).congruent(g, 2)
    a, b = tv.commutator_form(g, 2)
    assert t3.conjugate(a).commutator(b).congruent(g, 2)


def test_solve_conjugacy():
    t3 = tv.Automorphism.adding_machine(3)
    x = tv.Automorphism.rooted([2, 3, 1])
    h = t3.conjugate(x)
    found = tv.solve_conjugacy(t3, h, 3)
    assert t3.conjugate(found).congruent(h, 3)


def test_order_two():
    a = tv.order_two("pre=1;per=0", 3)
    assert (a * a).is_identity()
    assert a.parity() == "pre=1;per=0"


def test_verify_chain():
    ok, report = tv.verify_chain(3, 2)
    assert ok
    assert "squares-generate-k1 d=3 n=2 lhs=324 rhs=324 PASS" in report
