import pytest

import hcverify


def test_order_polynomial():
    assert hcverify.order_poly("C", 2) == "X^4*Phi1^2*Phi2^2*Phi4"
    assert hcverify.order("C", 2, 3) == "51840"
    assert hcverify.order_poly("D", 2, "2D") == "X^2*Phi1*Phi2*Phi4"


def test_two_adic_profile():
    assert hcverify.two_adic_profile(4, 3) == (1, 1)
    assert hcverify.two_adic_profile(2, 3) == (2, 1)
    assert hcverify.two_adic_profile(1, 3)[1] is None
    with pytest.raises(ValueError):
        hcverify.two_adic_profile(3, 4)


def test_centralizers():
    assert hcverify.centralizer_contains_sylow2("B", 2, 1, 3)
    assert hcverify.centralizer_contains_sylow2("C", 4, 0, 3)
    with pytest.raises(ValueError):
        hcverify.centralizer_contains_sylow2("C", 5, 0, 3)


def test_weyl_order():
    assert hcverify.weyl_order("D", 4) == 192


def test_reports():
    r = hcverify.run("roots", type="B", rank=3)
    assert r["schema"] == "hcverify-report" and r["version"] == 1
    assert r["summary"]["fail"] == 0
    m = hcverify.run("mckay", rank=1, q=3, timing=False)
    assert m["summary"]["fail"] == 0
    a = hcverify.run("centralizers", rank=4, q=3, timing=False)
    b = hcverify.run("centralizers", rank=4, q=3, timing=False)
    assert a == b


def test_unsupported_command():
    with pytest.raises(ValueError):
        hcverify.run("nosuch")
