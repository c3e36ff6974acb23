import pytest

from frobwitt import covers
from frobwitt.fields import get_field
from frobwitt.poly import Poly


@pytest.mark.parametrize("lower,top,satisfied", [(0, 1, True), (1, 1, False), (2, 1, False)])
def test_verdict(lower, top, satisfied):
    assert (covers.uniruledness_verdict(lower, top) == covers.SATISFIED) is satisfied


def test_cover_reports(f3):
    rep = covers.cyclic_cover_report(1, 2, 2, Poly.parse("x0^4 + x1^4", f3), 1)
    assert (rep.lower_sstab, rep.top_sstab) == (1, 0)
    assert rep.verdict == covers.INCONCLUSIVE
    rep = covers.cyclic_cover_report(1, 2, 2, Poly.parse("x0^2*x1^2", f3), 1)
    assert (rep.lower_sstab, rep.top_sstab) == (1, 1)
    assert rep.verdict == covers.INCONCLUSIVE


def test_genus_two_double_cover(f3):
    rep = covers.cyclic_cover_report(1, 3, 2, Poly.parse("x0^3*x1^3 + x0^5*x1 + x0*x1^5", f3), 1)
    assert [s["dim"] for s in rep.summands] == [0, 2]
    assert rep.top_dim == sum(s["dim"] for s in rep.summands)
    assert rep.top_sstab == sum(s["sstab"] for s in rep.summands)
    assert rep.verdict == covers.SATISFIED


def test_surface_cover_has_no_lower_part():
    F = get_field(5)
    rep = covers.cyclic_cover_report(2, 4, 2, Poly.parse("x0^8 + x1^8 + x2^8 + x0^2*x1^3*x2^3", F), 1)
    assert rep.lower_sstab == 0 and rep.lower_dim == 0


def test_scan_reproducible(f3):
    a = covers.genericity_scan(f3, 1, 2, 2, 1, 50, seed=3)
    b = covers.genericity_scan(f3, 1, 2, 2, 1, 50, seed=3)
    assert a.to_csv() == b.to_csv()
    assert covers.genericity_scan(f3, 1, 2, 2, 1, 1, seed=3).records == a.records[:1]


def test_scan_parallel_matches_serial(f3):
    a = covers.genericity_scan(f3, 1, 2, 2, 1, 40, seed=5, workers=1)
    b = covers.genericity_scan(f3, 1, 2, 2, 1, 40, seed=5, workers=2)
    assert a.to_csv() == b.to_csv()


def test_monotone_in_s():
    F = get_field(5)
    prev = -1
    for s in range(2, 6):
        scan = covers.genericity_scan(F, 1, s, 2, 1, 5, seed=1)
        assert scan.max >= prev
        prev = scan.max


def test_fermat_small():
    scan = covers.fermat_density_scan(20)
    table = {r.p: r.fsplit for r in scan.rows}
    assert table == {3: False, 5: True, 7: False, 11: False, 13: True, 17: True, 19: False}
    assert 2 not in table
