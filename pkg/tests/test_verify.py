import json

import pytest

from stringc.coset import EnumerationLimits
from stringc.families import BadParam, Type1Params, Type2Params
from stringc.sggi import Certificate
from stringc import verify


def cert(order, schlafli):
    return Certificate(order, schlafli, True, True, True, False, True, 2)


def test_odd_prime_part():
    assert verify.odd_prime_part(192) == 3
    assert verify.odd_prime_part(2 ** 5 * 5) == 5
    assert verify.odd_prime_part(64) is None
    assert verify.odd_prime_part(2 * 9) is None
    assert verify.odd_prime_part(15) is None


def test_divisibility_examples():
    assert verify.verify_divisibility(cert(192, (12, 4)), 3)
    assert verify.verify_divisibility(cert(192, (6, 6)), 3)
    assert verify.type_class(cert(192, (12, 4)), 3) == 1
    assert verify.type_class(cert(192, (6, 6)), 3) == 2
    assert not verify.verify_divisibility(cert(96, (4, 4)), 3)
    with pytest.raises(verify.NotApplicable):
        verify.verify_divisibility(cert(64, (4, 4)), 3)
    with pytest.raises(verify.NotApplicable):
        verify.verify_divisibility(cert(192, (4, 4)), 5)


def test_cor52_selection():
    assert verify.cor52_params(6) == Type2Params("G", 1)
    assert verify.cor52_params(7) == Type2Params("H", 1)
    assert verify.cor52_params(8) == Type2Params("I", 1)
    assert verify.cor52_params(9) == Type2Params("G", 2)
    for n in range(6, 20):
        assert verify.cor52_params(n).order == 3 * 2 ** n
    with pytest.raises(BadParam):
        verify.cor52_params(5)


def test_default_grids():
    assert len(verify.DEFAULT_THM4) == 96
    assert len(verify.DEFAULT_THM5) == 7
    assert len(verify._tasks("prop21", verify.Grid())) == 30


@pytest.mark.parametrize("k,variant,order", [(2, 1, 8), (12, 2, 48), (5, 1, 20)])
def test_degenerate_claim(k, variant, order):
    r = verify.check_degenerate(k, variant)
    assert r.passed and r.observed["order"] == order


def test_type1_claim_examples():
    r = verify.check_type1(Type1Params(2, 2, 6, 3, 1))
    assert r.passed
    assert (r.observed["order"], r.observed["schlafli"]) == (192, [12, 4])
    r = verify.check_type1(Type1Params(3, 2, 8, 5, 1))
    assert r.passed and r.observed["order"] == 1280


def test_limit_is_reported_per_point():
    r = verify.check_type2(Type2Params("G", 1), EnumerationLimits(max_cosets=50))
    assert r.hit_limit and not r.passed


def test_report_record_shape():
    r = verify.check_type44(3, 1)
    rec = json.loads(verify.to_jsonl([r]))
    assert list(rec) == ["claim", "params", "expected", "observed", "pass", "elapsed_ms"]
    assert rec["expected"]["value"]["order"] == 72
    assert rec["expected"]["provenance"]
    lines = verify.to_csv([r]).splitlines()
    assert lines[0] == "claim,params,expected,observed,pass"
    assert lines[1].startswith("prop23,") and lines[1].endswith(",true")


def test_divisibility_pass_over_reports():
    reports = [verify.check_type1(Type1Params(2, 2, 6, 3, 1)), verify.check_degenerate(4, 1)]
    extra = verify.divisibility_reports(reports)
    assert len(extra) == 1 and extra[0].passed
    assert extra[0].params["p"] == 3


def test_parallel_matches_serial():
    grid = verify.Grid(k=(3, 4), b=(2,))
    a = verify.run_suite("prop21", grid, jobs=1)
    b = verify.run_suite("prop21", grid, jobs=2)
    strip = lambda rs: [{k: v for k, v in r.as_json().items() if k != "elapsed_ms"} for r in rs]  # noqa: E731
    assert strip(a) == strip(b)


def test_explore_asserts_nothing():
    from stringc.families import build_degenerate
    r = verify.explore([("x", build_degenerate(3, 1))])[0]
    assert r.passed and r.expected == {} and r.observed["order"] == 12


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run_suite("nope")
