"""Executable checks of the order, type and structure claims over parameter grids.

Every expected value is computed from a closed formula at run time.  A
report passes iff its observed values equal the expected ones exactly.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Iterable, Sequence

from . import families
from .coset import (
    EnumerationLimits,
    LimitExceeded,
    abelianized_subgroup_relations,
    enumerate_cosets,
    is_normal,
)
from .families import BadParam, Type1Params, Type2Params
from .fpcore import GeneratorMap, Presentation, Word
from .perm import element_order
from .sggi import Certificate, certify_group, quotient_criterion, sggi_group
from .snf import abelian_invariants

logger = logging.getLogger(__name__)

SUITES = ("prop21", "prop23", "thm4", "thm5", "subgroups", "cor52")

DEFAULT_K = tuple(range(2, 17))
DEFAULT_B = tuple(range(2, 7))
DEFAULT_THM4 = tuple(
    Type1Params(s, t, n, l1, l2)
    for s, t in product((2, 3), repeat=2)
    for l1 in (1, 3, 5)
    for l2 in (1, 3)
    for n in range(s + t + 1, s + t + 5)
)
DEFAULT_THM5 = tuple(Type2Params(f, m) for m in (1, 2) for f in families.FAMILY_TAGS) + (
    Type2Params("G", 3),)
DEFAULT_COR52 = (6, 7, 8, 9)


class NotApplicable(ValueError):
    """The certificate's order is not of the form 2^n p with p an odd prime."""


@dataclass
class ClaimReport:
    claim: str
    params: dict[str, Any]
    expected: dict[str, Any]
    provenance: str
    observed: dict[str, Any]
    passed: bool
    elapsed_ms: float
    certificate: Certificate | None = field(default=None, repr=False)

    @property
    def hit_limit(self) -> bool:
        return "limit_exceeded" in self.observed

    def as_json(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "params": self.params,
            "expected": {"value": self.expected, "provenance": self.provenance},
            "observed": self.observed,
            "pass": self.passed,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _timed(claim: str, params: dict[str, Any], expected: dict[str, Any], provenance: str,
           observe: Callable[[], tuple[dict[str, Any], Certificate | None]]) -> ClaimReport:
    t0 = time.perf_counter()
    try:
        observed, cert = observe()
        passed = observed == expected
    except LimitExceeded as exc:
        observed, cert, passed = {"limit_exceeded": str(exc)}, None, False
    elapsed = (time.perf_counter() - t0) * 1000
    status = "pass" if passed else "FAIL"
    logger.info("%s %s %s (%.0f ms)", claim, params, status, elapsed)
    return ClaimReport(claim, params, expected, provenance, observed, passed, elapsed, cert)


def _cert_fields(c: Certificate, keys: Iterable[str]) -> dict[str, Any]:
    d = c.as_dict()
    return {k: d[k] for k in keys}


def _exponent_orders(g, words: dict[str, Word]) -> dict[str, int]:
    return {name: element_order(g.image, w) for name, w in words.items()}


# -- individual claims ------------------------------------------------------

def check_degenerate(k: int, variant: int, limits: EnumerationLimits | None = None) -> ClaimReport:
    k01, k12 = (k, 2) if variant == 1 else (2, k)
    expected = {
        "order": 4 * k, "schlafli": [k01, k12], "is_sggi": True,
        "intersection_ok": True, "degenerate": True,
        "exponents": {"r0 r1": k01, "r1 r2": k12, "r0 r2": 2},
    }

    def observe():
        g = sggi_group(families.build_degenerate(k, variant), limits=limits)
        c = certify_group(g)
        obs = _cert_fields(c, ("order", "schlafli", "is_sggi", "intersection_ok", "degenerate"))
        obs["exponents"] = _exponent_orders(g, {
            "r0 r1": g.word(0, 1), "r1 r2": g.word(1, 2), "r0 r2": g.word(0, 2)})
        return obs, c

    return _timed("prop21", {"k": k, "variant": variant}, expected, "formula: |L1|=|L2|=4k", observe)


def check_type44(b: int, variant: int, limits: EnumerationLimits | None = None) -> ClaimReport:
    order = 8 * b * b if variant == 1 else 16 * b * b
    extra_name, extra_exp = ("r1 r0 r1 r2", b) if variant == 1 else ("r0 r1 r2", 2 * b)
    expected = {
        "order": order, "schlafli": [4, 4], "is_sggi": True, "intersection_ok": True,
        "solvable": True,
        "exponents": {"r0 r1": 4, "r1 r2": 4, "r0 r2": 2, extra_name: extra_exp},
    }

    def observe():
        g = sggi_group(families.build_type44(b, variant), limits=limits)
        c = certify_group(g)
        obs = _cert_fields(c, ("order", "schlafli", "is_sggi", "intersection_ok", "solvable"))
        extra = g.word(1, 0, 1, 2) if variant == 1 else g.word(0, 1, 2)
        obs["exponents"] = _exponent_orders(g, {
            "r0 r1": g.word(0, 1), "r1 r2": g.word(1, 2), "r0 r2": g.word(0, 2),
            extra_name: extra})
        return obs, c

    return _timed("prop23", {"b": b, "variant": variant}, expected,
                  "formula: |M1|=8b^2, |M2|=16b^2, type {4,4}", observe)


def check_type1(p: Type1Params, limits: EnumerationLimits | None = None) -> ClaimReport:
    g1_order = 2 ** (p.n - p.s + 2) * p.l2
    g2_order = 2 ** (p.n - p.s - p.t + 4)
    expected = {
        "order": p.order, "schlafli": [p.k1, p.k2], "is_sggi": True,
        "intersection_ok": True, "solvable": True,
        "index_G_over_G1": 2 ** (p.s - 2) * p.l1,
        "index_G1_over_G2": 2 ** (p.t - 2) * p.l2,
        "G2_order": g2_order, "G2_schlafli": [4, 4],
        "G1_from_G2_criterion": True, "G_from_G1_criterion": True,
    }

    def observe():
        pres = families.build_type1(p)
        g1p, g2p = families.build_type1_chain(p)
        g = sggi_group(pres, limits=limits)
        c = certify_group(g)
        g1 = sggi_group(g1p, limits=limits)
        g2 = sggi_group(g2p, limits=limits)
        c2 = certify_group(g2)
        o, o1, o2 = c.order, g1.image.order(), c2.order
        ident = GeneratorMap.identity(3)
        obs = _cert_fields(c, ("order", "schlafli", "is_sggi", "intersection_ok", "solvable"))
        obs.update({
            "index_G_over_G1": o // o1 if o % o1 == 0 else f"{o}/{o1}",
            "index_G1_over_G2": o1 // o2 if o1 % o2 == 0 else f"{o1}/{o2}",
            "G2_order": o2, "G2_schlafli": list(c2.schlafli),
            "G1_from_G2_criterion": bool(quotient_criterion(g1p, g2, ident)),
            "G_from_G1_criterion": bool(quotient_criterion(pres, g1, ident)),
        })
        return obs, c

    return _timed("thm4", p.as_dict(), expected,
                  "formula: order 2^n l1 l2, type {2^s l1, 2^t l2}; |G2| = 2^(n-s-t+4)", observe)


def check_type2(p: Type2Params, limits: EnumerationLimits | None = None) -> ClaimReport:
    expected = {"order": p.order, "schlafli": [6, 6], "is_sggi": True,
                "intersection_ok": True, "solvable": True}

    def observe():
        c = certify_group(sggi_group(families.build_type2(p), limits=limits))
        return _cert_fields(c, expected), c

    return _timed("thm5", p.as_dict(), expected, "formula: orders 192m^3, 384m^3, 768m^3, type {6,6}",
                  observe)


def check_subgroup(family: str, limits: EnumerationLimits | None = None) -> ClaimReport:
    expected = {"index": families.TYPE2_COEFFICIENT[family], "normal": True,
                "torsion": [], "free_rank": 3}

    def observe():
        u = families.build_U()
        spec = families.subgroup_generators(family)
        t = enumerate_cosets(u, spec.generators, limits)
        torsion, rank = abelian_invariants(abelianized_subgroup_relations(u, t))
        return {"index": t.n_live, "normal": is_normal(t, spec.generators),
                "torsion": list(torsion), "free_rank": rank}, None

    return _timed("subgroups", {"family": family}, expected,
                  "formula: normal subgroups of U of index 192/384/768, free abelian of rank 3",
                  observe)


def cor52_params(n: int) -> Type2Params:
    """Family and ``m = 2^j`` whose group has order ``3 * 2^n``."""
    if n <= 5:
        raise BadParam(f"n must be >= 6 (got {n}); n = 5 is not built by these families")
    j, r = divmod(n - 6, 3)
    return Type2Params(families.FAMILY_TAGS[r], 2 ** j)


def check_cor52(n: int, limits: EnumerationLimits | None = None) -> ClaimReport:
    p = cor52_params(n)
    expected = {"order": 3 * 2 ** n, "schlafli": [6, 6], "is_sggi": True,
                "intersection_ok": True}

    def observe():
        c = certify_group(sggi_group(families.build_type2(p), limits=limits))
        return _cert_fields(c, expected), c

    return _timed("cor52", {"n": n, **p.as_dict()}, expected,
                  "formula: order 3*2^n type {6,6} via m = 2^j", observe)


# -- divisibility over the corpus --------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def odd_prime_part(order: int) -> int | None:
    """``p`` if ``order = 2^n p`` with ``n >= 1`` and ``p`` an odd prime, else None."""
    if order < 2 or order % 2:
        return None
    while order % 2 == 0:
        order //= 2
    return order if order > 2 and _is_prime(order) else None


def verify_divisibility(c: Certificate, p: int) -> bool:
    if odd_prime_part(c.order) != p:
        raise NotApplicable(f"order {c.order} is not 2^n * {p} with {p} an odd prime")
    return any(k % p == 0 for k in c.schlafli)


def type_class(c: Certificate, p: int) -> int:
    """1 if exactly one Schlafli entry is divisible by ``p``, 2 if both."""
    hits = sum(1 for k in c.schlafli if k % p == 0)
    if hits == 0:
        raise ValueError(f"neither entry of {c.schlafli} is divisible by {p}")
    return hits


def divisibility_reports(reports: Sequence[ClaimReport]) -> list[ClaimReport]:
    out = []
    for r in reports:
        c = r.certificate
        if c is None:
            continue
        p = odd_prime_part(c.order)
        if p is None:
            continue
        params = {"source": r.claim, "source_params": r.params, "order": c.order,
                  "p": p, "schlafli": list(c.schlafli)}
        expected = {"p_divides_k1_or_k2": True, "type_class_1_or_2": True}

        def observe(c=c, p=p):
            hits = sum(1 for k in c.schlafli if k % p == 0)
            return {"p_divides_k1_or_k2": verify_divisibility(c, p),
                    "type_class_1_or_2": hits in (1, 2)}, None

        out.append(_timed("divisibility", params, expected, "formula: p | k1 or p | k2", observe))
    return out


# -- grids and suites ----------------------------------------------------------

def verify_prop21(k_list: Sequence[int] = DEFAULT_K, limits=None) -> list[ClaimReport]:
    return [check_degenerate(k, v, limits) for k in k_list for v in (1, 2)]


def verify_prop23(b_list: Sequence[int] = DEFAULT_B, limits=None) -> list[ClaimReport]:
    return [check_type44(b, v, limits) for b in b_list for v in (1, 2)]


def verify_theorem4(grid: Sequence[Type1Params] = DEFAULT_THM4, limits=None) -> list[ClaimReport]:
    return [check_type1(p, limits) for p in grid]


def verify_theorem5(points: Sequence[Type2Params] = DEFAULT_THM5, limits=None) -> list[ClaimReport]:
    return [check_type2(p, limits) for p in points]


def verify_subgroup_structure(family_list: Sequence[str] = families.FAMILY_TAGS,
                              limits=None) -> list[ClaimReport]:
    return [check_subgroup(f, limits) for f in family_list]


def verify_cor52(n_list: Sequence[int] = DEFAULT_COR52, limits=None) -> list[ClaimReport]:
    return [check_cor52(n, limits) for n in n_list]


@dataclass(frozen=True)
class Grid:
    k: tuple[int, ...] = DEFAULT_K
    b: tuple[int, ...] = DEFAULT_B
    thm4: tuple[Type1Params, ...] = DEFAULT_THM4
    thm5: tuple[Type2Params, ...] = DEFAULT_THM5
    families: tuple[str, ...] = families.FAMILY_TAGS
    cor52: tuple[int, ...] = DEFAULT_COR52


def _tasks(suite: str, grid: Grid) -> list[tuple[Callable[..., ClaimReport], tuple]]:
    if suite == "prop21":
        return [(check_degenerate, (k, v)) for k in grid.k for v in (1, 2)]
    if suite == "prop23":
        return [(check_type44, (b, v)) for b in grid.b for v in (1, 2)]
    if suite == "thm4":
        return [(check_type1, (p,)) for p in grid.thm4]
    if suite == "thm5":
        return [(check_type2, (p,)) for p in grid.thm5]
    if suite == "subgroups":
        return [(check_subgroup, (f,)) for f in grid.families]
    if suite == "cor52":
        return [(check_cor52, (n,)) for n in grid.cor52]
    raise ValueError(f"unknown suite {suite!r}")


def _run_task(task: tuple[Callable[..., ClaimReport], tuple, EnumerationLimits | None]) -> ClaimReport:
    fn, args, limits = task
    return fn(*args, limits)


def run_suite(suite: str, grid: Grid = Grid(), jobs: int = 1,
              limits: EnumerationLimits | None = None) -> list[ClaimReport]:
    """Run one suite, or every suite plus the divisibility pass for ``"all"``."""
    names = SUITES if suite == "all" else (suite,)
    tasks = [(fn, args, limits) for name in names for fn, args in _tasks(name, grid)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_task, tasks))
    else:
        reports = [_run_task(t) for t in tasks]
    if suite == "all":
        reports += divisibility_reports(reports)
    return reports


def explore(presentations: Sequence[tuple[str, Presentation]],
            limits: EnumerationLimits | None = None) -> list[ClaimReport]:
    """Certify user presentations; records observations and asserts nothing."""
    out = []
    for name, pres in presentations:
        def observe(pres=pres):
            c = certify_group(sggi_group(pres, limits=limits))
            return c.as_dict(), c
        r = _timed("explore", {"source": name}, {}, "none: exploratory", observe)
        r.passed = "limit_exceeded" not in r.observed
        out.append(r)
    return out


def to_jsonl(reports: Sequence[ClaimReport]) -> str:
    return "".join(json.dumps(r.as_json(), separators=(",", ":")) + "\n" for r in reports)


def to_csv(reports: Sequence[ClaimReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["claim", "params", "expected", "observed", "pass"])
    for r in reports:
        dump = lambda x: json.dumps(x, separators=(",", ":"))  # noqa: E731
        w.writerow([r.claim, dump(r.params), dump(r.expected), dump(r.observed),
                    "true" if r.passed else "false"])
    return buf.getvalue()
