from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from tamecurve.algebras import QuarticTowerSpec, QuaternionSpec, build_algebra
from tamecurve.fields import QQ, FiniteField, RationalFunctionField
from tamecurve.ladder import Ladder

settings.register_profile("exact", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exact")


def f3_tower():
    k = FiniteField(3)
    return build_algebra(QuarticTowerSpec.make(k, 2, 1, 1))


def hamilton():
    return build_algebra(QuaternionSpec.char_not_2(QQ, -1, -1))


def quat_char2():
    k = FiniteField(2)
    return build_algebra(QuaternionSpec.char_2(k, 1, 1))


def q_sqrt2_sqrt3():
    return build_algebra(QuarticTowerSpec.make(QQ, 3, 2))


def q_fourth_root2():
    return build_algebra(QuarticTowerSpec.make(QQ, 2, 0, 1))


def f2_biquadratic():
    k = RationalFunctionField(2, ["s", "t"], display={"s": "u^2", "t": "v^2"})
    s, t = k.gens
    return build_algebra(QuarticTowerSpec.make(k, s, t))


def f2u_over_f2u4():
    k = RationalFunctionField(2, ["s"], display={"s": "u^4"})
    (s,) = k.gens
    return build_algebra(QuarticTowerSpec.make(k, s, 0, 1))


def f4u_over_f2u2():
    k = RationalFunctionField(2, ["s"], display={"s": "u^2"})
    (s,) = k.gens
    return build_algebra(QuarticTowerSpec.make(k, 1, s, c1=1))


VARIANT_ALGEBRAS = {"CommExt/F3": f3_tower, "SkewExt/Q": hamilton, "QuatChar2/F2": quat_char2}


@pytest.fixture(scope="session")
def variant_ladders():
    return {name: Ladder.for_algebra(make()) for name, make in VARIANT_ALGEBRAS.items()}


@pytest.fixture(scope="session")
def f3_ladder(variant_ladders):
    return variant_ladders["CommExt/F3"]


# -- one summary line per acceptance criterion -----------------------------------------

_CRITERIA: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    num = int(report.nodeid.split("test_criterion_")[1][:2])
    title = report.nodeid.split("::")[-1][len("test_criterion_00_") :].split("[")[0].replace("_", " ")
    ok = _CRITERIA.get(num, (title, True))[1] and not report.failed
    _CRITERIA[num] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}: {title}")
