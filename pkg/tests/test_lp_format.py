"""LP-format writer and the minimal internal reader."""

import math
import random

import pytest

from datmt.mip import MipProblem, OPTIMAL, parse_lp, solve_lp, solve_mip, write_lp
from datmt.milp import export_model
from dattools import random_dat, trojan
from test_mip import brute_force_mip, random_problem


def section_lines(text):
    return [line for line in text.splitlines() if not line.startswith(" ")]


def test_sections_always_present_in_order():
    p = MipProblem()
    x = p.add_variable("x", 0, 10)
    p.add_constraint("floor", [(x, 1.0)], ">=", 3.0)
    p.set_objective({x: 1.0})
    text = write_lp(p)
    assert section_lines(text) == ["Minimize", "Subject To", "Bounds", "Binary", "End"]


def test_one_constraint_per_line():
    p = MipProblem()
    x = p.add_variable("x", 0, 10)
    y = p.add_binary("y")
    p.add_constraint("a", [(x, 1.0), (y, -2.5)], ">=", 1.0)
    p.add_constraint("b", [(x, -1.0)], "<=", 4.0)
    p.set_objective({x: 1.0})
    text = write_lp(p)
    body = text.split("Subject To\n", 1)[1].split("\nBounds", 1)[0]
    assert len(body.splitlines()) == 2
    assert " a: 1 x - 2.5 y >= 1" in text


def test_empty_constraint_section_is_valid():
    p = MipProblem()
    x = p.add_variable("x", 0, 2)
    p.set_objective({x: 1.0})
    text = write_lp(p)
    back = parse_lp(text)
    assert solve_lp(back).objective == pytest.approx(0.0)


def test_names_are_sanitized():
    p = MipProblem()
    x = p.add_variable("weird name!", 0, 1)
    p.set_objective({x: 1.0})
    text = write_lp(p)
    assert "weird_name_" in text
    assert "weird name!" not in text


def test_single_variable_round_trip():
    p = MipProblem()
    x = p.add_variable("x", 0, 10)
    p.add_constraint("floor", [(x, 1.0)], ">=", 3.0)
    p.set_objective({x: 1.0})
    back = parse_lp(write_lp(p))
    assert [v.name for v in back.variables] == ["x"]
    assert solve_lp(back).objective == pytest.approx(3.0)


def test_deterministic_output():
    dat = trojan()
    assert export_model(dat) == export_model(dat)


def test_trojan_model_round_trips_to_the_same_optimum():
    text = export_model(trojan())
    back = parse_lp(text)
    direct = solve_mip(back)
    assert direct.status == OPTIMAL
    assert direct.objective == pytest.approx(6.0, abs=1e-6)


def test_random_problems_round_trip_to_equal_optima():
    rng = random.Random(61)
    checked = 0
    while checked < 40:
        p = random_problem(rng, rng.randint(0, 5), rng.randint(1, 4))
        expected = brute_force_mip(p)
        back = parse_lp(write_lp(p))
        got = solve_mip(back)
        if expected is None:
            assert got.status != OPTIMAL
        else:
            assert got.objective == pytest.approx(expected, abs=1e-9 + 1e-9 * abs(expected))
        checked += 1


def test_binary_section_round_trips_kinds():
    p = MipProblem()
    y = p.add_binary("pick")
    x = p.add_variable("level", 0, 7)
    p.add_constraint("tie", [(y, 1.0), (x, 1.0)], ">=", 1.0)
    p.set_objective({x: 1.0, y: 2.0})
    back = parse_lp(write_lp(p))
    kinds = {v.name: v.kind for v in back.variables}
    assert kinds["pick"] == "binary"
    assert kinds["level"] == "continuous"
    bounds = {v.name: (v.lb, v.ub) for v in back.variables}
    assert bounds["level"] == (0.0, 7.0)


def test_random_model_exports_parse_back(tmp_path):
    rng = random.Random(62)
    for _ in range(10):
        dat = random_dat(rng, max_bas=6)
        text = export_model(dat)
        back = parse_lp(text)
        assert len(back.variables) > 0
        assert math.isfinite(sum(c.rhs for c in back.constraints))
