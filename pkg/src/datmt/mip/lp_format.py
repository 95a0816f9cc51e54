"""CPLEX-LP text export plus a minimal reader used to round-trip tests.

The writer always emits the five sections Minimize / Subject To / Bounds /
Binary / End, one constraint per line, names restricted to [A-Za-z0-9_],
numbers with 17 significant digits.  The reader handles exactly this
dialect (plus backslash comments), not the full LP zoo.
"""

from __future__ import annotations

import math
import re

from ..errors import MipError
from .problem import BINARY, MipProblem

_NAME_OK = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"\s*(?:(?P<num>[0-9]+(?:\.[0-9]*)?(?:[eE][+-]?[0-9]+)?|\.[0-9]+)"
                    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<op>\+|-|<=|>=|=|:))")


def _clean_name(raw: str, taken: set[str]) -> str:
    name = re.sub(r"[^A-Za-z0-9_]", "_", raw) or "v"
    if name[0].isdigit():
        name = "v_" + name
    base = name
    k = 2
    while name in taken:
        name = f"{base}_{k}"
        k += 1
    taken.add(name)
    return name


def _num(x: float) -> str:
    return format(x, ".17g")


def _expr(terms, names) -> str:
    if not terms:
        return "0"
    parts = []
    for k, (j, a) in enumerate(terms):
        mag = _num(abs(a))
        if k == 0:
            sign = "-" if a < 0 else ""
            parts.append(f"{sign}{mag} {names[j]}")
        else:
            sign = "-" if a < 0 else "+"
            parts.append(f"{sign} {mag} {names[j]}")
    return " ".join(parts)


def write_lp(problem: MipProblem) -> str:
    """Render the problem in CPLEX LP format (deterministic output)."""
    problem.validate()
    taken: set[str] = set()
    var_names = [_clean_name(v.name, taken) for v in problem.variables]
    row_taken: set[str] = set()

    lines = ["Minimize"]
    objective = sorted(problem.objective.items())
    lines.append(" obj: " + _expr(objective, var_names))
    lines.append("Subject To")
    for c in problem.constraints:
        row = _clean_name(c.name, row_taken)
        lines.append(f" {row}: {_expr(list(c.coeffs), var_names)} {c.sense} {_num(c.rhs)}")
    lines.append("Bounds")
    for j, v in enumerate(problem.variables):
        if v.kind == BINARY:
            continue
        if math.isinf(v.ub):
            lines.append(f" {var_names[j]} >= {_num(v.lb)}")
        else:
            lines.append(f" {_num(v.lb)} <= {var_names[j]} <= {_num(v.ub)}")
    lines.append("Binary")
    for j, v in enumerate(problem.variables):
        if v.kind == BINARY:
            lines.append(f" {var_names[j]}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def export_lp_file(problem: MipProblem, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_lp(problem))


class _Reader:
    def __init__(self, text: str):
        self.tokens = []
        for line in text.splitlines():
            body = line.split("\\", 1)[0]
            pos = 0
            while pos < len(body):
                m = _TOKEN.match(body, pos)
                if not m:
                    if body[pos:].strip():
                        raise MipError(f"cannot tokenize {body[pos:].strip()!r}")
                    break
                self.tokens.append((m.lastgroup, m.group(m.lastgroup)))
                pos = m.end()
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def at_keyword(self, *words) -> bool:
        kind, value = self.peek()
        if kind != "name":
            return False
        lead = value.lower()
        if lead not in {w.split()[0] for w in words}:
            return False
        for w in words:
            parts = w.split()
            if lead != parts[0]:
                continue
            if len(parts) == 1:
                return True
            k2, v2 = (self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens)
                      else (None, None))
            if k2 == "name" and v2.lower() == parts[1]:
                return True
        return False

    def take_keyword(self, *words) -> None:
        if not self.at_keyword(*words):
            raise MipError(f"expected one of {words}, found {self.peek()!r}")
        first = self.take()[1].lower()
        for w in words:
            parts = w.split()
            if parts[0] == first and len(parts) == 2:
                self.take()
                return

    def parse_terms(self):
        """Read a linear expression as [(name, coefficient)]."""
        terms = []
        sign = 1.0
        pending_coef = None
        while True:
            kind, value = self.peek()
            if kind == "op" and value in ("+", "-"):
                self.take()
                sign = sign * (-1.0 if value == "-" else 1.0)
                continue
            if kind == "num":
                self.take()
                pending_coef = (pending_coef or 1.0) * float(value)
                continue
            if kind == "name" and not self._name_is_section(value):
                self.take()
                terms.append((value, sign * (1.0 if pending_coef is None else pending_coef)))
                sign, pending_coef = 1.0, None
                continue
            break
        if pending_coef is not None and not terms:
            # bare constant expression such as "0"
            if pending_coef != 0.0:
                raise MipError("constant objective terms are not supported")
        return terms

    @staticmethod
    def _name_is_section(value: str) -> bool:
        return value.lower() in {"minimize", "subject", "bounds", "binary", "binaries", "end", "st"}


def parse_lp(text: str) -> MipProblem:
    """Read text produced by :func:`write_lp` back into a problem."""
    r = _Reader(text)
    r.take_keyword("minimize")
    # optional objective label
    if r.peek()[0] == "name" and r.tokens[r.pos + 1][1] == ":":
        r.take()
        r.take()
    objective_terms = r.parse_terms()

    r.take_keyword("subject to", "st")
    rows = []
    while not r.at_keyword("bounds", "binary", "binaries", "end"):
        label = None
        if r.peek()[0] == "name" and r.tokens[r.pos + 1][1] == ":":
            label = r.take()[1]
            r.take()
        terms = r.parse_terms()
        kind, sense = r.take()
        if kind != "op" or sense not in (">=", "<=", "="):
            raise MipError(f"expected a row sense, found {sense!r}")
        sgn = 1.0
        k2, v2 = r.peek()
        if k2 == "op" and v2 in ("+", "-"):
            r.take()
            sgn = -1.0 if v2 == "-" else 1.0
        kind, value = r.take()
        if kind != "num":
            raise MipError("expected a right-hand side number")
        rows.append((label or f"c{len(rows) + 1}", terms, sense, sgn * float(value)))

    bounds: dict[str, tuple[float, float]] = {}
    if r.at_keyword("bounds"):
        r.take_keyword("bounds")
        while not r.at_keyword("binary", "binaries", "end"):
            bounds.update([_parse_bound_line(r)])

    binaries: set[str] = set()
    if r.at_keyword("binary", "binaries"):
        r.take()
        while not r.at_keyword("end"):
            kind, value = r.take()
            if kind != "name":
                raise MipError("expected a variable name in the Binary section")
            binaries.add(value)
    r.take_keyword("end")

    order: list[str] = []
    seen = set()
    for name, _ in objective_terms:
        if name not in seen:
            seen.add(name)
            order.append(name)
    for _, terms, _, _ in rows:
        for name, _ in terms:
            if name not in seen:
                seen.add(name)
                order.append(name)
    for name in list(bounds) + sorted(binaries):
        if name not in seen:
            seen.add(name)
            order.append(name)

    problem = MipProblem()
    for name in order:
        if name in binaries:
            problem.add_binary(name)
        else:
            lo, hi = bounds.get(name, (0.0, math.inf))
            problem.add_variable(name, lo, hi)
    idx = {name: j for j, name in enumerate(order)}
    problem.set_objective({idx[name]: a for name, a in objective_terms})
    for label, terms, sense, rhs in rows:
        problem.add_constraint(label, [(idx[name], a) for name, a in terms], sense, rhs)
    problem.validate()
    return problem


def _parse_bound_line(r: _Reader):
    first_kind, first = r.peek()
    if first_kind == "num" or (first_kind == "op" and first == "-"):
        lo = _signed_number(r)
        _expect_op(r, "<=")
        name = _expect_name(r)
        _expect_op(r, "<=")
        hi = _signed_number(r)
        return name, (lo, hi)
    name = _expect_name(r)
    kind, op = r.take()
    if kind != "op" or op not in (">=", "<=", "="):
        raise MipError(f"bad bound line near {name!r}")
    value = _signed_number(r)
    if op == ">=":
        return name, (value, math.inf)
    if op == "<=":
        return name, (0.0, value)
    return name, (value, value)


def _signed_number(r: _Reader) -> float:
    sign = 1.0
    kind, value = r.take()
    if kind == "op" and value in ("+", "-"):
        sign = -1.0 if value == "-" else 1.0
        kind, value = r.take()
    if kind != "num":
        raise MipError(f"expected a number, found {value!r}")
    return sign * float(value)


def _expect_op(r: _Reader, op: str) -> None:
    kind, value = r.take()
    if kind != "op" or value != op:
        raise MipError(f"expected {op!r}, found {value!r}")


def _expect_name(r: _Reader) -> str:
    kind, value = r.take()
    if kind != "name":
        raise MipError(f"expected a name, found {value!r}")
    return value
