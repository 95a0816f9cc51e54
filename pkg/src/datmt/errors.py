"""Exception hierarchy shared by all datmt modules."""

from __future__ import annotations


class DatError(Exception):
    """Base class for every error raised by this package."""


# --- attack-tree structure -------------------------------------------------

class CycleDetected(DatError):
    def __init__(self, nodes):
        self.nodes = list(nodes)
        super().__init__(f"edge cycle through {', '.join(self.nodes)}")


class NoRoot(DatError):
    def __init__(self):
        super().__init__("every node is referenced as a child; no root exists")


class MultipleRoots(DatError):
    def __init__(self, roots):
        self.roots = list(roots)
        super().__init__(f"more than one parentless node: {', '.join(self.roots)}")


class GateWithoutChildren(DatError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"gate {node!r} has no children")


class LeafWithGateType(DatError):
    """A node declared as a basic step has children, so it is not a leaf."""

    def __init__(self, node):
        self.node = node
        super().__init__(f"basic step {node!r} has children")


class MissingDuration(DatError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"no duration for basic step {node!r}")


class NegativeDuration(DatError):
    """Duration is negative or NaN. Zero and large values are allowed."""

    def __init__(self, node, value):
        self.node = node
        self.value = value
        super().__init__(f"invalid duration {value!r} for basic step {node!r}")


class DuplicateId(DatError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"node name {name!r} declared twice")


class InvalidName(DatError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"node name {name!r} is not a valid identifier")


class UnknownNode(DatError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"unknown node {node!r}")


# --- attacks ----------------------------------------------------------------

class UnknownBas(DatError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"{node!r} is not a basic step of this attack/tree")


class NotAStrictOrder(DatError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"transitive closure relates {element!r} to itself")


class NotExactAssignment(DatError):
    """A completion-time vector fed to attack extraction is unusable."""


# --- MILP translation -------------------------------------------------------

class SolverLimit(DatError):
    """The branch-and-bound search hit its node or pivot budget."""


class InconsistentSolution(DatError):
    """A decoded solver result violates the completion-time conditions."""


# --- modular analysis -------------------------------------------------------

class NotAModule(DatError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node!r} is not a module")


class UnsatisfiableModule(DatError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"module {node!r} cannot be completed; whole tree is unsatisfiable")


# --- text format ------------------------------------------------------------

class DslError(DatError):
    """Base class for parse diagnostics; carries a 1-based source position."""

    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class DatSyntaxError(DslError):
    pass


class UnknownChild(DslError):
    def __init__(self, line, col, name):
        self.name = name
        super().__init__(line, col, f"reference to undeclared node {name!r}")


class DuplicateDeclaration(DslError):
    def __init__(self, line, col, name):
        self.name = name
        super().__init__(line, col, f"node {name!r} already declared")


# --- generic MIP machinery --------------------------------------------------

class MipError(DatError):
    """Base class for errors of the generic MIP layer."""


class UnboundedProblem(MipError):
    """The LP relaxation has no finite optimum."""


class SolverError(MipError):
    """Internal numerical failure (post-hoc feasibility check did not pass)."""
