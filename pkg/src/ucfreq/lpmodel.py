"""Linear-program models for the second-frequency case analysis.

The base program works over an abstract minimal 2-good set S of size s (4
or 5) whose elements are the roles ``a, b, c, d, e``.  One variable
``q_<subset>`` counts the members tracing to each subset of S, the family
size m is eliminated as the sum of all q variables, and the f_2 <= 1/3
hypothesis becomes, for every role y, the cleared cap

    3 * sum(q_T : y in T)  <=  sum of all q_T.

Extra constraint families tighten the base program per case, indexed by
the set C of covered roles (role ``a`` is the flexible element, covered
roles follow by position):

* doubled trace floors: q_T >= 2 where a repeated witness is forced
  (a in T disjoint from C, or T meeting C twice);
* a frequency cap on the auxiliary element x counted through C;
* incidence-driven counting rows when exactly one role is covered;
* the covered-pair cap, whose optimum certifies the bound used to rule
  pair-covering configurations out.

`bounds_table` solves the eight (s, |C|) cells and returns certified
results; everything is exact rational arithmetic end to end.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .ratlp import (
    LinearConstraint,
    LinearProgram,
    LpOutcome,
    Infeasible,
    Optimal,
    solve,
    verify_infeasibility,
    verify_optimality,
)

ROLES = "abcde"

Subset = frozenset


def role_letters(s: int) -> str:
    if s not in (4, 5):
        raise ValueError(f"base-set size must be 4 or 5, got {s}")
    return ROLES[:s]


def subset_name(t: Iterable[str]) -> str:
    letters = "".join(sorted(t))
    return f"q_{letters}" if letters else "q_empty"


def all_subsets(s: int) -> tuple[Subset, ...]:
    """Every subset of the s roles, smallest first, alphabetical within a size."""
    letters = role_letters(s)
    out: list[Subset] = []
    for k in range(s + 1):
        for combo in combinations(letters, k):
            out.append(frozenset(combo))
    return tuple(out)


def build_base(s: int) -> LinearProgram:
    """The base program: minimize the family size under the trace constraints.

    Rows, in order: one cap per role, one q_T >= 1 floor per subset, and
    the two-member ceiling q_empty <= 2 (only the empty set and the
    distinguished singleton can miss S).
    """
    subsets = all_subsets(s)
    names = tuple(subset_name(t) for t in subsets)
    lp = LinearProgram(names, "min", {name: Fraction(1) for name in names})
    for y in role_letters(s):
        coeffs = {
            subset_name(t): Fraction(2) if y in t else Fraction(-1) for t in subsets
        }
        lp.add(coeffs, "<=", 0, label=f"cap_{y}")
    for t in subsets:
        lp.add({subset_name(t): 1}, ">=", 1, label=f"floor_{subset_name(t)}")
    lp.add({"q_empty": 1}, "<=", 2, label="ceil_q_empty")
    return lp


# ---------------------------------------------------------------------------
# constraint generators
# ---------------------------------------------------------------------------

def doubled_trace_targets(
    s: int, a: str = "a", covered: Iterable[str] = ()
) -> tuple[Subset, ...]:
    """Subsets whose trace count is forced to at least 2.

    These are the T with the flexible role inside and no covered role, plus
    the T meeting the covered roles at least twice; both patterns admit a
    second member with the same trace, differing in the auxiliary element.
    """
    letters = role_letters(s)
    cov = frozenset(covered)
    if a not in letters or not cov <= set(letters):
        raise ValueError(f"roles must come from {letters!r}")
    if a in cov:
        raise ValueError("the flexible role cannot be covered")
    return tuple(
        t
        for t in all_subsets(s)
        if (a in t and not t & cov) or len(t & cov) >= 2
    )


def raise_trace_floors(lp: LinearProgram, targets: Iterable[Subset]) -> LinearProgram:
    """Copy of `lp` with the floor of q_T raised to 2 for each target subset."""
    labels = {f"floor_{subset_name(t)}" for t in targets}
    missing = labels - {con.label for con in lp.constraints}
    if missing:
        raise ValueError(f"no floor rows for {sorted(missing)}")
    out = LinearProgram(
        lp.variables, lp.sense, dict(lp.objective),
        lower=dict(lp.lower), upper=dict(lp.upper),
    )
    out.constraints = [
        LinearConstraint(dict(con.coeffs), con.relation, 2, con.label)
        if con.label in labels
        else con
        for con in lp.constraints
    ]
    return out


def frequency_cap_constant(s: int, covered_size: int) -> int:
    """Sets forced to contain the auxiliary element, minus double counting."""
    if not 0 <= covered_size <= s - 1:
        raise ValueError(f"covered size must be in 0..{s - 1}")
    return 2**s - 2 ** (s - 1 - covered_size) - covered_size


def frequency_cap_constraint(s: int, covered: Iterable[str]) -> LinearConstraint:
    """Cleared form of: the auxiliary element's frequency is at most m/3.

    Its frequency is at least the constant plus the covered singleton
    traces, so  sum q_T - 3 * sum(q_{c} : c covered) >= 3 * constant.
    """
    cov = sorted(set(covered))
    if not set(cov) <= set(role_letters(s)) or "a" in cov:
        raise ValueError("covered roles must be non-a roles")
    const = frequency_cap_constant(s, len(cov))
    coeffs = {subset_name(t): Fraction(1) for t in all_subsets(s)}
    for c in cov:
        coeffs[subset_name({c})] -= 3
    return LinearConstraint(coeffs, ">=", 3 * const, label="freq_cap")


INCIDENCE_EXTRA = {2: lambda s: 2 ** (s - 2), 3: lambda s: 2 ** (s - 2) - 1, 4: lambda s: 2 ** (s - 3) - 1}


def incidence_count_constraints(s: int, b: str = "b") -> tuple[LinearConstraint, ...]:
    """Counting rows for the single-covered-role case.

    For j = 2, 3, 4 the members whose trace contains the covered role and
    has size >= j number at least #{T : b in T, |T| >= j} (one per trace,
    all containing the auxiliary element) plus an incidence-forced batch
    without it of size 2^(s-2), 2^(s-2)-1, 2^(s-3)-1 respectively.
    """
    if b not in role_letters(s):
        raise ValueError(f"unknown role {b!r}")
    out = []
    for j in (2, 3, 4):
        terms = [t for t in all_subsets(s) if b in t and len(t) >= j]
        rhs = len(terms) + INCIDENCE_EXTRA[j](s)
        coeffs = {subset_name(t): Fraction(1) for t in terms}
        out.append(LinearConstraint(coeffs, ">=", rhs, label=f"count_{b}_ge{j}"))
    return tuple(out)


def covered_pair_cap_constraint(s: int = 5) -> LinearConstraint:
    """Frequency cap when a covered pair's joint trace also forces the
    auxiliary element:  sum q_T - 3 (q_b + q_c + q_bc) >= 75.

    Only meaningful for s = 5 (for s = 4 the configuration is ruled out by
    a size-3 2-good set instead).
    """
    if s != 5:
        raise ValueError("the covered-pair cap applies to s = 5 only")
    coeffs = {subset_name(t): Fraction(1) for t in all_subsets(5)}
    for t in ({"b"}, {"c"}, {"b", "c"}):
        coeffs[subset_name(t)] -= 3
    return LinearConstraint(coeffs, ">=", 75, label="pair_cap")


# ---------------------------------------------------------------------------
# case assembly
# ---------------------------------------------------------------------------

class Scenario(enum.Enum):
    BASE = "base"
    C0 = "c0"
    C1 = "c1"
    C2 = "c2"
    C3PLUS = "c3plus"
    PAIR_CAP = "pair"

    @property
    def covered_roles(self) -> tuple[str, ...]:
        return {
            Scenario.C0: (),
            Scenario.C1: ("b",),
            Scenario.C2: ("b", "c"),
            Scenario.C3PLUS: ("b", "c", "d"),
        }.get(self, ())


@dataclass(frozen=True)
class CaseSpec:
    s: int
    scenario: Scenario

    def __post_init__(self):
        role_letters(self.s)
        if self.scenario is Scenario.PAIR_CAP and self.s != 5:
            raise ValueError("the covered-pair cap case exists for s = 5 only")


@dataclass(frozen=True)
class CaseResult:
    spec: CaseSpec
    outcome: LpOutcome
    bound: Fraction | None  # None means infeasible

    @property
    def bound_text(self) -> str:
        return "infeasible" if self.bound is None else str(self.bound)


def case_program(spec: CaseSpec) -> LinearProgram:
    """The exact program attached to one cell of the case analysis."""
    s, scenario = spec.s, spec.scenario
    lp = build_base(s)
    if scenario is Scenario.BASE:
        return lp
    if scenario is Scenario.PAIR_CAP:
        lp.constraints.append(covered_pair_cap_constraint(s))
        return lp
    covered = scenario.covered_roles
    if scenario in (Scenario.C0, Scenario.C1, Scenario.C2):
        targets = doubled_trace_targets(s, "a", covered)
        lp = raise_trace_floors(lp, targets)
    if scenario is Scenario.C1:
        # mirrors the published tally of extra constraints: 4+3 and 8+3
        targets = doubled_trace_targets(s, "a", covered)
        assert len(targets) == {4: 4, 5: 8}[s]
        rows = incidence_count_constraints(s, "b")
        assert len(rows) == 3
        lp.constraints.extend(rows)
    if scenario in (Scenario.C2, Scenario.C3PLUS):
        lp.constraints.append(frequency_cap_constraint(s, covered))
    return lp


def solve_case(spec: CaseSpec) -> CaseResult:
    """Solve one cell and return its certified outcome."""
    outcome = solve(case_program(spec))
    if isinstance(outcome, Optimal):
        return CaseResult(spec, outcome, outcome.value)
    if isinstance(outcome, Infeasible):
        return CaseResult(spec, outcome, None)
    raise RuntimeError(f"case {spec} cannot be unbounded")  # objective is a sum of floored vars


GRID = (Scenario.C0, Scenario.C1, Scenario.C2, Scenario.C3PLUS)


def bounds_table() -> tuple[CaseResult, ...]:
    """All eight (s, |C|) cells in fixed grid order: s = 4 then 5, |C| = 0,1,2,3+."""
    return tuple(solve_case(CaseSpec(s, sc)) for s in (4, 5) for sc in GRID)


def min_objective(s: int, objective: Mapping[str, Fraction]) -> LpOutcome:
    """Solve the base program under a custom objective (e.g. one trace count)."""
    lp = build_base(s)
    lp.objective = {v: Fraction(c) for v, c in objective.items()}
    return solve(lp)


# ---------------------------------------------------------------------------
# table serialization
# ---------------------------------------------------------------------------

COLUMN_KEYS = ("0", "1", "2", "3+")


def table_to_csv(results: Iterable[CaseResult]) -> str:
    cells: dict[tuple[int, Scenario], CaseResult] = {
        (r.spec.s, r.spec.scenario): r for r in results
    }
    lines = ["s," + ",".join(f"|C|={k}" for k in COLUMN_KEYS)]
    for s in (4, 5):
        row = [cells[(s, sc)].bound_text for sc in GRID]
        lines.append(f"{s}," + ",".join(row))
    return "\n".join(lines) + "\n"


def _rat_map(m: Mapping, keyfmt=str) -> dict[str, str]:
    return {keyfmt(k): str(v) for k, v in sorted(m.items())}


def table_to_json(results: Iterable[CaseResult], certificates: bool = False) -> dict:
    cells = []
    for r in results:
        cell: dict = {
            "s": r.spec.s,
            "c": COLUMN_KEYS[GRID.index(r.spec.scenario)],
            "status": "infeasible" if r.bound is None else "optimal",
            "bound": r.bound_text,
        }
        if certificates:
            if isinstance(r.outcome, Optimal):
                cell["certificate"] = {
                    "assignment": _rat_map(r.outcome.assignment),
                    "dual": _rat_map(r.outcome.dual),
                }
            else:
                cell["certificate"] = {"farkas": _rat_map(r.outcome.farkas)}
        cells.append(cell)
    return {"schema": 1, "cells": cells}


def recheck(result: CaseResult) -> bool:
    """Re-verify a case result's certificate against its reconstructed program."""
    lp = case_program(result.spec)
    if isinstance(result.outcome, Optimal):
        return result.bound == result.outcome.value and verify_optimality(
            lp, result.outcome.assignment, result.outcome.dual
        )
    if isinstance(result.outcome, Infeasible):
        return result.bound is None and verify_infeasibility(lp, result.outcome.farkas)
    return False
