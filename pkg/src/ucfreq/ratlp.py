"""Exact rational linear programming with machine-checkable certificates.

Everything is `fractions.Fraction` arithmetic: solving, certificate
checking, and re-solving after row permutations give identical optimal
values, so half-integer optima like 141/2 are exact, not approximate.

The solver is a two-phase primal simplex on a dense tableau with Bland's
anti-cycling pivot rule.  Free variables are split internally; declared
per-variable bounds are materialized as ordinary rows, appended after the
declared constraints (for each variable in declaration order: lower bound
row, then upper bound row).  `materialized_rows` exposes that row list;
certificate maps are keyed by indices into it.

Certificate conventions
-----------------------
For ``Optimal(value, assignment, dual)`` of a *minimization* program, the
dual weights y satisfy

* y_i >= 0 on ``>=`` rows, y_i <= 0 on ``<=`` rows, free on ``==`` rows,
* sum_i y_i * a_i == c  (componentwise over the variables), and
* sum_i y_i * b_i == value == c . x*,

which by weak duality proves x* optimal.  For maximization the row-sign
conventions flip (y_i >= 0 on ``<=`` rows), everything else is unchanged.

For ``Infeasible(farkas)``, orient every inequality as ``<=`` (negating
``>=`` rows); the weights are >= 0 on inequality rows, free on equality
rows, combine the left-hand sides to zero, and combine the right-hand
sides to a negative number: 0 <= negative, a contradiction.

`verify_optimality` and `verify_infeasibility` check exactly these
conditions and are independent of the solver internals; `solve` re-checks
every certificate it emits and raises `CertificateError` if its own output
fails (which would be a bug, never a property of the input).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

Rat = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

RELATIONS = ("<=", ">=", "==")


class CertificateError(RuntimeError):
    """A solver-produced certificate failed re-verification (internal bug)."""


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class LinearConstraint:
    """A row: sum of coeffs[v] * v, related to rhs by <=, >= or ==."""

    coeffs: dict[str, Fraction]
    relation: str
    rhs: Fraction
    label: str = ""

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}, got {self.relation!r}")
        clean = {v: _rat(c) for v, c in self.coeffs.items() if c != 0}
        if not clean:
            raise ValueError("constraint needs at least one nonzero coefficient")
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "rhs", _rat(self.rhs))


@dataclass
class LinearProgram:
    """Constraint system over named variables with exact coefficients."""

    variables: tuple[str, ...]
    sense: str  # "min" or "max"
    objective: dict[str, Fraction] = field(default_factory=dict)
    constraints: list[LinearConstraint] = field(default_factory=list)
    lower: dict[str, Fraction] = field(default_factory=dict)
    upper: dict[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        self.objective = {v: _rat(c) for v, c in self.objective.items()}
        self.lower = {v: _rat(c) for v, c in self.lower.items()}
        self.upper = {v: _rat(c) for v, c in self.upper.items()}

    def validate(self) -> None:
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        declared = set(self.variables)
        for v in self.objective:
            if v not in declared:
                raise ValueError(f"objective references undeclared variable {v!r}")
        for con in self.constraints:
            for v in con.coeffs:
                if v not in declared:
                    raise ValueError(f"constraint references undeclared variable {v!r}")
        for v in list(self.lower) + list(self.upper):
            if v not in declared:
                raise ValueError(f"bound on undeclared variable {v!r}")

    def add(self, coeffs: Mapping[str, Fraction], relation: str, rhs, label: str = "") -> None:
        self.constraints.append(LinearConstraint(dict(coeffs), relation, rhs, label))


Row = tuple[dict[int, Fraction], str, Fraction]


def materialized_rows(lp: LinearProgram) -> list[Row]:
    """Constraints plus bound rows, with variables replaced by indices.

    Certificate maps (dual, farkas) are keyed by positions in this list:
    the declared constraints first, then for each variable in declaration
    order its lower-bound row and then its upper-bound row, when declared.
    """
    index = {name: j for j, name in enumerate(lp.variables)}
    rows: list[Row] = []
    for con in lp.constraints:
        rows.append(({index[v]: c for v, c in con.coeffs.items()}, con.relation, con.rhs))
    for j, name in enumerate(lp.variables):
        if name in lp.lower:
            rows.append(({j: ONE}, ">=", lp.lower[name]))
        if name in lp.upper:
            rows.append(({j: ONE}, "<=", lp.upper[name]))
    return rows


# ---------------------------------------------------------------------------
# outcomes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Optimal:
    value: Fraction
    assignment: dict[str, Fraction]
    dual: dict[int, Fraction]


@dataclass(frozen=True)
class Infeasible:
    farkas: dict[int, Fraction]


@dataclass(frozen=True)
class Unbounded:
    ray: dict[str, Fraction]


LpOutcome = Union[Optimal, Infeasible, Unbounded]


# ---------------------------------------------------------------------------
# feasibility / certificate checking (independent of the solver internals)
# ---------------------------------------------------------------------------

def _row_value(coeffs: dict[int, Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((c * x[j] for j, c in coeffs.items()), ZERO)


def _holds(lhs: Fraction, relation: str, rhs: Fraction) -> bool:
    if relation == "<=":
        return lhs <= rhs
    if relation == ">=":
        return lhs >= rhs
    return lhs == rhs


def check_feasible(lp: LinearProgram, assignment: Mapping[str, Fraction]) -> bool:
    """True iff every constraint and declared bound holds exactly.

    The assignment must be total over the declared variables.
    """
    lp.validate()
    missing = set(lp.variables) - set(assignment)
    extra = set(assignment) - set(lp.variables)
    if missing or extra:
        raise ValueError(f"assignment must cover exactly the variables (missing {sorted(missing)}, extra {sorted(extra)})")
    x = [_rat(assignment[name]) for name in lp.variables]
    return all(_holds(_row_value(coeffs, x), rel, rhs) for coeffs, rel, rhs in materialized_rows(lp))


def verify_optimality(
    lp: LinearProgram,
    primal: Mapping[str, Fraction],
    dual: Mapping[int, Fraction],
) -> bool:
    """Strong-duality check in exact arithmetic.

    True iff `primal` is feasible, `dual` satisfies the sign conventions and
    combines the rows exactly to the objective, and both objective values
    coincide.  A True result proves optimality of the primal point.
    """
    if not check_feasible(lp, primal):
        return False
    rows = materialized_rows(lp)
    if any(not isinstance(i, int) or not 0 <= i < len(rows) for i in dual):
        raise ValueError("dual keys must index the materialized rows")
    nvars = len(lp.variables)
    combined = [ZERO] * nvars
    dual_value = ZERO
    for i, (coeffs, rel, rhs) in enumerate(rows):
        y = _rat(dual.get(i, ZERO))
        if y == 0:
            continue
        geq_sign = 1 if lp.sense == "min" else -1
        if rel == ">=" and geq_sign * y < 0:
            return False
        if rel == "<=" and geq_sign * y > 0:
            return False
        for j, c in coeffs.items():
            combined[j] += y * c
        dual_value += y * rhs
    objective = [lp.objective.get(name, ZERO) for name in lp.variables]
    if combined != objective:
        return False
    primal_value = sum(
        (objective[j] * _rat(primal[name]) for j, name in enumerate(lp.variables)), ZERO
    )
    return primal_value == dual_value


def verify_infeasibility(lp: LinearProgram, farkas: Mapping[int, Fraction]) -> bool:
    """True iff the weights combine the rows into the contradiction 0 <= negative.

    Inequality rows are oriented as ``<=`` (a ``>=`` row enters negated);
    weights must be nonnegative on inequality rows and may have any sign on
    equality rows.
    """
    lp.validate()
    rows = materialized_rows(lp)
    if any(not isinstance(i, int) or not 0 <= i < len(rows) for i in farkas):
        raise ValueError("farkas keys must index the materialized rows")
    nvars = len(lp.variables)
    combined = [ZERO] * nvars
    total_rhs = ZERO
    for i, (coeffs, rel, rhs) in enumerate(rows):
        w = _rat(farkas.get(i, ZERO))
        if w == 0:
            continue
        if rel != "==" and w < 0:
            return False
        flip = -1 if rel == ">=" else 1
        for j, c in coeffs.items():
            combined[j] += w * flip * c
        total_rhs += w * flip * rhs
    return all(c == 0 for c in combined) and total_rhs < 0


def verify_ray(lp: LinearProgram, ray: Mapping[str, Fraction]) -> bool:
    """True iff `ray` is a feasible direction that improves the objective forever."""
    lp.validate()
    if set(ray) - set(lp.variables):
        raise ValueError("ray keys must be declared variables")
    d = [_rat(ray.get(name, ZERO)) for name in lp.variables]
    if all(v == 0 for v in d):
        return False
    for coeffs, rel, rhs in materialized_rows(lp):
        drift = _row_value(coeffs, d)
        if rel == "<=" and drift > 0:
            return False
        if rel == ">=" and drift < 0:
            return False
        if rel == "==" and drift != 0:
            return False
    gain = sum(
        (lp.objective.get(name, ZERO) * d[j] for j, name in enumerate(lp.variables)), ZERO
    )
    return gain < 0 if lp.sense == "min" else gain > 0


# ---------------------------------------------------------------------------
# the simplex solver
# ---------------------------------------------------------------------------

class _Tableau:
    """Dense equality-form tableau. Columns: variable splits u/v, slacks, artificials."""

    def __init__(self, lp: LinearProgram):
        rows = materialized_rows(lp)
        self.nvars = len(lp.variables)
        self.nrows = len(rows)
        self.minimize = lp.sense == "min"
        sign = ONE if self.minimize else -ONE
        self.cost_orig = [lp.objective.get(name, ZERO) for name in lp.variables]
        cost_internal = [sign * c for c in self.cost_orig]

        self.sigma: list[int] = []
        self.slack_col: list[int | None] = []
        self.art_col: list[int | None] = []
        self.relations = [rel for _, rel, _ in rows]

        ncols = 2 * self.nvars
        for coeffs, rel, rhs in rows:
            self.sigma.append(1 if rhs >= 0 else -1)
            if rel == "==":
                self.slack_col.append(None)
            else:
                self.slack_col.append(ncols)
                ncols += 1
        for i, (coeffs, rel, rhs) in enumerate(rows):
            slack_sign = 1 if rel == "<=" else -1
            identity = self.slack_col[i] is not None and self.sigma[i] * slack_sign == 1
            if identity:
                self.art_col.append(None)
            else:
                self.art_col.append(ncols)
                ncols += 1
        self.ncols = ncols

        self.A = [[ZERO] * ncols for _ in range(self.nrows)]
        self.b = [ZERO] * self.nrows
        self.basis = [0] * self.nrows
        for i, (coeffs, rel, rhs) in enumerate(rows):
            sg = self.sigma[i]
            for j, c in coeffs.items():
                self.A[i][j] = sg * c
                self.A[i][self.nvars + j] = -sg * c
            if self.slack_col[i] is not None:
                self.A[i][self.slack_col[i]] = sg * (ONE if rel == "<=" else -ONE)
            if self.art_col[i] is not None:
                self.A[i][self.art_col[i]] = ONE
                self.basis[i] = self.art_col[i]
            else:
                self.basis[i] = self.slack_col[i]
            self.b[i] = sg * rhs

        self.artificials = {c for c in self.art_col if c is not None}
        # internal (min-form) phase-2 costs per column
        self.cost2 = [ZERO] * ncols
        for j in range(self.nvars):
            self.cost2[j] = cost_internal[j]
            self.cost2[self.nvars + j] = -cost_internal[j]

    def price(self, cost: list[Fraction]) -> list[Fraction]:
        costrow = list(cost)
        for i in range(self.nrows):
            cb = cost[self.basis[i]]
            if cb != 0:
                row = self.A[i]
                for j in range(self.ncols):
                    if row[j] != 0:
                        costrow[j] -= cb * row[j]
        return costrow

    def objective_value(self, cost: list[Fraction]) -> Fraction:
        return sum((cost[self.basis[i]] * self.b[i] for i in range(self.nrows)), ZERO)

    def pivot(self, r: int, e: int, costrow: list[Fraction]) -> None:
        row = self.A[r]
        piv = row[e]
        if piv != 1:
            inv = ONE / piv
            self.A[r] = row = [v * inv for v in row]
            self.b[r] *= inv
        nz = [j for j, v in enumerate(row) if v != 0]
        br = self.b[r]
        for i in range(self.nrows):
            if i == r:
                continue
            f = self.A[i][e]
            if f != 0:
                target = self.A[i]
                for j in nz:
                    target[j] -= f * row[j]
                self.b[i] -= f * br
        f = costrow[e]
        if f != 0:
            for j in nz:
                costrow[j] -= f * row[j]
        self.basis[r] = e

    def run(self, costrow: list[Fraction], banned: frozenset[int]) -> int | None:
        """Bland pivoting to optimality; returns an entering column on unboundedness."""
        # Bland's rule terminates; the cap only turns a would-be bug into a
        # loud failure instead of a hang
        budget = 1000 * (self.nrows + self.ncols) + 10_000
        for _ in range(budget):
            enter = None
            for j in range(self.ncols):
                if j not in banned and costrow[j] < 0:
                    enter = j
                    break
            if enter is None:
                return None
            best = None
            for i in range(self.nrows):
                aij = self.A[i][enter]
                if aij > 0:
                    key = (self.b[i] / aij, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return enter
            self.pivot(best[1], enter, costrow)
        raise CertificateError("pivot budget exceeded; anti-cycling rule violated")

    def initial_identity_column(self, i: int) -> int:
        col = self.art_col[i]
        return col if col is not None else self.slack_col[i]


def solve(lp: LinearProgram) -> LpOutcome:
    """Exact optimum with certificate, Farkas infeasibility proof, or a ray.

    Deterministic for a fixed program (Bland's rule over a fixed column
    order).  Every certificate is re-verified before being returned.
    Under degeneracy the assignment is whichever optimal basic point
    Bland's ordering reaches first: the value is the contract, the
    particular optimal assignment is incidental.
    """
    lp.validate()
    t = _Tableau(lp)

    if t.artificials:
        cost1 = [ONE if j in t.artificials else ZERO for j in range(t.ncols)]
        costrow = t.price(cost1)
        enter = t.run(costrow, banned=frozenset())
        if enter is not None:
            raise CertificateError("phase 1 cannot be unbounded")
        if t.objective_value(cost1) > 0:
            farkas = _extract_farkas(lp, t, cost1, costrow)
            if not verify_infeasibility(lp, farkas):
                raise CertificateError("produced farkas certificate failed verification")
            return Infeasible(farkas)
        _drive_out_artificials(t)

    costrow = t.price(t.cost2)
    enter = t.run(costrow, banned=frozenset(t.artificials))
    if enter is not None:
        ray = _extract_ray(lp, t, enter)
        if not verify_ray(lp, ray):
            raise CertificateError("produced ray failed verification")
        return Unbounded(ray)

    assignment = _extract_assignment(lp, t)
    dual = _extract_dual(lp, t, costrow)
    internal = t.objective_value(t.cost2)
    value = internal if t.minimize else -internal
    if not verify_optimality(lp, assignment, dual):
        raise CertificateError("produced optimality certificate failed verification")
    return Optimal(value, assignment, dual)


def _drive_out_artificials(t: _Tableau) -> None:
    for i in range(t.nrows):
        if t.basis[i] in t.artificials:
            # at phase-1 optimum zero, so any nonzero real entry pivots at ratio 0
            row = t.A[i]
            enter = next(
                (j for j in range(t.ncols) if j not in t.artificials and row[j] != 0),
                None,
            )
            if enter is not None:
                dummy = [ZERO] * t.ncols
                t.pivot(i, enter, dummy)
            # else: redundant row; the artificial stays basic at value 0


def _extract_assignment(lp: LinearProgram, t: _Tableau) -> dict[str, Fraction]:
    value = {t.basis[i]: t.b[i] for i in range(t.nrows)}
    return {
        name: value.get(j, ZERO) - value.get(t.nvars + j, ZERO)
        for j, name in enumerate(lp.variables)
    }


def _restricted_duals(t: _Tableau, cost: list[Fraction], costrow: list[Fraction]) -> list[Fraction]:
    """Equality-form duals y_i = c[identity col of row i] - reduced cost of it."""
    out = []
    for i in range(t.nrows):
        col = t.initial_identity_column(i)
        out.append(cost[col] - costrow[col])
    return out


def _extract_dual(lp: LinearProgram, t: _Tableau, costrow: list[Fraction]) -> dict[int, Fraction]:
    y = _restricted_duals(t, t.cost2, costrow)
    dual = {}
    for i in range(t.nrows):
        z = t.sigma[i] * y[i]
        if not t.minimize:
            z = -z
        if z != 0:
            dual[i] = z
    return dual


def _extract_farkas(
    lp: LinearProgram, t: _Tableau, cost1: list[Fraction], costrow: list[Fraction]
) -> dict[int, Fraction]:
    y = _restricted_duals(t, cost1, costrow)
    farkas = {}
    for i in range(t.nrows):
        z = t.sigma[i] * y[i]
        w = z if t.relations[i] == ">=" else -z
        if w != 0:
            farkas[i] = w
    return farkas


def _extract_ray(lp: LinearProgram, t: _Tableau, enter: int) -> dict[str, Fraction]:
    delta = {enter: ONE}
    for i in range(t.nrows):
        step = t.A[i][enter]
        if step != 0:
            delta[t.basis[i]] = -step
    return {
        name: delta.get(j, ZERO) - delta.get(t.nvars + j, ZERO)
        for j, name in enumerate(lp.variables)
        if delta.get(j, ZERO) != delta.get(t.nvars + j, ZERO)
    }


# ---------------------------------------------------------------------------
# reference oracle
# ---------------------------------------------------------------------------

def _solve_square(rows: list[dict[int, Fraction]], rhs: list[Fraction], n: int) -> list[Fraction] | None:
    mat = [[rows[i].get(j, ZERO) for j in range(n)] + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return None
        mat[col], mat[piv] = mat[piv], mat[col]
        pv = mat[col][col]
        mat[col] = [v / pv for v in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return [mat[i][n] for i in range(n)]


def brute_force_optimum(lp: LinearProgram) -> Fraction | None:
    """Best objective value over all basic feasible points, or None if there are none.

    Independent reference oracle: intersect every size-n subset of rows as
    equalities (Gaussian elimination) and keep the feasible points.  Sound
    whenever the feasible region is a polytope (every nonempty bounded
    polyhedron attains its optimum at such a point), e.g. box-constrained
    programs.  Exponential; intended for small programs only.
    """
    lp.validate()
    rows = materialized_rows(lp)
    n = len(lp.variables)
    best: Fraction | None = None
    for subset in combinations(range(len(rows)), n):
        point = _solve_square(
            [rows[i][0] for i in subset], [rows[i][2] for i in subset], n
        )
        if point is None:
            continue
        if not all(_holds(_row_value(coeffs, point), rel, rhs) for coeffs, rel, rhs in rows):
            continue
        val = sum(
            (lp.objective.get(name, ZERO) * point[j] for j, name in enumerate(lp.variables)),
            ZERO,
        )
        if best is None or (val < best if lp.sense == "min" else val > best):
            best = val
    return best


# ---------------------------------------------------------------------------
# text serialization (audit / replay format)
# ---------------------------------------------------------------------------

def _format_terms(coeffs: Mapping[str, Fraction], order: Iterable[str]) -> str:
    parts: list[str] = []
    for name in order:
        c = coeffs.get(name, ZERO)
        if c == 0:
            continue
        mag = abs(c)
        body = name if mag == 1 else f"{mag} {name}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def row_label(lp: LinearProgram, i: int) -> str:
    """Stable human-readable name of materialized row i."""
    if i < len(lp.constraints):
        return lp.constraints[i].label or f"r{i}"
    k = len(lp.constraints)
    for name in lp.variables:
        if name in lp.lower:
            if k == i:
                return f"lb({name})"
            k += 1
        if name in lp.upper:
            if k == i:
                return f"ub({name})"
            k += 1
    raise IndexError(i)


def format_lp(lp: LinearProgram) -> str:
    """One line per constraint, exact rationals, deterministic order."""
    rel_text = {"<=": "<=", ">=": ">=", "==": "="}
    lines = [f"{lp.sense}: {_format_terms(lp.objective, lp.variables)}"]
    for i, con in enumerate(lp.constraints):
        lines.append(
            f"{row_label(lp, i)}: {_format_terms(con.coeffs, lp.variables)}"
            f" {rel_text[con.relation]} {con.rhs}"
        )
    for name in lp.variables:
        if name in lp.lower:
            lines.append(f"lb({name}): {name} >= {lp.lower[name]}")
        if name in lp.upper:
            lines.append(f"ub({name}): {name} <= {lp.upper[name]}")
    return "\n".join(lines) + "\n"


def format_certificate(lp: LinearProgram, outcome: LpOutcome) -> str:
    """Audit text for an outcome; pairs with `format_lp` for replay elsewhere."""
    lines: list[str] = []
    if isinstance(outcome, Optimal):
        lines.append("status: optimal")
        lines.append(f"value: {outcome.value}")
        for name in lp.variables:
            lines.append(f"{name} = {outcome.assignment[name]}")
        for i in sorted(outcome.dual):
            lines.append(f"dual {row_label(lp, i)} = {outcome.dual[i]}")
    elif isinstance(outcome, Infeasible):
        lines.append("status: infeasible")
        for i in sorted(outcome.farkas):
            lines.append(f"farkas {row_label(lp, i)} = {outcome.farkas[i]}")
    else:
        lines.append("status: unbounded")
        for name in lp.variables:
            if outcome.ray.get(name, ZERO) != 0:
                lines.append(f"ray {name} = {outcome.ray[name]}")
    return "\n".join(lines) + "\n"
