"""LP solver tests: trivial programs, certificates, and oracle equivalence.

The randomized suites compare simplex output against `brute_force_optimum`
(exhaustive basic-point enumeration over Gaussian-solved row subsets), an
algorithm with no code in common with the simplex path.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from oracle_models import random_box_program

from ucfreq.ratlp import (
    Infeasible,
    LinearConstraint,
    LinearProgram,
    Optimal,
    Unbounded,
    brute_force_optimum,
    check_feasible,
    format_certificate,
    format_lp,
    materialized_rows,
    solve,
    verify_infeasibility,
    verify_optimality,
    verify_ray,
)

F = Fraction


def lp_min_x_ge_1() -> LinearProgram:
    lp = LinearProgram(("x",), "min", {"x": F(1)})
    lp.add({"x": 1}, ">=", 1)
    return lp


def lp_conflicting() -> LinearProgram:
    lp = LinearProgram(("x",), "min", {"x": F(1)})
    lp.add({"x": 1}, ">=", 2)
    lp.add({"x": 1}, "<=", 1)
    return lp


class TestTrivialPrograms:
    def test_min_with_single_lower_bound(self):
        out = solve(lp_min_x_ge_1())
        assert isinstance(out, Optimal)
        assert out.value == 1
        assert out.assignment == {"x": F(1)}
        assert out.dual == {0: F(1)}

    def test_conflicting_bounds_infeasible(self):
        out = solve(lp_conflicting())
        assert isinstance(out, Infeasible)
        assert verify_infeasibility(lp_conflicting(), out.farkas)

    def test_max_flips_conventions(self):
        lp = LinearProgram(("x",), "max", {"x": F(1)})
        lp.add({"x": 1}, "<=", F(7, 2))
        out = solve(lp)
        assert isinstance(out, Optimal)
        assert out.value == F(7, 2)
        assert verify_optimality(lp, out.assignment, out.dual)

    def test_unbounded_gives_verifying_ray(self):
        lp = LinearProgram(("x",), "min", {"x": F(-1)})
        lp.add({"x": 1}, ">=", 0)
        out = solve(lp)
        assert isinstance(out, Unbounded)
        assert verify_ray(lp, out.ray)

    def test_equality_row(self):
        lp = LinearProgram(("x", "y"), "min", {"x": F(1), "y": F(2)})
        lp.add({"x": 1, "y": 1}, "==", 4)
        lp.lower = {"x": F(0), "y": F(0)}
        out = solve(lp)
        assert isinstance(out, Optimal)
        assert out.value == 4
        assert out.assignment == {"x": F(4), "y": F(0)}

    def test_free_variable_negative_optimum(self):
        lp = LinearProgram(("x",), "min", {"x": F(1)})
        lp.add({"x": 1}, ">=", -5)
        out = solve(lp)
        assert isinstance(out, Optimal)
        assert out.value == -5

    def test_declared_bounds_materialize_as_rows(self):
        lp = LinearProgram(("x",), "min", {"x": F(1)}, lower={"x": F(2)}, upper={"x": F(9)})
        assert len(materialized_rows(lp)) == 2
        out = solve(lp)
        assert out.value == 2
        assert out.dual == {0: F(1)}


class TestCheckFeasible:
    def test_holds(self):
        assert check_feasible(lp_min_x_ge_1(), {"x": F(1)})

    def test_violated(self):
        assert not check_feasible(lp_min_x_ge_1(), {"x": F(1, 2)})

    def test_requires_total_assignment(self):
        with pytest.raises(ValueError):
            check_feasible(lp_min_x_ge_1(), {})
        with pytest.raises(ValueError):
            check_feasible(lp_min_x_ge_1(), {"x": F(1), "y": F(0)})


class TestVerifyOptimality:
    def test_unit_weight_certifies(self):
        assert verify_optimality(lp_min_x_ge_1(), {"x": F(1)}, {0: F(1)})

    def test_zero_weight_fails(self):
        assert not verify_optimality(lp_min_x_ge_1(), {"x": F(1)}, {0: F(0)})

    def test_wrong_sign_fails(self):
        lp = LinearProgram(("x",), "min", {"x": F(1)})
        lp.add({"x": 1}, "<=", 5)
        lp.add({"x": 1}, ">=", 1)
        assert not verify_optimality(lp, {"x": F(1)}, {0: F(1), 1: F(0)})

    def test_infeasible_primal_fails(self):
        assert not verify_optimality(lp_min_x_ge_1(), {"x": F(0)}, {0: F(1)})

    def test_bad_key_raises(self):
        with pytest.raises(ValueError):
            verify_optimality(lp_min_x_ge_1(), {"x": F(1)}, {5: F(1)})


class TestVerifyInfeasibility:
    def test_conflicting_pair(self):
        assert verify_infeasibility(lp_conflicting(), {0: F(1), 1: F(1)})

    def test_feasible_program_never_certifies(self):
        lp = LinearProgram(("x",), "min", {"x": F(1)})
        lp.add({"x": 1}, ">=", 0)
        for w in (F(0), F(1), F(3, 2)):
            assert not verify_infeasibility(lp, {0: w})

    def test_negative_weight_on_inequality_rejected(self):
        assert not verify_infeasibility(lp_conflicting(), {0: F(-1), 1: F(1)})

    def test_solver_farkas_verifies(self):
        out = solve(lp_conflicting())
        assert isinstance(out, Infeasible)
        assert verify_infeasibility(lp_conflicting(), out.farkas)


class TestValidation:
    def test_undeclared_objective_variable(self):
        lp = LinearProgram(("x",), "min", {"y": F(1)})
        with pytest.raises(ValueError, match="undeclared"):
            solve(lp)

    def test_undeclared_constraint_variable(self):
        lp = LinearProgram(("x",), "min", {"x": F(1)})
        lp.add({"x": 1}, ">=", 0)
        lp.constraints.append(LinearConstraint({"z": F(1)}, ">=", F(0)))
        with pytest.raises(ValueError, match="undeclared"):
            solve(lp)

    def test_empty_constraint_rejected(self):
        with pytest.raises(ValueError, match="nonzero"):
            LinearConstraint({"x": F(0)}, ">=", F(0))

    def test_bad_relation_rejected(self):
        with pytest.raises(ValueError):
            LinearConstraint({"x": F(1)}, "<", F(0))


# ---------------------------------------------------------------------------
# randomized oracle equivalence
# ---------------------------------------------------------------------------

def assert_matches_oracle(lp: LinearProgram) -> None:
    out = solve(lp)
    expect = brute_force_optimum(lp)
    if isinstance(out, Optimal):
        assert expect == out.value
        assert check_feasible(lp, out.assignment)
        assert verify_optimality(lp, out.assignment, out.dual)
    elif isinstance(out, Infeasible):
        assert expect is None
        assert verify_infeasibility(lp, out.farkas)
    else:
        pytest.fail("box program cannot be unbounded")


class TestOracleEquivalence:
    def test_seeded_sample(self):
        rng = random.Random(20240817)
        for _ in range(120):
            assert_matches_oracle(random_box_program(rng))

    def test_row_permutation_invariance(self):
        rng = random.Random(907)
        for _ in range(40):
            lp = random_box_program(rng)
            first = solve(lp)
            shuffled = LinearProgram(
                lp.variables, lp.sense, dict(lp.objective),
                lower=dict(lp.lower), upper=dict(lp.upper),
            )
            order = list(lp.constraints)
            rng.shuffle(order)
            shuffled.constraints = order
            second = solve(shuffled)
            assert type(first) is type(second)
            if isinstance(first, Optimal):
                assert first.value == second.value

    def test_scaling_invariance(self):
        rng = random.Random(31337)
        for _ in range(40):
            lp = random_box_program(rng)
            scaled = LinearProgram(
                lp.variables, lp.sense, dict(lp.objective),
                lower=dict(lp.lower), upper=dict(lp.upper),
            )
            for con in lp.constraints:
                k = F(rng.randint(1, 5), rng.randint(1, 5))
                scaled.add({v: k * c for v, c in con.coeffs.items()}, con.relation, k * con.rhs)
            first, second = solve(lp), solve(scaled)
            assert type(first) is type(second)
            if isinstance(first, Optimal):
                assert first.value == second.value

    def test_resolve_is_deterministic(self):
        rng = random.Random(5)
        for _ in range(20):
            lp = random_box_program(rng)
            assert solve(lp) == solve(lp)


class TestDegenerate:
    def test_many_tight_rows(self):
        lp = LinearProgram(("x", "y"), "min", {"x": F(1), "y": F(1)})
        lp.add({"x": 1}, ">=", 1)
        lp.add({"y": 1}, ">=", 1)
        lp.add({"x": 1, "y": 1}, ">=", 2)
        lp.add({"x": 1, "y": 2}, ">=", 3)
        out = solve(lp)
        assert isinstance(out, Optimal)
        assert out.value == 2
        assert verify_optimality(lp, out.assignment, out.dual)

    def test_redundant_equality_rows(self):
        lp = LinearProgram(("x", "y"), "min", {"x": F(1)})
        lp.add({"x": 1, "y": 1}, "==", 2)
        lp.add({"x": 2, "y": 2}, "==", 4)
        lp.lower = {"x": F(0), "y": F(0)}
        out = solve(lp)
        assert isinstance(out, Optimal)
        assert out.value == 0


class TestTextFormats:
    def test_format_lp(self):
        lp = LinearProgram(("x", "y"), "min", {"x": F(1), "y": F(-3, 2)})
        lp.add({"x": 2, "y": -1}, "<=", F(5, 2), label="roof")
        lp.add({"x": 1}, ">=", 1)
        lp.upper = {"y": F(4)}
        text = format_lp(lp)
        assert text == (
            "min: x - 3/2 y\n"
            "roof: 2 x - y <= 5/2\n"
            "r1: x >= 1\n"
            "ub(y): y <= 4\n"
        )

    def test_format_certificate_optimal(self):
        lp = lp_min_x_ge_1()
        out = solve(lp)
        text = format_certificate(lp, out)
        assert text == "status: optimal\nvalue: 1\nx = 1\ndual r0 = 1\n"

    def test_format_certificate_infeasible(self):
        lp = lp_conflicting()
        out = solve(lp)
        text = format_certificate(lp, out)
        assert text.startswith("status: infeasible\n")
        assert "farkas" in text
