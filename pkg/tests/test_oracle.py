import random
from fractions import Fraction

import pytest

from tspvqe import (
    ProblemInstance,
    SizeCapError,
    solve_exact_tsp,
    validate_bitstring,
)
from tspvqe.oracle import Tour, ViolationReport


def table_bits(order, n, extra=()):
    """Full-layout bits visiting order[t-1] at step t, plus extra (v, t) cells."""
    bits = [0] * (n * n)
    for t, v in enumerate(order, start=1):
        bits[(v - 1) * n + (t - 1)] = 1
    for v, t in extra:
        bits[(v - 1) * n + (t - 1)] = 1
    return bits


class TestSolveExact:
    def test_landscape_instance(self, landscape_instance):
        cost, tours = solve_exact_tsp(landscape_instance)
        assert cost == 13
        assert [t.order for t in tours] == [(1, 2, 4, 3), (1, 3, 4, 2)]
        assert all(t.valid and t.cost == 13 for t in tours)

    def test_counterexample_instance(self, counterexample_instance):
        cost, tours = solve_exact_tsp(counterexample_instance)
        assert cost == 22
        assert [t.order for t in tours] == [(1, 2, 4, 3), (1, 3, 4, 2)]

    def test_no_cycle_exists(self):
        # a bare path has no Hamiltonian cycle
        inst = ProblemInstance(4, False, "tsp",
                               ((1, 2, 1), (2, 3, 1), (3, 4, 1)), 5, 1)
        cost, tours = solve_exact_tsp(inst)
        assert cost is None
        assert tours == ()

    def test_trivial_sizes(self):
        one = ProblemInstance(1, False, "tsp", (), 1, 1)
        assert solve_exact_tsp(one)[0] == 0
        two = ProblemInstance(2, False, "tsp", ((1, 2, Fraction(3, 2)),), 1, 1)
        cost, tours = solve_exact_tsp(two)
        assert cost == 3  # edge traversed out and back
        assert tours[0].order == (1, 2)

    def test_directed_asymmetry(self):
        # only one direction of the triangle exists
        inst = ProblemInstance(3, True, "tsp",
                               ((1, 2, 1), (2, 3, 1), (3, 1, 1)), 5, 1)
        cost, tours = solve_exact_tsp(inst)
        assert cost == 3
        assert [t.order for t in tours] == [(1, 2, 3)]

    def test_node_cap(self):
        inst = ProblemInstance(14, False, "tsp", ((1, 2, 1),), 1, 1)
        with pytest.raises(SizeCapError):
            solve_exact_tsp(inst)


class TestValidateBitstring:
    def test_valid_full_table(self, complete4_instance):
        # visiting order 3, 1, 4, 2 decodes to the rotated tour 1-4-2-3
        decoded = validate_bitstring(
            complete4_instance, "full", table_bits([3, 1, 4, 2], 4)
        )
        assert isinstance(decoded, Tour)
        assert decoded.order == (1, 4, 2, 3)
        assert decoded.cost == 11

    def test_double_occupancy_reported(self, complete4_instance):
        # adding a second visit for node 1 at step 1 breaks row 1 and column 1
        bits = table_bits([3, 1, 4, 2], 4, extra=[(1, 1)])
        report = validate_bitstring(complete4_instance, "full", bits)
        assert isinstance(report, ViolationReport)
        kinds = {(v.kind, v.node, v.step) for v in report.violations}
        assert ("row_not_one_hot", 1, None) in kinds
        assert ("column_not_one_hot", None, 1) in kinds

    def test_wrap_edge_trap_full_layout(self, complete4_instance):
        # same tour on an instance missing edge (2,3): the implicit final
        # step from node 2 back to node 3 is the only violation
        edges = tuple(e for e in complete4_instance.edges if (e[0], e[1]) != (2, 3))
        trap = ProblemInstance(4, False, "tsp", edges, 9, 1)
        report = validate_bitstring(trap, "full", table_bits([3, 1, 4, 2], 4))
        assert isinstance(report, ViolationReport)
        assert len(report.violations) == 1
        violation = report.violations[0]
        assert violation.kind == "missing_edge"
        assert violation.edge == (2, 3)
        assert violation.step == 4

    def test_wrap_edge_trap_efficient_layout(self, counterexample_instance):
        # efficient bits for the order 1-2-3-4 look fine until the implied
        # wrap step 4 -> 1hits the missing edge (4, 1)
        bits = [0] * 9
        bits[0] = 1  # x_{2,2}
        bits[4] = 1  # x_{3,3}
        bits[8] = 1  # x_{4,4}
        report = validate_bitstring(counterexample_instance, "efficient", bits)
        assert isinstance(report, ViolationReport)
        assert len(report.violations) == 1
        assert report.violations[0].kind == "missing_edge"
        assert report.violations[0].edge == (4, 1)
        assert report.violations[0].step == 4

    def test_efficient_ground_bitstrings(self, landscape_instance):
        assert validate_bitstring(
            landscape_instance, "efficient", "100001010"
        ).order == (1, 2, 4, 3)
        assert validate_bitstring(
            landscape_instance, "efficient", "001100010"
        ).order == (1, 3, 4, 2)

    def test_empty_efficient_assignment(self, landscape_instance):
        report = validate_bitstring(landscape_instance, "efficient", "0" * 9)
        assert isinstance(report, ViolationReport)
        # rows 2..4 and columns 2..4 are all empty
        assert len(report.violations) == 6


class TestDegeneracy:
    def test_unique_optimum_returns_both_directions(self):
        rng = random.Random(37)
        for _ in range(15):
            n = rng.choice([4, 5])
            pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
            costs = rng.sample(range(1, 100), len(pairs))
            inst = ProblemInstance(
                n, False, "tsp",
                tuple((u, v, c) for (u, v), c in zip(pairs, costs)), 1, 1,
            )
            cost, tours = solve_exact_tsp(inst)
            orders = [t.order for t in tours]
            # undirected: each optimal cycle appears with its reversal
            assert len(orders) % 2 == 0
            for order in orders:
                assert (1,) + tuple(reversed(order[1:])) in orders
