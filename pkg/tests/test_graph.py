import random
from fractions import Fraction

import pytest

from tspvqe import (
    ParseError,
    ProblemInstance,
    ValidationError,
    is_complete,
    load_instance,
    save_instance,
)


def test_load_landscape_json(landscape_instance):
    inst = landscape_instance
    assert inst.node_count == 4
    assert not inst.directed
    assert inst.variant == "tsp"
    assert len(inst.edges) == 6
    assert inst.cost(2, 3) == 9
    assert inst.penalty_a == 11


def test_single_node_empty_edges():
    inst = load_instance('{"nodes": 1, "directed": false, "variant": "cycle",'
                         ' "edges": [], "penalty_a": 1, "penalty_b": 1}')
    assert inst.node_count == 1
    assert inst.edges == ()


def test_self_loop_rejected():
    with pytest.raises(ValidationError, match="self-loop"):
        ProblemInstance(2, False, "tsp", ((1, 1, 5),), 1, 1)


def test_duplicate_edge_rejected():
    # (2,1) canonicalizes onto (1,2)
    with pytest.raises(ValidationError, match="duplicate"):
        ProblemInstance(3, False, "tsp", ((1, 2, 5), (2, 1, 3)), 1, 1)


def test_negative_cost_rejected():
    with pytest.raises(ValidationError, match="negative"):
        ProblemInstance(2, False, "tsp", ((1, 2, -1),), 1, 1)


def test_bad_node_id_rejected():
    with pytest.raises(ValidationError, match="out of range"):
        ProblemInstance(3, False, "tsp", ((1, 4, 1),), 1, 1)


def test_nonpositive_penalty_rejected():
    with pytest.raises(ValidationError, match="penalty_a"):
        ProblemInstance(2, False, "tsp", ((1, 2, 1),), 0, 1)
    with pytest.raises(ValidationError, match="penalty_b"):
        ProblemInstance(2, False, "tsp", ((1, 2, 1),), 1, 0)


def test_parse_error_has_locus():
    with pytest.raises(ParseError, match="line 1"):
        load_instance("{not json")
    with pytest.raises(ParseError, match="missing key"):
        load_instance('{"nodes": 2}')


def test_undirected_edges_canonicalized():
    inst = ProblemInstance(3, False, "tsp", ((3, 1, 2), (2, 1, 1), (3, 2, 5)), 1, 1)
    assert inst.edges == ((1, 2, Fraction(1)), (1, 3, Fraction(2)), (2, 3, Fraction(5)))
    assert inst.has_edge(3, 1) and inst.cost(3, 1) == 2


def test_rational_costs():
    inst = load_instance('{"nodes": 2, "directed": false, "variant": "tsp",'
                         ' "edges": [[1, 2, "3/2"]], "penalty_a": 2.5, "penalty_b": 1}')
    assert inst.cost(1, 2) == Fraction(3, 2)
    assert inst.penalty_a == Fraction(5, 2)


def test_is_complete(complete4_instance, counterexample_instance):
    assert is_complete(complete4_instance)
    assert not is_complete(counterexample_instance)
    trivial = ProblemInstance(1, False, "cycle", (), 1, 1)
    assert is_complete(trivial)


def _random_instance(rng):
    n = rng.randint(1, 6)
    directed = rng.random() < 0.5
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)
             if (u != v if directed else u < v)]
    edges = tuple(
        (u, v, Fraction(rng.randint(0, 20), rng.randint(1, 4)))
        for u, v in pairs
        if rng.random() < 0.7
    )
    return ProblemInstance(n, directed, "tsp", edges,
                           Fraction(rng.randint(1, 30)), Fraction(1))


def test_save_load_round_trip():
    rng = random.Random(7)
    for _ in range(40):
        inst = _random_instance(rng)
        for fmt in ("json", "edge_list"):
            again = load_instance(save_instance(inst, fmt), format=fmt)
            assert again == inst


def test_is_complete_matches_count_formula():
    rng = random.Random(11)
    for _ in range(40):
        inst = _random_instance(rng)
        n = inst.node_count
        expected = n * (n - 1) if inst.directed else n * (n - 1) // 2
        assert is_complete(inst) == (len(inst.edges) == expected)


def test_edge_list_format(counterexample_instance):
    text = save_instance(counterexample_instance, "edge_list")
    assert text.splitlines()[0] == "4 undirected tsp 11 1"
    assert load_instance(text, format="edge_list") == counterexample_instance
