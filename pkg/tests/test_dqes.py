from fractions import Fraction
from math import comb

import numpy as np
import pytest

from tspvqe import (
    IsingPolynomial,
    ValidationError,
    best_k,
    compute_landscape,
    encode_efficient,
    ground_states,
    run_experiment,
    to_ising,
)
from tspvqe.dqes import landscape_csv_rows


def _trivial_ising(n):
    return IsingPolynomial(
        n=n,
        constant=Fraction(0),
        fields={i: Fraction(i + 1) for i in range(n)},
        couplings={},
        variable_order=tuple((1, t) for t in range(1, n + 1)),
        layout="full",
        node_count=n,
    )


@pytest.fixture(scope="module")
def landscape_ising(landscape_instance):
    return to_ising(encode_efficient(landscape_instance))


@pytest.fixture(scope="module")
def landscape_records(landscape_ising):
    return compute_landscape(landscape_ising)


class TestLandscape:
    @pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 10, 12])
    def test_record_count_formula(self, n):
        records = compute_landscape(_trivial_ising(n))
        assert len(records) == comb(n, 3) * 72

    def test_record_count_for_nine_qubits(self, landscape_records):
        assert len(landscape_records) == 6048

    def test_minimum_equals_ground_energy(self, landscape_ising, landscape_records):
        energy, bitstrings = ground_states(landscape_ising)
        minimum = min(r.energy for r in landscape_records)
        assert minimum == pytest.approx(float(energy), abs=1e-9)
        minima = [r for r in landscape_records
                  if abs(r.energy - float(energy)) <= 1e-9]
        # exactly the two |111> embeddings on the ground bitstrings' set bits
        assert len(minima) == 2
        expected_positions = {
            tuple(k for k, b in enumerate(bits) if b == "1") for bits in bitstrings
        }
        assert {r.positions for r in minima} == expected_positions
        assert all(r.basis == 0 and r.element == 7 for r in minima)
        assert all(r.rank == 0 for r in minima)

    def test_minimum_not_above_low_weight_basis_states(self, landscape_ising,
                                                       landscape_records):
        energies = landscape_ising.energy_float_vector()
        minimum = min(r.energy for r in landscape_records)
        for z in range(512):
            if bin(z).count("1") <= 3:
                assert minimum <= energies[z] + 1e-9

    def test_deterministic_order_and_ranks(self, landscape_ising, landscape_records):
        again = compute_landscape(landscape_ising)
        assert [(r.positions, r.basis, r.element) for r in again] == [
            (r.positions, r.basis, r.element) for r in landscape_records
        ]
        assert [r.energy for r in again] == [r.energy for r in landscape_records]
        ranks = {r.rank for r in landscape_records}
        assert min(ranks) == 0
        assert max(ranks) == len(set(np.round([r.energy for r in landscape_records], 9))) - 1

    def test_too_few_qubits_rejected(self):
        with pytest.raises(ValidationError):
            compute_landscape(_trivial_ising(2))

    def test_energies_match_direct_expectation(self, landscape_ising,
                                               landscape_records):
        # differential check against the state-vector expectation route
        from tspvqe import build_mubs_3q, embed_state
        from tspvqe.quantum import expectation

        mubs = build_mubs_3q()
        rng = np.random.default_rng(41)
        for i in rng.choice(len(landscape_records), size=60, replace=False):
            record = landscape_records[i]
            state = embed_state(
                mubs.bases[record.basis][record.element], record.positions, 9
            )
            assert record.energy == pytest.approx(
                expectation(landscape_ising, state), rel=1e-12, abs=1e-12
            )


class TestBestK:
    def test_best_ten_sorted(self, landscape_records):
        top = best_k(landscape_records, 10)
        energies = [r.energy for r in top]
        assert energies == sorted(energies)
        assert len(top) == 10

    def test_best_one_is_ground(self, landscape_ising, landscape_records):
        energy, _ = ground_states(landscape_ising)
        assert best_k(landscape_records, 1)[0].energy == pytest.approx(float(energy))

    def test_k_equal_to_record_count(self, landscape_records):
        assert len(best_k(landscape_records, len(landscape_records))) == 6048

    def test_stable_under_reruns(self, landscape_ising, landscape_records):
        again = best_k(compute_landscape(landscape_ising), 25)
        assert [(r.positions, r.basis, r.element) for r in again] == [
            (r.positions, r.basis, r.element) for r in best_k(landscape_records, 25)
        ]

    def test_bounds(self, landscape_records):
        with pytest.raises(ValidationError):
            best_k(landscape_records, 0)
        with pytest.raises(ValidationError):
            best_k(landscape_records, 6049)


class TestCsv:
    def test_header_and_row_shape(self, landscape_records):
        rows = list(landscape_csv_rows(landscape_records[:3]))
        assert rows[0] == "index,positions,basis,element,energy"
        assert rows[1].startswith("0,0-1-2,0,0,")


class TestExperiments:
    def test_zeros_mode(self, landscape_instance):
        report = run_experiment(landscape_instance, "zeros", seed=0)
        assert report.n_runs == 1
        assert report.converged_count == 1
        assert report.oracle_cost == 13
        assert report.ground_energy == pytest.approx(13.0)
        decoded = report.decoded_tours[0]
        assert decoded["valid"] is True
        assert decoded["cost"] == 13

    def test_best_mubs_small_batch(self, landscape_instance):
        # k=2 picks the two exact ground states; both converge instantly
        report = run_experiment(landscape_instance, "best_mubs", k=2, seed=0)
        assert report.converged_count == 2
        assert report.mean_iterations_to_convergence == 0.0
        assert {tuple(d["order"]) for d in report.decoded_tours} == {
            (1, 2, 4, 3), (1, 3, 4, 2),
        }

    def test_random_mode_runs(self, landscape_instance):
        report = run_experiment(landscape_instance, "random", k=2, seed=0)
        assert report.n_runs == 2
        labels = [t.initial_label for t in report.traces]
        assert all(lbl.startswith("random(") for lbl in labels)
        assert len(set(labels)) == 2

    def test_determinism(self, landscape_instance):
        a = run_experiment(landscape_instance, "best_mubs", k=3, seed=4)
        b = run_experiment(landscape_instance, "best_mubs", k=3, seed=4)
        assert a.to_dict() == b.to_dict()

    def test_worker_pool_matches_serial(self, landscape_instance):
        serial = run_experiment(landscape_instance, "best_mubs", k=4, seed=1)
        pooled = run_experiment(landscape_instance, "best_mubs", k=4, seed=1,
                                threads=2)
        a, b = serial.to_dict(), pooled.to_dict()
        a.pop("config")
        b.pop("config")  # the config echo records the thread count itself
        assert a == b

    def test_unknown_mode(self, landscape_instance):
        with pytest.raises(ValidationError):
            run_experiment(landscape_instance, "everything")

    def test_instance_without_valid_tour(self):
        # the Hamiltonian minimum is still defined; the oracle reports no tour
        from tspvqe import ProblemInstance
        from tspvqe.vqe import OptimizerConfig

        inst = ProblemInstance(4, False, "tsp",
                               ((1, 2, 1), (2, 3, 1), (3, 4, 1)), 5, 1)
        report = run_experiment(
            inst, "zeros", seed=0,
            optimizer=OptimizerConfig(method="rotation_descent", max_evals=300),
        )
        assert report.oracle_cost is None
        assert report.oracle_tours == ()
        assert report.to_dict()["oracle_cost"] is None
        assert report.decoded_tours[0]["valid"] in (True, False)
