"""Binary-penalty Hamiltonians for Hamiltonian-cycle/path and TSP instances.

The encoders produce quadratic pseudo-Boolean polynomials whose zero/minimum
structure encodes the problem:

* ``encode_cycle_hamiltonian`` -- one-hot row and column penalties plus
  missing-edge transition penalties (wrap step N -> 1 for cycles; for the
  path variant transitions run to N-1 with no wrap).
* ``encode_tsp_hamiltonian``   -- the cycle penalties plus cost-weighted
  transition terms over existing edges.
* ``encode_fixed_start``       -- additionally pins node 1 to step 1.
* ``encode_efficient``         -- eliminates the known row/column of the
  fixed-start form, leaving (N-1)^2 variables; node 1's outgoing and
  incoming steps become linear boundary terms on columns 2 and N.

All coefficients are exact rationals.  For undirected instances every stored
edge contributes both traversal orientations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import kernels, layouts, oracle
from .errors import SizeCapError, ValidationError
from .graph import ProblemInstance
from .rationals import rational_to_json

AUDIT_VARIABLE_CAP = 24


@dataclass(frozen=True)
class PseudoBooleanPolynomial:
    """constant + sum a_i x_i + sum q_ij x_i x_j over named binary variables."""

    layout: str
    node_count: int
    variable_order: tuple
    constant: Fraction
    linear: dict
    quadratic: dict
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {var: k for k, var in enumerate(self.variable_order)}
        for var in self.linear:
            if var not in index:
                raise ValidationError(f"linear term on unknown variable {var}")
        for pair in self.quadratic:
            a, b = pair
            if a == b:
                raise ValidationError(f"quadratic term on repeated variable {a}")
            if a not in index or b not in index:
                raise ValidationError(f"quadratic term on unknown variables {pair}")
        object.__setattr__(self, "_index", index)

    @property
    def n_vars(self) -> int:
        return len(self.variable_order)

    def index_of(self, var) -> int:
        return self._index[var]

    def evaluate(self, bits) -> Fraction:
        """Exact value at a 0/1 assignment given in variable order."""
        bits = layouts.coerce_bits(bits, self.n_vars)
        total = self.constant
        for var, coef in self.linear.items():
            if bits[self._index[var]]:
                total += coef
        for (a, b), coef in self.quadratic.items():
            if bits[self._index[a]] and bits[self._index[b]]:
                total += coef
        return total

    def evaluate_table(self, table) -> Fraction:
        """Exact value at an assignment given as a {(v, t): 0/1} mapping."""
        bits = [table[var] for var in self.variable_order]
        return self.evaluate(bits)

    def to_int_arrays(self):
        """(scale, const, lin_idx, lin_val, qi, qj, qval) with int64 values.

        Coefficients are multiplied by the common denominator ``scale`` so
        kernel arithmetic stays exact.
        """
        denoms = [self.constant.denominator]
        denoms += [c.denominator for c in self.linear.values()]
        denoms += [c.denominator for c in self.quadratic.values()]
        scale = lcm(*denoms) if denoms else 1
        lin_idx = np.array([self._index[v] for v in self.linear], dtype=np.int64)
        lin_val = np.array(
            [int(c * scale) for c in self.linear.values()], dtype=np.int64
        )
        qi = np.array([self._index[a] for a, _ in self.quadratic], dtype=np.int64)
        qj = np.array([self._index[b] for _, b in self.quadratic], dtype=np.int64)
        qval = np.array([int(c * scale) for c in self.quadratic.values()], dtype=np.int64)
        bound = abs(int(self.constant * scale)) + int(np.abs(lin_val).sum()) + int(
            np.abs(qval).sum()
        )
        if bound >= 1 << 62:
            raise ValidationError("polynomial coefficients overflow int64 kernels")
        return scale, int(self.constant * scale), lin_idx, lin_val, qi, qj, qval

    def to_json_dict(self) -> dict:
        return {
            "layout": self.layout,
            "constant": rational_to_json(self.constant),
            "linear": [
                [list(var), rational_to_json(coef)]
                for var, coef in sorted(self.linear.items(), key=lambda it: self._index[it[0]])
            ],
            "quadratic": [
                [list(a), list(b), rational_to_json(coef)]
                for (a, b), coef in sorted(
                    self.quadratic.items(),
                    key=lambda it: (self._index[it[0][0]], self._index[it[0][1]]),
                )
            ],
        }


class _PolyBuilder:
    def __init__(self, layout, node_count, variable_order):
        self.layout = layout
        self.node_count = node_count
        self.order = variable_order
        self.index = {var: k for k, var in enumerate(variable_order)}
        self.constant = Fraction(0)
        self.linear = {}
        self.quadratic = {}

    def add_constant(self, c):
        self.constant += c

    def add_linear(self, var, c):
        self.linear[var] = self.linear.get(var, Fraction(0)) + c

    def add_quadratic(self, a, b, c):
        if self.index[a] > self.index[b]:
            a, b = b, a
        self.quadratic[(a, b)] = self.quadratic.get((a, b), Fraction(0)) + c

    def build(self) -> PseudoBooleanPolynomial:
        return PseudoBooleanPolynomial(
            layout=self.layout,
            node_count=self.node_count,
            variable_order=self.order,
            constant=self.constant,
            linear={v: c for v, c in self.linear.items() if c != 0},
            quadratic={p: c for p, c in self.quadratic.items() if c != 0},
        )


def _add_one_hot_penalties(builder, instance):
    """A * [(1 - row sum)^2 + (1 - column sum)^2] for every node and step."""
    n = instance.node_count
    a = instance.penalty_a
    for v in range(1, n + 1):
        builder.add_constant(a)
        for t in range(1, n + 1):
            builder.add_linear((v, t), -a)
        for t1 in range(1, n + 1):
            for t2 in range(t1 + 1, n + 1):
                builder.add_quadratic((v, t1), (v, t2), 2 * a)
    for t in range(1, n + 1):
        builder.add_constant(a)
        for v in range(1, n + 1):
            builder.add_linear((v, t), -a)
        for v1 in range(1, n + 1):
            for v2 in range(v1 + 1, n + 1):
                builder.add_quadratic((v1, t), (v2, t), 2 * a)


def _transition_steps(instance):
    """Time steps contributing transition terms; cycles wrap step N to 1."""
    n = instance.node_count
    if instance.variant == "hamiltonian_path":
        return [(t, t + 1) for t in range(1, n)]
    return [(t, t % n + 1) for t in range(1, n + 1)]


def encode_cycle_hamiltonian(instance: ProblemInstance) -> PseudoBooleanPolynomial:
    """Penalty Hamiltonian whose zeros are exactly the valid cycles/paths."""
    n = instance.node_count
    builder = _PolyBuilder("full", n, layouts.full_variable_order(n))
    _add_one_hot_penalties(builder, instance)
    steps = _transition_steps(instance)
    for u, v in instance.missing_ordered_pairs():
        for t, t_next in steps:
            builder.add_quadratic((u, t), (v, t_next), instance.penalty_a)
    return builder.build()


def encode_tsp_hamiltonian(instance: ProblemInstance) -> PseudoBooleanPolynomial:
    """Cycle penalties plus cost-weighted transitions over existing edges."""
    if instance.variant != "tsp":
        raise ValidationError("encode_tsp_hamiltonian requires variant=tsp")
    builder = _PolyBuilder("full", instance.node_count,
                           layouts.full_variable_order(instance.node_count))
    _add_one_hot_penalties(builder, instance)
    steps = _transition_steps(instance)
    for u, v in instance.missing_ordered_pairs():
        for t, t_next in steps:
            builder.add_quadratic((u, t), (v, t_next), instance.penalty_a)
    for u, v, c in instance.ordered_edges():
        for t, t_next in steps:
            builder.add_quadratic((u, t), (v, t_next), instance.penalty_b * c)
    return builder.build()


def encode_fixed_start(instance: ProblemInstance) -> PseudoBooleanPolynomial:
    """Full Hamiltonian plus the start-at-node-1 term A*(1 - x_{1,1})^2."""
    if instance.variant == "tsp":
        base = encode_tsp_hamiltonian(instance)
    elif instance.variant == "hamiltonian_cycle":
        base = encode_cycle_hamiltonian(instance)
    else:
        raise ValidationError("encode_fixed_start requires variant tsp or hamiltonian_cycle")
    builder = _PolyBuilder("fixed_start_full", instance.node_count, base.variable_order)
    builder.add_constant(base.constant)
    for var, c in base.linear.items():
        builder.add_linear(var, c)
    for (a, b), c in base.quadratic.items():
        builder.add_quadratic(a, b, c)
    # (1 - x)^2 = 1 - x for binary x
    builder.add_constant(instance.penalty_a)
    builder.add_linear((1, 1), -instance.penalty_a)
    return builder.build()


def encode_efficient(instance: ProblemInstance) -> PseudoBooleanPolynomial:
    """(N-1)^2-variable Hamiltonian with node 1 fixed at step 1.

    Equivalent to ``encode_fixed_start`` with the known variables substituted
    out: row/column one-hot penalties now range over 2..N, internal
    transitions run on steps 2..N-1, and node 1's boundary steps 1 -> 2 and
    N -> 1 contribute linear terms on columns 2 and N (penalty A for missing
    edges, B*c for existing ones).  The substituted constant vanishes.
    """
    if instance.variant != "tsp":
        raise ValidationError("encode_efficient requires variant=tsp")
    n = instance.node_count
    if n < 2:
        raise ValidationError("encode_efficient requires at least 2 nodes")
    a = instance.penalty_a
    b = instance.penalty_b
    builder = _PolyBuilder("efficient", n, layouts.efficient_variable_order(n))
    for v in range(2, n + 1):
        builder.add_constant(a)
        for t in range(2, n + 1):
            builder.add_linear((v, t), -a)
        for t1 in range(2, n + 1):
            for t2 in range(t1 + 1, n + 1):
                builder.add_quadratic((v, t1), (v, t2), 2 * a)
    for t in range(2, n + 1):
        builder.add_constant(a)
        for v in range(2, n + 1):
            builder.add_linear((v, t), -a)
        for v1 in range(2, n + 1):
            for v2 in range(v1 + 1, n + 1):
                builder.add_quadratic((v1, t), (v2, t), 2 * a)
    for u, v in instance.missing_ordered_pairs():
        if u == 1:
            builder.add_linear((v, 2), a)
        elif v == 1:
            builder.add_linear((u, n), a)
        else:
            for t in range(2, n):
                builder.add_quadratic((u, t), (v, t + 1), a)
    for u, v, c in instance.ordered_edges():
        if u == 1:
            builder.add_linear((v, 2), b * c)
        elif v == 1:
            builder.add_linear((u, n), b * c)
        else:
            for t in range(2, n):
                builder.add_quadratic((u, t), (v, t + 1), b * c)
    return builder.build()


def suggest_penalties(instance: ProblemInstance, mode: str = "safe"):
    """Closed-form penalty coefficients (A, B) with B = 1.

    ``lucas`` gives A = max cost + 1; ``safe`` gives A = N * max cost + 1,
    which guarantees the exhaustive minimum is a valid tour on any graph.
    """
    max_cost = instance.max_cost()
    if mode == "lucas":
        return max_cost + 1, Fraction(1)
    if mode == "safe":
        return instance.node_count * max_cost + 1, Fraction(1)
    raise ValidationError(f"unknown penalty mode {mode!r}")


@dataclass
class AuditReport:
    """Result of exhaustively minimizing the full-layout Hamiltonian."""

    node_count: int
    n_variables: int
    penalty_a: Fraction
    penalty_b: Fraction
    minimum_energy: Fraction
    minimum_bitstring: str
    minimum_count: int
    minimum_is_valid_tour: bool
    minimum_tour: tuple | None
    minimum_violations: tuple
    best_valid_energy: Fraction | None
    best_valid_tours: tuple
    lucas_condition_satisfied: bool | None
    safe_condition_satisfied: bool | None
    minima_scanned: int = 0

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "n_variables": self.n_variables,
            "penalty_a": rational_to_json(self.penalty_a),
            "penalty_b": rational_to_json(self.penalty_b),
            "minimum_energy": rational_to_json(self.minimum_energy),
            "minimum_bitstring": self.minimum_bitstring,
            "minimum_count": self.minimum_count,
            "minimum_is_valid_tour": self.minimum_is_valid_tour,
            "minimum_tour": list(self.minimum_tour) if self.minimum_tour else None,
            "minimum_violations": [v.to_dict() for v in self.minimum_violations],
            "best_valid_energy": (
                rational_to_json(self.best_valid_energy)
                if self.best_valid_energy is not None
                else None
            ),
            "best_valid_tours": [list(t) for t in self.best_valid_tours],
            "lucas_condition_satisfied": self.lucas_condition_satisfied,
            "safe_condition_satisfied": self.safe_condition_satisfied,
            "minima_scanned": self.minima_scanned,
        }


def audit_penalties(instance: ProblemInstance, cap: int = AUDIT_VARIABLE_CAP,
                    max_minima_scan: int = 10000) -> AuditReport:
    """Brute-force the full-layout Hamiltonian and judge the penalty choice.

    Reports the global minimum, whether any minimizing assignment decodes to
    a valid tour, the best valid tour value, and whether the two closed-form
    penalty conditions hold.
    """
    if instance.variant == "hamiltonian_path":
        raise ValidationError("audit_penalties applies to cyclic variants only")
    n_vars = instance.node_count ** 2
    if n_vars > cap:
        raise SizeCapError(
            f"full layout needs {n_vars} variables, above the cap of {cap}"
        )
    poly = (
        encode_tsp_hamiltonian(instance)
        if instance.variant == "tsp"
        else encode_cycle_hamiltonian(instance)
    )
    scale, const, li, lv, qi, qj, qv = poly.to_int_arrays()
    energies = kernels.enumerate_bit_energies(poly.n_vars, const, li, lv, qi, qj, qv)
    emin = int(energies.min())
    argmins = np.flatnonzero(energies == emin)
    minimum_tour = None
    minimum_violations = ()
    scanned = 0
    for z in argmins[:max_minima_scan]:
        scanned += 1
        decoded = oracle.validate_bitstring(
            instance, "full", layouts.index_to_bits(int(z), poly.n_vars)
        )
        if isinstance(decoded, oracle.Tour) and decoded.valid:
            minimum_tour = decoded.order
            break
        if scanned == 1:
            minimum_violations = decoded.violations
    first_bits = layouts.index_to_bits(int(argmins[0]), poly.n_vars)
    optimal_cost, tours = oracle.solve_exact_tsp(instance)
    if optimal_cost is None:
        best_valid = None
    elif instance.variant == "tsp":
        best_valid = instance.penalty_b * optimal_cost
    else:
        best_valid = Fraction(0)
    try:
        max_cost = instance.max_cost()
        lucas_ok = 0 < instance.penalty_b * max_cost < instance.penalty_a
        safe_ok = (
            0 < instance.node_count * instance.penalty_b * max_cost < instance.penalty_a
        )
    except ValidationError:
        lucas_ok = safe_ok = None
    return AuditReport(
        node_count=instance.node_count,
        n_variables=poly.n_vars,
        penalty_a=instance.penalty_a,
        penalty_b=instance.penalty_b,
        minimum_energy=Fraction(emin, scale),
        minimum_bitstring=layouts.bits_to_string(first_bits),
        minimum_count=int(len(argmins)),
        minimum_is_valid_tour=minimum_tour is not None,
        minimum_tour=minimum_tour,
        minimum_violations=(() if minimum_tour is not None else minimum_violations),
        best_valid_energy=best_valid,
        best_valid_tours=tuple(t.order for t in tours),
        lucas_condition_satisfied=lucas_ok,
        safe_condition_satisfied=safe_ok,
        minima_scanned=scanned,
    )
