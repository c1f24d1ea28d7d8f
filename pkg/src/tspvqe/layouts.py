"""Variable layouts shared by the encoders, the oracle, and the CLI.

A table assignment x[v][t] says node v is visited at time step t.  Three
layouts map table cells to bit positions:

* ``full``             -- v in 1..N, t in 1..N; bit = (v-1)*N + (t-1).
  Step N+1 is identified with step 1 (cycle wrap), so the wrap column is
  never stored.
* ``fixed_start_full`` -- same variables as ``full``; the Hamiltonian adds
  a start-at-node-1 penalty term.
* ``efficient``        -- v in 2..N, t in 2..N; bit = (v-2)*(N-1) + (t-2).
  Row 1 and column 1 are implied: node 1 sits at step 1 and nowhere else.

Bit k of a basis-state index z is variable k of the layout order; textual
bitstrings are written with variable 0 first.
"""

from .errors import ValidationError

LAYOUTS = ("full", "fixed_start_full", "efficient")


def full_variable_order(n):
    return tuple((v, t) for v in range(1, n + 1) for t in range(1, n + 1))


def efficient_variable_order(n):
    return tuple((v, t) for v in range(2, n + 1) for t in range(2, n + 1))


def variable_order_for(layout, n):
    if layout in ("full", "fixed_start_full"):
        return full_variable_order(n)
    if layout == "efficient":
        return efficient_variable_order(n)
    raise ValidationError(f"unknown layout {layout!r}")


def variable_count(layout, n):
    return n * n if layout in ("full", "fixed_start_full") else (n - 1) * (n - 1)


def coerce_bits(bits, expected_length):
    """Accept a '0101' string or an int sequence; return a tuple of 0/1."""
    if isinstance(bits, str):
        if not all(ch in "01" for ch in bits):
            raise ValidationError(f"bitstring may contain only 0/1: {bits!r}")
        values = tuple(int(ch) for ch in bits)
    else:
        values = tuple(int(b) for b in bits)
        if not all(b in (0, 1) for b in values):
            raise ValidationError("bit values must be 0 or 1")
    if len(values) != expected_length:
        raise ValidationError(
            f"bitstring length {len(values)} does not match variable count {expected_length}"
        )
    return values


def bits_to_index(bits):
    """Integer whose bit k is variable k (variable 0 = least significant)."""
    z = 0
    for k, b in enumerate(bits):
        z |= b << k
    return z


def index_to_bits(z, length):
    return tuple((z >> k) & 1 for k in range(length))


def bits_to_string(bits):
    return "".join(str(b) for b in bits)


def bits_to_table(bits, layout, n):
    """Expand layout bits into the full table {(v, t): 0/1}, v,t in 1..N.

    Efficient layouts are completed with the implied row 1 / column 1
    (node 1 fixed at step 1).
    """
    bits = coerce_bits(bits, variable_count(layout, n))
    table = {}
    if layout in ("full", "fixed_start_full"):
        for k, (v, t) in enumerate(full_variable_order(n)):
            table[(v, t)] = bits[k]
    elif layout == "efficient":
        for t in range(1, n + 1):
            table[(1, t)] = 1 if t == 1 else 0
        for v in range(2, n + 1):
            table[(v, 1)] = 0
        for k, (v, t) in enumerate(efficient_variable_order(n)):
            table[(v, t)] = bits[k]
    else:
        raise ValidationError(f"unknown layout {layout!r}")
    return table
