"""Regenerate src/tspvqe/data/mub_classes_3q.json.

Partitions the 63 non-identity 3-qubit Pauli strings into 9 maximal
commuting classes of 7 via GF(8) arithmetic in a trace-self-dual basis
(multiplication matrices are then symmetric, which makes every class
internally commuting under the symplectic form).  The common eigenbases of
these classes are the 9 mutually unbiased bases; basis 0 is the all-Z
(computational) class.

The output is committed as a versioned data file; this script only needs to
run again if the table format changes.
"""

import itertools
import json
import pathlib

MODULUS = 0b1011  # x^3 + x + 1


def gf_mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & 0b1000:
            a ^= MODULUS
    return r


def gf_trace(a):
    return (a ^ gf_mul(a, a) ^ gf_mul(gf_mul(a, a), gf_mul(a, a))) & 1


def self_dual_basis():
    for trip in itertools.permutations(range(1, 8), 3):
        if all(
            gf_trace(gf_mul(trip[i], trip[j])) == (1 if i == j else 0)
            for i in range(3)
            for j in range(3)
        ):
            return trip
    raise RuntimeError("no self-dual basis found")


def main():
    basis = self_dual_basis()

    def coords_to_elem(c):
        e = 0
        for i in range(3):
            if (c >> i) & 1:
                e ^= basis[i]
        return e

    def elem_to_coords(e):
        c = 0
        for i in range(3):
            if gf_trace(gf_mul(basis[i], e)):
                c |= 1 << i
        return c

    def pauli_string(a, b):
        # char k acts on qubit k; (x, z) bits select I/X/Z/Y
        return "".join("IXZY"[((a >> q) & 1) + 2 * ((b >> q) & 1)] for q in range(3))

    def symplectic(p, q):
        (a1, b1), (a2, b2) = p, q
        return (bin(a1 & b2).count("1") + bin(a2 & b1).count("1")) % 2

    classes = [[(0, b) for b in range(1, 8)]]
    for lam_code in range(8):
        lam = coords_to_elem(lam_code)
        classes.append(
            [(a, elem_to_coords(gf_mul(lam, coords_to_elem(a)))) for a in range(1, 8)]
        )

    seen = set()
    for cls in classes:
        assert len(cls) == 7
        for p, q in itertools.combinations(cls, 2):
            assert symplectic(p, q) == 0
        seen.update(cls)
    assert len(seen) == 63

    def generators(ci):
        if ci == 0:
            return [(0, 1), (0, 2), (0, 4)]
        return [p for p in classes[ci] if p[0] in (1, 2, 4)]

    doc = {
        "qubits": 3,
        "version": 1,
        "convention": "string char k acts on qubit k; qubit k is bit k of the basis index",
        "bases": [
            {
                "generators": [pauli_string(*g) for g in generators(ci)],
                "operators": [pauli_string(*p) for p in classes[ci]],
            }
            for ci in range(9)
        ],
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "src" / "tspvqe" / "data"
    out.mkdir(parents=True, exist_ok=True)
    path = out / "mub_classes_3q.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
