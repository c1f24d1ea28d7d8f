"""Hot numeric kernels: exhaustive energy enumeration and ansatz application.

Every kernel has a numba ``@njit`` implementation and a pure-numpy fallback.
The numpy path is selected automatically when numba is unavailable, or
explicitly by setting the environment variable ``TSPVQE_NO_NUMBA=1``.
``benchmarks/bench_kernels.py`` compares the two paths.

Energies are computed in scaled int64 arithmetic (the caller supplies
coefficients multiplied by a common denominator), so results are exact.
"""

import os

import numpy as np

_CHUNK = 1 << 14

_force_numpy = os.environ.get("TSPVQE_NO_NUMBA", "") not in ("", "0")
try:
    if _force_numpy:
        raise ImportError("numpy path forced via TSPVQE_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


# -- numpy implementations --------------------------------------------------


def _bit_energies_numpy(n, const, lin_idx, lin_val, qi, qj, qval):
    out = np.empty(1 << n, dtype=np.int64)
    shifts = np.arange(n, dtype=np.int64)
    for lo in range(0, 1 << n, _CHUNK):
        hi = min(lo + _CHUNK, 1 << n)
        z = np.arange(lo, hi, dtype=np.int64)
        bits = (z[:, None] >> shifts) & 1
        e = np.full(hi - lo, const, dtype=np.int64)
        if len(lin_idx):
            e += bits[:, lin_idx] @ lin_val
        if len(qi):
            e += (bits[:, qi] & bits[:, qj]) @ qval
        out[lo:hi] = e
    return out


def _spin_energies_numpy(n, const, lin_idx, lin_val, qi, qj, qval):
    out = np.empty(1 << n, dtype=np.int64)
    shifts = np.arange(n, dtype=np.int64)
    for lo in range(0, 1 << n, _CHUNK):
        hi = min(lo + _CHUNK, 1 << n)
        z = np.arange(lo, hi, dtype=np.int64)
        s = 1 - 2 * ((z[:, None] >> shifts) & 1)
        e = np.full(hi - lo, const, dtype=np.int64)
        if len(lin_idx):
            e += s[:, lin_idx] @ lin_val
        if len(qi):
            e += (s[:, qi] * s[:, qj]) @ qval
        out[lo:hi] = e
    return out


def _spin_energies_at_numpy(z, n, const, lin_idx, lin_val, qi, qj, qval):
    z = np.asarray(z, dtype=np.int64)
    s = 1 - 2 * ((z[:, None] >> np.arange(n, dtype=np.int64)) & 1)
    e = np.full(len(z), const, dtype=np.int64)
    if len(lin_idx):
        e += s[:, lin_idx] @ lin_val
    if len(qi):
        e += (s[:, qi] * s[:, qj]) @ qval
    return e


def _apply_ry_numpy(amps, n, q, theta):
    a = amps.reshape(1 << (n - q - 1), 2, 1 << q)
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    out = np.empty_like(a)
    out[:, 0, :] = c * a[:, 0, :] - s * a[:, 1, :]
    out[:, 1, :] = s * a[:, 0, :] + c * a[:, 1, :]
    return out.reshape(-1)


def _apply_ansatz_numpy(psi0, n, layers, ring, params):
    amps = psi0.astype(np.complex128, copy=True)
    z = np.arange(1 << n)
    k = 0
    n_ent = n if ring else n - 1
    for _ in range(layers):
        for q in range(n):
            amps = _apply_ry_numpy(amps, n, q, params[k])
            k += 1
        for q in range(n):
            bit = (z >> q) & 1
            amps = amps * np.exp(1j * (params[k] / 2.0) * (2 * bit - 1))
            k += 1
        for e in range(n_ent):
            q1, q2 = e, (e + 1) % n
            par = ((z >> q1) ^ (z >> q2)) & 1
            amps = amps * np.exp(1j * (params[k] / 2.0) * (2 * par - 1))
            k += 1
    for q in range(n):
        amps = _apply_ry_numpy(amps, n, q, params[k])
        k += 1
    for q in range(n):
        bit = (z >> q) & 1
        amps = amps * np.exp(1j * (params[k] / 2.0) * (2 * bit - 1))
        k += 1
    return amps


# -- numba implementations ---------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _bit_energies_numba(n, const, lin_idx, lin_val, qi, qj, qval):
        out = np.empty(1 << n, dtype=np.int64)
        for z in range(1 << n):
            e = const
            for k in range(lin_idx.shape[0]):
                if (z >> lin_idx[k]) & 1:
                    e += lin_val[k]
            for k in range(qi.shape[0]):
                if ((z >> qi[k]) & 1) and ((z >> qj[k]) & 1):
                    e += qval[k]
            out[z] = e
        return out

    @njit(cache=True)
    def _spin_energies_numba(n, const, lin_idx, lin_val, qi, qj, qval):
        out = np.empty(1 << n, dtype=np.int64)
        for z in range(1 << n):
            e = const
            for k in range(lin_idx.shape[0]):
                e += lin_val[k] * (1 - 2 * ((z >> lin_idx[k]) & 1))
            for k in range(qi.shape[0]):
                si = 1 - 2 * ((z >> qi[k]) & 1)
                sj = 1 - 2 * ((z >> qj[k]) & 1)
                e += qval[k] * si * sj
            out[z] = e
        return out

    @njit(cache=True)
    def _spin_energies_at_numba(z, n, const, lin_idx, lin_val, qi, qj, qval):
        out = np.empty(z.shape[0], dtype=np.int64)
        for m in range(z.shape[0]):
            e = const
            for k in range(lin_idx.shape[0]):
                e += lin_val[k] * (1 - 2 * ((z[m] >> lin_idx[k]) & 1))
            for k in range(qi.shape[0]):
                si = 1 - 2 * ((z[m] >> qi[k]) & 1)
                sj = 1 - 2 * ((z[m] >> qj[k]) & 1)
                e += qval[k] * si * sj
            out[m] = e
        return out

    @njit(cache=True)
    def _ry_inplace(amps, q, theta):
        c = np.cos(theta / 2.0)
        s = np.sin(theta / 2.0)
        step = 1 << q
        for base in range(0, amps.shape[0], step << 1):
            for i in range(base, base + step):
                a0 = amps[i]
                a1 = amps[i + step]
                amps[i] = c * a0 - s * a1
                amps[i + step] = s * a0 + c * a1

    @njit(cache=True)
    def _apply_ansatz_numba(psi0, n, layers, ring, params):
        amps = psi0.astype(np.complex128)
        dim = amps.shape[0]
        n_ent = n if ring else n - 1
        k = 0
        for _ in range(layers):
            for q in range(n):
                _ry_inplace(amps, q, params[k])
                k += 1
            for q in range(n):
                ph0 = np.exp(-1j * params[k] / 2.0)
                ph1 = np.exp(1j * params[k] / 2.0)
                for z in range(dim):
                    amps[z] *= ph1 if (z >> q) & 1 else ph0
                k += 1
            for e in range(n_ent):
                q1 = e
                q2 = (e + 1) % n
                ph0 = np.exp(-1j * params[k] / 2.0)
                ph1 = np.exp(1j * params[k] / 2.0)
                for z in range(dim):
                    amps[z] *= ph1 if ((z >> q1) ^ (z >> q2)) & 1 else ph0
                k += 1
        for q in range(n):
            _ry_inplace(amps, q, params[k])
            k += 1
        for q in range(n):
            ph0 = np.exp(-1j * params[k] / 2.0)
            ph1 = np.exp(1j * params[k] / 2.0)
            for z in range(dim):
                amps[z] *= ph1 if (z >> q) & 1 else ph0
            k += 1
        return amps


# -- dispatch ----------------------------------------------------------------

if HAVE_NUMBA:
    _bit_energies = _bit_energies_numba
    _spin_energies = _spin_energies_numba
    _spin_energies_at = _spin_energies_at_numba
    _apply_ansatz = _apply_ansatz_numba
else:
    _bit_energies = _bit_energies_numpy
    _spin_energies = _spin_energies_numpy
    _spin_energies_at = _spin_energies_at_numpy
    _apply_ansatz = _apply_ansatz_numpy


def enumerate_bit_energies(n, const, lin_idx, lin_val, qi, qj, qval):
    """Scaled-int energies of all 2^n bit assignments of a quadratic form."""
    return _bit_energies(
        n,
        np.int64(const),
        np.asarray(lin_idx, dtype=np.int64),
        np.asarray(lin_val, dtype=np.int64),
        np.asarray(qi, dtype=np.int64),
        np.asarray(qj, dtype=np.int64),
        np.asarray(qval, dtype=np.int64),
    )


def enumerate_spin_energies(n, const, lin_idx, lin_val, qi, qj, qval):
    """Scaled-int Ising energies of all 2^n spin assignments (s = 1 - 2*bit)."""
    return _spin_energies(
        n,
        np.int64(const),
        np.asarray(lin_idx, dtype=np.int64),
        np.asarray(lin_val, dtype=np.int64),
        np.asarray(qi, dtype=np.int64),
        np.asarray(qj, dtype=np.int64),
        np.asarray(qval, dtype=np.int64),
    )


def spin_energies_at(z, n, const, lin_idx, lin_val, qi, qj, qval):
    """Scaled-int Ising energies at the given basis-state indices."""
    return _spin_energies_at(
        np.asarray(z, dtype=np.int64),
        n,
        np.int64(const),
        np.asarray(lin_idx, dtype=np.int64),
        np.asarray(lin_val, dtype=np.int64),
        np.asarray(qi, dtype=np.int64),
        np.asarray(qj, dtype=np.int64),
        np.asarray(qval, dtype=np.int64),
    )


def apply_ansatz_amplitudes(psi0, n, layers, ring, params):
    """Apply the layered Ry/Rz/Rzz ansatz to a state vector."""
    params = np.asarray(params, dtype=np.float64)
    return _apply_ansatz(np.asarray(psi0, dtype=np.complex128), n, layers, bool(ring), params)
