"""Reference (pure Python / numpy) streaming kernels.

Same signatures and in-place semantics as the compiled ``_kernels`` module.
These also serve arrays of Python ints (``dtype=object``), which the
compiled kernels cannot.

Cascade layout, shared by both implementations:

* ``mats[s]``: stage matrix ``s`` in signal-flow order, applied as ``w = mats[s] @ v``
* ``delays[s, m]``: causal delay on port ``m`` after stage ``s`` (``s < S - 1``)
* ``buf[offsets[s, m] : offsets[s, m] + delays[s, m]]``: ring buffer for that line
* ``heads[s, m]``: read/write position in that ring buffer
"""
import numpy as np


def cascade_complex(mats, delays, offsets, heads, buf, x, out):
    S = mats.shape[0]
    M = mats.shape[1]
    for t in range(x.shape[0]):
        v = x[t]
        for s in range(S):
            v = mats[s] @ v
            if s < S - 1:
                for m in range(M):
                    D = delays[s, m]
                    if D:
                        pos = offsets[s, m] + heads[s, m]
                        v[m], buf[pos] = buf[pos], v[m]
                        heads[s, m] = (heads[s, m] + 1) % D
        out[t] = v


def cascade_int(mats, table, delays, offsets, heads, buf, x, out):
    S = mats.shape[0]
    M = mats.shape[1]
    table = table.astype(x.dtype)
    for t in range(x.shape[0]):
        v = x[t]
        for s in range(S):
            v = np.einsum("ijp,jq,pqr->ir", mats[s], v, table)
            if s < S - 1:
                for m in range(M):
                    D = delays[s, m]
                    if D:
                        pos = offsets[s, m] + heads[s, m]
                        old = buf[pos].copy()
                        buf[pos] = v[m]
                        v[m] = old
                        heads[s, m] = (heads[s, m] + 1) % D
        out[t] = v


def direct_complex(taps, x, out):
    """Direct-form FIR bank from zero state: ``out[t, m] = sum_j taps[m, j] x[t - j]``."""
    M, L = taps.shape
    for t in range(x.shape[0]):
        lo = max(0, t - L + 1)
        seg = x[lo:t + 1][::-1]
        out[t] = taps[:, : seg.shape[0]] @ seg
