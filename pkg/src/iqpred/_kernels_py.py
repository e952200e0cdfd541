"""Pure-Python kernels: per-sample IIR recurrences for encode/decode.

Fallback used when the compiled extension is unavailable.  Same call
signatures and arithmetic as ``_kernels.pyx``; plain Python loops over
built-in complex scalars (lists are much faster here than elementwise
numpy indexing).
"""

from math import copysign, floor, inf, nextafter

import numpy as np

COMPILED = False


def fix_residual(x: float, q: float) -> float:
    """Residual r for which ``(r + q)`` rounds back to exactly ``x``.

    ``x - q`` alone can be off by a rounding when |q| and |x| differ a
    lot; the decoder's correlation tracker is sensitive enough (1/|s|^2
    at amplitude fades) that the one-ulp reconstruction error would grow
    without bound.  Nudging the residual until the sum reconstructs ``x``
    makes decode replay bit-exact.  Falls back to the closest achievable
    value if no exact residual exists (|q| beyond ~2^53 |x|).
    """
    r = x - q
    best = r
    best_err = abs((r + q) - x)
    for _ in range(60):
        e = (r + q) - x
        if e == 0.0:
            return r
        if abs(e) < best_err:
            best, best_err = r, abs(e)
        r2 = r - e
        if r2 == r:
            r2 = nextafter(r, -inf if e > 0.0 else inf)
        r = r2
    if abs((r + q) - x) < best_err:
        best = r
    return best


def _post(p, threshold, use_rotation, rotation, use_quant, quant_step):
    # shared prediction post-processing: clamp -> rotate -> quantize
    mag = abs(p)
    if mag > threshold:
        p = p * (threshold / mag)
    if use_rotation:
        p = p * rotation
    if use_quant:
        p = complex(
            copysign(floor(abs(p.real) / quant_step + 0.5) * quant_step, p.real),
            copysign(floor(abs(p.imag) / quant_step + 0.5) * quant_step, p.imag),
        )
    return p


def rap_encode(samples, epsilons, thresholds, init_pred, rotation,
               use_rotation, quant_step, use_quant):
    s = samples.tolist()
    n = len(s)
    npass = len(epsilons)
    damp = [1.0 - e for e in epsilons]
    thr = list(thresholds)
    pred = [0j] * npass
    pred[0] = complex(init_pred)
    out = [0j] * n
    out[0] = s[0]
    for i in range(1, n):
        v = s[i]
        for p in range(npass):
            v = v - pred[p]
            pred[p] = _post(damp[p] * v, thr[p], use_rotation, rotation,
                            use_quant, quant_step)
        out[i] = v
    return np.asarray(out, dtype=np.complex128)


def rap_decode(residuals, epsilons, thresholds, init_pred, rotation,
               use_rotation, quant_step, use_quant):
    r = residuals.tolist()
    n = len(r)
    npass = len(epsilons)
    damp = [1.0 - e for e in epsilons]
    thr = list(thresholds)
    pred = [0j] * npass
    pred[0] = complex(init_pred)
    out = [0j] * n
    out[0] = r[0]
    for i in range(1, n):
        v = r[i]
        for p in range(npass - 1, -1, -1):
            nxt = v + pred[p]
            pred[p] = _post(damp[p] * v, thr[p], use_rotation, rotation,
                            use_quant, quant_step)
            v = nxt
        out[i] = v
    return np.asarray(out, dtype=np.complex128)


def tc_encode_adaptive(samples, epsilon):
    # Closed loop: the correlation tracker runs on the samples the decoder
    # will reconstruct (identical to the originals up to the rare
    # unrepresentable-residual rounding), so decode replay is bit-exact.
    s = samples.tolist()
    n = len(s)
    out = [0j] * n
    out[0] = s[0]
    pred = 0j
    keep = 1.0 - epsilon
    prev = s[0]
    for i in range(1, n):
        q = pred * prev
        r = complex(fix_residual(s[i].real, q.real),
                    fix_residual(s[i].imag, q.imag))
        out[i] = r
        cur = r + q
        # tiny constant keeps the denominator nonzero for silent samples
        den = prev.real * prev.real + prev.imag * prev.imag + 1e-40
        pred = keep * pred + epsilon * (cur * prev.conjugate() / den)
        prev = cur
    return np.asarray(out, dtype=np.complex128)


def tc_decode_adaptive(residuals, epsilon):
    r = residuals.tolist()
    n = len(r)
    out = [0j] * n
    out[0] = r[0]
    pred = 0j
    keep = 1.0 - epsilon
    for i in range(1, n):
        prev = out[i - 1]
        out[i] = r[i] + pred * prev
        den = prev.real * prev.real + prev.imag * prev.imag + 1e-40
        pred = keep * pred + epsilon * (out[i] * prev.conjugate() / den)
    return np.asarray(out, dtype=np.complex128)


def tc_decode_const(residuals, prediction):
    r = residuals.tolist()
    n = len(r)
    pred = complex(prediction)
    out = [0j] * n
    out[0] = r[0]
    for i in range(1, n):
        out[i] = r[i] + pred * out[i - 1]
    return np.asarray(out, dtype=np.complex128)
