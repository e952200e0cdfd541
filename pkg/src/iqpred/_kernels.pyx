# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: per-sample IIR recurrences for encode/decode.

Mirrors _kernels_py.py exactly; see that module for the reference
semantics.
"""

import numpy as np

from libc.math cimport INFINITY, copysign, fabs, floor, hypot, nextafter

COMPILED = True


cpdef double fix_residual(double x, double q) noexcept:
    """Residual r for which ``(r + q)`` rounds back to exactly ``x``.

    See _kernels_py.fix_residual for why the plain difference is not
    enough for bit-exact decode replay.
    """
    cdef double r = x - q
    cdef double best = r
    cdef double best_err = fabs((r + q) - x)
    cdef double e, r2
    cdef int k
    for k in range(60):
        e = (r + q) - x
        if e == 0.0:
            return r
        if fabs(e) < best_err:
            best = r
            best_err = fabs(e)
        r2 = r - e
        if r2 == r:
            r2 = nextafter(r, -INFINITY if e > 0.0 else INFINITY)
        r = r2
    if fabs((r + q) - x) < best_err:
        best = r
    return best


cdef inline double complex _post(double complex p, double threshold,
                                 bint use_rotation, double complex rotation,
                                 bint use_quant, double quant_step) noexcept:
    cdef double mag = hypot(p.real, p.imag)
    cdef double re, im
    if mag > threshold:
        p = p * (threshold / mag)
    if use_rotation:
        p = p * rotation
    if use_quant:
        re = copysign(floor(fabs(p.real) / quant_step + 0.5) * quant_step, p.real)
        im = copysign(floor(fabs(p.imag) / quant_step + 0.5) * quant_step, p.imag)
        p = re + 1j * im
    return p


def rap_encode(double complex[::1] samples, double[::1] epsilons,
               double[::1] thresholds, double complex init_pred,
               double complex rotation, bint use_rotation,
               double quant_step, bint use_quant):
    cdef Py_ssize_t n = samples.shape[0]
    cdef Py_ssize_t npass = epsilons.shape[0]
    out_arr = np.empty(n, dtype=np.complex128)
    pred_arr = np.zeros(npass, dtype=np.complex128)
    damp_arr = 1.0 - np.asarray(epsilons)
    cdef double complex[::1] out = out_arr
    cdef double complex[::1] pred = pred_arr
    cdef double[::1] damp = damp_arr
    cdef double complex v
    cdef Py_ssize_t i, p
    pred[0] = init_pred
    out[0] = samples[0]
    for i in range(1, n):
        v = samples[i]
        for p in range(npass):
            v = v - pred[p]
            pred[p] = _post(damp[p] * v, thresholds[p], use_rotation, rotation,
                            use_quant, quant_step)
        out[i] = v
    return out_arr


def rap_decode(double complex[::1] residuals, double[::1] epsilons,
               double[::1] thresholds, double complex init_pred,
               double complex rotation, bint use_rotation,
               double quant_step, bint use_quant):
    cdef Py_ssize_t n = residuals.shape[0]
    cdef Py_ssize_t npass = epsilons.shape[0]
    out_arr = np.empty(n, dtype=np.complex128)
    pred_arr = np.zeros(npass, dtype=np.complex128)
    damp_arr = 1.0 - np.asarray(epsilons)
    cdef double complex[::1] out = out_arr
    cdef double complex[::1] pred = pred_arr
    cdef double[::1] damp = damp_arr
    cdef double complex v, nxt
    cdef Py_ssize_t i, p
    pred[0] = init_pred
    out[0] = residuals[0]
    for i in range(1, n):
        v = residuals[i]
        for p in range(npass - 1, -1, -1):
            nxt = v + pred[p]
            pred[p] = _post(damp[p] * v, thresholds[p], use_rotation, rotation,
                            use_quant, quant_step)
            v = nxt
        out[i] = v
    return out_arr


def tc_encode_adaptive(double complex[::1] samples, double epsilon):
    # Closed loop: the correlation tracker runs on the samples the decoder
    # will reconstruct (identical to the originals up to the rare
    # unrepresentable-residual rounding), so decode replay is bit-exact.
    cdef Py_ssize_t n = samples.shape[0]
    out_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double complex pred = 0
    cdef double complex prev, q, r, cur
    cdef double keep = 1.0 - epsilon
    cdef double den
    cdef Py_ssize_t i
    out[0] = samples[0]
    prev = samples[0]
    for i in range(1, n):
        q = pred * prev
        r = (fix_residual(samples[i].real, q.real)
             + 1j * fix_residual(samples[i].imag, q.imag))
        out[i] = r
        cur = r + q
        # tiny constant keeps the denominator nonzero for silent samples
        den = prev.real * prev.real + prev.imag * prev.imag + 1e-40
        pred = keep * pred + epsilon * (cur * prev.conjugate() / den)
        prev = cur
    return out_arr


def tc_decode_adaptive(double complex[::1] residuals, double epsilon):
    cdef Py_ssize_t n = residuals.shape[0]
    out_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double complex pred = 0
    cdef double complex prev
    cdef double keep = 1.0 - epsilon
    cdef double den
    cdef Py_ssize_t i
    out[0] = residuals[0]
    for i in range(1, n):
        prev = out[i - 1]
        out[i] = residuals[i] + pred * prev
        den = prev.real * prev.real + prev.imag * prev.imag + 1e-40
        pred = keep * pred + epsilon * (out[i] * prev.conjugate() / den)
    return out_arr


def tc_decode_const(double complex[::1] residuals, double complex prediction):
    cdef Py_ssize_t n = residuals.shape[0]
    out_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t i
    out[0] = residuals[0]
    for i in range(1, n):
        out[i] = residuals[i] + prediction * out[i - 1]
    return out_arr
