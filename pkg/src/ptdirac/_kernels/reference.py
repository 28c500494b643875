"""Pure-numpy kernels: matching-matrix entries and the bound-state function.

These are the hot loops of the package (energy scans, root scans, random
identity checks). The compiled backend in `_fast.pyx` implements the same
signatures; this module is the fallback and the reference for equivalence
tests. No input validation happens here, callers guard preconditions.
"""

from __future__ import annotations

import numpy as np

# above this value of 2*b*|Im K| the hyperbolic terms are factored as
# entry * exp(log_scale) to keep products like det(M) and |M11|^2 finite
SCALE_THRESHOLD = 350.0


def _well_polar(e, v0, v1, q, m):
    re_p = e - q * v0 + m
    re_m = e - q * v0 - m
    im = q * v1
    if im == 0.0:
        im = 0.0  # never -0.0: keeps atan2 on the +pi branch at v1 = 0
    ap = np.hypot(re_p, im)
    am = np.hypot(re_m, im)
    php = np.arctan2(im, re_p)
    phm = np.arctan2(im, re_m)
    k_mod = np.sqrt(ap * am)
    k_arg = 0.5 * (php + phm)
    re_k = k_mod * np.cos(k_arg)
    im_k = k_mod * np.sin(k_arg)
    l_mod = np.sqrt(am / ap)
    l_arg = 0.5 * (phm - php)
    re_l = l_mod * np.cos(l_arg)
    im_l = l_mod * np.sin(l_arg)
    l2 = am / ap  # |Lambda|^2
    return re_k, im_k, re_l, im_l, l2


def matching_entries(e, v0, v1, b, q, m):
    """Closed-form matching-matrix entries at scattering energies (|e| > m).

    Returns (m11, m12, m21, m22, log_scale); the true entries are
    entry * exp(log_scale) per point (log_scale is 0 except deep in
    evanescent regimes).
    """
    e = np.asarray(e, dtype=np.float64)
    k = np.sqrt(e * e - m * m)
    lam = k / (e + m)
    re_k, im_k, re_l, im_l, l2 = _well_polar(e, v0, v1, q, m)

    t = 2.0 * b * im_k
    u = 2.0 * b * re_k
    sig = np.maximum(0.0, np.abs(t) - SCALE_THRESHOLD)
    ch = 0.5 * (np.exp(t - sig) + np.exp(-t - sig))
    sh = 0.5 * (np.exp(t - sig) - np.exp(-t - sig))
    damp = np.exp(-sig)
    cs = np.cos(u) * damp
    sn = np.sin(u) * damp

    inv_l2 = 1.0 / l2
    half = 0.5 / (lam * l2)
    diff = lam * lam - l2
    summ = lam * lam + l2

    a_part = im_l * im_l * inv_l2 * ch + re_l * re_l * inv_l2 * cs
    b_part = im_l * sh * diff * half + re_l * sn * summ * half
    cross = re_l * im_l * inv_l2 * (cs - ch)
    d12 = cross - re_l * sn * diff * half - im_l * sh * summ * half
    d21 = cross + re_l * sn * diff * half + im_l * sh * summ * half

    phase = np.exp(-2j * k * b)
    m11 = phase * (a_part + 1j * b_part)
    m22 = np.conj(m11)
    return m11, 1j * d12, 1j * d21, m22, sig


def bound_state_values(e, v0, v1, b, q, m):
    """Bound-state secular function on (-m, m): the analytic continuation of
    M22 to the decaying branch k = i*k', real by construction. Its zeros are
    the real bound-state energies (poles of the transmission coefficient).

    The overall positive factor exp(-2*b*k') is kept folded into the
    hyperbolic/trigonometric terms, which also prevents overflow.
    """
    e = np.asarray(e, dtype=np.float64)
    kp = np.sqrt(m * m - e * e)
    lamp = kp / (m + e)
    re_k, im_k, re_l, im_l, l2 = _well_polar(e, v0, v1, q, m)

    t = 2.0 * b * im_k
    u = 2.0 * b * re_k
    w = 2.0 * b * kp
    ch = 0.5 * (np.exp(t - w) + np.exp(-t - w))   # exp(-w)*cosh(t)
    sh = 0.5 * (np.exp(t - w) - np.exp(-t - w))   # exp(-w)*sinh(t)
    damp = np.exp(-w)
    cs = np.cos(u) * damp
    sn = np.sin(u) * damp

    half = 0.5 / (lamp * l2)
    return (
        im_l * im_l / l2 * ch
        + re_l * re_l / l2 * cs
        + im_l * sh * (lamp * lamp + l2) * half
        + re_l * sn * (lamp * lamp - l2) * half
    )
