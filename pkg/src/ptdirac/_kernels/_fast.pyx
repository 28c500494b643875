# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: scalar loops over energy grids, same contracts as
`reference.py` (that module documents the math)."""

from libc.math cimport sqrt, hypot, atan2, cos, sin, exp, fabs

import numpy as np

DEF SCALE_THRESHOLD = 350.0


def matching_entries(double[::1] e, double v0, double v1, double b, double q, double m):
    cdef Py_ssize_t n = e.shape[0]
    m11 = np.empty(n, dtype=np.complex128)
    m12 = np.empty(n, dtype=np.complex128)
    m21 = np.empty(n, dtype=np.complex128)
    m22 = np.empty(n, dtype=np.complex128)
    sig = np.empty(n, dtype=np.float64)
    cdef double complex[::1] m11v = m11
    cdef double complex[::1] m12v = m12
    cdef double complex[::1] m21v = m21
    cdef double complex[::1] m22v = m22
    cdef double[::1] sigv = sig

    cdef Py_ssize_t i
    cdef double ei, k, lam, re_p, re_m, im, ap, am, php, phm
    cdef double k_mod, k_arg, re_k, im_k, l_mod, l_arg, re_l, im_l, l2
    cdef double t, u, s, ch, sh, damp, cs, sn
    cdef double inv_l2, half, diff, summ, a_part, b_part, cross, d12, d21
    cdef double pr, pi, m11_re, m11_im

    for i in range(n):
        ei = e[i]
        k = sqrt(ei * ei - m * m)
        lam = k / (ei + m)

        re_p = ei - q * v0 + m
        re_m = ei - q * v0 - m
        im = q * v1
        if im == 0.0:
            im = 0.0  # never -0.0: keeps atan2 on the +pi branch at v1 = 0
        ap = hypot(re_p, im)
        am = hypot(re_m, im)
        php = atan2(im, re_p)
        phm = atan2(im, re_m)
        k_mod = sqrt(ap * am)
        k_arg = 0.5 * (php + phm)
        re_k = k_mod * cos(k_arg)
        im_k = k_mod * sin(k_arg)
        l_mod = sqrt(am / ap)
        l_arg = 0.5 * (phm - php)
        re_l = l_mod * cos(l_arg)
        im_l = l_mod * sin(l_arg)
        l2 = am / ap

        t = 2.0 * b * im_k
        u = 2.0 * b * re_k
        s = fabs(t) - SCALE_THRESHOLD
        if s < 0.0:
            s = 0.0
        ch = 0.5 * (exp(t - s) + exp(-t - s))
        sh = 0.5 * (exp(t - s) - exp(-t - s))
        damp = exp(-s)
        cs = cos(u) * damp
        sn = sin(u) * damp

        inv_l2 = 1.0 / l2
        half = 0.5 / (lam * l2)
        diff = lam * lam - l2
        summ = lam * lam + l2

        a_part = im_l * im_l * inv_l2 * ch + re_l * re_l * inv_l2 * cs
        b_part = im_l * sh * diff * half + re_l * sn * summ * half
        cross = re_l * im_l * inv_l2 * (cs - ch)
        d12 = cross - re_l * sn * diff * half - im_l * sh * summ * half
        d21 = cross + re_l * sn * diff * half + im_l * sh * summ * half

        pr = cos(2.0 * k * b)
        pi = -sin(2.0 * k * b)
        m11_re = pr * a_part - pi * b_part
        m11_im = pr * b_part + pi * a_part
        m11v[i] = m11_re + 1j * m11_im
        m12v[i] = 1j * d12
        m21v[i] = 1j * d21
        m22v[i] = m11_re - 1j * m11_im
        sigv[i] = s

    return m11, m12, m21, m22, sig


def bound_state_values(double[::1] e, double v0, double v1, double b, double q, double m):
    cdef Py_ssize_t n = e.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] outv = out

    cdef Py_ssize_t i
    cdef double ei, kp, lamp, re_p, re_m, im, ap, am, php, phm
    cdef double k_mod, k_arg, re_k, im_k, l_mod, l_arg, re_l, im_l, l2
    cdef double t, u, w, ch, sh, damp, cs, sn, half

    for i in range(n):
        ei = e[i]
        kp = sqrt(m * m - ei * ei)
        lamp = kp / (m + ei)

        re_p = ei - q * v0 + m
        re_m = ei - q * v0 - m
        im = q * v1
        if im == 0.0:
            im = 0.0  # never -0.0: keeps atan2 on the +pi branch at v1 = 0
        ap = hypot(re_p, im)
        am = hypot(re_m, im)
        php = atan2(im, re_p)
        phm = atan2(im, re_m)
        k_mod = sqrt(ap * am)
        k_arg = 0.5 * (php + phm)
        re_k = k_mod * cos(k_arg)
        im_k = k_mod * sin(k_arg)
        l_mod = sqrt(am / ap)
        l_arg = 0.5 * (phm - php)
        re_l = l_mod * cos(l_arg)
        im_l = l_mod * sin(l_arg)
        l2 = am / ap

        t = 2.0 * b * im_k
        u = 2.0 * b * re_k
        w = 2.0 * b * kp
        ch = 0.5 * (exp(t - w) + exp(-t - w))
        sh = 0.5 * (exp(t - w) - exp(-t - w))
        damp = exp(-w)
        cs = cos(u) * damp
        sn = sin(u) * damp

        half = 0.5 / (lamp * l2)
        outv[i] = (
            im_l * im_l / l2 * ch
            + re_l * re_l / l2 * cs
            + im_l * sh * (lamp * lamp + l2) * half
            + re_l * sn * (lamp * lamp - l2) * half
        )

    return out
