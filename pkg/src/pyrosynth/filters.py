"""Biquad coefficients from the RBJ audio-EQ cookbook, applied via lfilter."""

from __future__ import annotations

import math

import numpy as np
from scipy.signal import lfilter


def lowpass_coeffs(f0: float, q: float, sr: float) -> tuple[np.ndarray, np.ndarray]:
    w0 = 2.0 * math.pi * f0 / sr
    alpha = math.sin(w0) / (2.0 * q)
    cw = math.cos(w0)
    b = np.array([(1 - cw) / 2, 1 - cw, (1 - cw) / 2])
    a = np.array([1 + alpha, -2 * cw, 1 - alpha])
    return b / a[0], a / a[0]


def highpass_coeffs(f0: float, q: float, sr: float) -> tuple[np.ndarray, np.ndarray]:
    w0 = 2.0 * math.pi * f0 / sr
    alpha = math.sin(w0) / (2.0 * q)
    cw = math.cos(w0)
    b = np.array([(1 + cw) / 2, -(1 + cw), (1 + cw) / 2])
    a = np.array([1 + alpha, -2 * cw, 1 - alpha])
    return b / a[0], a / a[0]


def bandpass_coeffs(f0: float, q: float, sr: float) -> tuple[np.ndarray, np.ndarray]:
    # constant 0 dB peak gain variant
    w0 = 2.0 * math.pi * f0 / sr
    alpha = math.sin(w0) / (2.0 * q)
    cw = math.cos(w0)
    b = np.array([alpha, 0.0, -alpha])
    a = np.array([1 + alpha, -2 * cw, 1 - alpha])
    return b / a[0], a / a[0]


def biquad(x: np.ndarray, coeffs: tuple[np.ndarray, np.ndarray]) -> np.ndarray:
    b, a = coeffs
    return lfilter(b, a, x)
