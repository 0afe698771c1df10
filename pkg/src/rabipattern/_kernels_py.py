"""Pure numpy version of the compiled kernel, used when the extension is absent."""

import numpy as np


def excitation_sum(weights, rabi, area):
    """Same contract as the compiled ``excitation_sum``: Neumaier sum over terms, vectorized over ``area``."""
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    rabi = np.ascontiguousarray(rabi, dtype=np.float64)
    area = np.ascontiguousarray(area, dtype=np.float64)
    if weights.shape != rabi.shape:
        raise ValueError("weights and rabi must have equal length")
    s = np.zeros(area.shape)
    c = np.zeros(area.shape)
    for w, q in zip(weights, rabi):
        term = w * np.sin(area * q) ** 2
        tmp = s + term
        big = np.abs(s) >= np.abs(term)
        c += np.where(big, (s - tmp) + term, (term - tmp) + s)
        s = tmp
    return s + c
