#!/usr/bin/env python3
"""Independent scalar evaluations used to freeze expected values in the C++ tests."""
import math

import numpy as np


def lp_attractor_component(h, p, eps):
    norm = sum(abs(v) ** p for v in h) ** (1.0 / p)
    return [0.0 if v == 0 else norm ** (1 - p) * math.copysign(1, v) / (eps + abs(v) ** (1 - p)) for v in h]


if __name__ == "__main__":
    print("lp_attractor([0.5, 0], p=0.5, eps=0.01) =", repr(lp_attractor_component([0.5, 0.0], 0.5, 0.01)))
    print("1 - exp(-50) =", repr(1 - math.exp(-50)))
    print("unitary idft([1,1,1,1]) =", np.fft.ifft(np.ones(4)) * math.sqrt(4))
    print("j(1/(2*10), beta=10) =", 2 * 10 - 2 * 100 * 0.05)
