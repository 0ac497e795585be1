"""Scalar reference values frozen into the C++ tests (direct formula evaluation)."""
from math import log, log2, sqrt
import numpy as np


def h(x):
    return 0.0 if x <= 0 or x >= 1 else -x * log2(x) - (1 - x) * log2(1 - x)


def f1(e, E):
    t = e / 2 * log2(E - 1) if E > 1 else 0.0
    return t + e * log2(E) + h(e / 2) + (1 + e / 2) * h(e / (2 + e))


def f2(e, E):
    t = e * log2(E - 1) if E > 1 else 0.0
    return t + 4 * e * log2(E) + 2 * h(e / 2) + 4 * (1 + e / 2) * h(e / (2 + e))


def gap_q(c, r, p, E):
    return c * r * p ** (r - 1) * (-p * log2(p)) + c * p ** r * (
        -log2(c) + 1 + 1 / log(2) + log2(E) + 0.5 * log2(E - 1))


def gap_p(c, r, p, E):
    return 3 * c * r * p ** (r - 1) * (-p * log2(p)) + c * p ** r * (
        -3 * log2(c) + 3 + 3 / log(2) + log2(E - 1) + 4 * log2(E))


if __name__ == "__main__":
    print("h(0.1)", repr(h(0.1)))
    print("h(0.11)", repr(h(0.11)))
    print("f1(0.01,4)", repr(f1(0.01, 4)))
    print("f2(0.01,4)", repr(f2(0.01, 4)))
    print("gapQ(1,2,0.01,4)", repr(gap_q(1, 2, 0.01, 4)))
    print("gapP(1,2,0.01,4)", repr(gap_p(1, 2, 0.01, 4)))
    for p in [0.01, 0.05, 0.1]:
        print("Ic depol", p, repr(1 - h(p) - p * log2(3)), "Ic xz", repr(1 - 2 * h(p)))
    eta = 0.000540211803793754
    lo = 1 - h(0.01) - 0.01 * log2(3)
    print("D0.01 interval", repr(lo), repr(lo + f1(eta, 4)), repr(lo + f2(eta, 4)))
