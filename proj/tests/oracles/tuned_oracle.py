"""Half trace norm of the Choi operator of N_p^c - N_q^c o N_p for Pauli channels.

Uses the printed closed-form complementary action (not Kraus stacking) to build
the Choi operator, then numpy's eigvalsh.
"""
import numpy as np

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0 + 0j, -1.0])
PAULI = [np.eye(2, dtype=complex), X, Y, Z]


def comp_action(p, rho):
    tr = np.trace(rho)
    x, y, z = (np.trace(P @ rho) for P in (X, Y, Z))
    s = np.sqrt
    return np.array([
        [p[0] * tr, s(p[0] * p[1]) * x, s(p[0] * p[2]) * y, s(p[0] * p[3]) * z],
        [s(p[0] * p[1]) * x, p[1] * tr, -1j * s(p[1] * p[2]) * z, 1j * s(p[1] * p[3]) * y],
        [s(p[0] * p[2]) * y, 1j * s(p[1] * p[2]) * z, p[2] * tr, -1j * s(p[2] * p[3]) * x],
        [s(p[0] * p[3]) * z, -1j * s(p[1] * p[3]) * y, 1j * s(p[2] * p[3]) * x, p[3] * tr]])


def pauli_apply(p, rho):
    return sum(pi * P @ rho @ P for pi, P in zip(p, PAULI))


def eta(p, q):
    J = np.zeros((8, 8), dtype=complex)
    for i in range(2):
        for j in range(2):
            E = np.zeros((2, 2), dtype=complex)
            E[i, j] = 1
            J[4 * i:4 * i + 4, 4 * j:4 * j + 4] = comp_action(p, E) - comp_action(q, pauli_apply(p, E))
    return 0.5 * np.abs(np.linalg.eigvalsh(J)).sum()


def depol(p):
    return [1 - p, p / 3, p / 3, p / 3]


def xz(p):
    return [(1 - p) ** 2, p - p * p, p * p, p - p * p]


if __name__ == "__main__":
    for p in [0.01, 0.05, 0.1]:
        s = p + 8 / 3 * p * p
        t = p + 4 * p * p
        print(p, "depol", repr(eta(depol(p), depol(s))), "xz", repr(eta(xz(p), xz(t))))
