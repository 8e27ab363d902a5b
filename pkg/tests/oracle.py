"""Naive loop implementation of the curvature quantities, used only as a test oracle.

It follows the textbook definitions directly: Koszul formula for the
connection, ``R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]`` as matrices, and
covariant derivatives by the Leibniz rule.
"""
import numpy as np


def connection_matrices(c):
    """``L[i]`` is the matrix of ``nabla_{e_i}``: ``nabla_{e_i} e_j = sum_k L[i][k, j] e_k``."""
    n = c.shape[0]
    L = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>
                L[i][k, j] = 0.5 * (c[i, j, k] - c[j, k, i] + c[k, i, j])
    return L


def riemann(c):
    n = c.shape[0]
    L = connection_matrices(c)
    R = np.zeros((n,) * 4)
    for i in range(n):
        for j in range(n):
            op = L[i] @ L[j] - L[j] @ L[i] - sum(c[i, j, m] * L[m] for m in range(n))
            for k in range(n):
                for l in range(n):
                    R[i, j, k, l] = op[l, k]
    return R


def ricci(c):
    R = riemann(c)
    n = c.shape[0]
    ric = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            # trace of Z -> R(Z, e_i) e_j
            ric[i, j] = sum(R[k, i, j, k] for k in range(n))
    return ric


def nabla(c, T):
    """Covariant derivative of a left-invariant covariant tensor; new index first."""
    n = c.shape[0]
    L = connection_matrices(c)
    out = np.zeros((n,) + T.shape)
    for i in range(n):
        for idx in np.ndindex(T.shape):
            s = 0.0
            for slot in range(T.ndim):
                for m in range(n):
                    moved = list(idx)
                    moved[slot] = m
                    s -= L[i][m, idx[slot]] * T[tuple(moved)]
            out[(i,) + idx] = s
    return out


def rough_laplacian(c, T):
    n = c.shape[0]
    second = nabla(c, nabla(c, T))
    return sum(second[a, a] for a in range(n))


def r_of_ric(c):
    R = riemann(c)
    ric = ricci(c)
    n = c.shape[0]
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = sum(R[k, i, j, l] * ric[k, l] for k in range(n) for l in range(n))
    return out
