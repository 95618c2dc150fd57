"""Brute-force reference computations, independent of the FFT pipelines."""
import numpy as np


def naive_stft(f, g):
    """Direct triple loop over (x_m, xi_n, t_k) with explicit exponentials."""
    grid = f.grid
    t = grid.points
    xs = grid.points
    xis = grid.dual().points
    N = grid.N
    out = np.zeros((N, N), dtype=complex)
    for m, x in enumerate(xs):
        shifted = np.array([g.values[(k - m + N // 2) % N] for k in range(N)])
        for n, xi in enumerate(xis):
            acc = 0j
            for k in range(N):
                acc += f.values[k] * np.conj(shifted[k]) * np.exp(-2j * np.pi * t[k] * xi)
            out[m, n] = grid.h * acc
    return out


def naive_synthesis(G, g):
    """Double Riemann sum of G(x, xi) g(t - x) exp(2 pi i xi t)."""
    grid = g.grid
    N = grid.N
    t = grid.points
    xis = grid.dual().points
    out = np.zeros(N, dtype=complex)
    for k in range(N):
        acc = 0j
        for m in range(N):
            gv = g.values[(k - m + N // 2) % N]
            for n in range(N):
                acc += G[m, n] * gv * np.exp(2j * np.pi * xis[n] * t[k])
        out[k] = grid.h * grid.dual().h * acc
    return out


def stft_by_translates(f, g):
    """Rows built as int conj(g(t)) T_{-t} M_{-xi} f dt (translate-then-sum order)."""
    grid = f.grid
    N = grid.N
    t = grid.points
    xis = grid.dual().points
    out = np.zeros((N, N), dtype=complex)
    for n, xi in enumerate(xis):
        mod = f.values * np.exp(-2j * np.pi * xi * t)
        acc = np.zeros(N, dtype=complex)
        for j in range(N):
            # T_{-t_j} shifts by -(j - N/2) samples
            acc += np.conj(g.values[j]) * np.roll(mod, -(j - N // 2))
        out[:, n] = grid.h * acc
    return out


def mixed_norm_loops(values, hx, hxi, w1, w2, p, q):
    rows = []
    for n in range(values.shape[1]):
        col = [abs(values[m, n]) * w1[m] for m in range(values.shape[0])]
        if np.isinf(p):
            rows.append(max(col))
        else:
            rows.append((hx * sum(c ** p for c in col)) ** (1 / p))
    outer = [w2[n] * rows[n] for n in range(len(rows))]
    if np.isinf(q):
        return max(outer)
    return (hxi * sum(o ** q for o in outer)) ** (1 / q)


def singular_values_by_eig(A):
    ev = np.linalg.eigvalsh(A.conj().T @ A)
    return np.sqrt(np.clip(ev[::-1], 0, None))
