"""Seeded random generators for states, operators and channels.

All functions take a ``numpy.random.Generator`` so randomized probes are
reproducible from a single seed.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    if dim == 1:
        return np.exp(2j * np.pi * rng.random()).reshape(1, 1)
    return unitary_group.rvs(dim, random_state=rng)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = ginibre(rng, dim, dim)
    return 0.5 * (g + g.conj().T)


def random_psd(rng: np.random.Generator, dim: int, rank: int | None = None,
               scale: float = 1.0) -> np.ndarray:
    g = ginibre(rng, dim, rank or dim)
    m = g @ g.conj().T
    return scale * 0.5 * (m + m.conj().T) / dim


def random_density(rng: np.random.Generator, dim: int,
                   rank: int | None = None) -> np.ndarray:
    """Density matrix from the induced (Ginibre) measure."""
    g = ginibre(rng, dim, rank or dim)
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return m / np.trace(m).real


def random_spectrum(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random probability vector sorted non-increasing."""
    p = rng.dirichlet(np.full(dim, 0.7))
    return np.sort(p)[::-1]


def density_with_spectrum(rng: np.random.Generator, spectrum) -> np.ndarray:
    spectrum = np.asarray(spectrum, dtype=float)
    u = random_unitary(rng, spectrum.size)
    m = (u * spectrum) @ u.conj().T
    return 0.5 * (m + m.conj().T)


def random_pure_coeffs(rng: np.random.Generator, dim_a: int, dim_b: int) -> np.ndarray:
    psi = ginibre(rng, dim_a, dim_b)
    return psi / np.linalg.norm(psi)


def random_doubly_stochastic(rng: np.random.Generator, dim: int,
                             terms: int = 4) -> np.ndarray:
    weights = rng.dirichlet(np.ones(terms))
    d = np.zeros((dim, dim))
    for w in weights:
        d[np.arange(dim), rng.permutation(dim)] += w
    return d


def random_kraus(rng: np.random.Generator, dim_in: int, dim_out: int,
                 n_ops: int) -> list[np.ndarray]:
    """Random trace-preserving Kraus set (isometry slices)."""
    if n_ops * dim_out < dim_in:
        raise ValueError("need n_ops * dim_out >= dim_in for a trace-preserving set")
    g = ginibre(rng, n_ops * dim_out, dim_in)
    q, _ = np.linalg.qr(g)
    return [q[i * dim_out:(i + 1) * dim_out, :] for i in range(n_ops)]
