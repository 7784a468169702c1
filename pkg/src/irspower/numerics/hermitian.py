"""Hermitian matrices: construction, eigendecomposition, PSD square-root factors."""

from dataclasses import dataclass, field

import numpy as np

#: eigenvalues in [-PSD_CLIP_TOL, 0) are treated as rounding noise and clipped to 0
PSD_CLIP_TOL = 1e-8


def hermitian_part(a):
    """Project onto the Hermitian matrices: (A + A^H) / 2."""
    a = np.asarray(a, dtype=complex)
    return 0.5 * (a + a.conj().T)


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """A square complex matrix symmetrized at construction, so entries[i, j] == conj(entries[j, i])
    holds exactly and all eigenvalues are real."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        sym = hermitian_part(a)
        sym.setflags(write=False)
        object.__setattr__(self, "entries", sym)

    @property
    def dim(self):
        return self.entries.shape[0]

    def eigh(self):
        """Real eigenvalues (ascending) and unitary eigenvectors."""
        return eigh_hermitian(self.entries)


def eigh_hermitian(m):
    """Eigendecomposition of a Hermitian matrix; returns (eigenvalues, eigenvectors)."""
    return np.linalg.eigh(np.asarray(m, dtype=complex))


def psd_sqrt_factor(m, clip_tol=PSD_CLIP_TOL):
    """Factor a (near-)PSD Hermitian matrix as m = F F^H.

    Eigenvalues in [-clip_tol, 0) are clipped to zero so that matrices returned
    by the SDP solver, which are PSD only up to its feasibility tolerance, can
    be factored without error.  Eigenvalues below -clip_tol raise ValueError.
    """
    if isinstance(m, HermitianMatrix):
        m = m.entries
    w, u = eigh_hermitian(m)
    if w.size and w[0] < -clip_tol:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w[0]:.3e} < -{clip_tol:.1e}")
    w = np.clip(w, 0.0, None)
    return u * np.sqrt(w)
