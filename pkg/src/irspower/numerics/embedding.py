"""Complex-Hermitian <-> real-symmetric embedding.

A Hermitian matrix M maps to the symmetric matrix

    T(M) = [[Re M, -Im M],
            [Im M,  Re M]],

which satisfies T(AB) = T(A) T(B) and trace(T(M)) = 2 trace(M), and preserves
positive semidefiniteness in both directions.  Because traces double, embedded
inner products carry a factor 2:  <T(A), T(B)> = 2 <A, B>.
"""

import numpy as np


def embed_hermitian(m):
    """Real symmetric embedding of a d x d Hermitian matrix (result is 2d x 2d)."""
    m = np.asarray(m, dtype=complex)
    re, im = m.real, m.imag
    return np.block([[re, -im], [im, re]])


def unembed_symmetric(x):
    """Map a 2d x 2d symmetric matrix back to d x d Hermitian form.

    Averages the two diagonal and the two off-diagonal blocks, which projects
    onto the embedded subspace; for X in the image of ``embed_hermitian`` this
    is exact, and for any feasible point of an embedded SDP it preserves
    objective, constraint values, and positive semidefiniteness.
    """
    x = np.asarray(x, dtype=float)
    d = x.shape[0] // 2
    re = 0.5 * (x[:d, :d] + x[d:, d:])
    im = 0.5 * (x[d:, :d] - x[:d, d:])
    h = re + 1j * im
    return 0.5 * (h + h.conj().T)
