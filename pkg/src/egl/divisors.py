"""Chart-level models of elliptic divisors.

A local model fixes the coordinate layout ``(x_1..x_{n-2k}, z_1..z_k)``
with the complex factors stored as consecutive (real, imaginary) pairs.
The divisor is the union of the factor zero sets, the ideal generator is
the product of squared moduli, and the generating frame of the elliptic
tangent bundle consists of the coordinate fields on the real part plus a
radial/angular pair per complex factor.  The frame ordering is fixed
(real coordinates first, then per-factor pairs) so that downstream
subspace comparisons are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["DivisorLocalModel", "AlgebroidFrame", "residue_model_frame"]


@dataclass(frozen=True)
class AlgebroidFrame:
    """Values at a point of the generating fields, in the fixed order."""

    point: np.ndarray
    vectors: np.ndarray  # shape (n, n); rows are frame vectors

    def rank(self, tol: float = 1e-9) -> int:
        if not self.vectors.any():
            return 0
        svals = np.linalg.svd(self.vectors, compute_uv=False)
        return int(np.sum(svals > tol * max(1.0, svals[0])))


@dataclass(frozen=True)
class DivisorLocalModel:
    """Normal-crossing elliptic divisor on a chart of dimension ``n``.

    ``k`` is the number of complex factors; ``k = 0`` means no divisor
    and ``k = 1`` a smooth one.
    """

    n: int
    k: int

    def __post_init__(self):
        if not (self.n >= 2 * self.k >= 0):
            raise ValueError("require n >= 2k >= 0")

    @property
    def real_dim(self) -> int:
        return self.n - 2 * self.k

    def factor(self, p: np.ndarray, j: int) -> complex:
        """The j-th complex coordinate z_j at p."""
        i = self.real_dim + 2 * j
        return complex(p[i], p[i + 1])

    def ideal_generator(self, p) -> float:
        """prod_j |z_j(p)|^2, the local generator of the elliptic ideal."""
        p = np.asarray(p, dtype=float)
        out = 1.0
        for j in range(self.k):
            z = self.factor(p, j)
            out *= (z.real * z.real + z.imag * z.imag)
        return out

    def multiplicity(self, p) -> int:
        """Number of complex factors vanishing exactly at p.

        Inputs are constructed chart points, not measurements, so the
        zero test is exact.
        """
        p = np.asarray(p, dtype=float)
        return sum(1 for j in range(self.k) if self.factor(p, j) == 0)

    def algebroid_frame(self, p) -> AlgebroidFrame:
        """Generating frame of the elliptic tangent bundle at p.

        Coordinate fields on the real part; per complex factor
        z_j = (v1, v2) the radial field (v1, v2) and angular field
        (-v2, v1) on that factor's plane.
        """
        p = np.asarray(p, dtype=float)
        vectors = np.zeros((self.n, self.n))
        for i in range(self.real_dim):
            vectors[i, i] = 1.0
        for j in range(self.k):
            i = self.real_dim + 2 * j
            v1, v2 = p[i], p[i + 1]
            vectors[self.real_dim + 2 * j, i] = v1
            vectors[self.real_dim + 2 * j, i + 1] = v2
            vectors[self.real_dim + 2 * j + 1, i] = -v2
            vectors[self.real_dim + 2 * j + 1, i + 1] = v1
        return AlgebroidFrame(point=p, vectors=vectors)


def residue_model_frame(variant: str):
    """Ground-truth cotangent-algebroid frames for the two residue models.

    ``nonzero``: {r^2 dx, r^2 dy} on the plane.  ``zero``: the
    realification of {u du, u dv} on C^2 (four real vectors), with u the
    divisor coordinate stored in the first real pair.
    """
    if variant == "nonzero":
        def frame(p):
            p = np.asarray(p, dtype=float)
            r2 = p[0] * p[0] + p[1] * p[1]
            return np.array([[r2, 0.0], [0.0, r2]])
        return frame
    if variant == "zero":
        def frame(p):
            p = np.asarray(p, dtype=float)
            u1, u2 = p[0], p[1]
            return np.array([
                [u1, u2, 0.0, 0.0],   # u d/du
                [-u2, u1, 0.0, 0.0],  # iu d/du
                [0.0, 0.0, u1, u2],   # u d/dv
                [0.0, 0.0, -u2, u1],  # iu d/dv
            ])
        return frame
    raise ValueError(f"unknown residue variant {variant!r}")
