"""Directrices described by their Frenet data.

Two kinds of directrix are supported: the round circle of radius ``r`` in
the x1x2-plane of E^3, with its explicit frame, and general curves of
*constant* curvatures k_1..k_{n-1} in E^n, whose frame is the matrix
exponential of the Frenet-Serret generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ParameterError

__all__ = [
    "FrenetFrame",
    "DirectrixSpec",
    "CircleDirectrix",
    "circle_position",
    "circle_frenet",
    "circle_directrix_spec",
    "frenet_generator",
]


def _check_radius(r):
    if not np.isfinite(r) or r <= 0:
        raise ParameterError(f"circle radius must be positive, got r={r!r}")


@dataclass(frozen=True)
class FrenetFrame:
    """Orthonormal frame xi_1..xi_n, stored row-wise in ``vectors``."""

    vectors: np.ndarray

    def __post_init__(self):
        vecs = np.asarray(self.vectors, dtype=float)
        if vecs.ndim != 2 or vecs.shape[0] != vecs.shape[1]:
            raise ParameterError(f"frame must be an n x n array, got shape {vecs.shape}")
        object.__setattr__(self, "vectors", vecs)

    @property
    def dimension(self) -> int:
        return self.vectors.shape[0]

    def xi(self, j: int) -> np.ndarray:
        """The j-th frame vector, 1-based to match the usual xi_j indexing."""
        return self.vectors[j - 1]

    def orthonormality_error(self) -> float:
        gram = self.vectors @ self.vectors.T
        return float(np.max(np.abs(gram - np.eye(self.dimension))))

    def is_orthonormal(self, tol: float = 1e-12) -> bool:
        return self.orthonormality_error() <= tol


def frenet_generator(curvatures) -> np.ndarray:
    """Tridiagonal skew matrix with k_j above and -k_j below the diagonal.

    It drives both the Frenet-Serret equations (d xi / ds = K xi, rows) and the
    linear part of the tractrix ODE (dv/ds = K v + ...).
    """
    k = np.asarray(curvatures, dtype=float)
    n = k.size + 1
    gen = np.zeros((n, n))
    idx = np.arange(n - 1)
    gen[idx, idx + 1] = k
    gen[idx + 1, idx] = -k
    return gen


@dataclass(frozen=True, eq=False)
class DirectrixSpec:
    """A directrix in E^n with constant curvatures k_1..k_{n-1}.

    The curve starts at ``origin`` with frame ``initial_frame`` (rows) at s=0;
    both default to the origin and the standard basis.
    """

    curvatures: tuple
    origin: np.ndarray | None = None
    initial_frame: np.ndarray | None = None
    _spectral: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = tuple(float(x) for x in self.curvatures)
        if len(k) < 1:
            raise ParameterError("a directrix needs at least one curvature (n >= 2)")
        if not all(np.isfinite(k)):
            raise ParameterError(f"curvatures must be finite, got {k}")
        object.__setattr__(self, "curvatures", k)
        n = len(k) + 1
        origin = np.zeros(n) if self.origin is None else np.asarray(self.origin, dtype=float)
        frame = np.eye(n) if self.initial_frame is None else np.asarray(self.initial_frame, dtype=float)
        if origin.shape != (n,) or frame.shape != (n, n):
            raise ParameterError(f"origin/initial_frame do not match dimension n={n}")
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "initial_frame", frame)
        # K is real skew, so iK is Hermitian: exp(sK) = U diag(exp(-i s w)) U^H.
        w, u = np.linalg.eigh(1j * frenet_generator(k))
        object.__setattr__(self, "_spectral", (w, u))

    @property
    def dimension(self) -> int:
        return len(self.curvatures) + 1

    def generator(self) -> np.ndarray:
        return frenet_generator(self.curvatures)

    def _propagators(self, s):
        """exp(sK) and its integral from 0 to s, shapes (..., n, n)."""
        w, u = self._spectral
        s = np.asarray(s, dtype=float)[..., None]
        phase = np.exp(-1j * s * w)
        small = np.abs(w) < 1e-300
        safe_w = np.where(small, 1.0, w)
        integral = np.where(small, s + 0j, (phase - 1.0) / (-1j * safe_w))
        uh = u.conj().T
        expo = np.einsum("ij,...j,jk->...ik", u, phase, uh).real
        integ = np.einsum("ij,...j,jk->...ik", u, integral, uh).real
        return expo, integ

    def frames_at(self, s) -> np.ndarray:
        """Frame vectors for every s, shape (..., n, n), rows are xi_j."""
        expo, _ = self._propagators(s)
        return expo @ self.initial_frame

    def positions_at(self, s) -> np.ndarray:
        _, integ = self._propagators(s)
        return self.origin + (integ @ self.initial_frame)[..., 0, :]

    def frame(self, s: float) -> FrenetFrame:
        return FrenetFrame(self.frames_at(float(s)))

    def position(self, s: float) -> np.ndarray:
        return self.positions_at(float(s))


class CircleDirectrix(DirectrixSpec):
    """Circle of radius r in the x1x2-plane of E^3, arc-length parametrized.

    Positions and frames are evaluated in closed form rather than through
    the spectral propagator.
    """

    def __init__(self, radius: float):
        _check_radius(radius)
        object.__setattr__(self, "radius", float(radius))
        super().__init__(
            curvatures=(1.0 / radius, 0.0),
            origin=np.array([radius, 0.0, 0.0]),
            initial_frame=np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
        )

    def __repr__(self):
        return f"CircleDirectrix(radius={self.radius!r})"

    def frames_at(self, s) -> np.ndarray:
        return _circle_frames(self.radius, s)

    def positions_at(self, s) -> np.ndarray:
        return _circle_positions(self.radius, s)


def _circle_positions(r, s):
    t = np.asarray(s, dtype=float) / r
    return np.stack([r * np.cos(t), r * np.sin(t), np.zeros_like(t)], axis=-1)


def _circle_frames(r, s):
    t = np.asarray(s, dtype=float) / r
    c, sn = np.cos(t), np.sin(t)
    zero, one = np.zeros_like(t), np.ones_like(t)
    xi1 = np.stack([-sn, c, zero], axis=-1)
    xi2 = np.stack([-c, -sn, zero], axis=-1)
    xi3 = np.stack([zero, zero, one], axis=-1)
    return np.stack([xi1, xi2, xi3], axis=-2)


def circle_position(r: float, s) -> np.ndarray:
    """Point of the circle of radius ``r`` at arc length ``s``: (r cos(s/r), r sin(s/r), 0)."""
    _check_radius(r)
    return _circle_positions(r, s)


def circle_frenet(r: float, s: float) -> FrenetFrame:
    """Frenet frame of the circle at arc length ``s``.

    xi_1 is the unit tangent, xi_2 points to the centre, xi_3 is the
    vertical axis.
    """
    _check_radius(r)
    return FrenetFrame(_circle_frames(r, float(s)))


def circle_directrix_spec(r: float) -> CircleDirectrix:
    """Constant-curvature data of the circle: n=3, k_1=1/r, k_2=0."""
    return CircleDirectrix(r)
