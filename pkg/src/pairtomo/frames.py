"""Frames of bisection characteristic functions on L2(G), duals, reconstruction.

The frame vectors are the 0/1 matrices U(b) of bisections (chi_b as elements
of the algebra), indexed by a group (all of S_n, or Aff_n for odd prime n)
with the normalized counting measure 1/|group|. The metric operator
S = F*F has the closed form

    S(psi) = (1/(n-1)) [ psi + (n-2) * P psi P ],   P = rank-1 uniform projector,

with inverse S^{-1}(psi) = (n-1) psi - (n-2) P psi P, and the dual vectors
are chi^b = S^{-1} chi_b = (n-1) U(b) - (n-2) P.

Span caveat, load-bearing for everything downstream: permutation matrices
span only the ((n-1)^2 + 1)-dimensional subspace

    V = C.P  (+)  Q M_n Q,      Q = I - P,

(all matrices whose row sums and column sums agree and are constant), so the
family is a frame *for V*, not for all of M_n. On V the closed form equals
the brute-force synthesis-after-analysis operator to machine precision and
the frame bounds are {1/(n-1), 1}; off V the analysis map vanishes
identically (any u v^T + v u^T with v orthogonal to the uniform vector u has
zero overlap with every U(b)). Consequently the resolution of identity built
from the dual family equals the orthogonal projection onto V - the pinching
psi -> P psi P + Q psi Q - in both orderings, and reconstruction recovers
exactly the V-component of its input. All of this is verified in the test
suite; ``frame_bounds_empirical`` therefore reports frame-sequence bounds
(smallest positive and largest eigenvalue of S).

Generic operator families (e.g. the qubit tetrahedron) take the materialized
route: S as an n^2 x n^2 superoperator, duals through its pseudo-inverse on
the span, with a condition guard.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import as_element, trivial_projector
from .errors import (
    DimensionMismatch,
    IllConditioned,
    LengthMismatch,
    TooLarge,
    Unsupported,
)
from .groupoid import (
    enumerate_affine,
    enumerate_symmetric,
    format_element,
)

#: Upper limit on materializing n^2 x n^2 superoperators.
MATERIALIZE_LIMIT_N = 40

#: Eigenvalues of S below this (relative to the largest) count as kernel.
NULL_TOL = 1e-12

#: Residual allowed when verifying the resolution of identity on the span.
RESOLUTION_TOL = 1e-10

#: Frame-sequence lower bounds below this raise IllConditioned.
LOWER_BOUND_TOL = 1e-8


@dataclass(frozen=True)
class Frame:
    """An indexed family of algebra elements with normalized counting measure.

    Permutation-group frames store only the sigma rows (``perms``); their
    vectors are materialized on demand. Generic frames store the dense stack.
    """

    kind: str  # "symmetric" | "affine" | "generic"
    n: int
    labels: tuple[str, ...]
    perms: np.ndarray | None = None  # (m, n) int rows sigma_b
    dense: np.ndarray | None = None  # (m, n, n) complex

    def __post_init__(self):
        if (self.perms is None) == (self.dense is None):
            raise ValueError("exactly one of perms/dense must be set")
        if len(self.labels) != self.size:
            raise ValueError("labels must match the number of vectors")

    @property
    def size(self) -> int:
        return self.perms.shape[0] if self.perms is not None else self.dense.shape[0]

    @property
    def weight(self) -> float:
        """The counting normalized measure: each vector weighs 1/|family|."""
        return 1.0 / self.size

    def vector(self, i: int) -> np.ndarray:
        if self.dense is not None:
            return self.dense[i]
        U = np.zeros((self.n, self.n), dtype=complex)
        U[self.perms[i], np.arange(self.n)] = 1.0
        return U

    def dense_stack(self) -> np.ndarray:
        if self.dense is not None:
            return self.dense
        m, n = self.perms.shape
        if m * n * n > 50_000_000:
            raise TooLarge(f"dense stack of {m} {n}x{n} matrices is too large")
        out = np.zeros((m, n, n), dtype=complex)
        out[np.arange(m)[:, None], self.perms, np.arange(n)[None, :]] = 1.0
        return out


@dataclass(frozen=True)
class DualFrame:
    """The canonical dual family chi^b = S^{-1} chi_b (S inverted on the span)."""

    frame: Frame
    dual_dense: np.ndarray | None = None  # None: closed form (group frames)

    def dual_vector(self, i: int) -> np.ndarray:
        if self.dual_dense is not None:
            return self.dual_dense[i]
        n = self.frame.n
        return (n - 1) * self.frame.vector(i) - (n - 2) * trivial_projector(n)


@dataclass(frozen=True)
class FrameBounds:
    """Frame-sequence bounds 0 < A <= B (on the span of the family)."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (0 < self.lower <= self.upper):
            raise IllConditioned(f"invalid frame bounds ({self.lower}, {self.upper})")


# -- construction ------------------------------------------------------------

def frame_from_symmetric(n: int, max_n: int | None = None) -> Frame:
    """The full S_n family of n! bisection characteristic functions."""
    bis = enumerate_symmetric(n, max_n)
    perms = np.array([b.sigma for b in bis], dtype=np.int64)
    frame = Frame(
        kind="symmetric",
        n=n,
        labels=tuple(format_element(b) for b in bis),
        perms=perms,
    )
    _verify_lower_bound(frame)
    return frame


def frame_from_affine(n: int, max_n: int | None = None) -> Frame:
    """The Aff_n family of n(n-1) affine bisections, n an odd prime."""
    if n <= 2:
        raise Unsupported(f"affine frame needs n > 2, got {n}")
    els = enumerate_affine(n, max_n)
    perms = np.array([g.sigma for g in els], dtype=np.int64)
    frame = Frame(
        kind="affine",
        n=n,
        labels=tuple(format_element(g) for g in els),
        perms=perms,
    )
    _verify_lower_bound(frame)
    return frame


def frame_from_operators(ops, labels: tuple[str, ...] | None = None) -> Frame:
    """A generic frame from an iterable of same-shaped operators."""
    stack = np.array([as_element(op) for op in ops], dtype=complex)
    if stack.ndim != 3:
        raise DimensionMismatch("operators must share one square shape")
    if labels is None:
        labels = tuple(f"op:{i}" for i in range(stack.shape[0]))
    frame = Frame(kind="generic", n=stack.shape[1], labels=tuple(labels), dense=stack)
    _verify_lower_bound(frame)
    return frame


def _verify_lower_bound(frame: Frame) -> None:
    bounds = frame_bounds_empirical(frame)
    if bounds.lower < LOWER_BOUND_TOL:
        raise IllConditioned(
            f"frame-sequence lower bound {bounds.lower:.3e} below {LOWER_BOUND_TOL}"
        )


# -- analysis / synthesis / metric -------------------------------------------

def analysis(frame: Frame, psi: np.ndarray) -> np.ndarray:
    """Coefficients c_b = <chi_b, psi> in frame order."""
    psi = as_element(psi)
    if psi.shape != (frame.n, frame.n):
        raise DimensionMismatch(f"psi has shape {psi.shape}, frame is on n={frame.n}")
    if frame.perms is not None:
        # chi_b is real 0/1: the overlap is the sum of psi over the graph of sigma_b
        return psi[frame.perms, np.arange(frame.n)].sum(axis=1)
    return np.einsum("bjk,jk->b", frame.dense.conj(), psi)


def synthesis(frame: Frame, coeffs: np.ndarray) -> np.ndarray:
    """weight * sum_b c_b chi_b, the adjoint of analysis under the counting measure."""
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.shape[0] != frame.size:
        raise LengthMismatch(f"{c.shape[0]} coefficients for {frame.size} vectors")
    if frame.perms is not None:
        out = _permutation_weighted_sum(frame.perms, c, frame.n)
    else:
        out = np.tensordot(c, frame.dense, axes=1)
    return frame.weight * out


def _permutation_weighted_sum(perms: np.ndarray, c: np.ndarray, n: int) -> np.ndarray:
    """sum_b c_b U(sigma_b) via a flat scatter-add (no dense matrices)."""
    idx = (perms * n + np.arange(n)[None, :]).ravel()
    w = np.repeat(c, n)
    re = np.bincount(idx, weights=w.real, minlength=n * n)
    im = np.bincount(idx, weights=w.imag, minlength=n * n)
    return (re + 1j * im).reshape(n, n)


def metric_apply_bruteforce(frame: Frame, psi: np.ndarray) -> np.ndarray:
    """S psi = synthesis(analysis(psi)): the metric operator, summed literally."""
    return synthesis(frame, analysis(frame, psi))


def metric_apply_closed(psi: np.ndarray, n: int) -> np.ndarray:
    """Closed form (psi + (n-2) P psi P) / (n-1); equals the brute force on the span."""
    if n <= 2:
        raise Unsupported(f"closed-form metric needs n > 2, got {n}")
    psi = _check_shape(psi, n)
    P = trivial_projector(n)
    return (psi + (n - 2) * (P @ psi @ P)) / (n - 1)


def metric_inverse_apply(psi: np.ndarray, n: int) -> np.ndarray:
    """(n-1) psi - (n-2) P psi P: the exact inverse of the closed-form metric."""
    if n <= 2:
        raise Unsupported(f"closed-form metric needs n > 2, got {n}")
    psi = _check_shape(psi, n)
    P = trivial_projector(n)
    return (n - 1) * psi - (n - 2) * (P @ psi @ P)


def uniform_pinching(psi: np.ndarray) -> np.ndarray:
    """P psi P + Q psi Q: the orthogonal projection onto the bisection span."""
    psi = as_element(psi)
    n = psi.shape[0]
    P = trivial_projector(n)
    Q = np.eye(n) - P
    return P @ psi @ P + Q @ psi @ Q


def _check_shape(psi: np.ndarray, n: int) -> np.ndarray:
    psi = as_element(psi)
    if psi.shape != (n, n):
        raise DimensionMismatch(f"psi has shape {psi.shape}, expected ({n}, {n})")
    return psi


# -- materialized superoperators ---------------------------------------------

def metric_superoperator(frame: Frame) -> np.ndarray:
    """S as an n^2 x n^2 matrix acting on row-major vec(psi)."""
    n = frame.n
    if n > MATERIALIZE_LIMIT_N:
        raise TooLarge(f"refusing to materialize a {n * n} x {n * n} superoperator")
    if frame.perms is not None:
        m = frame.size
        M = np.zeros((m, n * n))
        M[np.arange(m)[:, None], frame.perms * n + np.arange(n)[None, :]] = 1.0
        return (frame.weight * (M.T @ M)).astype(complex)
    V = frame.dense.reshape(frame.size, n * n)
    return frame.weight * (V.T @ V.conj())


def metric_spectrum(frame: Frame) -> np.ndarray:
    """Ascending eigenvalues of the materialized S (kernel included)."""
    return np.linalg.eigvalsh(metric_superoperator(frame))


def span_projector_superoperator(frame: Frame) -> np.ndarray:
    """Orthogonal projector onto span{chi_b} as an n^2 x n^2 matrix."""
    n = frame.n
    if frame.perms is not None:
        # 2-transitive group frames span exactly C.P (+) Q M Q: the pinching
        P = trivial_projector(n)
        Q = np.eye(n) - P
        return np.kron(P, P.conj()) + np.kron(Q, Q.conj())
    V = frame.dense.reshape(frame.size, n * n)
    _, s, vh = np.linalg.svd(V, full_matrices=False)
    keep = s > NULL_TOL * max(s[0], 1.0)
    B = vh[keep]
    return B.conj().T @ B


def frame_bounds_empirical(frame: Frame, null_tol: float = NULL_TOL) -> FrameBounds:
    """Frame-sequence bounds: smallest positive and largest eigenvalue of S.

    For permutation frames too large to materialize, the extremes are taken
    as Rayleigh quotients of S at exact eigenvectors of the two nonzero
    eigenspaces (the all-ones matrix, and a seeded traceless matrix with
    vanishing row and column sums), which yields the same numbers.
    """
    n = frame.n
    if n <= MATERIALIZE_LIMIT_N:
        vals = metric_spectrum(frame).real
        top = float(vals[-1])
        positive = vals[vals > null_tol * max(top, 1.0)]
        if positive.size == 0:
            raise IllConditioned("metric operator is numerically zero")
        return FrameBounds(float(positive[0]), top)
    return _probe_bounds(frame)


def _probe_bounds(frame: Frame) -> FrameBounds:
    n = frame.n
    rng = np.random.default_rng(0)
    J = np.ones((n, n), dtype=complex)
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    P = trivial_projector(n)
    Q = np.eye(n) - P
    QGQ = Q @ G @ Q  # exact eigenvector of S for the small eigenvalue
    lo = _rayleigh(frame, QGQ)
    hi = _rayleigh(frame, J)
    return FrameBounds(min(lo, hi), max(lo, hi))


def _rayleigh(frame: Frame, psi: np.ndarray) -> float:
    c = analysis(frame, psi)
    return float(frame.weight * np.vdot(c, c).real / np.vdot(psi, psi).real)


# -- duals, resolution, reconstruction ----------------------------------------

def dual_frame(
    frame: Frame,
    lower_tol: float = LOWER_BOUND_TOL,
    resolution_tol: float = RESOLUTION_TOL,
) -> DualFrame:
    """chi^b = S^{-1} chi_b, with S inverted on the span of the family.

    Group frames use the closed form; generic frames invert the materialized
    superoperator on its positive eigenspace. Construction verifies the
    resolution of identity against the projection onto the span (for a
    spanning family that projection is the identity, so the check is the
    literal resolution of identity).
    """
    bounds = frame_bounds_empirical(frame)
    if bounds.lower < lower_tol:
        raise IllConditioned(f"lower frame bound {bounds.lower:.3e} below {lower_tol}")
    if frame.perms is not None:
        dual = DualFrame(frame, None)
    else:
        n = frame.n
        S = metric_superoperator(frame)
        vals, vecs = np.linalg.eigh(S)
        keep = vals > NULL_TOL * max(float(vals[-1]), 1.0)
        inv = np.zeros_like(vals)
        inv[keep] = 1.0 / vals[keep]
        S_pinv = (vecs * inv) @ vecs.conj().T
        V = frame.dense.reshape(frame.size, n * n)
        dual_stack = (S_pinv @ V.T).T.reshape(frame.size, n, n)
        dual = DualFrame(frame, dual_stack)
    residual = resolution_residual(dual)
    if residual > resolution_tol:
        raise IllConditioned(f"resolution-of-identity residual {residual:.3e}")
    return dual


def reconstruct(dual: DualFrame, coeffs: np.ndarray) -> np.ndarray:
    """weight * sum_b c_b chi^b: synthesis against the dual family.

    Together with ``analysis`` this reproduces the component of the input in
    the span of the frame exactly (for the two bisection group frames, its
    uniform pinching).
    """
    frame = dual.frame
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.shape[0] != frame.size:
        raise LengthMismatch(f"{c.shape[0]} coefficients for {frame.size} vectors")
    n = frame.n
    if dual.dual_dense is not None:
        return frame.weight * np.tensordot(c, dual.dual_dense, axes=1)
    # chi^b = (n-1) U(b) - (n-2) P
    total = _permutation_weighted_sum(frame.perms, c, n)
    P = trivial_projector(n)
    return frame.weight * ((n - 1) * total - (n - 2) * c.sum() * P)


def resolution_residual(dual: DualFrame, probes: int = 20, seed: int = 0) -> float:
    """Max deviation of weight * sum_b chi_b <chi^b, .> from the span projection.

    Checks all n^2 matrix units when n is small, otherwise seeded random
    probes. Both orderings (chi_b with chi^b swapped) are covered by
    Hermiticity of the two superoperators involved; the swapped ordering is
    exercised explicitly in the test suite.
    """
    frame = dual.frame
    n = frame.n
    worst = 0.0
    if n <= 31:
        span_proj = span_projector_superoperator(frame)
        for p in range(n * n):
            E = np.zeros((n, n), dtype=complex)
            E[divmod(p, n)] = 1.0
            applied = _apply_resolution(dual, E)
            expected = (span_proj @ E.reshape(-1)).reshape(n, n)
            worst = max(worst, float(np.max(np.abs(applied - expected))))
        return worst
    rng = np.random.default_rng(seed)
    for _ in range(probes):
        psi = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        applied = _apply_resolution(dual, psi)
        expected = uniform_pinching(psi)
        worst = max(worst, float(np.max(np.abs(applied - expected))))
    return worst


def _apply_resolution(dual: DualFrame, psi: np.ndarray) -> np.ndarray:
    """weight * sum_b <chi^b, psi> chi_b."""
    frame = dual.frame
    if dual.dual_dense is not None:
        c = np.einsum("bjk,jk->b", dual.dual_dense.conj(), psi)
        return frame.weight * np.tensordot(c, frame.dense, axes=1)
    # <chi^b, psi> = (n-1) <chi_b, psi> - (n-2) <P, psi>
    n = frame.n
    c = (n - 1) * analysis(frame, psi) - (n - 2) * np.sum(psi) / n
    return synthesis(frame, c)


# -- report -------------------------------------------------------------------

def frame_report(
    kind: str,
    n: int,
    seed: int = 0,
    tol: float = RESOLUTION_TOL,
    probes: int = 50,
    max_n: int | None = None,
) -> dict:
    """Machine-readable certification of one group frame.

    ``closed_vs_bruteforce`` is measured on span-supported probes, where the
    closed form is the metric operator; ``resolution_residual`` is measured
    against the projection onto the span (see module docstring).
    """
    if kind == "symmetric":
        frame = frame_from_symmetric(n, max_n)
    elif kind == "affine":
        frame = frame_from_affine(n, max_n)
    else:
        raise ValueError(f"unknown frame kind {kind!r}")
    bounds = frame_bounds_empirical(frame)
    dual = dual_frame(frame)
    rng = np.random.default_rng(seed)

    closed_vs_brute = 0.0
    inequality_ok = True
    for _ in range(probes):
        psi = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        span_psi = uniform_pinching(psi)
        brute = metric_apply_bruteforce(frame, span_psi)
        closed = metric_apply_closed(span_psi, n)
        closed_vs_brute = max(closed_vs_brute, float(np.max(np.abs(brute - closed))))
        coeffs = analysis(frame, span_psi)
        q = frame.weight * float(np.vdot(coeffs, coeffs).real)
        norm2 = float(np.vdot(span_psi, span_psi).real)
        if not (bounds.lower * norm2 - 1e-9 <= q <= bounds.upper * norm2 + 1e-9):
            inequality_ok = False

    report = {
        "group": kind,
        "n": n,
        "A": float(bounds.lower),
        "B": float(bounds.upper),
        "paper_lower_bound": 1.0 / (n - 1),
        "paper_upper_bound": float(n * n),
        "closed_vs_bruteforce": closed_vs_brute,
        "resolution_residual": float(resolution_residual(dual)),
        "span_dim": (n - 1) ** 2 + 1,
        "kernel_dim": 2 * (n - 1),
        "bound_check_on_span": bool(inequality_ok),
        "family_size": frame.size,
    }
    return report
