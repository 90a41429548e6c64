"""Two-level worked examples: Pauli tomographic set, Bloch reconstruction,
the qubit MUB triple, and the SIC tetrahedron.

n = 2 sits outside the bisection-frame constructions (the permutation group
of two elements is too small), so the qubit is handled by the classical
tomographic sets below; the SIC reconstruction deliberately routes through
the generic dual-frame machinery so the whole package shares one
reconstruction code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import hs_inner
from .frames import DualFrame, dual_frame, frame_from_operators, reconstruct

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA1, SIGMA2, SIGMA3)


def pauli_tomographic_set() -> tuple[tuple[np.ndarray, ...], tuple[np.ndarray, ...]]:
    """The four decomposing projectors P_1..P_4 and the orthonormal W_1..W_4.

    P_1, P_2 project onto the computational basis, P_3 and P_4 onto the +1
    eigenvectors of sigma_1 and sigma_2. The W set is the matrix-unit basis
    extracted from them; it is exactly orthonormal under the
    Hilbert-Schmidt inner product and spans M_2(C).
    """
    P1 = np.array([[1, 0], [0, 0]], dtype=complex)
    P2 = np.array([[0, 0], [0, 1]], dtype=complex)
    P3 = np.array([[1, 1], [1, 1]], dtype=complex) / 2
    P4 = np.array([[1, -1j], [1j, 1]], dtype=complex) / 2
    W1 = P1
    W2 = P2
    W3 = np.array([[0, 1], [0, 0]], dtype=complex)
    W4 = np.array([[0, 0], [1, 0]], dtype=complex)
    return (P1, P2, P3, P4), (W1, W2, W3, W4)


@dataclass(frozen=True)
class BlochTomogram:
    """Outcome probabilities (p_i, 1 - p_i) of the three Pauli measurements."""

    p1: float
    p2: float
    p3: float

    def bloch_norm2(self) -> float:
        return (self.p1 - 0.5) ** 2 + (self.p2 - 0.5) ** 2 + (self.p3 - 0.5) ** 2

    def is_physical(self, tol: float = 1e-12) -> bool:
        """Inside (or on) the Bloch sphere: sum (p_i - 1/2)^2 <= 1/4."""
        return self.bloch_norm2() <= 0.25 + tol


def bloch_probabilities(rho: np.ndarray) -> BlochTomogram:
    """p_i = (1 + Tr(rho sigma_i)) / 2, the '+1' outcome of each Pauli."""
    rho = np.asarray(rho, dtype=complex)
    return BlochTomogram(
        *(float((1 + np.trace(rho @ s).real) / 2) for s in PAULI)
    )


def bloch_reconstruct(t: BlochTomogram) -> tuple[np.ndarray, bool]:
    """rho = I/2 + sum_i (p_i - 1/2) sigma_i, plus a physicality flag.

    The formula always returns a Hermitian trace-one matrix; it is PSD
    exactly when the tomogram lies inside the Bloch sphere, which is
    reported rather than enforced.
    """
    rho = np.eye(2, dtype=complex) / 2
    for p, s in zip((t.p1, t.p2, t.p3), PAULI):
        rho = rho + (p - 0.5) * s
    return rho, t.is_physical()


def purity_defect(t: BlochTomogram) -> float:
    """|sum_i (p_i - 1/2)^2 - 1/4|: zero iff the tomogram comes from a pure state."""
    return abs(t.bloch_norm2() - 0.25)


def qubit_mub() -> list[np.ndarray]:
    """Eigenbases of sigma_1, sigma_2, sigma_3 (columns); pairwise unbiased."""
    s = 1 / np.sqrt(2)
    b1 = np.array([[s, s], [s, -s]], dtype=complex)
    b2 = np.array([[s, s], [1j * s, -1j * s]], dtype=complex)
    b3 = np.eye(2, dtype=complex)
    return [b1, b2, b3]


@dataclass(frozen=True)
class SicTetrahedron:
    """Four Bloch directions a_j with a_j . a_k = (4/3) delta_jk - 1/3 and the
    POVM elements P_j = (I + a_j . sigma) / 4 built from them."""

    directions: np.ndarray  # (4, 3) real
    projectors: np.ndarray  # (4, 2, 2) complex

    def subnormalized_overlap(self, j: int, k: int) -> float:
        """Tr(Pi_j Pi_k) for the rank-1 projectors Pi_j = 2 P_j."""
        return float(
            np.trace(2 * self.projectors[j] @ (2 * self.projectors[k])).real
        )


def sic_tetrahedron() -> SicTetrahedron:
    """The concrete tetrahedron (1,1,1)-type directions, scaled to unit length.

    Any global rotation gives an equivalent SIC-POVM; this one has exact
    rational Gram entries 4/3 delta_jk - 1/3.
    """
    dirs = np.array(
        [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float
    ) / np.sqrt(3)
    projectors = np.array(
        [
            (np.eye(2, dtype=complex) + sum(a[i] * PAULI[i] for i in range(3))) / 4
            for a in dirs
        ]
    )
    return SicTetrahedron(dirs, projectors)


def sic_probabilities(rho: np.ndarray) -> np.ndarray:
    """q_j = Tr(P_j rho); a probability vector for any density matrix."""
    tet = sic_tetrahedron()
    rho = np.asarray(rho, dtype=complex)
    return np.array([np.trace(P @ rho).real for P in tet.projectors])


@lru_cache(maxsize=1)
def _sic_dual() -> DualFrame:
    tet = sic_tetrahedron()
    frame = frame_from_operators(tet.projectors, labels=("P1", "P2", "P3", "P4"))
    return dual_frame(frame)


def sic_reconstruct(q: np.ndarray) -> np.ndarray:
    """rho = weight * sum_j q_j P^j with {P^j} the dual of the tetrahedron.

    Since q_j = Tr(P_j rho) = <P_j, rho> and the four P_j span M_2(C), the
    round trip is exact.
    """
    return reconstruct(_sic_dual(), np.asarray(q, dtype=complex))


def qubit_demo_report(seed: int = 0, samples: int = 100) -> dict:
    """Residuals of every two-level identity, for the CLI demo."""
    rng = np.random.default_rng(seed)
    P, W = pauli_tomographic_set()

    w_gram = np.array([[hs_inner(a, b) for b in W] for a in W])
    w_orthonormality = float(np.max(np.abs(w_gram - np.eye(4))))
    p_gram = np.array([[hs_inner(a, b) for b in P] for a in P])
    p_independent = bool(abs(np.linalg.det(p_gram)) > 1e-12)

    bloch_err = 0.0
    sic_err = 0.0
    purity_err = 0.0
    quorum_err = 0.0
    for _ in range(samples):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v /= np.linalg.norm(v)
        pure = np.outer(v, v.conj())
        G = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        mixed = G @ G.conj().T
        mixed /= np.trace(mixed).real
        for rho in (pure, mixed):
            back, _ = bloch_reconstruct(bloch_probabilities(rho))
            bloch_err = max(bloch_err, float(np.max(np.abs(back - rho))))
            sic_back = sic_reconstruct(sic_probabilities(rho))
            sic_err = max(sic_err, float(np.max(np.abs(sic_back - rho))))
            expansion = sum(hs_inner(Wk, rho) * Wk for Wk in W)
            quorum_err = max(quorum_err, float(np.max(np.abs(expansion - rho))))
        purity_err = max(purity_err, purity_defect(bloch_probabilities(pure)))

    tet = sic_tetrahedron()
    gram = tet.directions @ tet.directions.T
    gram_target = (4 * np.eye(4) - 1) / 3
    overlaps = np.array(
        [[tet.subnormalized_overlap(j, k) for k in range(4)] for j in range(4)]
    )
    off = ~np.eye(4, dtype=bool)

    mubs = qubit_mub()
    mub_dev = 0.0
    for a in range(3):
        for b in range(a + 1, 3):
            ov = np.abs(mubs[a].conj().T @ mubs[b]) ** 2
            mub_dev = max(mub_dev, float(np.max(np.abs(ov - 0.5))))

    return {
        "w_orthonormality_residual": w_orthonormality,
        "p_set_linearly_independent": p_independent,
        "bloch_round_trip_max_error": bloch_err,
        "purity_defect_max_on_pure": float(purity_err),
        # the defect of I/2 is exactly 1/4; report the deviation from that
        "purity_defect_maximally_mixed_error": abs(
            purity_defect(BlochTomogram(0.5, 0.5, 0.5)) - 0.25
        ),
        "sic_gram_max_error": float(np.max(np.abs(gram - gram_target))),
        "sic_projector_sum_residual": float(
            np.max(np.abs(tet.projectors.sum(axis=0) - np.eye(2)))
        ),
        "sic_pair_overlap_max_error": float(np.max(np.abs(overlaps[off] - 1.0 / 3))),
        "sic_round_trip_max_error": sic_err,
        "mub_overlap_max_deviation": mub_dev,
        "quorum_expansion_max_error": quorum_err,
    }
