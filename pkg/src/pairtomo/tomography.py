"""Tomograms of states, their Fourier identities, reconstruction, and MUBs.

For each bisection b the unitary U(b) gets a canonical eigenbasis |m> with
U(b)|m> = e^{i theta_m}|m>; the tomogram of a state Phi along b is the
probability vector p_m = (1/n) <m|Phi|m>. The sampling function
F(b) = (1/n) Tr(Phi U(b)) = sum_m p_m e^{i theta_m} is basis-independent and
is the discrete analogue of a Radon line integral over the graph of b.

Canonical eigenbasis conventions (frozen; tomogram components for degenerate
spectra depend on them, F(b) does not):

* generic permutation: cycle decomposition, cycles ordered by smallest
  element and started there; within a cycle of length L the DFT vectors
  v_m(c_t) = e^{-2 pi i m t / L} / sqrt(L) with phases theta_m = 2 pi m / L;
* affine (mu = 1, any l): the Fourier basis psi_m(k) = e^{2 pi i m k/n}/sqrt n
  with theta_m = -2 pi m l / n (mod 2 pi);
* affine (mu != 1): the indicator of the unique fixed point x0 (phase 0),
  then the multiplicative-character vectors supported off x0, built from the
  discrete log base the smallest primitive root, with phases
  theta_m = -2 pi m log(mu) / (n-1) (mod 2 pi).

Reconstruction sums n * conj(F(b)) against the dual frame and therefore
returns the component of the state in the span of the bisection family (its
uniform pinching) - exact for states with the uniform vector as an
eigenvector, and a pinching (still a valid state) otherwise; see the frames
module docstring for why nothing can recover more from these tomograms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import StateFunction, as_element
from .errors import (
    DimensionMismatch,
    IncompleteFamily,
    NotOddPrime,
    UnbiasednessFailed,
)
from .frames import (
    DualFrame,
    Frame,
    dual_frame,
    frame_from_affine,
    frame_from_symmetric,
    reconstruct,
)
from .groupoid import (
    AffineBisection,
    Bisection,
    affine_fixed_point,
    enumerate_affine,
    enumerate_symmetric,
    format_element,
    parse_element,
    permutation_matrix,
)
from .modular import DiscreteLogTable, require_odd_prime
from .serialize import format_float

PROBABILITY_FLOOR = -1e-12
PROBABILITY_SUM_TOL = 1e-10
EIGEN_TOL = 1e-12
MUB_TOL = 1e-10


@dataclass(frozen=True)
class EigenBasis:
    """Orthonormal eigenvectors (columns) of U(b) with their eigenphases."""

    label: str
    vectors: np.ndarray  # (n, n), column m is |m>
    phases: np.ndarray  # (n,), U|m> = e^{i phases[m]} |m>

    @property
    def n(self) -> int:
        return self.vectors.shape[0]


def eigen_residual(basis: EigenBasis, b: "Bisection | AffineBisection") -> float:
    U = permutation_matrix(b)
    rhs = basis.vectors * np.exp(1j * basis.phases)[None, :]
    return float(np.max(np.abs(U @ basis.vectors - rhs)))


def _fourier_matrix(n: int) -> np.ndarray:
    k = np.arange(n)
    return np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)


def _character_basis(n: int, x0: int, table: DiscreteLogTable) -> np.ndarray:
    """Fixed-point indicator at x0 plus multiplicative characters off x0."""
    B = np.zeros((n, n), dtype=complex)
    B[x0, 0] = 1.0
    logs = np.array([table.log(y) for y in range(1, n)])
    rows = (x0 + np.arange(1, n)) % n
    m = np.arange(1, n)
    B[rows[:, None], m[None, :]] = np.exp(
        2j * np.pi * np.outer(logs, m) / (n - 1)
    ) / np.sqrt(n - 1)
    return B


def canonical_eigenbasis(b: "Bisection | AffineBisection") -> EigenBasis:
    """The frozen eigenbasis convention described in the module docstring.

    Construction is closed-form (no numerical eigen-solve); the eigen
    relation and orthonormality are verified to 1e-12 before returning.
    """
    n = b.n
    if isinstance(b, AffineBisection):
        if b.mu == 1:
            vectors = _fourier_matrix(n)
            phases = 2 * np.pi * ((-np.arange(n) * b.ell) % n) / n
        else:
            table = DiscreteLogTable.for_modulus(n)
            x0 = affine_fixed_point(b)
            vectors = _character_basis(n, x0, table)
            m = np.arange(n)
            phases = np.where(
                m == 0,
                0.0,
                2 * np.pi * ((-m * table.log(b.mu)) % (n - 1)) / (n - 1),
            )
    else:
        vectors = np.zeros((n, n), dtype=complex)
        phases = np.zeros(n)
        col = 0
        for cycle in b.cycles():
            L = len(cycle)
            t = np.arange(L)
            for m in range(L):
                vectors[np.asarray(cycle), col] = np.exp(-2j * np.pi * m * t / L) / np.sqrt(L)
                phases[col] = 2 * np.pi * m / L
                col += 1
    basis = EigenBasis(format_element(b), vectors, phases)
    _check_eigenbasis(basis, b)
    return basis


def _check_eigenbasis(basis: EigenBasis, b) -> None:
    n = basis.n
    gram = basis.vectors.conj().T @ basis.vectors
    ortho = float(np.max(np.abs(gram - np.eye(n))))
    resid = eigen_residual(basis, b)
    if ortho > EIGEN_TOL or resid > EIGEN_TOL:
        raise AssertionError(
            f"eigenbasis self-check failed for {basis.label}: "
            f"orthonormality {ortho:.2e}, eigen residual {resid:.2e}"
        )


@dataclass(frozen=True)
class Tomogram:
    """Probability vector of a state in one bisection's canonical eigenbasis."""

    label: str
    probabilities: np.ndarray
    phases: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        th = np.asarray(self.phases, dtype=float)
        if p.shape != th.shape or p.ndim != 1:
            raise DimensionMismatch("probabilities and phases must be equal-length 1-d")
        if float(p.min(initial=0.0)) < PROBABILITY_FLOOR:
            raise ValueError(f"negative probability {p.min():.3e} in {self.label}")
        if abs(float(p.sum()) - 1.0) > PROBABILITY_SUM_TOL:
            raise ValueError(f"probabilities of {self.label} sum to {p.sum():.17g}")
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "phases", th)

    @property
    def n(self) -> int:
        return self.probabilities.shape[0]

    def sampling_value(self) -> complex:
        """F(b) = sum_m p_m e^{i theta_m}."""
        return complex(np.sum(self.probabilities * np.exp(1j * self.phases)))


def _canonical_labels(group: str, n: int, max_n: int | None = None) -> tuple[str, ...]:
    if group == "affine":
        return tuple(format_element(g) for g in enumerate_affine(n, max_n))
    if group == "symmetric":
        return tuple(format_element(b) for b in enumerate_symmetric(n, max_n))
    raise ValueError(f"unknown group {group!r}")


@dataclass(frozen=True)
class TomogramFamily:
    """One tomogram per group element, in canonical enumeration order."""

    group: str  # "symmetric" | "affine"
    n: int
    tomograms: tuple[Tomogram, ...] = field(repr=False)

    def __post_init__(self):
        wanted = _canonical_labels(self.group, self.n)
        got = {t.label: t for t in self.tomograms}
        if len(got) != len(self.tomograms):
            raise IncompleteFamily("duplicate tomogram labels")
        missing = [lab for lab in wanted if lab not in got]
        extra = [lab for lab in got if lab not in set(wanted)]
        if missing or extra:
            raise IncompleteFamily(
                f"family must cover every element of {self.group} n={self.n} exactly "
                f"once ({len(missing)} missing, {len(extra)} extra)"
            )
        if any(t.n != self.n for t in self.tomograms):
            raise DimensionMismatch("tomogram length differs from n")
        object.__setattr__(self, "tomograms", tuple(got[lab] for lab in wanted))

    def sampling_values(self) -> np.ndarray:
        return np.array([t.sampling_value() for t in self.tomograms])

    def replace(self, label: str, probabilities) -> "TomogramFamily":
        """A copy with one tomogram's probability vector replaced."""
        new = []
        for t in self.tomograms:
            if t.label == label:
                new.append(Tomogram(label, np.asarray(probabilities, float), t.phases))
            else:
                new.append(t)
        return TomogramFamily(self.group, self.n, tuple(new))


def tomogram(phi: StateFunction, b: "Bisection | AffineBisection") -> Tomogram:
    """p_m = (1/n) <m|Phi|m> in the canonical eigenbasis of U(b)."""
    if phi.n != b.n:
        raise DimensionMismatch(f"state on n={phi.n}, bisection on n={b.n}")
    basis = canonical_eigenbasis(b)
    diag = np.einsum("km,km->m", basis.vectors.conj(), phi.phi @ basis.vectors)
    return Tomogram(basis.label, diag.real / phi.n, basis.phases)


def sampling_function(phi: StateFunction, b: "Bisection | AffineBisection") -> complex:
    """F(b) = (1/n) Tr(Phi U(b)), summed directly over the graph of sigma_b."""
    if phi.n != b.n:
        raise DimensionMismatch(f"state on n={phi.n}, bisection on n={b.n}")
    sigma = np.asarray(b.sigma)
    return complex(phi.phi[np.arange(phi.n), sigma].sum() / phi.n)


def tomogram_family(
    phi: StateFunction, group: str, max_n: int | None = None
) -> TomogramFamily:
    """The complete family over S_n or Aff_n for the given state.

    The affine path reuses the n+1 distinct eigenbases (translations share
    the Fourier basis; all mu != 1 elements with a common fixed point share
    a character basis), so large primes stay cheap.
    """
    n = phi.n
    if group == "affine":
        toms = _affine_family(phi)
    elif group == "symmetric":
        toms = [tomogram(phi, b) for b in enumerate_symmetric(n, max_n)]
    else:
        raise ValueError(f"unknown group {group!r}")
    return TomogramFamily(group, n, tuple(toms))


def _affine_family(phi: StateFunction) -> list[Tomogram]:
    n = phi.n
    table = DiscreteLogTable.for_modulus(n)
    fourier = _fourier_matrix(n)
    diag_by_key: dict[object, np.ndarray] = {
        "fourier": _basis_diagonal(phi.phi, fourier)
    }
    char_bases = {x0: _character_basis(n, x0, table) for x0 in range(n)}
    for x0, B in char_bases.items():
        diag_by_key[x0] = _basis_diagonal(phi.phi, B)

    m = np.arange(n)
    toms = []
    for g in enumerate_affine(n):
        if g.mu == 1:
            p = diag_by_key["fourier"] / n
            phases = 2 * np.pi * ((-m * g.ell) % n) / n
        else:
            x0 = affine_fixed_point(g)
            p = diag_by_key[x0] / n
            phases = np.where(
                m == 0, 0.0, 2 * np.pi * ((-m * table.log(g.mu)) % (n - 1)) / (n - 1)
            )
        toms.append(Tomogram(format_element(g), p, phases))
    return toms


def _basis_diagonal(phi_mat: np.ndarray, basis: np.ndarray) -> np.ndarray:
    return np.einsum("km,km->m", basis.conj(), phi_mat @ basis).real


def _family_frame(family: TomogramFamily) -> Frame:
    if family.group == "affine":
        return frame_from_affine(family.n)
    return frame_from_symmetric(family.n)


def reconstruct_state(
    family: TomogramFamily, dual: DualFrame | None = None
) -> np.ndarray:
    """phi = weight * sum_b n * conj(F_b) * chi^b.

    The coefficient n * conj(F_b) equals the analysis coefficient
    <chi_b, phi> of the generating state, so on families generated from a
    state this returns its uniform pinching (the state itself when the
    uniform vector is one of its eigenvectors). The result is a candidate:
    validate with ``validate_tomogram_family``.
    """
    if dual is None:
        dual = dual_frame(_family_frame(family))
    coeffs = family.n * np.conj(family.sampling_values())
    return reconstruct(dual, coeffs)


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Outcome of the tomogram-family admissibility test.

    ``admissible`` iff the reconstructed function is Hermitian, trace-n and
    PSD within tolerance. On failure the witness certifies it: for a PSD
    failure, the most negative eigenvalue and its eigenvector; for a
    Hermiticity failure, a vector xi whose quadratic form xi^dagger phi xi
    has the largest non-real part.
    """

    admissible: bool
    phi: np.ndarray
    violations: tuple[str, ...]
    witness_value: complex | None = None
    witness_vector: np.ndarray | None = None


def validate_tomogram_family(
    family: TomogramFamily, tol: float = 1e-9
) -> AdmissibilityVerdict:
    """Reconstruct and decide whether the family is the tomogram set of a state."""
    phi = reconstruct_state(family)
    n = family.n
    violations: list[str] = []
    witness_value: complex | None = None
    witness_vector: np.ndarray | None = None

    herm_defect = float(np.max(np.abs(phi - phi.conj().T)))
    H = (phi + phi.conj().T) / 2
    vals, vecs = np.linalg.eigh(H)
    if vals[0] < -tol:
        violations.append(f"not positive semi-definite: min eigenvalue {vals[0]:.6e}")
        witness_value = complex(vals[0])
        witness_vector = vecs[:, 0]
    if herm_defect > tol:
        violations.append(f"not Hermitian: max |phi - phi^dagger| = {herm_defect:.6e}")
        if witness_value is None:
            K = (phi - phi.conj().T) / 2j
            kvals, kvecs = np.linalg.eigh(K)
            pick = int(np.argmax(np.abs(kvals)))
            xi = kvecs[:, pick]
            witness_value = complex(xi.conj() @ phi @ xi)
            witness_vector = xi
    tr = complex(np.trace(phi))
    if abs(tr - n) > tol * n:
        violations.append(f"trace is {tr.real:.17g}{tr.imag:+.3e}j, expected {n}")
    return AdmissibilityVerdict(
        admissible=not violations,
        phi=phi,
        violations=tuple(violations),
        witness_value=witness_value,
        witness_vector=witness_vector,
    )


# -- discrete Fourier identities ----------------------------------------------

def fourier_identity_residual(phi: StateFunction, g: AffineBisection) -> float:
    """| n F(g) - DFT of the tomogram |, both sides computed independently.

    mu = 1: n F = sum_m e^{-2 pi i m l / n} <psi_m|Phi|psi_m> over the Fourier
    basis. mu != 1: n F = sum_m e^{-2 pi i m log(mu)/(n-1)} <m_x0|Phi|m_x0>
    over the fixed-point-plus-characters basis (the m = 0 term is the value
    phi(x0, x0) with unit phase).
    """
    if not isinstance(g, AffineBisection):
        raise NotOddPrime("fourier identities require an affine bisection")
    n = phi.n
    if g.n != n:
        raise DimensionMismatch(f"state on n={n}, bisection on n={g.n}")
    lhs = n * sampling_function(phi, g)
    m = np.arange(n)
    if g.mu == 1:
        basis = _fourier_matrix(n)
        weights = np.exp(-2j * np.pi * m * g.ell / n)
    else:
        table = DiscreteLogTable.for_modulus(n)
        basis = _character_basis(n, affine_fixed_point(g), table)
        weights = np.exp(-2j * np.pi * m * table.log(g.mu) / (n - 1))
        weights[0] = 1.0
    rhs = np.sum(weights * _basis_diagonal(phi.phi, basis))
    return float(abs(lhs - rhs))


# -- orthonormal basis families ------------------------------------------------

def affine_basis_family(n: int) -> list[np.ndarray]:
    """The n + 1 orthonormal bases the affine group produces.

    The Fourier basis (shared by all translations) followed by the n
    character bases indexed by their fixed point. Orthonormal, but *not*
    mutually unbiased: indicator columns meet character columns in overlaps
    of modulus 0 or 1/sqrt(n-1) rather than 1/sqrt(n).
    """
    require_odd_prime(n)
    table = DiscreteLogTable.for_modulus(n)
    return [_fourier_matrix(n)] + [_character_basis(n, x0, table) for x0 in range(n)]


def mub_family(n: int) -> list[np.ndarray]:
    """n + 1 mutually unbiased bases for odd prime n.

    The standard basis plus, for r = 0..n-1, the eigenbasis of the
    phase-twisted unit translation T(r) = D_r^dagger X D_r, where X is the
    cyclic shift and D_r = diag(e^{i s_r(j)}) with
    s_r(j) = (2 pi / n) * r * inv2 * j (j - 1) and inv2 the inverse of 2
    mod n. Eigenvectors are D_r^dagger (Fourier columns); r = 0 gives the
    Fourier basis itself. The construction self-checks the unbiasedness law
    max | |<e_j|f_k>|^2 - 1/n | <= 1e-10 and raises ``UnbiasednessFailed``
    otherwise.
    """
    require_odd_prime(n)
    inv2 = pow(2, -1, n)
    j = np.arange(n)
    fourier = _fourier_matrix(n)
    bases = [np.eye(n, dtype=complex)]
    for r in range(n):
        s = 2 * np.pi * ((r * inv2 * j * (j - 1)) % n) / n
        bases.append(np.exp(-1j * s)[:, None] * fourier)
    dev = mub_max_deviation(bases)
    if dev > MUB_TOL:
        raise UnbiasednessFailed(
            f"constructed bases deviate from |overlap|^2 = 1/{n} by {dev:.3e}"
        )
    return bases


def mub_max_deviation(bases: list[np.ndarray]) -> float:
    """max over distinct basis pairs and entries of | |overlap|^2 - 1/n |."""
    n = bases[0].shape[0]
    worst = 0.0
    for a in range(len(bases)):
        for b in range(a + 1, len(bases)):
            ov = np.abs(bases[a].conj().T @ bases[b]) ** 2
            worst = max(worst, float(np.max(np.abs(ov - 1.0 / n))))
    return worst


def orthonormality_residual(basis: np.ndarray) -> float:
    n = basis.shape[0]
    return float(np.max(np.abs(basis.conj().T @ basis - np.eye(n))))


def weyl_commutation_check(n: int) -> float:
    """max |XY - omega Y X| for the cyclic shift X and Y = diag(omega^{-j}).

    omega = e^{2 pi i / n}; the diagonal is conjugated so that the stated
    relation (rather than its inverse) holds with X shifting upward. For
    n = 2 this is the Pauli anticommutation, omega = -1.
    """
    if n < 2:
        raise DimensionMismatch(f"need n >= 2, got {n}")
    shift = Bisection(tuple((j + 1) % n for j in range(n)))
    X = permutation_matrix(shift)
    omega = np.exp(2j * np.pi / n)
    Y = np.diag(omega ** (-np.arange(n, dtype=float)))
    return float(np.max(np.abs(X @ Y - omega * (Y @ X))))


# -- CSV wire format ------------------------------------------------------------
#
# One row per group element: label, theta_0..theta_{n-1}, p_0..p_{n-1}.

CSV_HEADER_PREFIX = "element"


def tomogram_csv(family: TomogramFamily) -> str:
    n = family.n
    header = (
        [CSV_HEADER_PREFIX]
        + [f"theta_{m}" for m in range(n)]
        + [f"p_{m}" for m in range(n)]
    )
    lines = [",".join(header)]
    for t in family.tomograms:
        cells = [t.label]
        cells += [format_float(x) for x in t.phases]
        cells += [format_float(x) for x in t.probabilities]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def parse_tomogram_csv(text: str) -> TomogramFamily:
    """Parse and validate a family; enforces completeness and the probability
    invariants (via the Tomogram and TomogramFamily constructors)."""
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    if rows and rows[0].split(",")[0] == CSV_HEADER_PREFIX:
        rows = rows[1:]
    if not rows:
        raise IncompleteFamily("empty tomogram file")
    toms = []
    n = None
    group = None
    for row in rows:
        cells = row.split(",")
        # affine labels contain one comma: "a:mu,ell" splits into two cells
        if cells[0].startswith("a:"):
            label = cells[0] + "," + cells[1]
            rest = cells[2:]
            row_group = "affine"
        else:
            label = cells[0]
            rest = cells[1:]
            row_group = "symmetric"
        if len(rest) % 2 != 0:
            raise IncompleteFamily(f"malformed row for {label!r}")
        row_n = len(rest) // 2
        if n is None:
            n, group = row_n, row_group
        elif row_n != n or row_group != group:
            raise IncompleteFamily("rows disagree on n or group")
        parse_element(label, n)  # validates the label shape
        phases = np.array([float(x) for x in rest[:n]])
        probs = np.array([float(x) for x in rest[n:]])
        toms.append(Tomogram(label, probs, phases))
    return TomogramFamily(group, n, tuple(toms))
