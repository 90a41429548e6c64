"""The groupoid convolution algebra over the pair groupoid and its states.

A complex function f on the pair groupoid is stored as the n x n matrix
F[k, j] = f(k, j), where (k, j) is the arrow j -> k. Under this indexing the
convolution (f * g)(m, j) = sum_k f(m, k) g(k, j) is literally the matrix
product, the involution is the conjugate transpose, and the scalar product of
L2(G) is the Hilbert-Schmidt inner product: the algebra is M_n(C) on the nose.

States are positive semi-definite functions phi with (1/n) sum_k phi(k, k)=1,
i.e. Hermitian PSD matrices of trace n; the density matrix is Phi / n. A
state evaluates an algebra element through the normalized scalar product
omega(A_f) = (1/n) <phi, f>.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidState, NotSquare
from .serialize import format_float

#: Default tolerance for state invariants (Hermiticity, PSD, normalization).
STATE_TOL = 1e-9


def as_element(f: np.ndarray) -> np.ndarray:
    """Validate and return f as a complex square matrix with finite entries."""
    arr = np.asarray(f, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("algebra element has non-finite entries")
    return arr


def unit_element(n: int) -> np.ndarray:
    """The convolution unit: the characteristic function of the units (k = j)."""
    return np.eye(n, dtype=complex)


def convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f * g)(m, j) = sum_k f(m, k) g(k, j), the row-column product."""
    f, g = as_element(f), as_element(g)
    if f.shape != g.shape:
        raise DimensionMismatch(f"shapes differ: {f.shape} vs {g.shape}")
    return f @ g


def involution(f: np.ndarray) -> np.ndarray:
    """f-dagger: (k, j) entry becomes the conjugate of the (j, k) entry."""
    return as_element(f).conj().T


def tracial_state(f: np.ndarray) -> complex:
    """tau(A_f) = (1/n) sum_k f(k, k); tracial and normalized (tau(unit) = 1)."""
    f = as_element(f)
    return complex(np.trace(f) / f.shape[0])


def hs_inner(f: np.ndarray, g: np.ndarray) -> complex:
    """<f, g> = sum_{j,k} conj(f(j,k)) g(j,k) = Tr(F-dagger G); conjugate-linear in f."""
    f, g = as_element(f), as_element(g)
    if f.shape != g.shape:
        raise DimensionMismatch(f"shapes differ: {f.shape} vs {g.shape}")
    return complex(np.sum(f.conj() * g))


def hs_norm(f: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(f, dtype=complex)))


def trivial_projector(n: int) -> np.ndarray:
    """P with every entry 1/n: rank-1 projector onto the uniform vector."""
    return np.full((n, n), 1.0 / n, dtype=complex)


def is_positive_semidefinite(
    phi: np.ndarray, tol: float = STATE_TOL, return_witness: bool = False
):
    """Check Hermiticity within tol and min eigenvalue >= -tol.

    For the pair groupoid this is equivalent to the quadratic-form positivity
    of the function (sum over conj(xi_r) xi_s phi(r, s) >= 0 for all xi).
    With ``return_witness`` the result is ``(ok, lam_min, eigvec)`` where the
    pair certifies the most negative direction of the Hermitian part.
    """
    arr = np.asarray(phi, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {arr.shape}")
    herm_defect = float(np.max(np.abs(arr - arr.conj().T))) if arr.size else 0.0
    H = (arr + arr.conj().T) / 2
    vals, vecs = np.linalg.eigh(H)
    lam_min = float(vals[0])
    ok = herm_defect <= tol and lam_min >= -tol
    if return_witness:
        return ok, lam_min, vecs[:, 0]
    return ok


@dataclass(frozen=True)
class StateFunction:
    """A state as its positive semi-definite groupoid function phi.

    Invariants (checked on construction): Hermitian, PSD, trace(Phi) = n.
    The density-matrix view is ``density() = Phi / n``.
    """

    phi: np.ndarray
    tol: float = STATE_TOL

    def __post_init__(self):
        arr = as_element(self.phi)
        violations = validate_state_matrix(arr, self.tol)
        if violations:
            raise InvalidState(violations)
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "phi", arr)

    @property
    def n(self) -> int:
        return self.phi.shape[0]

    def density(self) -> np.ndarray:
        return self.phi / self.n

    @classmethod
    def from_density(cls, rho: np.ndarray, tol: float = STATE_TOL) -> "StateFunction":
        rho = as_element(rho)
        return cls(rho * rho.shape[0], tol)


def validate_state_matrix(phi: np.ndarray, tol: float = STATE_TOL) -> list[str]:
    """Which state invariants does phi violate? Empty list means valid."""
    arr = as_element(phi)
    n = arr.shape[0]
    out = []
    herm = float(np.max(np.abs(arr - arr.conj().T)))
    if herm > tol:
        out.append(f"not Hermitian: max |phi - phi^dagger| = {herm:.3e}")
    tr = complex(np.trace(arr))
    if abs(tr - n) > tol * max(n, 1):
        out.append(f"trace is {tr:.17g}, expected {n}")
    ok, lam_min, _ = is_positive_semidefinite(arr, tol, return_witness=True)
    if lam_min < -tol:
        out.append(f"not positive semi-definite: min eigenvalue = {lam_min:.3e}")
    return out


def evaluate_state(phi: "StateFunction | np.ndarray", f: np.ndarray) -> complex:
    """omega(A_f) = (1/n) <phi, f>; omega(unit) = 1 for a valid state."""
    mat = phi.phi if isinstance(phi, StateFunction) else as_element(phi)
    f = as_element(f)
    if mat.shape != f.shape:
        raise DimensionMismatch(f"shapes differ: {mat.shape} vs {f.shape}")
    return complex(hs_inner(mat, f) / mat.shape[0])


def random_state(n: int, seed: int) -> StateFunction:
    """Seeded Wishart-style state: Phi = n (G^dagger G) / Tr(G^dagger G)."""
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    W = G.conj().T @ G
    t = np.trace(W).real
    # divide componentwise: float division is correctly rounded, so the
    # n = 1 state comes out exactly [[1]]
    return StateFunction(n * W.real / t + 1j * (n * W.imag / t))


# -- JSON wire format --------------------------------------------------------
#
# {"n": int, "phi": [[[re, im], ...], ...]}, row-major.

def matrix_to_state_json(phi: np.ndarray) -> str:
    """Serialize any square matrix in the state wire format (no validation)."""
    arr = as_element(phi)
    rows = []
    for row in arr:
        rows.append(
            "[" + ", ".join(
                f"[{format_float(z.real)}, {format_float(z.imag)}]" for z in row
            ) + "]"
        )
    body = ",\n    ".join(rows)
    return '{\n  "n": %d,\n  "phi": [\n    %s\n  ]\n}' % (arr.shape[0], body)


def state_to_json(state: StateFunction) -> str:
    return matrix_to_state_json(state.phi)


def state_from_json(text: str, tol: float = STATE_TOL) -> StateFunction:
    """Parse and validate; raises ``InvalidState`` listing every failed invariant."""
    data = json.loads(text)
    try:
        n = int(data["n"])
        raw = data["phi"]
    except (KeyError, TypeError) as exc:
        raise InvalidState([f"malformed state JSON: {exc}"]) from exc
    arr = np.empty((n, n), dtype=complex)
    try:
        for j in range(n):
            for k in range(n):
                re, im = raw[j][k]
                arr[j, k] = complex(re, im)
    except (IndexError, TypeError, ValueError) as exc:
        raise InvalidState([f"phi is not an {n}x{n} array of [re, im] pairs"]) from exc
    violations = validate_state_matrix(arr, tol)
    if violations:
        raise InvalidState(violations)
    return StateFunction(arr, tol)
