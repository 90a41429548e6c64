"""The pair groupoid over {0..n-1}: transitions, bisections, and their groups.

A transition (k, j) is the arrow j -> k; transitions compose partially by
matching endpoints, (m, k) o (k, j) = (m, j). A bisection of the pair
groupoid is the graph of a permutation sigma of the base set, and the set of
bisections is a group isomorphic to S_n under composition of permutations.
For n an odd prime the affine maps j -> mu*j + l (mu != 0) form the subgroup
Aff_n, enumerated here in (mu, l) order.

Outcomes are 0-based so the base set is literally Z_n; all matrices and
Fourier sums elsewhere in the package rely on that identification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import (
    DimensionMismatch,
    NoUniqueFixedPoint,
    NotComposable,
    TooLarge,
    Unsupported,
)
from .modular import mod_inverse, require_odd_prime

#: Default cap on full S_n enumeration (8! = 40320 permutation matrices).
MAX_FACTORIAL_N = 8

#: Cap on Aff_n enumeration.
MAX_AFFINE_N = 199


@dataclass(frozen=True)
class Transition:
    """Arrow (target, source): source -> target of the pair groupoid."""

    target: int
    source: int

    def is_unit(self) -> bool:
        return self.target == self.source


def unit(x: int) -> Transition:
    return Transition(x, x)


def compose(beta: Transition, alpha: Transition) -> Transition:
    """(m, k) o (k, j) = (m, j); raises ``NotComposable`` unless endpoints match."""
    if beta.source != alpha.target:
        raise NotComposable(f"cannot compose {beta} after {alpha}")
    return Transition(beta.target, alpha.source)


def inverse(alpha: Transition) -> Transition:
    return Transition(alpha.source, alpha.target)


def all_transitions(n: int) -> list[Transition]:
    return [Transition(k, j) for k in range(n) for j in range(n)]


@dataclass(frozen=True)
class Bisection:
    """A bisection of the pair groupoid, stored as its permutation.

    ``sigma[j]`` is the target of the unique arrow in the bisection with
    source j; the characteristic function chi_b and the unitary U(b) are
    derived from it, never stored.
    """

    sigma: tuple[int, ...]

    def __post_init__(self):
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(n)):
            raise ValueError(f"sigma is not a permutation of 0..{n - 1}: {self.sigma}")

    @property
    def n(self) -> int:
        return len(self.sigma)

    def __call__(self, j: int) -> int:
        return self.sigma[j]

    def inverse(self) -> "Bisection":
        inv = [0] * self.n
        for j, k in enumerate(self.sigma):
            inv[k] = j
        return Bisection(tuple(inv))

    def fixed_points(self) -> list[int]:
        return [j for j, k in enumerate(self.sigma) if j == k]

    def arrows(self) -> list[Transition]:
        return [Transition(k, j) for j, k in enumerate(self.sigma)]

    def cycles(self) -> list[list[int]]:
        """Cycle decomposition; cycles ordered by (and started at) smallest element."""
        seen = [False] * self.n
        out: list[list[int]] = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.sigma[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.sigma[j]
            out.append(cyc)
        return out

    def is_involution(self) -> bool:
        return all(self.sigma[k] == j for j, k in enumerate(self.sigma))

    def one_line(self) -> str:
        """One-line notation, e.g. ``"2 0 1"``."""
        return " ".join(str(k) for k in self.sigma)

    @classmethod
    def from_one_line(cls, text: str) -> "Bisection":
        return cls(tuple(int(tok) for tok in text.split()))


def identity_bisection(n: int) -> Bisection:
    return Bisection(tuple(range(n)))


def bisection_compose(b2: Bisection, b1: Bisection) -> Bisection:
    """Group law: sigma of the product is sigma_b2 after sigma_b1."""
    if b2.n != b1.n:
        raise DimensionMismatch(f"cardinalities differ: {b2.n} vs {b1.n}")
    return Bisection(tuple(b2.sigma[k] for k in b1.sigma))


def permutation_matrix(b: "Bisection | AffineBisection") -> np.ndarray:
    """U(b)[k, j] = 1 iff k = sigma_b(j); equals the matrix of chi_b.

    The map b -> U(b) is the fundamental unitary representation:
    U(b2 * b1) = U(b2) U(b1), with 0/1 entries so unitarity is exact.
    """
    sigma = b.sigma if isinstance(b, Bisection) else b.to_bisection().sigma
    n = len(sigma)
    U = np.zeros((n, n), dtype=complex)
    U[np.asarray(sigma), np.arange(n)] = 1.0
    return U


def enumerate_symmetric(n: int, max_n: int | None = None) -> list[Bisection]:
    """All n! bisections in lexicographic order of sigma.

    Raises ``Unsupported`` for n <= 2 (the frame construction needs n > 2)
    and ``TooLarge`` beyond the enumeration cap (default 8).
    """
    cap = MAX_FACTORIAL_N if max_n is None else max_n
    if n <= 2:
        raise Unsupported(f"symmetric-group frame needs n > 2, got {n}")
    if n > cap:
        raise TooLarge(f"n = {n} exceeds the S_n enumeration cap {cap}")
    return [Bisection(p) for p in permutations(range(n))]


def symmetric_order(n: int) -> int:
    return math.factorial(n)


@dataclass(frozen=True)
class AffineBisection:
    """The bisection of sigma(j) = mu*j + ell (mod n), n an odd prime, mu != 0."""

    mu: int
    ell: int
    modulus: int

    def __post_init__(self):
        require_odd_prime(self.modulus)
        if not 1 <= self.mu < self.modulus:
            raise ValueError(f"mu must be a nonzero residue, got {self.mu}")
        if not 0 <= self.ell < self.modulus:
            raise ValueError(f"ell must be a residue, got {self.ell}")

    @property
    def n(self) -> int:
        return self.modulus

    @property
    def sigma(self) -> tuple[int, ...]:
        n = self.modulus
        return tuple((self.mu * j + self.ell) % n for j in range(n))

    def __call__(self, j: int) -> int:
        return (self.mu * j + self.ell) % self.modulus

    def to_bisection(self) -> Bisection:
        return Bisection(self.sigma)

    def inverse(self) -> "AffineBisection":
        mu_inv = mod_inverse(self.mu, self.modulus)
        return AffineBisection(mu_inv, (-mu_inv * self.ell) % self.modulus, self.modulus)

    def label(self) -> str:
        return f"a:{self.mu},{self.ell}"

    @classmethod
    def from_label(cls, text: str, modulus: int) -> "AffineBisection":
        body = text.removeprefix("a:")
        mu_s, ell_s = body.split(",")
        return cls(int(mu_s), int(ell_s), modulus)


def affine_compose(g2: AffineBisection, g1: AffineBisection) -> AffineBisection:
    """(mu2, l2) * (mu1, l1) = (mu2*mu1, mu2*l1 + l2), matching sigma composition."""
    if g2.modulus != g1.modulus:
        raise DimensionMismatch(f"moduli differ: {g2.modulus} vs {g1.modulus}")
    n = g2.modulus
    return AffineBisection(g2.mu * g1.mu % n, (g2.mu * g1.ell + g2.ell) % n, n)


def enumerate_affine(n: int, max_n: int | None = None) -> list[AffineBisection]:
    """All n(n-1) affine bisections ordered by (mu, ell); requires n odd prime."""
    require_odd_prime(n)
    cap = MAX_AFFINE_N if max_n is None else max_n
    if n > cap:
        raise TooLarge(f"n = {n} exceeds the Aff_n enumeration cap {cap}")
    return [AffineBisection(mu, ell, n) for mu in range(1, n) for ell in range(n)]


def affine_order(n: int) -> int:
    return n * (n - 1)


def affine_fixed_point(g: AffineBisection) -> int:
    """The unique j with mu*j + ell = j (mod n), namely -ell/(mu - 1).

    Translations (mu = 1) have either no fixed point or all points fixed,
    so they raise ``NoUniqueFixedPoint``.
    """
    if g.mu == 1:
        raise NoUniqueFixedPoint(f"mu = 1 has no unique fixed point (ell = {g.ell})")
    n = g.modulus
    return (-g.ell) * mod_inverse(g.mu - 1, n) % n


# -- textual notation used by the CLI and the tomogram CSV ------------------

def format_element(b: "Bisection | AffineBisection") -> str:
    """Row key: ``"a:mu,ell"`` for affine elements, ``"perm:2 0 1"`` otherwise."""
    if isinstance(b, AffineBisection):
        return b.label()
    return "perm:" + b.one_line()


def parse_element(text: str, n: int) -> "Bisection | AffineBisection":
    text = text.strip()
    if text.startswith("a:"):
        return AffineBisection.from_label(text, n)
    if text.startswith("perm:"):
        b = Bisection.from_one_line(text.removeprefix("perm:"))
    else:
        b = Bisection.from_one_line(text)
    if b.n != n:
        raise DimensionMismatch(f"permutation {text!r} is not on {n} points")
    return b
