"""Modular arithmetic over Z_n: primality, inverses, primitive roots, discrete logs.

The affine constructions need Z_n to be a field with n an odd prime; every
routine that requires field structure checks this and raises ``NotOddPrime``
otherwise. Moduli stay small (the affine enumeration is capped at n = 199),
so trial division and a precomputed log table are the right tools.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotInvertible, NotOddPrime, ZeroArgument


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_odd_prime(n: int) -> bool:
    """True iff n is prime and n != 2."""
    return n != 2 and is_prime(n)


def require_odd_prime(n: int) -> int:
    if not is_odd_prime(n):
        raise NotOddPrime(f"n must be an odd prime, got {n}")
    return n


def mod_inverse(a: int, n: int) -> int:
    """Multiplicative inverse of a modulo n.

    Raises ``NotInvertible`` when gcd(a, n) != 1 (in particular for a = 0).
    """
    try:
        return pow(a, -1, n)
    except ValueError as exc:
        raise NotInvertible(f"{a} is not invertible modulo {n}") from exc


def multiplicative_order(a: int, n: int) -> int:
    a %= n
    if a == 0:
        raise ZeroArgument("order of 0 is undefined")
    x, k = a, 1
    while x != 1:
        x = x * a % n
        k += 1
        if k > n:
            raise NotInvertible(f"{a} generates no finite order modulo {n}")
    return k


def primitive_root(n: int) -> int:
    """Smallest generator of the multiplicative group of Z_n, n an odd prime.

    The choice of the smallest such residue is deterministic, so log tables
    and everything derived from them are reproducible across runs.
    """
    require_odd_prime(n)
    for g in range(2, n):
        if multiplicative_order(g, n) == n - 1:
            return g
    raise NotOddPrime(f"no primitive root found for {n}")  # unreachable for prime n


@dataclass(frozen=True)
class DiscreteLogTable:
    """Precomputed discrete logarithm base the smallest primitive root.

    ``log_of[a] = e`` with generator**e = a (mod n), e in {0..n-2}, for every
    nonzero residue a. The map is a bijection {1..n-1} -> {0..n-2}.
    """

    modulus: int
    generator: int
    log_of: dict[int, int] = field(repr=False)

    @classmethod
    def for_modulus(cls, n: int) -> "DiscreteLogTable":
        g = primitive_root(n)
        table: dict[int, int] = {}
        x = 1
        for e in range(n - 1):
            table[x] = e
            x = x * g % n
        return cls(modulus=n, generator=g, log_of=table)

    def log(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise ZeroArgument(f"discrete log of 0 modulo {self.modulus}")
        return self.log_of[a]


def discrete_log(table: DiscreteLogTable, a: int) -> int:
    """Exponent e with generator**e = a (mod n); raises ``ZeroArgument`` for a = 0."""
    return table.log(a)
