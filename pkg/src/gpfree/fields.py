"""Quadratic fields Q(sqrt(d)): discriminants, quadratic characters, prime splitting.

The quadratic character chi(n) = (D/n) is the Kronecker symbol of the field
discriminant D, so it is defined at n = 2 as well (it agrees with the Jacobi
symbol on odd n coprime to D).  chi classifies rational primes: chi(p) = -1
inert, chi(p) = 1 split, chi(p) = 0 ramified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import gmpy2

from .errors import InvalidDError, NonSquarefreeError, NotPrimeError
from .primes import is_prime, primes_up_to

# The nine imaginary quadratic fields with class number 1 (Stark-Heegner).
CLASS_NUMBER_ONE_D = (-1, -2, -3, -7, -11, -19, -43, -67, -163)


def is_squarefree(n: int) -> bool:
    """Squarefreeness by trial division up to sqrt(|n|)."""
    n = abs(n)
    if n == 0:
        return False
    if n % 4 == 0:
        return False
    for p in range(3, math.isqrt(n) + 1, 2):
        if n % (p * p) == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A quadratic field Q(sqrt(d)) with its discriminant and basic flags."""

    d: int
    discriminant: int
    is_imaginary: bool
    class_number_one: bool

    def __post_init__(self):
        assert self.discriminant % 4 in (0, 1)
        if self.class_number_one:
            assert self.is_imaginary


def make_field(d: int) -> FieldSpec:
    """Build the FieldSpec for Q(sqrt(d)), d squarefree and not 0 or 1.

    D = d when d = 1 mod 4, else D = 4d.
    """
    if d in (0, 1):
        raise InvalidDError(f"d = {d} does not define a quadratic field")
    if not is_squarefree(d):
        raise NonSquarefreeError(f"d = {d} is not squarefree")
    discriminant = d if d % 4 == 1 else 4 * d
    return FieldSpec(
        d=d,
        discriminant=discriminant,
        is_imaginary=d < 0,
        class_number_one=d in CLASS_NUMBER_ONE_D,
    )


class Splitting(Enum):
    INERT = "inert"
    SPLIT = "split"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class SplitType:
    """Behaviour of a rational prime p, with the norms of the prime ideals above it.

    The induced norms multiply to p^2: inert [p^2], split [p, p], ramified [p]
    (the ramified prime ideal has norm p but appears squared in (p)).
    """

    kind: Splitting
    ideal_norms: tuple[int, ...]


def quad_character(field: FieldSpec, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1; completely multiplicative, 0 iff gcd(n, D) > 1."""
    if n < 1:
        raise ValueError("quad_character needs n >= 1")
    return int(gmpy2.kronecker(field.discriminant, n))


def split_type(field: FieldSpec, p: int) -> SplitType:
    """Splitting of the rational prime p in the field."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    chi = quad_character(field, p)
    if chi == -1:
        return SplitType(Splitting.INERT, (p * p,))
    if chi == 1:
        return SplitType(Splitting.SPLIT, (p, p))
    return SplitType(Splitting.RAMIFIED, (p,))


def achievable_norm(field: FieldSpec, n: int) -> bool:
    """True iff n is the norm of a nonzero ideal of O_K.

    n is achievable iff every inert prime divides n to an even power.  For the
    class number 1 imaginary fields this coincides with element norms.
    """
    if n < 1:
        raise ValueError("achievable_norm needs n >= 1")
    for p, e in _factorize(n):
        if quad_character(field, p) == -1 and e % 2 == 1:
            return False
    return True


def _factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as (p, exponent) pairs."""
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            e += 1
            n //= p
        if e:
            out.append((p, e))
    f = 5
    step = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            e += 1
            n //= f
        if e:
            out.append((f, e))
        f += step
        step = 6 - step  # alternate +2/+4 over 6k +- 1
    if n > 1:
        out.append((n, 1))
    return out


def smallest_nonunit_norms(field: FieldSpec, k: int) -> list[int]:
    """The k smallest prime-ideal norms, with multiplicity (split p contributes two).

    Norms coming from a prime p are >= p, so scanning primes up to X yields all
    candidate norms <= X; we extend the scan until the k-th smallest is safe.
    """
    if k < 1:
        raise ValueError("k >= 1 required")
    bound = 64
    while True:
        norms: list[int] = []
        for p in primes_up_to(bound):
            norms.extend(split_type(field, int(p)).ideal_norms)
        norms.sort()
        if len(norms) >= k and norms[k - 1] <= bound:
            return norms[:k]
        bound *= 4
