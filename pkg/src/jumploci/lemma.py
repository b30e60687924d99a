"""Two binomial identities behind the twisted-cohomology gauge invariance.

(a) ``sum_{i=0}^q (-1)^(q-i) / (i! p! (q-i)!) = delta_{q,0} / p!``
(b) ``sum_{i=0}^q (-1)^(q-i) C(q, i) / (p+1+q-i) = p! q! / (p+q+1)!``

The right side of (b) is the beta integral of ``(1-t)^q t^p`` over [0, 1],
which :func:`beta_integral` evaluates by expanding the polynomial, as an
independent check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial


@dataclass(frozen=True)
class LemmaResult:
    p: int
    q: int
    a_left: Fraction
    a_right: Fraction
    b_left: Fraction
    b_right: Fraction
    b_integral: Fraction

    @property
    def ok(self) -> bool:
        return self.a_left == self.a_right and self.b_left == self.b_right == self.b_integral

    def __bool__(self) -> bool:
        return self.ok


def identity_a(p: int, q: int) -> tuple[Fraction, Fraction]:
    left = sum((Fraction((-1) ** (q - i), factorial(i) * factorial(p) * factorial(q - i)) for i in range(q + 1)),
               Fraction(0))
    right = Fraction(1, factorial(p)) if q == 0 else Fraction(0)
    return left, right


def identity_b(p: int, q: int) -> tuple[Fraction, Fraction]:
    left = sum((Fraction((-1) ** (q - i) * comb(q, i), p + 1 + q - i) for i in range(q + 1)), Fraction(0))
    return left, Fraction(factorial(p) * factorial(q), factorial(p + q + 1))


def beta_integral(p: int, q: int) -> Fraction:
    """``int_0^1 (1-t)^q t^p dt`` by termwise integration of the expanded polynomial."""
    coeffs = [Fraction(0)] * (p + q + 1)
    for k in range(q + 1):
        coeffs[p + k] += (-1) ** k * comb(q, k)
    return sum((c / (n + 1) for n, c in enumerate(coeffs)), Fraction(0))


def lemma_oracle(p: int, q: int) -> LemmaResult:
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    a_left, a_right = identity_a(p, q)
    b_left, b_right = identity_b(p, q)
    return LemmaResult(p, q, a_left, a_right, b_left, b_right, beta_integral(p, q))


def sweep(max_index: int = 8) -> list[LemmaResult]:
    return [lemma_oracle(p, q) for p in range(max_index + 1) for q in range(max_index + 1)]
