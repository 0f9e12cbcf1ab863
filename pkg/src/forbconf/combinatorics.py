"""Exact-integer counting helpers used by the closed-form bounds."""
from __future__ import annotations

from functools import lru_cache
from math import comb, factorial


def multinomial(ks) -> int:
    out = factorial(sum(ks))
    for k in ks:
        out //= factorial(k)
    return out


@lru_cache(maxsize=None)
def bounded_compositions(total: int, parts: int, below: int) -> int:
    """Sum of multinomial(total; k_1..k_parts) over k_i < below with sum = total."""
    if parts == 0:
        return int(total == 0)
    out = 0
    for k in range(min(total, below - 1) + 1):
        out += comb(total, k) * bounded_compositions(total - k, parts - 1, below)
    return out


def multinomial_sum(m: int, r: int, n: int) -> int:
    """Number of length-m columns over r symbols where each of the symbols 1..r-1
    occurs at most n-1 times."""
    return sum(comb(m, k) * bounded_compositions(k, r - 1, n)
               for k in range((n - 1) * (r - 1) + 1))


def sauer_formula(m: int, k: int) -> int:
    if k < 1:
        raise ValueError("k must be at least 1")
    return sum(comb(m, i) for i in range(k))


def block_formula(m: int, r: int, p: int, q: int) -> int:
    """Exact forb(m, r, Sym(0_{p x q})) for r >= 3 and m >= (p-1)(r-1)."""
    if r < 3 or p < 1 or q < 1:
        raise ValueError("block formula needs r >= 3, p >= 1, q >= 1")
    if m < (p - 1) * (r - 1):
        raise ValueError(f"block formula needs m >= (p-1)(r-1) = {(p - 1) * (r - 1)}")
    return multinomial_sum(m, r, p) + (q - 1) * (r - 1) * comb(m, p)


def ceil_log2(p: int) -> int:
    if p < 1:
        raise ValueError("p must be positive")
    return (p - 1).bit_length()
