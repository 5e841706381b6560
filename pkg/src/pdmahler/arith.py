"""Small integer arithmetic helpers: factorization, Moebius, totient, Kronecker."""

from __future__ import annotations

from functools import lru_cache
from math import gcd


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as ``((p, e), ...)`` with p increasing."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def units(n: int) -> list[int]:
    """Residues 1 <= a < max(n, 2) coprime to n (for n = 1 this is [1])."""
    if n == 1:
        return [1]
    return [a for a in range(1, n) if gcd(a, n) == 1]


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(D: int, m: int) -> int:
    """Kronecker symbol (D/m), the completely multiplicative extension of Jacobi."""
    if m == 0:
        return 1 if D in (1, -1) else 0
    result = 1
    if m < 0:
        m = -m
        if D < 0:
            result = -result
    v = 0
    while m % 2 == 0:
        m //= 2
        v += 1
    if v:
        if D % 2 == 0:
            return 0
        if v % 2 and D % 8 in (3, 5):
            result = -result
    if m == 1:
        return result
    return result * jacobi(D, m)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(abs(n)))


def is_fundamental_discriminant(D: int) -> bool:
    """True for discriminants of quadratic fields (D = 1 excluded)."""
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False
