"""Arithmetic in GF(p) and GF(p^m).

Field elements are plain ints in ``[0, q)``.  For ``m > 1`` the int is the
base-``p`` encoding of the coefficient vector ``c_0 + c_1 x + ... `` with
``c_0`` the least significant digit, so ``to_vec``/``from_vec`` convert
between the two views.  Multiplication has two independent paths: the
coefficient-vector path (polynomial product reduced by the modulus) and,
for ``q <= 2**16``, a log/antilog table path.

Polynomials over a field are lists of elements, lowest degree first.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import CeilingExceeded, InvalidParams, NotADivisor, NotPrime, ZeroElement

FIELD_CEILING = 2**20
TABLE_CEILING = 2**16
ENUM_CEILING = 2**24

# Deterministic for every n < 3.3e24 (covers all 64-bit inputs).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def enum_ceiling() -> int:
    """Enumeration guard shared by the generate-and-filter constructions."""
    raw = os.environ.get("OOC_ENUM_CEILING")
    return int(raw) if raw else ENUM_CEILING


def check_enum(count: int, what: str = "enumeration") -> None:
    limit = enum_ceiling()
    if count > limit:
        raise CeilingExceeded(f"{what} needs {count} candidates, ceiling is {limit} (set OOC_ENUM_CEILING)")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin."""
    if n < 2:
        return False
    for sp in _MR_WITNESSES:
        if n % sp == 0:
            return n == sp
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Trial-division factorisation, ((prime, exponent), ...) ascending."""
    if n < 1:
        raise InvalidParams(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, m) with n = p**m, or None."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    return f[0]


def _poly_mulmod_zp(a, b, mod, p):
    # a, b, mod: coefficient lists over Z_p, mod monic of degree m
    m = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for k in range(len(out) - 1, m - 1, -1):
        c = out[k]
        if c:
            for j in range(m + 1):
                out[k - m + j] = (out[k - m + j] - c * mod[j]) % p
    out = out[:m] + [0] * (m - len(out[:m]))
    return out


def _x_order_is_full(mod, p) -> bool:
    """True iff x has multiplicative order p^m - 1 modulo ``mod``."""
    m = len(mod) - 1
    n = p**m - 1
    one = [1] + [0] * (m - 1)

    def xpow(e):
        result = one[:]
        base = [0, 1] + [0] * (m - 2) if m > 1 else [0]
        if m == 1:
            base = [(-mod[0]) % p]
        while e:
            if e & 1:
                result = _poly_mulmod_zp(result, base, mod, p)
            base = _poly_mulmod_zp(base, base, mod, p)
            e >>= 1
        return result

    if mod[0] % p == 0:
        return False
    if xpow(n) != one:
        return False
    return all(xpow(n // r) != one for r, _ in factorize(n))


class GF:
    """The finite field GF(p^m) with a fixed primitive element ``alpha``.

    ``alpha`` is the companion root (the element ``x``) when ``m > 1`` and the
    smallest primitive residue when ``m == 1``.  Instances are immutable.
    """

    def __init__(self, p: int, m: int = 1, modulus=None, ceiling: int = FIELD_CEILING):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if m < 1:
            raise InvalidParams(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > ceiling:
            raise CeilingExceeded(f"q = {q} exceeds field ceiling {ceiling}")
        self.p, self.m, self.q = p, m, q
        self._pows = tuple(p**i for i in range(m))

        if m == 1:
            self.modulus = (0, 1)
            self.alpha = self._smallest_primitive_root()
        else:
            if modulus is None:
                modulus = self._search_modulus()
            else:
                modulus = tuple(int(c) % p for c in modulus)
                if len(modulus) != m + 1 or modulus[-1] != 1:
                    raise InvalidParams(f"modulus must be monic of degree {m}")
                if not _x_order_is_full(list(modulus), p):
                    raise InvalidParams(f"modulus {modulus} is not primitive over GF({p})")
            self.modulus = tuple(modulus)
            self.alpha = p  # the element x

        self._add_table = None
        if m > 1 and p > 2 and q <= 256:
            self._add_table = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]

        self._exp = self._log = None
        if q <= TABLE_CEILING:
            exp = [1] * (q - 1)
            for k in range(1, q - 1):
                exp[k] = self.mul_vec(exp[k - 1], self.alpha)
            log = [None] * q
            for k, v in enumerate(exp):
                log[v] = k
            self._exp, self._log = tuple(exp), tuple(log)

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    def _smallest_primitive_root(self) -> int:
        p = self.p
        if p == 2:
            return 1
        n = p - 1
        primes = [r for r, _ in factorize(n)]
        for g in range(2, p):
            if all(pow(g, n // r, p) != 1 for r in primes):
                return g
        raise AssertionError("no primitive root")  # unreachable for prime p

    def _search_modulus(self):
        p, m = self.p, self.m
        # lower coefficients read as base-p digits with c_0 least significant;
        # counting up walks monic polynomials in lexicographic order of
        # (c_{m-1}, ..., c_0)
        for n in range(p**m):
            lower = [(n // p**i) % p for i in range(m)]
            cand = lower + [1]
            if _x_order_is_full(cand, p):
                return tuple(cand)
        raise AssertionError("no primitive polynomial")  # unreachable

    # --- representation -------------------------------------------------

    def to_vec(self, x: int) -> list[int]:
        return [(x // pw) % self.p for pw in self._pows]

    def from_vec(self, vec) -> int:
        vec = list(vec)
        if len(vec) > self.m:
            raise InvalidParams("coefficient vector longer than extension degree")
        return sum((int(c) % self.p) * pw for c, pw in zip(vec, self._pows))

    def elements(self) -> range:
        return range(self.q)

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.q

    # --- arithmetic ------------------------------------------------------

    def _add_digits(self, a, b):
        p = self.p
        return sum(((a // pw + b // pw) % p) * pw for pw in self._pows)

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        p = self.p
        return sum(((-(a // pw)) % p) * pw for pw in self._pows)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul_vec(self, a: int, b: int) -> int:
        """Multiply through coefficient vectors, never touching the tables."""
        if self.m == 1:
            return a * b % self.p
        prod_vec = _poly_mulmod_zp(self.to_vec(a), self.to_vec(b), list(self.modulus), self.p)
        return self.from_vec(prod_vec)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.p
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self.mul_vec(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("0 has no inverse")
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def exp(self, k: int) -> int:
        """alpha ** k."""
        if self._exp is not None:
            return self._exp[k % (self.q - 1)]
        return self.pow(self.alpha, k % (self.q - 1))

    def log(self, x: int) -> int:
        """Discrete log base alpha, in [0, q-1)."""
        if x == 0:
            raise ZeroElement("log of 0")
        if self._log is not None:
            return self._log[x]
        acc = 1
        for k in range(self.q - 1):
            if acc == x:
                return k
            acc = self.mul(acc, self.alpha)
        raise AssertionError("alpha is not primitive")  # unreachable


def build_field(p: int, m: int = 1, modulus=None, ceiling: int = FIELD_CEILING) -> GF:
    return GF(p, m, modulus=modulus, ceiling=ceiling)


def field_of_order(q: int, ceiling: int = FIELD_CEILING) -> GF:
    pp = prime_power(q)
    if pp is None:
        raise NotPrime(f"{q} is not a prime power")
    return GF(pp[0], pp[1], ceiling=ceiling)


def element_order(field: GF, x: int) -> int:
    if x == 0:
        raise ZeroElement("0 has no multiplicative order")
    order = field.q - 1
    for r, _ in factorize(order) if order > 1 else ():
        while order % r == 0 and field.pow(x, order // r) == 1:
            order //= r
    return order


@dataclass(frozen=True)
class Subgroup:
    order: int
    generator: int
    elements: tuple[int, ...]


def subgroup(field: GF, T: int) -> Subgroup:
    """The order-T subgroup of GF(q)*, generated by alpha^((q-1)/T)."""
    n = field.q - 1
    if T < 1 or n % T:
        raise NotADivisor(f"{T} does not divide q - 1 = {n}")
    beta = field.exp(n // T)
    elems = [1]
    for _ in range(T - 1):
        elems.append(field.mul(elems[-1], beta))
    return Subgroup(order=T, generator=beta, elements=tuple(elems))


# --- polynomials over a field -----------------------------------------------


def poly_trim(f) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_deg(f) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(poly_trim(f)) - 1


def poly_eval(field: GF, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


def poly_add(field: GF, f, g) -> list[int]:
    return poly_trim(field.add(a, b) for a, b in itertools.zip_longest(f, g, fillvalue=0))


def poly_sub(field: GF, f, g) -> list[int]:
    return poly_trim(field.sub(a, b) for a, b in itertools.zip_longest(f, g, fillvalue=0))


def poly_scale(field: GF, f, c: int) -> list[int]:
    return poly_trim(field.mul(a, c) for a in f)


def poly_mul(field: GF, f, g) -> list[int]:
    f, g = poly_trim(f), poly_trim(g)
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = field.add(out[i + j], field.mul(a, b))
    return poly_trim(out)


def poly_divmod(field: GF, f, g):
    f, g = poly_trim(f), poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = f[:]
    dg = len(g) - 1
    lead_inv = field.inv(g[-1])
    quot = [0] * max(len(f) - dg, 0)
    while len(rem) - 1 >= dg and rem:
        shift = len(rem) - 1 - dg
        c = field.mul(rem[-1], lead_inv)
        quot[shift] = c
        for j, b in enumerate(g):
            rem[shift + j] = field.sub(rem[shift + j], field.mul(c, b))
        rem = poly_trim(rem)
    return poly_trim(quot), rem


def poly_monic(field: GF, f) -> list[int]:
    f = poly_trim(f)
    if not f:
        return f
    return poly_scale(field, f, field.inv(f[-1]))


def poly_gcd(field: GF, f, g) -> list[int]:
    """Monic gcd by the remainder chain; gcd(0, 0) is the zero polynomial."""
    a, b = poly_monic(field, f), poly_monic(field, g)
    while b:
        _, r = poly_divmod(field, a, b)
        a, b = b, poly_monic(field, r)
    return a


def poly_dilate(field: GF, f, c: int) -> list[int]:
    """Coefficients of f(c x)."""
    out, ck = [], 1
    for a in f:
        out.append(field.mul(a, ck))
        ck = field.mul(ck, c)
    return poly_trim(out)


def monic_polys(field: GF, degree: int):
    """All monic polynomials of exactly the given degree, in a fixed order."""
    for lower in itertools.product(range(field.q), repeat=degree):
        yield list(lower) + [1]

