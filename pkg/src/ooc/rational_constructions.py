"""Code families from rational functions f/g, read on the projective line.

The q + 1 points of the projective line over GF(q) are put in a cycle by the
companion matrix H of a primitive quadratic x^2 + h1 x + h0: point t is the
class of H^t (1, 0).  R1 maps wavelength lambda to the time slot of the point
[f(lambda) : g(lambda)].  R2 maps time slot t to the wavelength indexing the
point [f(beta^t) : g(beta^t)], with beta of order T.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .code_model import CodeFamily, CodeMatrix, CodeParams
from .errors import InvalidParams, NonDivisibleResult, NotADivisor, NotMonic
from .finite_field import (
    GF,
    Subgroup,
    check_enum,
    divisors,
    factorize,
    field_of_order,
    monic_polys,
    poly_dilate,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_scale,
    poly_trim,
    subgroup,
)
from .poly_constructions import mobius_int

# --- projective line ----------------------------------------------------------


def canonical_point(field: GF, a: int, b: int) -> tuple[int, int]:
    """Scale (a, b) so that b = 1, or a = 1 when b = 0."""
    if b:
        return (field.div(a, b), 1)
    if a:
        return (1, 0)
    raise InvalidParams("(0, 0) is not a projective point")


def point_index(field: GF, point: tuple[int, int]) -> int:
    """Wavelength index of a canonical point: [a : 1] -> a, [1 : 0] -> q."""
    a, b = point
    return a if b else field.q


@dataclass(frozen=True)
class CyclicOrder:
    h0: int
    h1: int
    raw: tuple          # H^i (1, 0) as computed, i = 0..q
    points: tuple       # canonical forms of raw[i]

    def index(self) -> dict:
        return {pt: i for i, pt in enumerate(self.points)}


def _apply_h(field: GF, h0: int, h1: int, v):
    a, b = v
    return (field.neg(field.mul(h0, b)), field.sub(a, field.mul(h1, b)))


def _mat_mul(field, A, B):
    return tuple(
        tuple(field.add(field.mul(A[i][0], B[0][j]), field.mul(A[i][1], B[1][j])) for j in range(2))
        for i in range(2)
    )


def _mat_pow(field, A, e):
    R = ((1, 0), (0, 1))
    while e:
        if e & 1:
            R = _mat_mul(field, R, A)
        A = _mat_mul(field, A, A)
        e >>= 1
    return R


def _companion_is_primitive(field: GF, h0: int, h1: int) -> bool:
    n = field.q**2 - 1
    H = ((0, field.neg(h0)), (1, field.neg(h1)))
    ident = ((1, 0), (0, 1))
    if _mat_pow(field, H, n) != ident:
        return False
    return all(_mat_pow(field, H, n // r) != ident for r, _ in factorize(n))


def projective_order(field: GF) -> CyclicOrder:
    for h1 in range(field.q):
        for h0 in range(1, field.q):
            if _companion_is_primitive(field, h0, h1):
                raw = [(1, 0)]
                for _ in range(field.q):
                    raw.append(_apply_h(field, h0, h1, raw[-1]))
                points = tuple(canonical_point(field, a, b) for a, b in raw)
                if len(set(points)) != field.q + 1:
                    raise AssertionError("companion powers repeat a point")
                return CyclicOrder(h0=h0, h1=h1, raw=tuple(raw), points=points)
    raise AssertionError("no primitive quadratic found")  # unreachable


# --- polynomial Mobius function and the coprime-pair count -------------------------


def _is_monic(h) -> bool:
    h = poly_trim(h)
    return bool(h) and h[-1] == 1


def mobius_poly(field: GF, h) -> int:
    h = poly_trim(h)
    if not _is_monic(h):
        raise NotMonic(f"{h} is not monic")
    count = 0
    rem = h
    while len(rem) > 1:
        # the lowest-degree monic divisor of rem is irreducible
        for deg in range(1, len(rem)):
            for g in monic_polys(field, deg):
                quo, r = poly_divmod(field, rem, g)
                if not r:
                    break
            else:
                continue
            break
        _, r2 = poly_divmod(field, quo, g)
        if not r2:
            return 0
        rem = quo
        count += 1
    return -1 if count % 2 else 1


@lru_cache(maxsize=None)
def _mobius_by_degree_cached(field: GF, d: int) -> tuple[int, ...]:
    sums = [1]
    for s in range(1, d + 1):
        check_enum(field.q**s, "monic polynomial enumeration")
        sums.append(sum(mobius_poly(field, h) for h in monic_polys(field, s)))
    return tuple(sums)


def mobius_sums_by_degree(field: GF, d: int) -> tuple[int, ...]:
    """Entry s is the sum of mobius_poly(h) over monic h of degree s, s = 0..d."""
    return _mobius_by_degree_cached(field, d)


def count_c(field: GF, d: int) -> int:
    """Number of coprime pairs (f monic, g nonzero), degrees <= d, not both constant."""
    if d < 1:
        raise InvalidParams("d must be >= 1")
    q = field.q
    total = 0
    for s, w in enumerate(mobius_sums_by_degree(field, d)):
        total += (q ** (d - s + 1) - 1) ** 2 // (q - 1) * w
    total -= q - 1
    if d <= 6 and total != q ** (2 * d + 1) - q:
        raise AssertionError(f"coprime-pair count {total} != q^(2d+1) - q")
    return total


def _polys_upto(field: GF, d: int, monic: bool):
    for vec in itertools.product(range(field.q), repeat=d + 1):
        f = poly_trim(vec)
        if not f or (monic and f[-1] != 1):
            continue
        yield vec, f


def coprime_pairs(field: GF, d: int):
    """Yield (f_vec, g_vec, f, g) with f monic, g nonzero, deg <= d, gcd 1.

    Vectors are padded to length d + 1; the order is lexicographic in
    (f_vec, g_vec).
    """
    check_enum(field.q ** (2 * (d + 1)), "rational pair enumeration")
    gs = list(_polys_upto(field, d, monic=False))
    for fv, f in _polys_upto(field, d, monic=True):
        for gv, g in gs:
            if len(poly_gcd(field, f, g)) == 1:
                yield fv, gv, f, g


def count_c_bruteforce(field: GF, d: int) -> int:
    return sum(1 for _, _, f, g in coprime_pairs(field, d) if len(f) > 1 or len(g) > 1)


# --- R1 ------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalPair:
    f: tuple
    g: tuple


def _pad(f, n):
    f = list(f)
    return tuple(f + [0] * (n - len(f)))


def h_action(field: GF, order: CyclicOrder, f, g):
    """mu0 * H (f, g), scaled so the first entry is monic."""
    nf = poly_scale(field, g, field.neg(order.h0))
    ng = poly_trim(field.sub(a, field.mul(order.h1, b))
                   for a, b in itertools.zip_longest(f, g, fillvalue=0))
    mu0 = field.inv(nf[-1])
    return poly_scale(field, nf, mu0), poly_scale(field, ng, mu0)


def r1_matrix(field: GF, order: CyclicOrder, lam: int, f, g) -> CodeMatrix:
    idx = order.index()
    pulses = []
    for x in range(lam):
        pt = canonical_point(field, poly_eval(field, f, x), poly_eval(field, g, x))
        pulses.append((x, idx[pt]))
    return CodeMatrix(lam, field.q + 1, frozenset(pulses))


def r1_expected_size(q: int, kappa: int) -> int:
    if kappa < 2 or kappa % 2:
        raise InvalidParams(f"R1 needs even kappa >= 2, got {kappa}")
    c = count_c(field_of_order(q), kappa // 2)
    if c % (q + 1):
        raise NonDivisibleResult(f"c(d)={c} not divisible by {q + 1}")
    return c // (q + 1) + 1


def construct_r1(field: GF, lam: int, kappa: int) -> CodeFamily:
    if kappa < 2 or kappa % 2:
        raise InvalidParams(f"R1 needs even kappa >= 2, got {kappa}")
    if not kappa < lam <= field.q:
        raise InvalidParams(f"need kappa < lambda <= q, got lambda={lam}, kappa={kappa}, q={field.q}")
    d = kappa // 2
    T = field.q + 1
    order = projective_order(field)
    seen = set()
    seeds = []
    for fv, gv, f, g in coprime_pairs(field, d):
        if len(f) == 1 and len(g) == 1:
            continue
        key = (fv, gv)
        if key in seen:
            continue
        orbit = [key]
        cf, cg = f, g
        for _ in range(T - 1):
            cf, cg = h_action(field, order, cf, cg)
            orbit.append((_pad(cf, d + 1), _pad(cg, d + 1)))
        if len(set(orbit)) != T:
            raise AssertionError("R1 orbit shorter than q + 1")
        seen.update(orbit)
        seeds.append(RationalPair(fv, gv))
    mats = [r1_matrix(field, order, lam, p.f, p.g) for p in seeds]
    # the constant function: every row on the first point of the cycle
    mats.append(CodeMatrix(lam, T, frozenset((x, 0) for x in range(lam))))
    info = {"construction": "R1", "p": field.p, "m": field.m, "modulus": list(field.modulus),
            "h0": order.h0, "h1": order.h1, "optimality": "asymptotic"}
    fam = CodeFamily(CodeParams(lam, T, lam, kappa), mats, provenance=info)
    fam.seeds = tuple(seeds)
    return fam


# --- R2 ------------------------------------------------------------------------


def dilate_pair(field: GF, f, g, c: int):
    """(f(cx), g(cx)) divided by the leading coefficient of f(cx)."""
    nf = poly_dilate(field, f, c)
    ng = poly_dilate(field, g, c)
    inv = field.inv(nf[-1])
    return poly_scale(field, nf, inv), poly_scale(field, ng, inv)


def is_subperiodic_pair(field: GF, f, g, sub: Subgroup) -> bool:
    """True iff (f(beta^t x), g(beta^t x)) = theta (f, g) for some t in [1, T)."""
    f, g = poly_trim(f), poly_trim(g)
    for t in range(1, sub.order):
        if dilate_pair(field, f, g, sub.elements[t]) == (f, g):
            return True
    return False


def subperiodic_by_exponents(f, g, T: int) -> bool:
    """Same test through exponents: gcd of all exponent offsets with T exceeds 1."""
    ef = [i for i, c in enumerate(f) if c]
    eg = [i for i, c in enumerate(g) if c]
    base = ef[0]
    acc = T
    for e in ef[1:] + eg:
        acc = gcd(acc, e - base)
    return acc > 1


def r2_orbits(field: GF, T: int, d: int):
    """(raw count of admissible pairs, orbit representatives) by enumeration."""
    sub = subgroup(field, T)
    seen = set()
    reps = []
    raw = 0
    for fv, gv, f, g in coprime_pairs(field, d):
        key = (fv, gv)
        if is_subperiodic_pair(field, f, g, sub):
            continue
        raw += 1
        if key in seen:
            continue
        orbit = {key}
        for t in range(1, T):
            nf, ng = dilate_pair(field, f, g, sub.elements[t])
            orbit.add((_pad(nf, d + 1), _pad(ng, d + 1)))
        seen |= orbit
        reps.append(RationalPair(fv, gv))
    return raw, reps


def r2_y(q: int, d: int, l: int) -> int:
    """The per-divisor term y(l) exactly as tabulated."""
    total = 0
    for e1 in range(d + 1):
        head = q ** ((d - e1) // l + 1) - 1
        cross = sum(q ** ((d - e1 + c * l) // l + 1) - 1 for c in range(1, e1 // l + 1))
        total += 2 * head * cross + head * head
    return total - (q - 1) ** 2 * (d + 1)


def r2_u1(q: int, d: int, T: int) -> int:
    return sum(r2_y(q, d, l) * mobius_int(l) for l in divisors(T))


def r2_N(q: int, d: int, T: int) -> int:
    u = r2_u1(q, d, T)
    if u % (q - 1):
        raise NonDivisibleResult(f"u(1)={u} not divisible by q-1={q - 1}")
    return u // (q - 1)


def r2_M(field: GF, d: int, T: int) -> int:
    return sum(w * r2_N(field.q, d - s, T) for s, w in enumerate(mobius_sums_by_degree(field, d)))


def r2_expected_size(q: int, T: int, d: int) -> int:
    """Closed-form R2 size, M(d, T) / T, evaluated literally."""
    if d < 1:
        raise InvalidParams("d must be >= 1")
    if T < 1 or (q - 1) % T:
        raise NotADivisor(f"T={T} does not divide q-1={q - 1}")
    M = r2_M(field_of_order(q), d, T)
    if M % T:
        raise NonDivisibleResult(f"M(d,T)={M} not divisible by T={T}")
    return M // T


def r2_point_index(field: GF, f, g, x: int) -> int:
    return point_index(field, canonical_point(field, poly_eval(field, f, x), poly_eval(field, g, x)))


def construct_r2(field: GF, T: int, kappa: int) -> CodeFamily:
    if kappa < 2 or kappa % 2:
        raise InvalidParams(f"R2 needs even kappa >= 2, got {kappa}")
    if T < 2 or (field.q - 1) % T:
        raise NotADivisor(f"T={T} must divide q-1={field.q - 1} and exceed 1")
    if kappa >= T:
        raise InvalidParams(f"need kappa < T, got kappa={kappa}, T={T}")
    d = kappa // 2
    sub = subgroup(field, T)
    raw, reps = r2_orbits(field, T, d)
    lam = field.q + 1
    mats = []
    for p in reps:
        pulses = frozenset((r2_point_index(field, p.f, p.g, b), t) for t, b in enumerate(sub.elements))
        mats.append(CodeMatrix(lam, T, pulses))
    info = {"construction": "R2", "p": field.p, "m": field.m, "modulus": list(field.modulus),
            "beta": sub.generator, "admissible_pairs": raw, "optimality": "asymptotic"}
    fam = CodeFamily(CodeParams(lam, T, T, kappa), mats, provenance=info)
    fam.seeds = tuple(reps)
    return fam
