"""Code families from polynomial graphs over finite fields.

P1  wavelength -> time, polynomials over Z_T with zero constant term.
P2  time -> wavelength over Z_p (P5 with m = 1).
P3  wavelength -> discrete log of the value, one family member per
    projective class of polynomials.
P4  time -> discrete log of the value on the order-T subgroup.
P5  time -> field element on the order-T subgroup.

P2, P4 and P5 drop polynomials fixed by a nontrivial subgroup dilation
x -> beta^i x and keep one member of every dilation orbit: the
lexicographically smallest coefficient vector (constant term first).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

from .code_model import CodeFamily, CodeMatrix, CodeParams
from .errors import InvalidParams, NotADivisor, NotPrime
from .finite_field import (
    GF,
    Subgroup,
    build_field,
    check_enum,
    divisors,
    factorize,
    is_prime,
    poly_dilate,
    poly_eval,
    poly_trim,
    subgroup,
)


def mobius_int(n: int) -> int:
    if n < 1:
        raise InvalidParams(f"mobius_int needs n >= 1, got {n}")
    result = 1
    for _, e in factorize(n) if n > 1 else ():
        if e > 1:
            return 0
        result = -result
    return result


def is_subperiodic(field: GF, coeffs, sub: Subgroup) -> bool:
    """True iff f(beta^i x) = f(x) for some i in [1, T)."""
    f = poly_trim(coeffs)
    for i in range(1, sub.order):
        if poly_dilate(field, f, sub.elements[i]) == f:
            return True
    return False


def _field_info(field: GF) -> dict:
    return {"p": field.p, "m": field.m, "modulus": list(field.modulus)}


def dilation_orbit_reps(field: GF, sub: Subgroup, kappa: int) -> list[tuple[int, ...]]:
    """Canonical representatives of the non-sub-periodic dilation orbits.

    Vectors have length kappa + 1, constant term first.  Enumeration runs in
    lexicographic order so the first unseen member of an orbit is its minimum.
    """
    check_enum(field.q ** (kappa + 1), "polynomial enumeration")
    T = sub.order
    seen = set()
    reps = []
    for vec in itertools.product(range(field.q), repeat=kappa + 1):
        if vec in seen:
            continue
        orbit = [vec]
        for i in range(1, T):
            c = sub.elements[i]
            ck, img = 1, []
            for a in vec:
                img.append(field.mul(a, ck))
                ck = field.mul(ck, c)
            orbit.append(tuple(img))
        seen.update(orbit)
        if vec not in orbit[1:]:
            reps.append(vec)
    return reps


def _check_p1(T, lam, kappa, L):
    if not is_prime(T):
        raise NotPrime(f"T={T} must be prime")
    if L is None:
        L = list(range(lam))
    L = [int(x) for x in L]
    if len(L) != lam or len(set(L)) != lam or any(not 0 <= x < T for x in L):
        raise InvalidParams(f"wavelength set must be {lam} distinct residues mod {T}")
    if not 0 <= kappa < lam <= T:
        raise InvalidParams(f"need 0 <= kappa < lambda <= T, got kappa={kappa}, lambda={lam}, T={T}")
    return L


def construct_p1(T: int, lam: int, kappa: int, L=None) -> CodeFamily:
    L = _check_p1(T, lam, kappa, L)
    check_enum(T**kappa, "polynomial enumeration")
    mats = []
    for tail in itertools.product(range(T), repeat=kappa):
        coeffs = (0,) + tail
        pulses = []
        for row, x in enumerate(L):
            v = 0
            for c in reversed(coeffs):
                v = (v * x + c) % T
            pulses.append((row, v))
        mats.append(CodeMatrix(lam, T, frozenset(pulses)))
    return CodeFamily(
        CodeParams(lam, T, lam, kappa),
        mats,
        provenance={"construction": "P1", "p": T, "m": 1, "wavelengths": L, "optimality": "optimal"},
    )


def _subgroup_setup(field: GF, T: int, kappa: int, omega: int):
    if (field.q - 1) % T:
        raise NotADivisor(f"T={T} does not divide q-1={field.q - 1}")
    if T < 2:
        raise InvalidParams("T must be at least 2")
    if not 0 <= kappa < omega:
        raise InvalidParams(f"need 0 <= kappa < omega={omega}, got kappa={kappa}")
    return subgroup(field, T)


def construct_p5(field: GF, T: int, kappa: int) -> CodeFamily:
    sub = _subgroup_setup(field, T, kappa, T)
    mats = []
    for vec in dilation_orbit_reps(field, sub, kappa):
        pulses = frozenset((poly_eval(field, vec, b), t) for t, b in enumerate(sub.elements))
        mats.append(CodeMatrix(field.q, T, pulses))
    tag = "P2" if field.m == 1 else "P5"
    if not mats:
        warnings.warn(f"{tag} with kappa={kappa} has no admissible polynomials; family is empty")
    info = _field_info(field)
    info.update(construction=tag, beta=sub.generator, optimality="asymptotic")
    return CodeFamily(CodeParams(field.q, T, T, kappa), mats, provenance=info)


def construct_p2(p: int, T: int, kappa: int) -> CodeFamily:
    if not is_prime(p):
        raise NotPrime(f"p={p} must be prime")
    return construct_p5(build_field(p), T, kappa)


def construct_p3(field: GF, lam: int, kappa: int) -> CodeFamily:
    q = field.q
    omega = lam - kappa
    if not 1 <= lam <= q:
        raise InvalidParams(f"need 1 <= lambda <= q={q}, got {lam}")
    if not 0 <= kappa < omega:
        raise InvalidParams(f"need kappa < lambda - kappa, got kappa={kappa}, lambda={lam}")
    check_enum(q ** (kappa + 1), "polynomial enumeration")
    T = q - 1
    mats = []
    for deg in range(kappa + 1):
        for lower in itertools.product(range(q), repeat=deg):
            coeffs = list(lower) + [1]
            pulses = []
            for x in range(lam):
                v = poly_eval(field, coeffs, x)
                if v:
                    pulses.append((x, field.log(v)))
            # drop surplus pulses from the highest wavelengths
            pulses.sort()
            mats.append(CodeMatrix(lam, T, frozenset(pulses[:omega])))
    info = _field_info(field)
    info.update(construction="P3", optimality="asymptotic")
    return CodeFamily(CodeParams(lam, T, omega, kappa), mats, provenance=info)


def construct_p4(field: GF, T: int, kappa: int) -> CodeFamily:
    omega = T - kappa
    sub = _subgroup_setup(field, T, kappa, omega)
    lam = field.q - 1
    mats = []
    for vec in dilation_orbit_reps(field, sub, kappa):
        pulses = []
        for t, b in enumerate(sub.elements):
            v = poly_eval(field, vec, b)
            if v:
                pulses.append((field.log(v), t))
        # drop surplus pulses from the latest time slots
        pulses.sort(key=lambda pt: pt[1])
        mats.append(CodeMatrix(lam, T, frozenset(pulses[:omega])))
    info = _field_info(field)
    info.update(construction="P4", beta=sub.generator, optimality="asymptotic")
    return CodeFamily(CodeParams(lam, T, omega, kappa), mats, provenance=info)


@dataclass(frozen=True)
class SizeFormulaResult:
    tag: str
    params: dict
    predicted: int


def _dilation_count(q: int, T: int, kappa: int) -> int:
    total = sum(mobius_int(d) * (q ** (kappa // d + 1) - 1) for d in divisors(T))
    return total // T


def _dilation_count_printed(base: int, divisor_of: int, T: int, kappa: int) -> int:
    # the tabulated form: divisors of (base - 1) and base ** ceil((kappa + 1) / d)
    total = sum(mobius_int(d) * (base ** (-(-(kappa + 1) // d)) - 1) for d in divisors(divisor_of))
    return total // T


def expected_size(tag: str, literal: bool = False, **params) -> SizeFormulaResult:
    """Closed-form family size for a construction.

    Parameters by tag: P1 (T, kappa); P2 (p, T, kappa); P3 (q, kappa);
    P4/P5 (q, T, kappa); R1 (q, kappa); R2 (q, T, kappa).

    For P2/P4/P5 the default counts non-sub-periodic orbits with a Mobius sum
    over the divisors of T.  ``literal=True`` instead sums over the divisors
    of q - 1, which agrees only when the two divisor sets give the same sum
    (always when T = q - 1).
    """
    tag = tag.upper()
    k = params["kappa"]
    if tag == "P1":
        value = params["T"] ** k
    elif tag in ("P2", "P4", "P5"):
        q = params["p"] if tag == "P2" else params["q"]
        T = params["T"]
        if T < 1 or (q - 1) % T:
            raise NotADivisor(f"T={T} does not divide {q - 1}")
        if literal:
            value = _dilation_count_printed(q, q - 1, T, k)
        else:
            value = _dilation_count(q, T, k)
    elif tag == "P3":
        q = params["q"]
        value = (q ** (k + 1) - 1) // (q - 1)
    elif tag == "R1":
        from .rational_constructions import r1_expected_size

        value = r1_expected_size(params["q"], k)
    elif tag == "R2":
        from .rational_constructions import r2_expected_size

        if k % 2:
            raise InvalidParams("R2 needs even kappa")
        value = r2_expected_size(params["q"], params["T"], k // 2)
    else:
        raise InvalidParams(f"unknown construction {tag!r}")
    return SizeFormulaResult(tag=tag, params=dict(params), predicted=value)
