"""Phase-encoded sequences for a K-mode comb source.

Phases are stored as integer levels modulo q (phase = 2*pi*level/q) and only
become complex numbers when evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (
    ConditionViolated,
    DuplicateA,
    FamilyTooLarge,
    InvalidParams,
    LengthMismatch,
    NotOddPrime,
    NotPowerOfTwo,
)
from .finite_field import factorize, is_prime

BENT_TOL = 1e-9


@dataclass(frozen=True)
class MllParams:
    K: int
    delta_omega: float = math.pi / 10
    omega0: float = math.pi / 4

    def __post_init__(self):
        if self.K < 2 or self.delta_omega <= 0:
            raise InvalidParams(f"need K >= 2 and delta_omega > 0, got {self}")

    @property
    def period(self) -> float:
        return 2 * math.pi / self.delta_omega

    def physical_tau(self, tau_norm):
        return np.asarray(tau_norm) * self.period


@dataclass(frozen=True)
class PhaseSequence:
    q: int
    levels: tuple
    label: str = ""

    def __post_init__(self):
        levels = tuple(int(v) for v in self.levels)
        if any(not 0 <= v < self.q for v in levels):
            raise InvalidParams(f"levels must lie in [0, {self.q})")
        object.__setattr__(self, "levels", levels)

    @property
    def K(self) -> int:
        return len(self.levels)

    @property
    def phases(self) -> np.ndarray:
        return 2 * np.pi * np.asarray(self.levels, dtype=float) / self.q


def _pair_weights(m: PhaseSequence, n: PhaseSequence) -> np.ndarray:
    if m.K != n.K:
        raise LengthMismatch(f"sequence lengths differ: {m.K} vs {n.K}")
    return np.exp(-1j * (n.phases - m.phases))


def theta(m: PhaseSequence, n: PhaseSequence, tau, mll: MllParams):
    """sum_k exp(-i (k dw tau + phi_n[k] - phi_m[k])); tau may be an array."""
    w = _pair_weights(m, n)
    tau = np.asarray(tau, dtype=float)
    k = np.arange(m.K)
    vals = np.exp(-1j * mll.delta_omega * np.multiply.outer(tau, k)) @ w
    return complex(vals) if vals.ndim == 0 else vals


def theta_normalized(m: PhaseSequence, n: PhaseSequence, tau_norm):
    """Same functional with tau measured in periods, tau_norm in [0, 1)."""
    w = _pair_weights(m, n)
    k = np.arange(m.K)
    vals = np.exp(-2j * np.pi * np.multiply.outer(np.asarray(tau_norm, dtype=float), k)) @ w
    return complex(vals) if np.ndim(vals) == 0 else vals


def receiver_output(d_m: int, d_n: int, m: PhaseSequence, n: PhaseSequence, tau, mll: MllParams):
    """Photodetector sample |d_m K + d_n e^{i w0 tau} conj(Theta)|^2."""
    if d_m not in (0, 1) or d_n not in (0, 1):
        raise InvalidParams("data bits must be 0 or 1")
    th = theta(m, n, tau, mll)
    val = np.abs(d_m * m.K + d_n * np.exp(1j * mll.omega0 * np.asarray(tau)) * np.conj(th)) ** 2
    return float(val) if np.ndim(val) == 0 else val


def theta_curve(m: PhaseSequence, n: PhaseSequence, mll: MllParams, samples: int = 1000):
    """(tau, |Theta|^2) over one period, for plotting."""
    tau = np.linspace(0.0, mll.period, samples, endpoint=False)
    return tau, np.abs(theta(m, n, tau, mll)) ** 2


@dataclass
class PeakMetrics:
    K: int
    md: float
    mc: float
    grid: int
    refined_at: list = field(default_factory=list)

    @property
    def ratio(self) -> float:
        return self.mc / self.md

    @property
    def ratio_bound(self) -> float:
        return ratio_bound(self.K)


def ratio_bound(K: int) -> float:
    return 2 / math.pi * math.log(K) + 1.132 + 3 / K


def peak_metrics(m: PhaseSequence, n: PhaseSequence, grid: int | None = None) -> PeakMetrics:
    """Maximum |Theta| at the K sample delays j/K and (estimated) over all delays.

    The continuous maximum comes from a uniform grid followed by bounded
    scalar refinement around the three largest grid values.
    """
    K = m.K
    w = _pair_weights(m, n)
    if grid is None:
        grid = max(8 * K, 1024)
    if grid < 8 * K:
        raise InvalidParams(f"grid must be at least 8K = {8 * K}")

    # F(j/K) for all j is a length-K DFT of the weights
    md = float(np.abs(np.fft.fft(w)).max())
    if md < math.sqrt(K) - 1e-9:
        raise RuntimeError(f"sample maximum {md} below sqrt(K); evaluation is broken")

    # zero-padded DFT gives F on the uniform grid t = i / grid
    vals = np.abs(np.fft.fft(w, n=grid))
    mc = float(vals.max())
    h = 1.0 / grid
    top = np.argsort(vals)[-3:]
    refined = []
    k = np.arange(K)

    def neg_abs(t):
        return -abs(np.exp(-2j * np.pi * k * t) @ w)

    for i in top:
        c = i * h
        res = minimize_scalar(neg_abs, bounds=(c - h, c + h), method="bounded", options={"xatol": 1e-12})
        refined.append(float(res.x) % 1.0)
        mc = max(mc, -float(res.fun))
    return PeakMetrics(K=K, md=md, mc=max(mc, md), grid=grid, refined_at=refined)


# --- bent functions -------------------------------------------------------------


def fourier_coefficients(levels, q: int) -> np.ndarray:
    """G(lam) = q^(-1/2) sum_x w^(f(x) - lam x), w = exp(2 pi i / q)."""
    levels = np.asarray(levels, dtype=float)
    if len(levels) != q:
        raise LengthMismatch(f"need {q} values, got {len(levels)}")
    return np.fft.fft(np.exp(2j * np.pi * levels / q)) / math.sqrt(q)


def is_bent(levels, q: int) -> bool:
    G = fourier_coefficients(levels, q)
    return bool(np.all(np.abs(np.abs(G) - 1.0) < BENT_TOL))


def cubic_family(K: int, coeffs) -> list[PhaseSequence]:
    """Levels k^3 + a k^2 + b k + c (mod K); differences are quadratics in k."""
    if K < 3 or not is_prime(K):
        raise NotOddPrime(f"K={K} must be an odd prime")
    coeffs = [tuple(int(x) % K for x in abc) for abc in coeffs]
    a_vals = [a for a, _, _ in coeffs]
    if len(set(a_vals)) != len(a_vals):
        raise DuplicateA("the quadratic coefficients must be pairwise distinct")
    out = []
    for a, b, c in coeffs:
        levels = [(k**3 + a * k * k + b * k + c) % K for k in range(K)]
        out.append(PhaseSequence(K, levels, label=f"cubic a={a} b={b} c={c}"))
    return out


def walsh_family(K: int) -> list[PhaseSequence]:
    if K < 2 or K & (K - 1):
        raise NotPowerOfTwo(f"K={K} must be a power of two")
    H = np.array([[1]])
    while H.shape[0] < K:
        H = np.kron(np.array([[1, 1], [-1, 1]]), H)
    return [PhaseSequence(2, [0 if v > 0 else 1 for v in row], label=f"walsh {i}") for i, row in enumerate(H)]


@dataclass(frozen=True)
class BentRecurrenceSpec:
    c: int
    a: tuple        # the s seed increments, or all q increments
    f0: int = 0


def _check_modulus(q: int, s: int):
    f = factorize(q) if q > 1 else ()
    if all(e == 1 for _, e in f) or q % 4 == 2:
        raise ConditionViolated(f"q={q} must have a repeated prime factor and not be 2 mod 4", which="q")
    if s <= 1 or s % 2 != q % 2 or q % (s * s):
        raise ConditionViolated(f"s={s} must exceed 1, share the parity of q and have s^2 | q", which="s")
    return min(p for p, _ in f)


def recurrence_increments(q: int, s: int, spec: BentRecurrenceSpec) -> list[int]:
    """All q increments a_k with a_{k+ns} = a_k + c n s (mod q)."""
    a = [int(x) % q for x in spec.a]
    if len(a) == s:
        return [(a[k % s] + spec.c * (k // s) * s) % q for k in range(q)]
    if len(a) == q:
        for k in range(q):
            if a[k] != (a[k % s] + spec.c * (k // s) * s) % q:
                raise ConditionViolated(f"increment {k} breaks the shift rule", which="shift-rule")
        return a
    raise ConditionViolated(f"expected {s} or {q} increments, got {len(a)}", which="shift-rule")


def recurrence_levels(q: int, increments, f0: int = 0) -> list[int]:
    f = [f0 % q]
    for k in range(q - 1):
        f.append((f[-1] + increments[k]) % q)
    return f


def recurrence_family(q: int, s: int, specs) -> list[PhaseSequence]:
    """Bent sequences from f(k+1) = f(k) + a_k with K = q.

    The s seed increments must sum to 0 mod s; pairwise differences of the
    multipliers c must be units mod q.
    """
    specs = list(specs)
    p_min = _check_modulus(q, s)
    if len(specs) > p_min - 1:
        raise FamilyTooLarge(f"at most {p_min - 1} sequences for q={q}, requested {len(specs)}")
    for sp in specs:
        if math.gcd(sp.c, q) != 1:
            raise ConditionViolated(f"c={sp.c} is not a unit mod {q}", which="c")
    for x, y in combinations(specs, 2):
        if math.gcd(x.c - y.c, q) != 1:
            raise ConditionViolated(f"c difference {x.c - y.c} is not a unit mod {q}", which="c-difference")
    seqs, incs = [], []
    for sp in specs:
        a = recurrence_increments(q, s, sp)
        if sum(a[:s]) % s:
            raise ConditionViolated(f"seed increments {a[:s]} do not sum to 0 mod {s}", which="seed-sum")
        levels = recurrence_levels(q, a, sp.f0)
        incs.append(a)
        seqs.append(PhaseSequence(q, levels, label=f"recurrence c={sp.c}"))
    for x in seqs:
        if not is_bent(x.levels, q):
            raise ConditionViolated(f"{x.label} is not bent", which="bent")
    for x, y in combinations(seqs, 2):
        if not is_bent(difference_levels(x, y), q):
            raise ConditionViolated(f"{x.label} - {y.label} is not bent", which="bent")
    return seqs


def difference_levels(x: PhaseSequence, y: PhaseSequence) -> list[int]:
    if x.K != y.K or x.q != y.q:
        raise LengthMismatch("sequences differ in length or modulus")
    return [(a - b) % x.q for a, b in zip(x.levels, y.levels)]
