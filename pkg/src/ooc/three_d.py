"""Polarization x wavelength x time codes and the CRT lift from 2-D codes.

With T odd, Z_2T and Z_2 x Z_T are isomorphic through u -> (u mod 2, u mod T),
so a lam x 2T code becomes a 2 x lam x T code with the same correlations at
matching shifts.  Every shift pair (tau1, tau2) is the image of exactly one
tau in [0, 2T), so the full 3-D scan sees exactly the 2-D correlation values.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .code_model import CodeFamily, CodeMatrix, certify_mcp
from .errors import EmptyFamily, InvalidParams, ShapeMismatch


@dataclass(frozen=True)
class Code3D:
    lam: int
    T: int
    pulses: frozenset  # (polarization, wavelength, time)

    def __post_init__(self):
        pulses = frozenset((int(p), int(a), int(b)) for p, a, b in self.pulses)
        for p, a, b in pulses:
            if not (p in (0, 1) and 0 <= a < self.lam and 0 <= b < self.T):
                raise ShapeMismatch(f"pulse {(p, a, b)} outside 2x{self.lam}x{self.T}")
        object.__setattr__(self, "pulses", pulses)

    @property
    def weight(self) -> int:
        return len(self.pulses)


def crt_split(u: int, T: int) -> tuple[int, int]:
    return u % 2, u % T


def crt_join(p: int, t: int, T: int) -> int:
    """The unique u in [0, 2T) with u = p mod 2 and u = t mod T."""
    return t if t % 2 == p else t + T


def _half(T2: int) -> int:
    if T2 % 2:
        raise InvalidParams(f"time dimension {T2} is odd")
    T = T2 // 2
    if T % 2 == 0:
        raise InvalidParams(f"half of the time dimension ({T}) must be odd")
    return T


def lift_matrix(M: CodeMatrix) -> Code3D:
    T = _half(M.T)
    return Code3D(M.lam, T, frozenset((u % 2, a, u % T) for a, u in M.pulses))


def crt_lift(family) -> list[Code3D]:
    mats = family.matrices if isinstance(family, CodeFamily) else tuple(family)
    return [lift_matrix(M) for M in mats]


def unlift(code: Code3D) -> CodeMatrix:
    T = code.T
    if T % 2 == 0:
        raise InvalidParams(f"T={T} must be odd")
    return CodeMatrix(code.lam, 2 * T, frozenset((a, crt_join(p, t, T)) for p, a, t in code.pulses))


def correlation_3d(A: Code3D, B: Code3D, tau1: int, tau2: int) -> int:
    if (A.lam, A.T) != (B.lam, B.T):
        raise ShapeMismatch(f"2x{A.lam}x{A.T} vs 2x{B.lam}x{B.T}")
    T = A.T
    target = B.pulses
    return sum(1 for p, a, t in A.pulses if ((p + tau1) % 2, a, (t + tau2) % T) in target)


def _profile_3d(A: Code3D, B: Code3D) -> dict:
    rows = defaultdict(list)
    for p, a, t in B.pulses:
        rows[a].append((p, t))
    prof = defaultdict(int)
    T = A.T
    for p, a, t in A.pulses:
        for pb, tb in rows.get(a, ()):
            prof[((pb - p) % 2, (tb - t) % T)] += 1
    return prof


@dataclass
class Report3D:
    mcp: int
    worst: tuple | None        # (i, j, tau1, tau2) attaining the maximum
    shift_pairs: int           # shift pairs scanned per code pair
    source_mcp: int | None = None

    @property
    def exceeds_source(self) -> bool:
        return self.source_mcp is not None and self.mcp > self.source_mcp


def certify_mcp_3d(codes, report: bool = False, source=None):
    """Maximum correlation over all code pairs and all (tau1, tau2), excluding
    a code against itself at (0, 0).  Off-diagonal shift pairs are included."""
    codes = list(codes)
    if not codes:
        raise EmptyFamily("cannot certify an empty list")
    best, worst = 0, None
    for i, A in enumerate(codes):
        for j, B in enumerate(codes):
            for (s1, s2), v in _profile_3d(A, B).items():
                if i == j and s1 == 0 and s2 == 0:
                    continue
                if v > best:
                    best, worst = v, (i, j, s1, s2)
    if not report:
        return best
    src = certify_mcp(source) if source is not None else None
    return Report3D(mcp=best, worst=worst, shift_pairs=2 * codes[0].T, source_mcp=src)
