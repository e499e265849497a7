"""Two-dimensional (wavelength x time) code matrices and families.

A codeword is a sparse ``lam x T`` binary array stored as a frozenset of
``(wavelength, time)`` pulses.  Shifts act on the time axis only, cyclically.
"""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import DuplicateMatrix, EmptyFamily, InvalidParams, ShapeMismatch


@dataclass(frozen=True)
class CodeParams:
    lam: int
    T: int
    omega: int
    kappa: int

    def __post_init__(self):
        if self.lam < 1 or self.T < 1 or self.omega < 1 or self.kappa < 0:
            raise InvalidParams(f"invalid parameters {self}")
        if self.omega > self.lam * self.T:
            raise InvalidParams(f"weight {self.omega} exceeds array size {self.lam}x{self.T}")
        if self.kappa >= self.omega:
            raise InvalidParams(f"kappa={self.kappa} must be below omega={self.omega}")


@dataclass(frozen=True)
class CodeMatrix:
    lam: int
    T: int
    pulses: frozenset

    def __post_init__(self):
        pulses = frozenset((int(a), int(b)) for a, b in self.pulses)
        for a, b in pulses:
            if not (0 <= a < self.lam and 0 <= b < self.T):
                raise ShapeMismatch(f"pulse {(a, b)} outside {self.lam}x{self.T}")
        object.__setattr__(self, "pulses", pulses)

    @property
    def weight(self) -> int:
        return len(self.pulses)

    def to_array(self) -> np.ndarray:
        arr = np.zeros((self.lam, self.T), dtype=np.uint8)
        for a, b in self.pulses:
            arr[a, b] = 1
        return arr

    @classmethod
    def from_array(cls, arr) -> "CodeMatrix":
        arr = np.asarray(arr)
        lam, T = arr.shape
        return cls(lam, T, frozenset(zip(*map(lambda v: v.tolist(), np.nonzero(arr)))))

    def sorted_pulses(self) -> list[tuple[int, int]]:
        return sorted(self.pulses)


class StructureClass(enum.Enum):
    OPPW = "OPPW"
    AM_OPPW = "AM-OPPW"
    OPPTS = "OPPTS"
    AM_OPPTS = "AM-OPPTS"
    UNRESTRICTED = "UNRESTRICTED"


def shift_time(A: CodeMatrix, tau: int) -> CodeMatrix:
    """Cyclically move every pulse ``tau`` slots later."""
    return CodeMatrix(A.lam, A.T, frozenset((a, (b + tau) % A.T) for a, b in A.pulses))


def dilate_time(A: CodeMatrix, factor: int) -> CodeMatrix:
    """Spread pulses over ``factor * T`` slots, time index t -> factor * t."""
    return CodeMatrix(A.lam, A.T * factor, frozenset((a, b * factor) for a, b in A.pulses))


def _check_shape(A: CodeMatrix, B: CodeMatrix):
    if (A.lam, A.T) != (B.lam, B.T):
        raise ShapeMismatch(f"{A.lam}x{A.T} vs {B.lam}x{B.T}")


def correlation(A: CodeMatrix, B: CodeMatrix, tau: int) -> int:
    """Number of pulses of A that land on B after shifting B back by tau."""
    _check_shape(A, B)
    T = A.T
    by_row = defaultdict(set)
    for a, b in B.pulses:
        by_row[a].add(b)
    return sum(1 for a, t in A.pulses if (t + tau) % T in by_row.get(a, ()))


def correlation_profile(A: CodeMatrix, B: CodeMatrix) -> list[int]:
    """correlation(A, B, tau) for every tau in [0, T)."""
    _check_shape(A, B)
    T = A.T
    prof = [0] * T
    rows = defaultdict(list)
    for a, b in B.pulses:
        rows[a].append(b)
    for a, t in A.pulses:
        for b in rows.get(a, ()):
            prof[(b - t) % T] += 1
    return prof


def classify(matrix: CodeMatrix) -> tuple[StructureClass, StructureClass]:
    """Return (row_class, column_class); UNRESTRICTED means neither label fits."""
    rows = Counter(a for a, _ in matrix.pulses)
    cols = Counter(b for _, b in matrix.pulses)
    if max(rows.values(), default=0) > 1:
        row_class = StructureClass.UNRESTRICTED
    elif len(rows) == matrix.lam:
        row_class = StructureClass.OPPW
    else:
        row_class = StructureClass.AM_OPPW
    if max(cols.values(), default=0) > 1:
        col_class = StructureClass.UNRESTRICTED
    elif len(cols) == matrix.T:
        col_class = StructureClass.OPPTS
    else:
        col_class = StructureClass.AM_OPPTS
    return row_class, col_class


_WEAKER = {StructureClass.OPPW: StructureClass.AM_OPPW, StructureClass.OPPTS: StructureClass.AM_OPPTS}


def _consensus(labels) -> StructureClass:
    labels = set(labels)
    if not labels or StructureClass.UNRESTRICTED in labels:
        return StructureClass.UNRESTRICTED
    if len(labels) == 1:
        return labels.pop()
    # a mix of the strong and weak label on one axis settles on the weak one
    weak = {_WEAKER.get(x, x) for x in labels}
    return weak.pop() if len(weak) == 1 else StructureClass.UNRESTRICTED


class CodeFamily:
    """An ordered collection of distinct, equal-weight code matrices.

    ``provenance`` records how the family was produced (construction tag,
    field, claimed optimality) and is carried through serialisation.
    """

    def __init__(self, params: CodeParams, matrices, provenance=None, validate: bool = True):
        self.params = params
        self.matrices = tuple(matrices)
        self.provenance = dict(provenance or {})
        self.certified_mcp = None
        self.seeds = None
        if validate:
            seen = set()
            for M in self.matrices:
                if (M.lam, M.T) != (params.lam, params.T):
                    raise ShapeMismatch(f"matrix is {M.lam}x{M.T}, family is {params.lam}x{params.T}")
                if M.weight != params.omega:
                    raise InvalidParams(f"matrix weight {M.weight} != omega {params.omega}")
                if M.pulses in seen:
                    raise DuplicateMatrix("family contains a repeated matrix")
                seen.add(M.pulses)

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]

    def __repr__(self):
        p = self.params
        tag = self.provenance.get("construction", "?")
        return f"CodeFamily({tag}, {p.lam}x{p.T}, omega={p.omega}, kappa={p.kappa}, size={len(self)})"

    def pulse_sets(self) -> set:
        return {M.pulses for M in self.matrices}

    def structure(self) -> tuple[StructureClass, StructureClass]:
        pairs = [classify(M) for M in self.matrices]
        return _consensus(r for r, _ in pairs), _consensus(c for _, c in pairs)

    def certify(self) -> int:
        self.certified_mcp = certify_mcp(self)
        return self.certified_mcp


def _stack(family) -> np.ndarray:
    mats = family.matrices if isinstance(family, CodeFamily) else tuple(family)
    lam, T = mats[0].lam, mats[0].T
    X = np.zeros((len(mats), lam, T), dtype=np.float32)
    for i, M in enumerate(mats):
        for a, b in M.pulses:
            X[i, a, b] = 1.0
    return X


def certify_mcp(family, block: int = 2048) -> int:
    """Exact maximum correlation over all nontrivial (pair, shift) combinations.

    For each shift the whole family is compared against its time-shifted copy
    with one matrix product; correlations are small integers so float32 is
    exact.  The tau = 0 diagonal (a matrix against itself) is excluded.
    """
    mats = family.matrices if isinstance(family, CodeFamily) else tuple(family)
    if not mats:
        raise EmptyFamily("cannot certify an empty family")
    n, lam, T = len(mats), mats[0].lam, mats[0].T
    X = _stack(mats).reshape(n, lam * T)
    best = 0
    for tau in range(T):
        # row j of Y is matrix j shifted back by tau, so X @ Y.T = correlation(A_i, A_j, tau)
        Y = np.roll(X.reshape(n, lam, T), -tau, axis=2).reshape(n, lam * T)
        for lo in range(0, n, block):
            C = X[lo:lo + block] @ Y.T
            if tau == 0:
                idx = np.arange(lo, min(lo + block, n))
                C[idx - lo, idx] = -1
            best = max(best, int(C.max()))
    if isinstance(family, CodeFamily):
        family.certified_mcp = best
    return best


def certify_mcp_naive(family) -> int:
    """Reference implementation by direct pulse comparison."""
    mats = family.matrices if isinstance(family, CodeFamily) else tuple(family)
    if not mats:
        raise EmptyFamily("cannot certify an empty family")
    T = mats[0].T
    best = 0
    for i, A in enumerate(mats):
        for j, B in enumerate(mats):
            for tau in range(T):
                if i == j and tau == 0:
                    continue
                c = 0
                for a, t in A.pulses:
                    for b, u in B.pulses:
                        if a == b and (t + tau) % T == u:
                            c += 1
                best = max(best, c)
    return best


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    size: int
    checks: list = field(default_factory=list)
    certified_mcp: int | None = None
    structure: tuple | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        out = [f"size={self.size}"]
        for c in self.checks:
            out.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else ""))
        return out


def verify_family(family: CodeFamily) -> VerificationReport:
    """Check weight, distinctness, MCP against the claim, and structure class."""
    p = family.params
    rep = VerificationReport(size=len(family))

    bad_w = [i for i, M in enumerate(family.matrices) if M.weight != p.omega]
    rep.checks.append(CheckResult("constant-weight", not bad_w,
                                  f"matrices {bad_w[:5]} differ from omega={p.omega}" if bad_w else ""))

    first = {}
    dup = None
    for i, M in enumerate(family.matrices):
        if M.pulses in first:
            dup = (first[M.pulses], i)
            break
        first[M.pulses] = i
    rep.checks.append(CheckResult("distinct", dup is None, f"matrices {dup} are equal" if dup else ""))

    if len(family):
        mcp = certify_mcp(family)
        rep.certified_mcp = mcp
        rep.checks.append(CheckResult("mcp", mcp <= p.kappa, f"certified {mcp}, claimed {p.kappa}"))
        rows, cols = family.structure()
        rep.structure = (rows, cols)
        rep.checks.append(CheckResult("structure", True, f"{rows.value}/{cols.value}"))
    else:
        rep.checks.append(CheckResult("nonempty", False, "family is empty"))
    return rep
