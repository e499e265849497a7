"""Concatenated families: a binary constant-weight outer code picks the
wavelengths, and a full-row inner family fills them.

Inner row i goes to the i-th smallest wavelength of the outer word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .bounds import johnson_1d_cw
from .code_model import CodeFamily, CodeMatrix, CodeParams
from .errors import InvalidParams, ValidationFailed
from .finite_field import GF, check_enum
from .poly_constructions import construct_p1
from .rational_constructions import construct_r1


@dataclass(frozen=True)
class CWCode:
    lam: int
    omega: int
    kappa: int
    words: tuple  # sorted tuples of wavelength indices

    def __len__(self):
        return len(self.words)

    def max_intersection(self) -> int:
        best = 0
        sets = [set(w) for w in self.words]
        for a, b in itertools.combinations(sets, 2):
            best = max(best, len(a & b))
        return best

    @property
    def johnson_bound(self) -> int:
        return johnson_1d_cw(self.lam, self.omega, self.kappa)

    @property
    def meets_bound(self) -> bool:
        return len(self.words) == self.johnson_bound


def build_cw_greedy(lam: int, omega: int, kappa: int) -> CWCode:
    """Lexicographic greedy code: keep each omega-subset that meets every kept
    word in at most kappa positions."""
    if not 0 <= kappa < omega <= lam:
        raise InvalidParams(f"need 0 <= kappa < omega <= lambda, got ({lam}, {omega}, {kappa})")
    check_enum(comb(lam, omega), "constant-weight subset enumeration")
    kept: list[frozenset] = []
    for cand in itertools.combinations(range(lam), omega):
        s = frozenset(cand)
        if all(len(s & w) <= kappa for w in kept):
            kept.append(s)
    return CWCode(lam, omega, kappa, tuple(tuple(sorted(w)) for w in kept))


def load_cw(words, kappa: int, lam: int | None = None) -> CWCode:
    """Validate a user-supplied outer code."""
    words = [tuple(sorted(int(x) for x in w)) for w in words]
    if not words:
        return CWCode(lam or 0, 0, kappa, ())
    omega = len(words[0])
    for i, w in enumerate(words):
        if len(set(w)) != len(w):
            raise ValidationFailed(f"word {i} repeats an index", pair=(i, i))
        if len(w) != omega:
            raise ValidationFailed(f"word {i} has weight {len(w)}, expected {omega}", pair=(0, i))
        if min(w) < 0:
            raise ValidationFailed(f"word {i} has a negative index", pair=(i, i))
    top = max(max(w) for w in words) + 1
    if lam is None:
        lam = top
    elif top > lam:
        raise ValidationFailed(f"index {top - 1} outside length {lam}")
    for i, j in itertools.combinations(range(len(words)), 2):
        inter = len(set(words[i]) & set(words[j]))
        if words[i] == words[j]:
            raise ValidationFailed(f"words {i} and {j} are equal", pair=(i, j))
        if inter > kappa:
            raise ValidationFailed(f"words {i} and {j} share {inter} > {kappa} positions", pair=(i, j))
    return CWCode(lam, omega, kappa, tuple(words))


def compose(cw: CWCode, inner: CodeFamily) -> list[CodeMatrix]:
    if inner.params.lam != cw.omega:
        raise InvalidParams(f"inner code has {inner.params.lam} rows, outer weight is {cw.omega}")
    out = []
    for word in cw.words:
        for M in inner:
            out.append(CodeMatrix(cw.lam, inner.params.T, frozenset((word[r], t) for r, t in M.pulses)))
    return out


def _compose_family(cw: CWCode, inner: CodeFamily, kappa: int, tag: str) -> CodeFamily:
    if cw.kappa > kappa or cw.max_intersection() > kappa:
        raise InvalidParams(f"outer code intersections exceed kappa={kappa}")
    info = {"construction": tag, "inner": dict(inner.provenance), "outer_size": len(cw),
            "outer_meets_bound": cw.meets_bound}
    if cw.meets_bound and inner.provenance.get("optimality") == "optimal":
        info["optimality"] = "optimal"
    else:
        info["optimality"] = "asymptotic"
    return CodeFamily(CodeParams(cw.lam, inner.params.T, cw.omega, kappa), compose(cw, inner), provenance=info)


def construct_cp1(cw: CWCode, T: int, kappa: int) -> CodeFamily:
    if not len(cw):
        raise InvalidParams("outer code is empty")
    if cw.omega > T:
        raise InvalidParams(f"outer weight {cw.omega} exceeds T={T}")
    inner = construct_p1(T, cw.omega, kappa)
    return _compose_family(cw, inner, kappa, "CP1")


def construct_cr1(cw: CWCode, field: GF, kappa: int) -> CodeFamily:
    if not len(cw):
        raise InvalidParams("outer code is empty")
    if cw.omega > field.q:
        raise InvalidParams(f"outer weight {cw.omega} exceeds q={field.q}")
    inner = construct_r1(field, cw.omega, kappa)
    return _compose_family(cw, inner, kappa, "CR1")
