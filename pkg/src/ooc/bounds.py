"""Upper bounds on code size and an optimality classifier.

Every bound is a chain of nested floors ``floor(n0/d0 * floor(n1/d1 * ...))``
evaluated from the innermost term outward with exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .code_model import CodeFamily, CodeParams, StructureClass
from .errors import InvalidParams


def nested_floor(terms) -> int:
    """Evaluate floor(n0/d0 * floor(n1/d1 * ... floor(nk/dk)...))."""
    v = 1
    for n, d in reversed(list(terms)):
        v = n * v // d
    return v


def _check(lam, omega, kappa, need_omega_le_lam=True):
    if kappa < 0 or kappa >= omega:
        raise InvalidParams(f"need 0 <= kappa < omega, got kappa={kappa}, omega={omega}")
    if need_omega_le_lam and omega > lam:
        raise InvalidParams(f"need omega <= lambda, got omega={omega}, lambda={lam}")


def johnson_2d(params: CodeParams) -> int:
    lam, T, w, k = params.lam, params.T, params.omega, params.kappa
    _check(lam * T, w, k)
    return nested_floor([(lam, w)] + [(lam * T - i, w - i) for i in range(1, k + 1)])


def nonbinary_johnson(T: int, lam: int, omega: int, kappa: int) -> int:
    """Bound for length-lam words over a (T+1)-ary alphabet with omega nonzero symbols."""
    _check(lam, omega, kappa)
    return nested_floor([(T * (lam - i), omega - i) for i in range(kappa + 1)])


def bound_am_oppw(params: CodeParams) -> int:
    lam, T, w, k = params.lam, params.T, params.omega, params.kappa
    _check(lam, w, k)
    return nested_floor([(lam, w)] + [(T * (lam - i), w - i) for i in range(1, k + 1)])


def bound_oppw(params: CodeParams) -> int:
    if params.omega != params.lam:
        raise InvalidParams(f"full-row bound needs omega = lambda, got {params.omega} != {params.lam}")
    return params.T ** params.kappa


def johnson_1d_cw(lam: int, omega: int, kappa: int) -> int:
    """Binary constant-weight Johnson bound (pairwise intersections <= kappa)."""
    _check(lam, omega, kappa)
    return nested_floor([(lam - i, omega - i) for i in range(kappa + 1)])


def applicable_bounds(params: CodeParams) -> dict[str, int]:
    """All bounds whose preconditions hold, keyed by name."""
    out = {"johnson_2d": johnson_2d(params)}
    if params.omega <= params.lam:
        out["am_oppw"] = bound_am_oppw(params)
        out["nonbinary_johnson"] = nonbinary_johnson(params.T, params.lam, params.omega, params.kappa)
    if params.omega == params.lam:
        out["oppw"] = bound_oppw(params)
    return out


def tightest_bound(params: CodeParams, row_class: StructureClass) -> tuple[str, int]:
    if row_class == StructureClass.OPPW and params.omega == params.lam:
        return "oppw", bound_oppw(params)
    if row_class in (StructureClass.OPPW, StructureClass.AM_OPPW) and params.omega <= params.lam:
        return "am_oppw", bound_am_oppw(params)
    return "johnson_2d", johnson_2d(params)


@dataclass(frozen=True)
class OptimalityReport:
    size: int
    bound: int
    bound_name: str
    ratio: float
    label: str

    def summary(self) -> str:
        return f"size={self.size} bound={self.bound} {self.label}"


def optimality_report(family: CodeFamily) -> OptimalityReport:
    """Compare family size with the tightest bound for its row structure.

    Labels: OPTIMAL when the bound is met, ASYMPTOTIC when the construction
    is known to approach the bound only as parameters grow (the ratio alone
    is reported; trends are judged elsewhere), BELOW_BOUND otherwise.
    """
    rows, _ = family.structure()
    name, bound = tightest_bound(family.params, rows)
    size = len(family)
    ratio = size / bound if bound else float("inf")
    if size == bound:
        label = "OPTIMAL"
    elif family.provenance.get("optimality") == "asymptotic":
        label = "ASYMPTOTIC"
    else:
        label = "BELOW_BOUND"
    return OptimalityReport(size=size, bound=bound, bound_name=name, ratio=ratio, label=label)
