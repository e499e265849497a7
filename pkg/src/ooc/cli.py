"""Command-line front end.

Exit status: 0 success, 1 a family or sequence set failed validation,
2 bad usage, bad parameters or an unreadable input file.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from . import formats
from .bounds import applicable_bounds, optimality_report, tightest_bound
from .code_model import (
    CodeFamily,
    CodeParams,
    StructureClass,
    certify_mcp,
    verify_family,
)
from .concat import build_cw_greedy, construct_cp1, construct_cr1
from .errors import OOCError, ValidationFailed
from .finite_field import field_of_order, is_prime, prime_power
from .phase import (
    BentRecurrenceSpec,
    MllParams,
    cubic_family,
    peak_metrics,
    recurrence_family,
    theta,
    walsh_family,
)
from .poly_constructions import (
    construct_p1,
    construct_p2,
    construct_p3,
    construct_p4,
    construct_p5,
    expected_size,
)
from .rational_constructions import construct_r1, construct_r2, r2_expected_size
from .three_d import certify_mcp_3d, crt_lift

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2

TAGS = ("P1", "P2", "P3", "P4", "P5", "R1", "R2", "CP1", "CR1")
LETTERS = dict(zip(TAGS, "ABCDEFGHI"))


class UsageError(OOCError):
    pass


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + ("lambda" if n == "lam" else n) for n in missing)
        raise UsageError(f"{args.tag} requires {flags}")


def _write(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# --- generate ---------------------------------------------------------------


def build_family(args) -> tuple[CodeFamily, int, str]:
    """Return (family, expected size, note about the closed form)."""
    tag = args.tag
    k = args.kappa
    note = ""
    if tag == "P1":
        _need(args, "T", "lam")
        L = [int(x) for x in args.wavelengths.split(",")] if args.wavelengths else None
        fam = construct_p1(args.T, args.lam, k, L=L)
        exp = expected_size("P1", T=args.T, kappa=k).predicted
    elif tag == "P2":
        _need(args, "p", "T")
        fam = construct_p2(args.p, args.T, k)
        exp = expected_size("P2", p=args.p, T=args.T, kappa=k).predicted
        lit = expected_size("P2", literal=True, p=args.p, T=args.T, kappa=k).predicted
        if lit != exp:
            note = f"tabulated_form={lit} (sums over divisors of p-1; differs from the orbit count)"
    elif tag in ("P4", "P5"):
        _need(args, "q", "T")
        F = field_of_order(args.q)
        fam = (construct_p4 if tag == "P4" else construct_p5)(F, args.T, k)
        exp = expected_size(tag, q=args.q, T=args.T, kappa=k).predicted
        lit = expected_size(tag, literal=True, q=args.q, T=args.T, kappa=k).predicted
        if lit != exp:
            note = f"tabulated_form={lit} (sums over divisors of q-1; differs from the orbit count)"
    elif tag == "P3":
        _need(args, "q")
        lam = args.lam if args.lam is not None else args.q
        fam = construct_p3(field_of_order(args.q), lam, k)
        exp = expected_size("P3", q=args.q, kappa=k).predicted
    elif tag == "R1":
        _need(args, "q")
        lam = args.lam if args.lam is not None else args.q
        fam = construct_r1(field_of_order(args.q), lam, k)
        exp = expected_size("R1", q=args.q, kappa=k).predicted
    elif tag == "R2":
        _need(args, "q", "T")
        fam = construct_r2(field_of_order(args.q), args.T, k)
        # the enumerated orbit count is authoritative; the closed form is reported
        exp = len(fam)
        closed = r2_expected_size(args.q, args.T, k // 2)
        if closed != exp:
            note = f"closed_form={closed} (disagrees with the enumerated orbit count {exp})"
    elif tag in ("CP1", "CR1"):
        _need(args, "lam", "omega")
        if args.cw:
            cw = formats.parse_cw(Path(args.cw).read_text())
        else:
            cw = build_cw_greedy(args.lam, args.omega, k)
        if tag == "CP1":
            _need(args, "T")
            fam = construct_cp1(cw, args.T, k)
            inner = expected_size("P1", T=args.T, kappa=k).predicted
        else:
            _need(args, "q")
            fam = construct_cr1(cw, field_of_order(args.q), k)
            inner = expected_size("R1", q=args.q, kappa=k).predicted
        exp = len(cw) * inner
        note = f"outer_size={len(cw)} outer_bound={cw.johnson_bound}"
    else:
        raise UsageError(f"unknown construction {tag}")
    return fam, exp, note


def cmd_generate(args) -> int:
    fam, exp, note = build_family(args)
    if args.out:
        _write(formats.family_to_json(fam) if args.json else formats.dump_family(fam), args.out)
    if not len(fam):
        print("size=0 (empty family)")
        return EXIT_OK
    rep = optimality_report(fam)
    rows, cols = fam.structure()
    print(rep.summary())
    print(f"structure={rows.value}/{cols.value}")
    print(f"expected_size={exp}")
    if note:
        print(note)
    status = EXIT_OK
    if len(fam) != exp:
        print(f"size mismatch: generated {len(fam)}, expected {exp}")
        status = EXIT_INVALID
    if args.no_certify:
        print("certified_mcp=skipped")
    else:
        mcp = certify_mcp(fam)
        print(f"certified_mcp={mcp}")
        if mcp > fam.params.kappa:
            status = EXIT_INVALID
    return status


# --- verify / lift ---------------------------------------------------------------


def _load_family(path) -> CodeFamily:
    return formats.parse_family(Path(path).read_text())


def cmd_verify(args) -> int:
    fam = _load_family(args.input)
    if args.kappa is not None:
        p = fam.params
        fam = CodeFamily(CodeParams(p.lam, p.T, p.omega, args.kappa), fam.matrices,
                         provenance=fam.provenance, validate=False)
    rep = verify_family(fam)
    for line in rep.lines():
        print(line)
    if rep.passed and len(fam):
        print(optimality_report(fam).summary())
    return EXIT_OK if rep.passed else EXIT_INVALID


def cmd_lift(args) -> int:
    fam = _load_family(args.input)
    codes = crt_lift(fam)
    if args.out:
        _write(formats.dump_codes_3d(codes, fam.params.omega), args.out)
    rep = certify_mcp_3d(codes, report=True, source=fam)
    print(f"codes={len(codes)} shape=2x{fam.params.lam}x{fam.params.T // 2}")
    print(f"mcp_3d={rep.mcp} mcp_2d={rep.source_mcp} shift_pairs={rep.shift_pairs}")
    if rep.exceeds_source:
        print(f"3-D maximum exceeds the 2-D value at {rep.worst}")
        return EXIT_INVALID
    return EXIT_OK if rep.mcp <= fam.params.kappa else EXIT_INVALID


# --- bounds ------------------------------------------------------------------


def cmd_bounds(args) -> int:
    params = CodeParams(args.lam, args.T, args.omega, args.kappa)
    cls = StructureClass(args.cls)
    for name, v in applicable_bounds(params).items():
        print(f"{name}={v}")
    name, v = tightest_bound(params, cls)
    print(f"tightest[{cls.value}]={name}")
    print(f"bound={v}")
    return EXIT_OK


# --- coverage ----------------------------------------------------------------


def _is_pp(n: int) -> bool:
    return prime_power(n) is not None


def coverage_letters(lam: int, T: int) -> str:
    """Constructions whose preconditions admit a (lam x T) code with kappa >= 1."""
    ok = {
        "P1": is_prime(T) and 2 <= lam <= T,
        "P2": is_prime(lam) and T >= 2 and (lam - 1) % T == 0,
        "P3": _is_pp(T + 1) and 3 <= lam <= T + 1,
        "P4": _is_pp(lam + 1) and T >= 3 and lam % T == 0,
        "P5": _is_pp(lam) and T >= 2 and (lam - 1) % T == 0,
        "R1": _is_pp(T - 1) and 3 <= lam <= T - 1,
        "R2": lam >= 3 and _is_pp(lam - 1) and T >= 3 and (lam - 2) % T == 0,
        "CP1": is_prime(T) and lam >= 2 and T >= 2,
        "CR1": T >= 4 and _is_pp(T - 1) and lam >= 3,
    }
    return "".join(LETTERS[t] for t in TAGS if ok[t])


def coverage_table(lams, Ts) -> dict:
    return {(lam, T): coverage_letters(lam, T) for T in Ts for lam in lams}


def _range(spec: str) -> range:
    try:
        lo, hi = (int(x) for x in spec.replace(":", "-").split("-"))
    except ValueError:
        raise UsageError(f"range must look like 2-17, got {spec!r}") from None
    return range(lo, hi + 1)


def cmd_coverage(args) -> int:
    lams, Ts = _range(args.lambda_range), _range(args.T_range)
    table = coverage_table(lams, Ts)
    width = max(4, max(len(v) for v in table.values()) + 1)
    print("T\\L".rjust(4) + "".join(str(lam).rjust(width) for lam in lams))
    for T in Ts:
        print(str(T).rjust(4) + "".join((table[lam, T] or ".").rjust(width) for lam in lams))
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["T", "lambda", "constructions"])
        for T in Ts:
            for lam in lams:
                w.writerow([T, lam, table[lam, T]])
        _write(buf.getvalue(), args.csv)
    return EXIT_OK


# --- phase -------------------------------------------------------------------


def _parse_triples(text: str):
    try:
        return [tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]
    except ValueError:
        raise UsageError(f"bad coefficient list {text!r}") from None


def _parse_spec(text: str) -> BentRecurrenceSpec:
    parts = text.split(":")
    try:
        c = int(parts[0])
        a = tuple(int(x) for x in parts[1].split(","))
        f0 = int(parts[2]) if len(parts) > 2 else 0
    except (ValueError, IndexError):
        raise UsageError(f"recurrence spec must be c:a0,a1,...[:f0], got {text!r}") from None
    return BentRecurrenceSpec(c, a, f0)


def cmd_phase(args) -> int:
    if args.action == "design":
        if args.family == "cubic":
            if args.K is None or not args.coeffs:
                raise UsageError("cubic design needs --K and --coeffs")
            seqs = cubic_family(args.K, _parse_triples(args.coeffs))
        elif args.family == "walsh":
            if args.K is None:
                raise UsageError("walsh design needs --K")
            seqs = walsh_family(args.K)
        else:
            if args.q is None or args.s is None or not args.spec:
                raise UsageError("recurrence design needs --q, --s and one --spec per sequence")
            seqs = recurrence_family(args.q, args.s, [_parse_spec(s) for s in args.spec])
        _write(formats.dump_phase(seqs), args.out)
        return EXIT_OK

    seqs = formats.parse_phase(Path(args.input).read_text())
    i, j = args.pair
    if not (0 <= i < len(seqs) and 0 <= j < len(seqs)):
        raise UsageError(f"pair {i} {j} out of range for {len(seqs)} sequences")
    m, n = seqs[i], seqs[j]
    mll = MllParams(m.K, delta_omega=args.delta_omega, omega0=args.omega0)
    tau = np.linspace(0.0, mll.period, args.samples, endpoint=False)
    mag2 = np.abs(theta(m, n, tau, mll)) ** 2
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["tau", "theta_sq"])
    for t, v in zip(tau, mag2):
        w.writerow([f"{t:.9g}", f"{v:.9g}"])
    _write(buf.getvalue(), args.csv)
    pm = peak_metrics(m, n)
    samples = np.abs(theta(m, n, mll.period * np.arange(m.K) / m.K, mll)) ** 2
    out = sys.stderr if args.csv in (None, "-") else sys.stdout
    print(f"M_d={pm.md:.12g} sqrt_K={np.sqrt(m.K):.12g}", file=out)
    print(f"M_c~{pm.mc:.12g} grid={pm.grid} ratio={pm.ratio:.6g} ratio_bound={pm.ratio_bound:.6g}", file=out)
    print("theta_sq_at_samples=" + ",".join(f"{v:.9g}" for v in samples), file=out)
    return EXIT_OK


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ooc", description="Optical orthogonal code toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a code family")
    g.add_argument("tag", type=str.upper, choices=TAGS)
    g.add_argument("--T", type=int)
    g.add_argument("--lambda", dest="lam", type=int)
    g.add_argument("--omega", type=int, help="outer code weight (CP1, CR1)")
    g.add_argument("--kappa", type=int, default=1)
    g.add_argument("--p", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--cw", help="outer code file (CP1, CR1); greedy code when omitted")
    g.add_argument("--wavelengths", help="comma-separated wavelength residues (P1)")
    g.add_argument("--out", help="family file to write")
    g.add_argument("--json", action="store_true")
    g.add_argument("--no-certify", action="store_true")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check a family file")
    v.add_argument("input")
    v.add_argument("--kappa", type=int, help="claimed maximum correlation (default: header)")
    v.set_defaults(func=cmd_verify)

    lf = sub.add_parser("lift", help="CRT-lift a lambda x 2T family to 2 x lambda x T")
    lf.add_argument("input")
    lf.add_argument("--out")
    lf.set_defaults(func=cmd_lift)

    b = sub.add_parser("bounds", help="size bounds for given parameters")
    b.add_argument("--lambda", dest="lam", type=int, required=True)
    b.add_argument("--T", type=int, required=True)
    b.add_argument("--omega", type=int, required=True)
    b.add_argument("--kappa", type=int, required=True)
    b.add_argument("--class", dest="cls", default="UNRESTRICTED", choices=[c.value for c in StructureClass])
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("coverage", help="which constructions exist for each (lambda, T)")
    c.add_argument("--lambda-range", default="2-17")
    c.add_argument("--T-range", default="2-33")
    c.add_argument("--csv")
    c.set_defaults(func=cmd_coverage)

    ph = sub.add_parser("phase", help="phase sequence design and evaluation")
    phs = ph.add_subparsers(dest="action", required=True)
    d = phs.add_parser("design")
    d.add_argument("family", choices=("cubic", "walsh", "recurrence"))
    d.add_argument("--K", type=int)
    d.add_argument("--coeffs", help="cubic: 'a,b,c;a,b,c;...'")
    d.add_argument("--q", type=int)
    d.add_argument("--s", type=int)
    d.add_argument("--spec", action="append", help="recurrence: c:a0,...,a_{s-1}[:f0]; repeat per sequence")
    d.add_argument("--out")
    d.set_defaults(func=cmd_phase)
    e = phs.add_parser("eval")
    e.add_argument("input")
    e.add_argument("--pair", type=int, nargs=2, default=(0, 1))
    e.add_argument("--delta-omega", type=float, default=np.pi / 10)
    e.add_argument("--omega0", type=float, default=np.pi / 4)
    e.add_argument("--samples", type=int, default=1000)
    e.add_argument("--csv", help="CSV destination (default stdout)")
    e.set_defaults(func=cmd_phase)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (OOCError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
