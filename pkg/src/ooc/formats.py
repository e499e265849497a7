"""Line-oriented text and JSON formats for families, outer codes and phase sets.

2-D family::

    OOC2D lambda=3 T=5 omega=3 kappa=1 count=5
    # provenance {"construction": "P1", ...}
    matrix 0
    p 0 0
    ...

3-D codes use the header ``OOC3D`` and pulse lines ``p <pol> <lambda> <t>``.
Outer codes: ``CW lambda= omega= kappa=`` then one word of indices per line.
Phase sets: ``PHASE count=`` then ``s <q> <K> <levels...>`` per sequence.
Lines starting with ``#`` are comments; a ``# provenance`` comment carries
JSON metadata and is optional.
"""

from __future__ import annotations

import json

from .code_model import CodeFamily, CodeMatrix, CodeParams
from .concat import CWCode, load_cw
from .errors import OOCError, ParseError
from .phase import PhaseSequence
from .three_d import Code3D


def _header_fields(tokens, line_no, required):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}", line_no)
        k, v = tok.split("=", 1)
        try:
            out[k] = int(v)
        except ValueError:
            raise ParseError(f"{k} must be an integer, got {v!r}", line_no) from None
    missing = [k for k in required if k not in out]
    if missing:
        raise ParseError(f"header missing {', '.join(missing)}", line_no)
    return out


def _lines(text):
    """Yield (line_no, tokens, raw) for non-blank lines, including comments."""
    for i, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s:
            yield i, s.split(), s


def _ints(tokens, line_no):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", line_no) from None


def _provenance(raw, line_no):
    body = raw[1:].strip()
    if body.startswith("provenance "):
        try:
            return json.loads(body[len("provenance "):])
        except json.JSONDecodeError as e:
            raise ParseError(f"bad provenance JSON: {e.msg}", line_no) from None
    return None


# --- 2-D and 3-D families ------------------------------------------------------------


def dump_family(family: CodeFamily) -> str:
    p = family.params
    out = [f"OOC2D lambda={p.lam} T={p.T} omega={p.omega} kappa={p.kappa} count={len(family)}"]
    if family.provenance:
        out.append("# provenance " + json.dumps(family.provenance, sort_keys=True))
    for i, M in enumerate(family):
        out.append(f"matrix {i}")
        out.extend(f"p {a} {t}" for a, t in M.sorted_pulses())
    return "\n".join(out) + "\n"


def _parse_blocks(text, magic, required, arity):
    header = None
    provenance = {}
    blocks = []
    for n, toks, raw in _lines(text):
        if raw.startswith("#"):
            prov = _provenance(raw, n)
            if prov is not None:
                provenance = prov
            continue
        if header is None:
            if toks[0] != magic:
                raise ParseError(f"expected {magic} header", n)
            header = _header_fields(toks[1:], n, required)
            continue
        if toks[0] == "matrix":
            if len(toks) != 2:
                raise ParseError("expected 'matrix <id>'", n)
            blocks.append([])
        elif toks[0] == "p":
            if not blocks:
                raise ParseError("pulse before any 'matrix' line", n)
            vals = _ints(toks[1:], n)
            if len(vals) != arity:
                raise ParseError(f"pulse needs {arity} coordinates", n)
            blocks[-1].append((n, tuple(vals)))
        else:
            raise ParseError(f"unknown record {toks[0]!r}", n)
    if header is None:
        raise ParseError("empty file", 1)
    if "count" in header and header["count"] != len(blocks):
        raise ParseError(f"header count={header['count']} but {len(blocks)} matrices", 1)
    return header, provenance, blocks


def parse_family(text: str) -> CodeFamily:
    """Parse a 2-D family.  Weight and distinctness are left for verification."""
    if text.lstrip().startswith("{"):
        return family_from_json(text)
    h, prov, blocks = _parse_blocks(text, "OOC2D", ("lambda", "T", "omega", "kappa"), 2)
    mats = []
    for block in blocks:
        for n, (a, t) in block:
            if not (0 <= a < h["lambda"] and 0 <= t < h["T"]):
                raise ParseError(f"pulse ({a}, {t}) outside {h['lambda']}x{h['T']}", n)
        mats.append(CodeMatrix(h["lambda"], h["T"], frozenset(v for _, v in block)))
    try:
        params = CodeParams(h["lambda"], h["T"], h["omega"], h["kappa"])
    except OOCError as e:
        raise ParseError(str(e), 1) from None
    return CodeFamily(params, mats, provenance=prov, validate=False)


def family_to_json(family: CodeFamily) -> str:
    p = family.params
    doc = {
        "format": "OOC2D", "lambda": p.lam, "T": p.T, "omega": p.omega, "kappa": p.kappa,
        "count": len(family), "provenance": family.provenance,
        "matrices": [{"id": i, "pulses": [list(x) for x in M.sorted_pulses()]} for i, M in enumerate(family)],
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def family_from_json(text: str) -> CodeFamily:
    try:
        doc = json.loads(text)
        params = CodeParams(doc["lambda"], doc["T"], doc["omega"], doc["kappa"])
        mats = [CodeMatrix(params.lam, params.T, frozenset(map(tuple, m["pulses"]))) for m in doc["matrices"]]
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno) from None
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed family document: {e}") from None
    return CodeFamily(params, mats, provenance=doc.get("provenance", {}), validate=False)


def dump_codes_3d(codes, omega: int | None = None) -> str:
    codes = list(codes)
    lam = codes[0].lam if codes else 0
    T = codes[0].T if codes else 0
    w = omega if omega is not None else (codes[0].weight if codes else 0)
    out = [f"OOC3D lambda={lam} T={T} omega={w} count={len(codes)}"]
    for i, C in enumerate(codes):
        out.append(f"matrix {i}")
        out.extend(f"p {p} {a} {t}" for p, a, t in sorted(C.pulses))
    return "\n".join(out) + "\n"


def parse_codes_3d(text: str) -> list[Code3D]:
    h, _, blocks = _parse_blocks(text, "OOC3D", ("lambda", "T"), 3)
    out = []
    for block in blocks:
        for n, (p, a, t) in block:
            if p not in (0, 1) or not (0 <= a < h["lambda"] and 0 <= t < h["T"]):
                raise ParseError(f"pulse ({p}, {a}, {t}) outside 2x{h['lambda']}x{h['T']}", n)
        out.append(Code3D(h["lambda"], h["T"], frozenset(v for _, v in block)))
    return out


# --- outer codes -------------------------------------------------------------


def dump_cw(cw: CWCode) -> str:
    out = [f"CW lambda={cw.lam} omega={cw.omega} kappa={cw.kappa}"]
    out.extend(" ".join(map(str, w)) for w in cw.words)
    return "\n".join(out) + "\n"


def parse_cw(text: str) -> CWCode:
    header = None
    words = []
    for n, toks, raw in _lines(text):
        if raw.startswith("#"):
            continue
        if header is None:
            if toks[0] != "CW":
                raise ParseError("expected CW header", n)
            header = _header_fields(toks[1:], n, ("lambda", "omega", "kappa"))
            continue
        w = _ints(toks, n)
        if len(w) != header["omega"]:
            raise ParseError(f"word has {len(w)} indices, header says omega={header['omega']}", n)
        words.append(w)
    if header is None:
        raise ParseError("empty file", 1)
    if not words:
        return CWCode(header["lambda"], header["omega"], header["kappa"], ())
    return load_cw(words, header["kappa"], lam=header["lambda"])


# --- phase sets ---------------------------------------------------------------


def dump_phase(seqs) -> str:
    seqs = list(seqs)
    out = [f"PHASE count={len(seqs)}"]
    for s in seqs:
        if s.label:
            out.append(f"# {s.label}")
        out.append(f"s {s.q} {s.K} " + " ".join(map(str, s.levels)))
    return "\n".join(out) + "\n"


def parse_phase(text: str) -> list[PhaseSequence]:
    header = None
    out = []
    for n, toks, raw in _lines(text):
        if raw.startswith("#"):
            continue
        if header is None:
            if toks[0] != "PHASE":
                raise ParseError("expected PHASE header", n)
            header = _header_fields(toks[1:], n, ())
            continue
        if toks[0] != "s":
            raise ParseError(f"unknown record {toks[0]!r}", n)
        vals = _ints(toks[1:], n)
        if len(vals) < 2 or len(vals) - 2 != vals[1]:
            raise ParseError("expected 's <q> <K>' followed by K levels", n)
        try:
            out.append(PhaseSequence(vals[0], vals[2:]))
        except OOCError as e:
            raise ParseError(str(e), n) from None
    if header is None:
        raise ParseError("empty file", 1)
    if "count" in header and header["count"] != len(out):
        raise ParseError(f"header count={header['count']} but {len(out)} sequences", 1)
    return out
