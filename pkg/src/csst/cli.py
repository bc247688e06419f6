"""``csst``: build codes, check transversal T, read off logical gates, search.

Exit status is 0 when the check passes, 1 when it fails and 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
import warnings
from pathlib import Path

import numpy as np

from . import checker, logical, search
from .codes import LinearCode, MonomialSet, is_decreasing, monomial_matrix, reed_muller
from .gf2 import BitMatrix, BitVector, complement_basis, format_matrix, parse_matrix
from .pauli import format_stabilizer, parse_pauli_string, parse_stabilizer
from .qfd import format_pauli_sum, transversal_t_conjugate

log = logging.getLogger("csst")

PASS, FAIL, USAGE = 0, 1, 2


class InputError(Exception):
    pass


# --- file helpers ----------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_code_file(path: str) -> tuple[BitMatrix, list[str] | None]:
    """Matrix rows as written, plus monomial labels from a ``# monomials:`` header."""
    text = _read(path)
    try:
        M = parse_matrix(text)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc
    m = re.search(r"^#.*\bmonomials:\s*(\S+)", text, re.M)
    labels = m.group(1).split(",") if m else None
    if labels is not None and len(labels) != M.r:
        raise InputError(f"{path}: {len(labels)} monomial labels for {M.r} rows")
    return M, labels


def read_stabilizer_file(path: str):
    try:
        return parse_stabilizer(_read(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def code_text(M: BitMatrix, labels: list[str] | None = None) -> str:
    k = LinearCode(M).k
    header = f"code n={M.n} k={k}"
    out = format_matrix(M, header)
    if labels:
        out = f"# monomials: {','.join(labels)}\n" + out
    return out if out.endswith("\n") else out + "\n"


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=1, default=_jsonable) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (BitVector, BitMatrix)):
        return str(x)
    raise TypeError(type(x).__name__)


# --- subcommands -----------------------------------------------------------

def cmd_construct(args) -> int:
    if args.kind == "rm":
        if len(args.params) != 2:
            raise InputError("construct rm needs R M")
        r, m = (int(p) for p in args.params)
        ms = MonomialSet.all_up_to_degree(r, m)
        reed_muller(r, m)  # validates the range
    else:
        if args.m is None or args.monomials is None:
            raise InputError("construct dmc needs --m and --monomials")
        ms = MonomialSet.parse(args.monomials, args.m)
        if not is_decreasing(ms):
            warnings.warn(f"monomial set {ms} is not decreasing")
    M = monomial_matrix(ms)
    _write(args.output, code_text(M, ms.labels()))
    return PASS


def cmd_check(args) -> int:
    S = read_stabilizer_file(args.stabilizer)
    rep = checker.check_theorem1(S, args.mode)
    lines = [f"{'PASS' if rep.passed else 'FAIL'}  n={rep.n} k={rep.k} mode={rep.mode}"]
    for r in rep.per_element:
        status = "ok" if r.passed else f"FAIL: {r.failure}"
        lines.append(f"  a={r.a}  dim Z_j={r.zj_dim}  {status}")
    _emit(args, rep.to_dict(), "\n".join(lines))
    return PASS if rep.passed else FAIL


def cmd_check_pair(args) -> int:
    C1 = LinearCode(read_code_file(args.c1)[0])
    C2 = LinearCode(read_code_file(args.c2)[0])
    if C1.n != C2.n:
        raise InputError("C1 and C2 have different lengths")
    if not C1.contains_code(C2):
        raise InputError("C2 is not contained in C1")
    rep = checker.check_css_t_pair(C1, C2)
    bad = [r.x for r in rep.per_codeword if not r.self_dual_found]
    text = (f"{'PASS' if rep.passed else 'FAIL'}  [[{C1.n},{C1.k - C2.k}]]  C2 even: {rep.even_c2}  "
            f"codewords without a self-dual code: {len(bad)}")
    if bad:
        text += "\n  first: " + bad[0]
    _emit(args, rep.to_dict(), text)
    return PASS if rep.passed else FAIL


def _coset_rows(args, G1, lab1, G2, lab2):
    C1, C2 = LinearCode(G1), LinearCode(G2)
    if args.coset:
        G, labels = read_code_file(args.coset)
        return G, labels
    if lab1 and lab2 and set(lab2) <= set(lab1):
        keep = [i for i, l in enumerate(lab1) if l not in set(lab2)]
        return BitMatrix(G1.n, tuple(G1.rows[i] for i in keep)), [lab1[i] for i in keep]
    return complement_basis(C1.gen, C2.gen), None


def cmd_logical(args) -> int:
    G1, lab1 = read_code_file(args.c1)
    G2, lab2 = read_code_file(args.c2)
    C1, C2 = LinearCode(G1), LinearCode(G2)
    if not C1.contains_code(C2):
        raise InputError("C2 is not contained in C1")
    G, labels = _coset_rows(args, G1, lab1, G2, lab2)
    offset = BitVector.from_str(args.offset).bits if args.offset else 0
    if args.method == "dense":
        S = checker.signed_css_stabilizer(C1, C2, offset)
        # the part of the offset inside C1 is a logical frame, not a sign
        frame = offset ^ logical.css_parts(S)[2]
        res = logical.dense_preservation_and_action(S, G, frame)
        exps = res.diagonal_exponents() if res.preserved else None
        payload = {"preserved": res.preserved, "phases": exps}
        if exps is not None and all(e % 4 == 0 for e in exps):
            payload["anf"] = logical.anf_from_phases(np.array(exps)).format(labels)
        text = "not preserved" if not res.preserved else _phase_text(exps, payload.get("anf"))
        _emit(args, payload, text)
        return PASS if res.preserved else FAIL
    rep = logical.logical_phases(C1, C2, G, offset, labels)
    if not rep.uniform_within_coset:
        v = rep.violation
        _emit(args, rep.to_dict(), f"not diagonal: coset v={v['v']} has weights {v['weights_mod8']} mod 8")
        return FAIL
    anf = rep.anf.format(labels) if rep.anf else None
    _emit(args, rep.to_dict(), _phase_text([int(p) for p in rep.phases], anf))
    return PASS


def _phase_text(phases, anf) -> str:
    k = (len(phases) - 1).bit_length()
    lines = [f"k={k}  phase exponents mod 8 (w = exp(i pi/4)), |0>_L normalized to 0"]
    if len(phases) <= 64:
        for v, e in enumerate(phases):
            lines.append(f"  v={format(v, f'0{max(k, 1)}b')[::-1]}  w^{e}")
    lines.append(f"q(v) = {anf}" if anf is not None else "phases are not all +1/-1")
    return "\n".join(lines)


def cmd_cssify(args) -> int:
    S = read_stabilizer_file(args.stabilizer)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            out = checker.cssify(S)
        except checker.CssifyError as exc:
            sys.stderr.write(f"csst: {exc}\n")
            return FAIL
    for w in caught:
        sys.stderr.write(f"warning: {w.message}\n")
    rep = checker.check_theorem1(out, "sufficient")
    _write(args.output, format_stabilizer(out, "CSS-ified"))
    if args.output and args.output != "-":
        _emit(args, {"passed": rep.passed, "n": out.n, "k": out.k, "generators": out.strings()},
              f"{'PASS' if rep.passed else 'FAIL'}  wrote {args.output}  n={out.n} k={out.k}")
    return PASS if rep.passed else FAIL


def cmd_verify_dense(args) -> int:
    if args.stabilizer:
        S = read_stabilizer_file(args.stabilizer)
    else:
        if not (args.c1 and args.c2):
            raise InputError("give --stabilizer or both --c1 and --c2")
        C1 = LinearCode(read_code_file(args.c1)[0])
        C2 = LinearCode(read_code_file(args.c2)[0])
        S = checker.signed_css_stabilizer(C1, C2, checker.css_t_sign_offset(C1, C2) or 0)
    res = logical.dense_preservation_and_action(S)
    exps = res.diagonal_exponents() if res.preserved else None
    payload = {"preserved": res.preserved, "n": S.n, "k": S.k, "basis": res.basis, "diagonal_phases": exps}
    text = f"{'PASS' if res.preserved else 'FAIL'}  T^n Pi (T^n)^dag {'=' if res.preserved else '!='} Pi"
    if exps is not None:
        text += f"\n  logical diagonal exponents: {exps}"
    elif res.preserved:
        text += "\n  logical unitary is not diagonal in the chosen basis"
    _emit(args, payload, text)
    return PASS if res.preserved else FAIL


def _range(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    m = re.fullmatch(r"(\d+)(?::(\d+))?", text)
    if not m:
        raise InputError(f"bad range {text!r} (use LO:HI or N)")
    lo = int(m.group(1))
    return lo, int(m.group(2) or lo)


def cmd_search(args) -> int:
    try:
        spec = search.SearchSpec(
            n=args.n, k1_range=_range(args.k1), k2_range=_range(args.k2),
            generator_source=args.source, seed=args.seed, max_candidates=args.max_candidates,
            output=args.output, min_k=args.min_k, threads=args.threads)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    res = search.cmd_search(spec)
    if args.json and not args.output:
        sys.stdout.write(res.to_json())
    else:
        lines = [f"examined {res.candidates_examined} candidates, {len(res.records)} CSS-T pairs"
                 + ("  (budget exceeded)" if res.budget_exceeded else "")]
        for r in res.records[:args.top]:
            mono = f"  C1={{{r['C1_monomials']}}} C2={{{r['C2_monomials']}}}" if "C1_monomials" in r else ""
            lines.append(f"  [[{r['n']},{r['k']},{r['d']}]]{mono}  {r['logical']}")
        sys.stdout.write("\n".join(lines) + "\n")
    return PASS


def cmd_conjugate(args) -> int:
    P = parse_pauli_string(args.pauli)
    if P.kappa % 4:
        raise InputError("give an unsigned or +-signed Pauli string")
    out = transversal_t_conjugate(P.a, P.b)
    if P.kappa == 2:
        text = "-1 * " + format_pauli_sum(out)
    else:
        text = format_pauli_sum(out)
    _emit(args, {"pauli": args.pauli, "sum": text, "terms": len(out.terms)}, text)
    return PASS


# --- parser ----------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for the PCG64 generator")
    parser.add_argument("--threads", type=int, default=d(1), help="worker threads for search")
    parser.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="csst", description=__doc__.splitlines()[0])
    _global_flags(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", parents=[common], help="write a Reed-Muller or decreasing monomial code")
    s.add_argument("kind", choices=["rm", "dmc"])
    s.add_argument("params", nargs="*", help="R M for rm")
    s.add_argument("--m", type=int)
    s.add_argument("--monomials", help='e.g. "1,x1,x2,x1x2"')
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("check", parents=[common], help="transversal T conditions for a stabilizer code")
    s.add_argument("--stabilizer", required=True)
    s.add_argument("--mode", choices=["necessary", "sufficient"], default="sufficient")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("check-pair", parents=[common], help="CSS-T conditions for a pair C2 < C1")
    s.add_argument("--c1", required=True)
    s.add_argument("--c2", required=True)
    s.set_defaults(func=cmd_check_pair)

    s = sub.add_parser("logical", parents=[common], help="logical gate induced by transversal T")
    s.add_argument("--c1", required=True)
    s.add_argument("--c2", required=True)
    s.add_argument("--coset", help="coset representative rows (logical X generators)")
    s.add_argument("--offset", help="Z-sign offset / logical frame as a bit string")
    s.add_argument("--method", choices=["coset", "dense"], default="coset")
    s.set_defaults(func=cmd_logical)

    s = sub.add_parser("cssify", parents=[common], help="replace mixed generators by their X parts")
    s.add_argument("--stabilizer", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cssify)

    s = sub.add_parser("verify-dense", parents=[common], help="dense projector check (n <= 10)")
    s.add_argument("--stabilizer")
    s.add_argument("--c1")
    s.add_argument("--c2")
    s.set_defaults(func=cmd_verify_dense)

    s = sub.add_parser("search", parents=[common], help="search for CSS-T pairs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--source", "--mode", dest="source", choices=["monomial_lattice", "monomial", "random"],
                   default="monomial_lattice")
    s.add_argument("--k1", help="LO:HI")
    s.add_argument("--k2", help="LO:HI")
    s.add_argument("--min-k", type=int, default=1)
    s.add_argument("--max-candidates", type=int, default=100_000)
    s.add_argument("--top", type=int, default=20, help="records shown in text mode")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("conjugate", parents=[common], help="expand T^n P (T^n)^dag as a Pauli sum")
    s.add_argument("pauli", help='e.g. "XXXXXX" or "-XZ"')
    s.set_defaults(func=cmd_conjugate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "source", None) == "monomial":
        args.source = "monomial_lattice"
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"csst: {exc}\n")
        return USAGE
    except (ValueError, checker.WitnessBudgetExceeded) as exc:
        sys.stderr.write(f"csst: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
