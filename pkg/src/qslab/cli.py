"""Command line driver.

    qslab verify <suite> [--n N] [--N DEG] [--alpha A,B] [--p P,Q] [--seed S]
                         [--quad RxA] [--tol T] [--out FILE]
    qslab dump-berezin --op SPEC [--N DEG] [--alpha A] [--grid RxA] [--out FILE]

``verify`` runs a named check suite (or ``all``) and writes a JSON
report; the exit status is 0 when every check passes, 1 when any check
fails (the failing records are listed), and 2 on a configuration or
usage error.  Reports are byte-identical across runs with the same
configuration and seed, except for the ``timing`` section.

``dump-berezin`` samples the Berezin transform of an operator over a
polar grid of the unit disk and writes CSV rows
(re_z, im_z, re_value, im_value).  Operators are described by a small
expression language: the atoms ``I`` (identity), ``J`` (the complex
structure), ``P(z)`` (the rank-one projection at z) and ``lift(FILE)``
(a complex matrix stored as a JSON array of [re, im] pairs), combined
with ``+``, ``-`` and scalar multiples such as ``0.5*P(0.3)`` or
``(1+2i)*J``.  The number of worker threads for a suite run is capped
by the QSLAB_THREADS environment variable (default 1).
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import bergman as bg
from .report import SuiteConfig, build_report, write_report
from .suites import run_checks, suite_names, timestamp_now

USAGE_ERROR = 2
CHECK_FAILURE = 1


class SpecError(ValueError):
    """Malformed operator specification or grid."""


# ----------------------------------------------------------------------
# operator expression language
# ----------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<name>I|J|P|lift)|(?P<num>[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?i?|i)"
    r"|(?P<op>[+\-*(),])|(?P<path>[A-Za-z0-9_./\\-]+))"
)


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SpecError(f"cannot read operator spec at: {text[pos:]!r}")
        tokens.append(m.group(m.lastgroup))
        pos = m.end()
    return tokens


def _parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "")
    if not t:
        raise SpecError("empty number")
    t = re.sub(r"i\b", "j", t.replace("I", "i")) if "i" in t else t
    t = t.replace("i", "j")
    try:
        return complex(t)
    except ValueError as exc:
        raise SpecError(f"bad complex literal {text!r}") from exc


class _Parser:
    """Recursive descent over expr := term (('+'|'-') term)*,
    term := [scalar '*'] atom | scalar, atom := I | J | P(z) | lift(path)."""

    def __init__(self, tokens: list[str], space: bg.BergmanSpace):
        self.toks = tokens
        self.pos = 0
        self.space = space

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise SpecError("unexpected end of operator spec")
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.next()
        if got != tok:
            raise SpecError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> np.ndarray:
        total = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.next()
            term = self.parse_term()
            total = total + term if op == "+" else total - term
        if self.peek() is not None:
            raise SpecError(f"trailing tokens in operator spec: {self.toks[self.pos:]}")
        return total

    def parse_term(self) -> np.ndarray:
        scalar = 1.0 + 0.0j
        tok = self.peek()
        if tok == "(":
            # parenthesized scalar like (1+2i)
            self.next()
            scalar = self.parse_scalar_body()
            self.expect(")")
            self.expect("*")
            return scalar * self.parse_atom()
        if tok is not None and tok not in ("I", "J", "P", "lift"):
            scalar = _parse_complex(self.next())
            if self.peek() == "*":
                self.next()
                return scalar * self.parse_atom()
            return scalar * np.eye(self.space.dim, dtype=complex)
        return scalar * self.parse_atom()

    def parse_scalar_body(self) -> complex:
        parts = [self.next()]
        while self.peek() in ("+", "-"):
            parts.append(self.next())
            parts.append(self.next())
        return _parse_complex("".join(parts))

    def parse_atom(self) -> np.ndarray:
        tok = self.next()
        if tok == "I":
            return np.eye(self.space.dim, dtype=complex)
        if tok == "J":
            return bg.BergOperator.j_operator(self.space).matrix
        if tok == "P":
            self.expect("(")
            z = self.parse_scalar_body()
            self.expect(")")
            if abs(z) >= 1.0:
                raise SpecError(f"projection point {z} lies outside the unit disk")
            return bg.projection_pz(self.space, z).matrix
        if tok == "lift":
            self.expect("(")
            parts = []
            while self.peek() not in (")", None):
                parts.append(self.next())
            self.expect(")")
            return self.load_matrix("".join(parts))
        raise SpecError(f"unknown operator atom {tok!r}")

    def load_matrix(self, path: str) -> np.ndarray:
        try:
            raw = json.loads(Path(path).read_text())
        except OSError as exc:
            raise SpecError(f"cannot read matrix file {path!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SpecError(f"matrix file {path!r} is not valid JSON: {exc}") from exc
        try:
            arr = np.asarray(raw, dtype=float)
            if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
                raise ValueError
            m = arr[:, :, 0] + 1j * arr[:, :, 1]
        except ValueError as exc:
            raise SpecError(
                f"matrix file {path!r} must be a square 2-D JSON array of [re, im] pairs"
            ) from exc
        if m.shape[0] != self.space.dim:
            raise SpecError(
                f"matrix size {m.shape[0]} does not match the truncation dimension {self.space.dim}"
            )
        return m


def parse_operator(spec: str, space: bg.BergmanSpace) -> np.ndarray:
    return _Parser(_tokenize(spec), space).parse()


def _parse_pair(text: str, what: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)x(\d+)", text.strip())
    if not m:
        raise SpecError(f"{what} must look like RxA, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise SpecError(f"bad numeric list {text!r}") from exc


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def cmd_verify(args) -> int:
    try:
        cfg = SuiteConfig(
            suite=args.suite,
            n=args.n,
            degree=args.N,
            alphas=_parse_floats(args.alpha),
            ps=_parse_floats(args.p),
            seed=args.seed,
            quad=_parse_pair(args.quad, "--quad"),
            tol_scale=args.tol,
            out=args.out,
        )
        records = run_checks(cfg)
    except (SpecError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    report = build_report(cfg, records, timestamp_now())
    for rec in records:
        status = "PASS" if rec.passed else "FAIL"
        print(f"[{status}] {rec.check_id} ({rec.wall_ms:.1f} ms)")
    failed = [r for r in records if not r.passed]
    print(
        f"{len(records) - len(failed)}/{len(records)} checks passed"
        f" (suite {cfg.suite!r}, seed {cfg.seed})"
    )
    if args.out:
        write_report(args.out, report)
        print(f"report written to {args.out}")
    if failed:
        for rec in failed:
            print(f"failed: {rec.check_id}: {rec.law}", file=sys.stderr)
        return CHECK_FAILURE
    return 0


def cmd_dump_berezin(args) -> int:
    try:
        rows, cols = _parse_pair(args.grid, "--grid")
        space = bg.BergmanSpace(args.alpha, args.N, quad=(16, 16))
        matrix = parse_operator(args.op, space)
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    out = Path(args.out) if args.out else None
    handle = out.open("w", newline="") if out else sys.stdout
    try:
        writer = csv.writer(handle)
        writer.writerow(["re_z", "im_z", "re_value", "im_value"])
        for j in range(rows):
            r = (j + 1) / (rows + 1)
            for l in range(cols):
                theta = 2.0 * np.pi * l / cols
                z = complex(r * np.cos(theta), r * np.sin(theta))
                val = bg.berezin(space, matrix, z).value
                writer.writerow([repr(z.real), repr(z.imag), repr(val.real), repr(val.imag)])
    finally:
        if out:
            handle.close()
    if out:
        print(f"{rows * cols} samples written to {out}")
    return 0


def build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qslab",
        description="verification suites for quaternionic operator identities",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite and emit a JSON report")
    v.add_argument("suite", choices=suite_names())
    v.add_argument("--n", type=int, default=8, help="matrix dimension cap (<= 32)")
    v.add_argument("--N", type=int, default=24, help="Bergman truncation degree (<= 64)")
    v.add_argument("--alpha", default="0,1", help="comma list of Bergman weights")
    v.add_argument("--p", default="1,2,3", help="comma list of Schatten exponents")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--quad", default="200x256", help="quadrature resolution RxA")
    v.add_argument("--tol", type=float, default=1.0, help="tolerance scale factor")
    v.add_argument("--out", default=None, help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dump-berezin", help="sample a Berezin transform over a polar grid")
    d.add_argument("--op", required=True, help="operator spec, e.g. '0.5*P(0.3)+I'")
    d.add_argument("--N", type=int, default=24)
    d.add_argument("--alpha", type=float, default=0.0)
    d.add_argument("--grid", default="16x32", help="polar grid RxA; 0x0 gives a header-only file")
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_dump_berezin)
    return ap


def main(argv=None) -> int:
    ap = build_argparser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
