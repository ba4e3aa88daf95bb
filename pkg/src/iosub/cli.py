"""Command-line interface and the ``.iod`` derivation-file format.

File grammar::

    file    := binding* main
    binding := "let" NAME "=" expr
    main    := "main" "=" expr
    expr    := atom ("[" SYM ":=" expr "]")*
    atom    := 're"' REGEX '"' | NAME | "union" "(" expr ("," expr)+ ")"

``#`` starts a comment that runs to the end of the line.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .analysis import (
    a_linear_sufficient, combine_verdicts, detect_copy_pattern, growth_report, linearity_of_set,
    parikh_of_derivation,
)
from .automata import format_word, parse_word, regex_parse
from .derivation import (
    Derivation, EffectiveForm, Leaf, Subst, Union, enumerate_words, introducer_graph,
    introducer_set, maximal_chains, member, normalize, prepare, standardize, validate,
)
from .errors import (
    DslSyntaxError, IosubError, NotExistentiallyLinear, NotValidated, ParseError,
    RegexSyntaxError, ResidualBinderDimension, UnknownName,
)
from .vectors import FunctionalVectorSet

# ---------------------------------------------------------------------------
# DSL


@dataclass(frozen=True)
class DerivationFile:
    bindings: Tuple[Tuple[str, Derivation], ...]
    main: Derivation


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<re>re"(?P<body>[^"\n]*)")
  | (?P<assign>:=) | (?P<punct>[=\[\](),])
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    value: str
    line: int
    col: int
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", pos, line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "body":
            kind = "re"
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind == "re":
            toks.append(_Tok("re", m.group("body"), line, col, pos))
        elif kind in ("assign", "punct", "name"):
            toks.append(_Tok(kind if kind == "name" else m.group(), m.group(), line, col, pos))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1, pos))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.env = {}

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return DslSyntaxError(msg, tok.pos, tok.line, tok.col)

    def take(self, kind, value=None) -> _Tok:
        t = self.tok
        if t.kind != kind or (value is not None and t.value != value):
            want = value or kind
            got = t.value or t.kind
            raise self.error(f"expected {want!r}, found {got!r}")
        self.i += 1
        return t

    def at(self, kind, value=None) -> bool:
        t = self.tok
        return t.kind == kind and (value is None or t.value == value)

    def file(self) -> DerivationFile:
        bindings = []
        while self.at("name", "let"):
            self.take("name")
            name_tok = self.take("name")
            if name_tok.value in self.env:
                raise self.error(f"name {name_tok.value!r} bound twice", name_tok)
            self.take("=")
            expr = self.expr()
            self.env[name_tok.value] = expr
            bindings.append((name_tok.value, expr))
        if not self.at("name", "main"):
            raise self.error("expected 'let' or 'main'" if not self.at("eof") else "missing 'main'")
        self.take("name")
        self.take("=")
        main = self.expr()
        self.take("eof")
        return DerivationFile(tuple(bindings), main)

    def expr(self) -> Derivation:
        d = self.atom()
        while self.at("["):
            self.take("[")
            sym = self.take("name").value
            self.take(":=")
            right = self.expr()
            self.take("]")
            d = Subst(d, sym, right)
        return d

    def atom(self) -> Derivation:
        t = self.tok
        if t.kind == "re":
            self.i += 1
            try:
                return Leaf.parse(t.value)
            except RegexSyntaxError as e:
                offset = t.col + 3 + e.position
                raise DslSyntaxError(f"in regex: {e.message}", t.pos + 3 + e.position, t.line,
                                     offset) from None
        if t.kind == "name" and t.value == "union" and self.toks[self.i + 1].kind == "(":
            self.i += 2
            kids = [self.expr()]
            while self.at(","):
                self.take(",")
                kids.append(self.expr())
            self.take(")")
            if len(kids) < 2:
                raise self.error("union needs at least two operands", t)
            return Union(tuple(kids))
        if t.kind == "name" and t.value not in ("let", "main"):
            self.i += 1
            if t.value not in self.env:
                raise UnknownName(f"unknown name {t.value!r} (line {t.line}, column {t.col})")
            return self.env[t.value]
        raise self.error(f"expected an expression, found {t.value or t.kind!r}")


def parse_file(text: str) -> DerivationFile:
    return _Parser(text).file()


def parse_derivation(text: str) -> Derivation:
    return parse_file(text).main


def emit_expr(d: Derivation) -> str:
    if isinstance(d, Leaf):
        return f're"{d.text}"'
    if isinstance(d, Subst):
        return f"{emit_expr(d.left)} [{d.sym} := {emit_expr(d.right)}]"
    return "union(" + ", ".join(emit_expr(c) for c in d.children) + ")"


def emit(d: Derivation) -> str:
    """DSL text for a derivation; re-parses to an equal-language derivation."""
    if isinstance(d, EffectiveForm):
        d = d.to_derivation()
    return f"main = {emit_expr(d)}\n"


# ---------------------------------------------------------------------------
# serialization


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def vector_set_json(e: FunctionalVectorSet) -> dict:
    comps = []
    for f in e.components:
        terms = [{"monomial": [list(p) for p in m.factors],
                  "vector": dict(zip(f.dims, v))} for m, v in f.terms]
        comps.append({"param_count": f.param_count, "terms": terms, "text": str(f)})
    return {"dims": list(e.dims), "components": comps}


# ---------------------------------------------------------------------------
# commands


class _Exit(Exception):
    def __init__(self, code, message=""):
        self.code = code
        self.message = message


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise _Exit(2, f"cannot read {path}: {e.strerror}")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise _Exit(2, f"{path} is not UTF-8")
    return parse_file(text).main, hashlib.sha256(data).hexdigest()


def _validated(d):
    diags = validate(d)
    if diags:
        raise NotValidated(diags)
    return d


def cmd_validate(d, args, warnings):
    diags = validate(d)
    result = {"valid": not diags,
              "diagnostics": [{"kind": x.kind, "symbol": x.symbol, "path": x.path} for x in diags]}
    text = "valid" if not diags else "\n".join(map(str, diags))
    return result, text, (0 if not diags else 1)


def cmd_normalize(d, args, warnings):
    n = normalize(_validated(d))
    std = standardize(n)
    dsl = emit(n)
    result = {"derivation": str(n), "standard": [str(b) for b in std.branches], "dsl": dsl}
    text = dsl.rstrip("\n") if args.emit_dsl else str(n) + "\n" + "\n".join(
        f"branch {i}: {b}" for i, b in enumerate(std.branches))
    return result, text, 0


def cmd_enumerate(d, args, warnings):
    if args.max_len < 0:
        raise _Exit(2, "--max-len must be non-negative")
    words = [format_word(w) for w in enumerate_words(normalize(_validated(d)), args.max_len)]
    text = "\n".join(w if w else "eps" for w in words)
    return {"words": words, "count": len(words), "max_len": args.max_len}, text, 0


def cmd_member(d, args, warnings):
    w = parse_word(args.word)
    ok = member(prepare(d), w)
    return {"word": format_word(w), "member": ok}, str(ok).lower(), (0 if ok else 1)


def cmd_parikh(d, args, warnings):
    e = parikh_of_derivation(prepare(d))
    result = vector_set_json(e)
    text = "dims: " + " ".join(e.dims) + "\n" + "\n".join(str(f) for f in e.components)
    return result, text, 0


def cmd_linearity(d, args, warnings):
    e = parikh_of_derivation(prepare(d))
    dims = [args.dim] if args.dim else None
    rep = linearity_of_set(e, dims)
    result = {
        "dims": {a: str(c) for a, c in rep.dims.items()},
        "existentially_linear": rep.existentially_linear,
        "universally_linear": rep.universally_linear,
        "witness": None if rep.witness is None else
        {"component": rep.witness[0], "param": rep.witness[1]},
    }
    lines = [f"{a}: {c}" for a, c in rep.dims.items()]
    lines += [f"existentially linear: {str(rep.existentially_linear).lower()}",
              f"universally linear: {str(rep.universally_linear).lower()}"]
    return result, "\n".join(lines), 0


def cmd_growth(d, args, warnings):
    try:
        rep = growth_report(prepare(d))
    except NotExistentiallyLinear as e:
        warnings.append(str(e))
        return {"witness": None}, "no linear direction", 1
    w = rep.witness
    if w.degenerate:
        warnings.append("degenerate witness: A = 0")
    samples = [{"i": s.i, "length": s.length, "word": None if s.word is None else format_word(s.word),
                "member": s.member} for s in rep.samples]
    result = {"K": w.K, "A": w.A, "component": w.component_index, "param": w.param_index,
              "assignment": list(w.assignment), "degenerate": w.degenerate,
              "samples": samples, "verified": rep.verified}
    lines = [f"K = {w.K}, A = {w.A}" + (" (degenerate)" if w.degenerate else "")]
    lines += [f"  i={s['i']} length={s['length']} member={str(s['member']).lower()}" for s in samples]
    return result, "\n".join(lines), (0 if rep.verified else 1)


def cmd_chains(d, args, warnings):
    ef = prepare(d)
    a = args.symbol
    branches, chains, verdicts = [], [], []
    for i, sd in enumerate(ef.branches):
        g = introducer_graph(sd)
        ch = maximal_chains(g, a)
        suff = a_linear_sufficient(sd, a)
        verdicts.append(suff)
        branches.append({"branch": i, "derivation": str(sd), "introducers": sorted(introducer_set(g, a)),
                         "chains": ch, "sufficient": str(suff.verdict)})
        for c in ch:
            if c not in chains:
                chains.append(c)
    chains.sort(key=lambda c: (len(c), c))
    verdict = str(combine_verdicts(verdicts)) if verdicts else "GuaranteedLinear"
    result = {"symbol": a, "chains": chains, "branches": branches, "a_linear_sufficient": verdict}
    text = "\n".join("{" + ", ".join(c) + "}" for c in chains) + f"\nsufficient condition: {verdict}"
    return result, text, 0


def cmd_copy_pattern(d, args, warnings):
    wit = detect_copy_pattern(prepare(d), args.symbol)
    if wit is None:
        return {"symbol": args.symbol, "witness": None}, "no witness", 1
    res = {"branch": wit.branch_index, "chain": list(wit.chain), "y1": wit.y1, "y2": wit.y2,
           "i1": wit.i1, "i2": wit.i2}
    text = (f"branch {wit.branch_index} chain {list(wit.chain)}: "
            f"{wit.y1} at leaf {wit.i1}, {wit.y2} at leaf {wit.i2}")
    return {"symbol": args.symbol, "witness": res}, text, 0


COMMANDS = {
    "validate": cmd_validate, "normalize": cmd_normalize, "enumerate": cmd_enumerate,
    "member": cmd_member, "parikh": cmd_parikh, "linearity": cmd_linearity,
    "growth": cmd_growth, "chains": cmd_chains, "copy-pattern": cmd_copy_pattern,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print a canonical JSON report")
    p = argparse.ArgumentParser(prog="iosub", description="IO-substitution derivation analyses")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", default=False, help="print a canonical JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("file")
        return s

    add("validate", "check binder uniqueness and scope")
    s = add("normalize", "remove deleting and irrelevant substitutions")
    s.add_argument("--emit-dsl", action="store_true")
    s = add("enumerate", "list derived words up to a length")
    s.add_argument("--max-len", type=int, required=True)
    s = add("member", "decide membership of a word")
    s.add_argument("--word", required=True, help='whitespace-separated symbols; "" is the empty word')
    add("parikh", "Parikh image as vector functions")
    s = add("linearity", "classify dimensions")
    s.add_argument("--dim")
    add("growth", "constant-growth witness")
    s = add("chains", "maximal chains of introducers")
    s.add_argument("--symbol", required=True)
    s = add("copy-pattern", "copy-separation witness")
    s.add_argument("--symbol", required=True)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    warnings: List[str] = []
    try:
        d, digest = _load(args.file)
        result, text, code = COMMANDS[args.command](d, args, warnings)
    except _Exit as e:
        print(f"error: {e.message}", file=stderr)
        return e.code
    except (ParseError, UnknownName, NotValidated) as e:
        print(f"error: {e}", file=stderr)
        return 2
    except (ResidualBinderDimension, AssertionError) as e:
        print(f"internal error: {e}", file=stderr)
        return 3
    except IosubError as e:
        print(f"error: {e}", file=stderr)
        return 2
    for w in warnings:
        print(f"warning: {w}", file=stderr)
    if args.json:
        report = {"command": args.command, "input_digest": digest, "result": result,
                  "warnings": warnings}
        stdout.write(canonical_json(report) + "\n")
    else:
        stdout.write(text + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
