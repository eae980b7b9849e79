"""Text format for workbench objects: parser, printer, diagnostics.

The format is line-oriented with block syntax:

    signature SL { op join/2; const ca; }
    algebra A over SL { universe 7; table join = [0, 1, ...]; const ca = 1; }
    matrix M1 { algebra A; designated {6}; }
    logic or = matrices(M1, M2);
    logic neg over NA = rules { x1, neg(x1) |- x2; }
    translation t : SL -> K3 { join(x1, x2) -> join(x1, x2); ca(x1) -> ca(x1); }

Universes are 0..n-1 and tables are row-major integer lists.  `const c;`
declares an arity-1 symbol; `const c = v;` fills its table with v.  Names
of the shape x<digits> are reserved for variables.  Parsing either yields
a bundle in which every cross-reference resolves, or raises a SpecError
carrying a diagnostic with a stable code and a line/column position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import FiniteAlgebra, Matrix
from .logic import Logic
from .terms import App, InputError, Rule, Signature, Term, Translation, Var, term_str

KEYWORDS = {
    "signature", "algebra", "matrix", "logic", "translation",
    "op", "const", "universe", "table", "designated", "matrices",
    "rules", "over",
}

_VARIABLE_RE = re.compile(r"^x[0-9]+$")


@dataclass(frozen=True)
class Diagnostic:
    code: str  # one of: lex, syntax, arity, duplicate, dangling, value
    message: str
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}: [{self.code}] {self.message}"


class SpecError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


@dataclass
class WorkspaceBundle:
    """Everything a spec file defines, with the reference names it used."""

    signatures: dict[str, Signature] = field(default_factory=dict)
    algebras: dict[str, FiniteAlgebra] = field(default_factory=dict)
    matrices: dict[str, Matrix] = field(default_factory=dict)
    logics: dict[str, Logic] = field(default_factory=dict)
    translations: dict[str, Translation] = field(default_factory=dict)
    algebra_signature_names: dict[str, str] = field(default_factory=dict)
    matrix_algebra_names: dict[str, str] = field(default_factory=dict)
    logic_defs: dict[str, tuple] = field(default_factory=dict)
    translation_signature_names: dict[str, tuple[str, str]] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not (self.signatures or self.algebras or self.matrices
                    or self.logics or self.translations)


@dataclass(frozen=True)
class _Token:
    kind: str  # ident, int, punct, eof
    text: str
    line: int
    col: int


_PUNCT2 = ("->", "|-")
_PUNCT1 = "{}()[],;/=:"


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text[i : i + 2] in _PUNCT2:
            tokens.append(_Token("punct", text[i : i + 2], line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT1:
            tokens.append(_Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise SpecError(Diagnostic("lex", f"unexpected character {ch!r}", line, col))
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.bundle = WorkspaceBundle()

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, code: str, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise SpecError(Diagnostic(code, message, tok.line, tok.col))

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            self.fail("syntax", f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def ident(self, what: str) -> _Token:
        tok = self.next()
        if tok.kind != "ident":
            self.fail("syntax", f"expected {what}, found {tok.text!r}", tok)
        return tok

    def integer(self) -> int:
        tok = self.next()
        if tok.kind != "int":
            self.fail("syntax", f"expected an integer, found {tok.text!r}", tok)
        return int(tok.text)

    # ---- terms -----------------------------------------------------------

    def parse_term(self, sig: Signature) -> Term:
        tok = self.ident("a term")
        if _VARIABLE_RE.match(tok.text):
            idx = int(tok.text[1:])
            if idx < 1:
                self.fail("value", "variable indices start at x1", tok)
            return Var(idx)
        if tok.text not in sig:
            self.fail("dangling", f"unknown symbol {tok.text!r}", tok)
        self.expect("(")
        args = [self.parse_term(sig)]
        while self.peek().text == ",":
            self.next()
            args.append(self.parse_term(sig))
        self.expect(")")
        if len(args) != sig.arity(tok.text):
            self.fail(
                "arity",
                f"symbol {tok.text!r} has arity {sig.arity(tok.text)}, "
                f"applied to {len(args)} arguments",
                tok,
            )
        return App(tok.text, tuple(args))

    # ---- blocks ----------------------------------------------------------

    def parse(self) -> WorkspaceBundle:
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.text == "signature":
                self.parse_signature()
            elif tok.text == "algebra":
                self.parse_algebra()
            elif tok.text == "matrix":
                self.parse_matrix()
            elif tok.text == "logic":
                self.parse_logic()
            elif tok.text == "translation":
                self.parse_translation()
            else:
                self.fail("syntax", f"unexpected {tok.text!r} at top level", tok)
        return self.bundle

    def _fresh_name(self, table: dict, tok: _Token, what: str) -> str:
        if tok.text in table:
            self.fail("duplicate", f"{what} {tok.text!r} already defined", tok)
        if tok.text in KEYWORDS or _VARIABLE_RE.match(tok.text):
            self.fail("value", f"{tok.text!r} is reserved", tok)
        return tok.text

    def parse_signature(self):
        self.expect("signature")
        name_tok = self.ident("a signature name")
        name = self._fresh_name(self.bundle.signatures, name_tok, "signature")
        self.expect("{")
        symbols: list[tuple[str, int]] = []
        seen: set[str] = set()
        while self.peek().text != "}":
            kind = self.next()
            if kind.text == "op":
                sym = self.ident("a symbol name")
                self.expect("/")
                ar_tok = self.peek()
                arity = self.integer()
                if arity < 1:
                    self.fail(
                        "value",
                        "arity 0 is forbidden; declare a const instead",
                        ar_tok,
                    )
            elif kind.text == "const":
                sym = self.ident("a constant name")
                arity = 1
            else:
                self.fail("syntax", f"expected op or const, found {kind.text!r}", kind)
            if sym.text in seen:
                self.fail("duplicate", f"symbol {sym.text!r} already declared", sym)
            if sym.text in KEYWORDS or _VARIABLE_RE.match(sym.text):
                self.fail("value", f"{sym.text!r} is reserved", sym)
            seen.add(sym.text)
            symbols.append((sym.text, arity))
            self.expect(";")
        self.expect("}")
        self.bundle.signatures[name] = Signature(tuple(symbols))

    def parse_algebra(self):
        self.expect("algebra")
        name_tok = self.ident("an algebra name")
        name = self._fresh_name(self.bundle.algebras, name_tok, "algebra")
        self.expect("over")
        sig_tok = self.ident("a signature name")
        if sig_tok.text not in self.bundle.signatures:
            self.fail("dangling", f"unknown signature {sig_tok.text!r}", sig_tok)
        sig = self.bundle.signatures[sig_tok.text]
        self.expect("{")
        self.expect("universe")
        size_tok = self.peek()
        size = self.integer()
        if size < 1:
            self.fail("value", "universe must be non-empty", size_tok)
        self.expect(";")
        tables: dict[str, tuple[int, ...]] = {}
        while self.peek().text != "}":
            kind = self.next()
            if kind.text == "table":
                sym = self.ident("a symbol name")
                if sym.text not in sig:
                    self.fail("dangling", f"unknown symbol {sym.text!r}", sym)
                self.expect("=")
                self.expect("[")
                entries = [self.integer()]
                while self.peek().text == ",":
                    self.next()
                    entries.append(self.integer())
                close = self.expect("]")
                expected = size ** sig.arity(sym.text)
                if len(entries) != expected:
                    self.fail(
                        "arity",
                        f"table for {sym.text!r} needs {expected} entries, got {len(entries)}",
                        close,
                    )
                if any(not 0 <= v < size for v in entries):
                    self.fail("value", f"table for {sym.text!r} has entries outside the universe", close)
            elif kind.text == "const":
                sym = self.ident("a symbol name")
                if sym.text not in sig:
                    self.fail("dangling", f"unknown symbol {sym.text!r}", sym)
                if sig.arity(sym.text) != 1:
                    self.fail("arity", f"const shorthand needs an arity-1 symbol", sym)
                self.expect("=")
                v_tok = self.peek()
                v = self.integer()
                if not 0 <= v < size:
                    self.fail("value", f"constant value {v} outside the universe", v_tok)
                entries = [v] * size
            else:
                self.fail("syntax", f"expected table or const, found {kind.text!r}", kind)
            if sym.text in tables:
                self.fail("duplicate", f"table for {sym.text!r} already given", sym)
            tables[sym.text] = tuple(entries)
            self.expect(";")
        close = self.expect("}")
        missing = [s for s, _ in sig.symbols if s not in tables]
        if missing:
            self.fail("dangling", f"missing tables for {', '.join(missing)}", close)
        alg = FiniteAlgebra(sig, size, tuple(tables[s] for s, _ in sig.symbols))
        self.bundle.algebras[name] = alg
        self.bundle.algebra_signature_names[name] = sig_tok.text

    def parse_matrix(self):
        self.expect("matrix")
        name_tok = self.ident("a matrix name")
        name = self._fresh_name(self.bundle.matrices, name_tok, "matrix")
        self.expect("{")
        self.expect("algebra")
        alg_tok = self.ident("an algebra name")
        if alg_tok.text not in self.bundle.algebras:
            self.fail("dangling", f"unknown algebra {alg_tok.text!r}", alg_tok)
        alg = self.bundle.algebras[alg_tok.text]
        self.expect(";")
        self.expect("designated")
        self.expect("{")
        elems: set[int] = set()
        while self.peek().text != "}":
            v_tok = self.peek()
            v = self.integer()
            if not 0 <= v < alg.size:
                self.fail("value", f"designated element {v} outside the universe", v_tok)
            elems.add(v)
            if self.peek().text == ",":
                self.next()
        self.expect("}")
        self.expect(";")
        self.expect("}")
        self.bundle.matrices[name] = Matrix(alg, frozenset(elems))
        self.bundle.matrix_algebra_names[name] = alg_tok.text

    def parse_logic(self):
        self.expect("logic")
        name_tok = self.ident("a logic name")
        name = self._fresh_name(self.bundle.logics, name_tok, "logic")
        if self.peek().text == "over":
            self.next()
            sig_tok = self.ident("a signature name")
            if sig_tok.text not in self.bundle.signatures:
                self.fail("dangling", f"unknown signature {sig_tok.text!r}", sig_tok)
            sig_name = sig_tok.text
        else:
            sig_name = None
        self.expect("=")
        kind = self.next()
        if kind.text == "matrices":
            self.expect("(")
            names = [self.ident("a matrix name")]
            while self.peek().text == ",":
                self.next()
                names.append(self.ident("a matrix name"))
            self.expect(")")
            self.expect(";")
            gens = []
            for tok in names:
                if tok.text not in self.bundle.matrices:
                    self.fail("dangling", f"unknown matrix {tok.text!r}", tok)
                gens.append(self.bundle.matrices[tok.text])
            sig = gens[0].algebra.signature
            for tok, g in zip(names, gens):
                if g.algebra.signature != sig:
                    self.fail("value", "generator matrices over different signatures", tok)
            self.bundle.logics[name] = Logic(name, sig, generators=tuple(gens))
            self.bundle.logic_defs[name] = ("matrices", tuple(t.text for t in names))
        elif kind.text == "rules":
            if sig_name is None:
                self.fail("syntax", "rule-presented logic needs `over SIG`", kind)
            sig = self.bundle.signatures[sig_name]
            self.expect("{")
            rules = []
            while self.peek().text != "}":
                premises: list[Term] = []
                if self.peek().text != "|-":
                    premises.append(self.parse_term(sig))
                    while self.peek().text == ",":
                        self.next()
                        premises.append(self.parse_term(sig))
                self.expect("|-")
                conclusion = self.parse_term(sig)
                self.expect(";")
                rules.append(Rule(tuple(premises), conclusion))
            self.expect("}")
            self.bundle.logics[name] = Logic(name, sig, rules=tuple(rules))
            self.bundle.logic_defs[name] = ("rules", sig_name)
        else:
            self.fail("syntax", f"expected matrices or rules, found {kind.text!r}", kind)

    def parse_translation(self):
        self.expect("translation")
        name_tok = self.ident("a translation name")
        name = self._fresh_name(self.bundle.translations, name_tok, "translation")
        self.expect(":")
        src_tok = self.ident("a signature name")
        if src_tok.text not in self.bundle.signatures:
            self.fail("dangling", f"unknown signature {src_tok.text!r}", src_tok)
        self.expect("->")
        dst_tok = self.ident("a signature name")
        if dst_tok.text not in self.bundle.signatures:
            self.fail("dangling", f"unknown signature {dst_tok.text!r}", dst_tok)
        src = self.bundle.signatures[src_tok.text]
        dst = self.bundle.signatures[dst_tok.text]
        self.expect("{")
        images: dict[str, Term] = {}
        while self.peek().text != "}":
            sym = self.ident("a source symbol")
            if sym.text not in src:
                self.fail("dangling", f"unknown source symbol {sym.text!r}", sym)
            if sym.text in images:
                self.fail("duplicate", f"image of {sym.text!r} already given", sym)
            self.expect("(")
            arity = src.arity(sym.text)
            for i in range(arity):
                v = self.ident("a variable")
                if v.text != f"x{i + 1}":
                    self.fail("syntax", f"expected x{i + 1}, found {v.text!r}", v)
                if i + 1 < arity:
                    self.expect(",")
            self.expect(")")
            self.expect("->")
            img = self.parse_term(dst)
            bad = [i for i in _term_variables(img) if not 1 <= i <= arity]
            if bad:
                self.fail(
                    "value",
                    f"image of {sym.text!r} uses variables outside x1..x{arity}",
                    sym,
                )
            images[sym.text] = img
            self.expect(";")
        close = self.expect("}")
        missing = [s for s, _ in src.symbols if s not in images]
        if missing:
            self.fail("dangling", f"missing images for {', '.join(missing)}", close)
        self.bundle.translations[name] = Translation(
            src, dst, tuple(images[s] for s, _ in src.symbols)
        )
        self.bundle.translation_signature_names[name] = (src_tok.text, dst_tok.text)


def _term_variables(t: Term) -> frozenset[int]:
    from .terms import variables

    return variables(t)


def parse_spec(text: str) -> WorkspaceBundle:
    """Parse a spec file; raises SpecError with a positioned diagnostic."""
    return _Parser(_tokenize(text)).parse()


def parse_term_text(text: str, sig: Signature) -> Term:
    """Parse a single term (used by the command line)."""
    parser = _Parser(_tokenize(text))
    term = parser.parse_term(sig)
    if parser.peek().kind != "eof":
        parser.fail("syntax", "trailing input after term")
    return term


# ---------------------------------------------------------------------------
# printing


def print_spec(bundle: WorkspaceBundle) -> str:
    """Canonical text for a bundle; parse(print(b)) == b."""
    out: list[str] = []
    for name in sorted(bundle.signatures):
        sig = bundle.signatures[name]
        out.append(f"signature {name} {{")
        for sym, arity in sig.symbols:
            out.append(f"  op {sym}/{arity};")
        out.append("}")
    for name in sorted(bundle.algebras):
        alg = bundle.algebras[name]
        sig_name = bundle.algebra_signature_names[name]
        out.append(f"algebra {name} over {sig_name} {{")
        out.append(f"  universe {alg.size};")
        for sym, _ in alg.signature.symbols:
            entries = ", ".join(map(str, alg.table(sym)))
            out.append(f"  table {sym} = [{entries}];")
        out.append("}")
    for name in sorted(bundle.matrices):
        m = bundle.matrices[name]
        alg_name = bundle.matrix_algebra_names[name]
        elems = ", ".join(map(str, sorted(m.designated)))
        out.append(f"matrix {name} {{")
        out.append(f"  algebra {alg_name};")
        out.append(f"  designated {{{elems}}};")
        out.append("}")
    for name in sorted(bundle.logics):
        kind = bundle.logic_defs[name]
        if kind[0] == "matrices":
            out.append(f"logic {name} = matrices({', '.join(kind[1])});")
        else:
            out.append(f"logic {name} over {kind[1]} = rules {{")
            for rule in bundle.logics[name].rules:
                premises = ", ".join(term_str(p) for p in rule.premises)
                lhs = f"{premises} " if premises else ""
                out.append(f"  {lhs}|- {term_str(rule.conclusion)};")
            out.append("}")
    for name in sorted(bundle.translations):
        tr = bundle.translations[name]
        src_name, dst_name = bundle.translation_signature_names[name]
        out.append(f"translation {name} : {src_name} -> {dst_name} {{")
        for (sym, arity), img in zip(tr.source.symbols, tr.images):
            args = ", ".join(f"x{i + 1}" for i in range(arity))
            out.append(f"  {sym}({args}) -> {term_str(img)};")
        out.append("}")
    return "\n".join(out) + ("\n" if out else "")
