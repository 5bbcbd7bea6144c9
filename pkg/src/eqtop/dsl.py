"""Parser and printer for the theory DSL.

Grammar::

    document  := (theory | interpret)*
    theory    := "theory" IDENT "{" decl* "}"
    decl      := "op" IDENT ":" NAT ";"  |  "eq" term "=" term ";"
    interpret := "interpret" IDENT "in" IDENT "{" (IDENT params? ":=" term ";")* "}"
    params    := "(" IDENT ("," IDENT)* ")"
    term      := IDENT "(" term ("," term)* ")" | IDENT

A bare IDENT is a variable unless it is declared as an arity-0 op.
``#`` starts a comment that runs to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import App, Equation, Interpretation, Signature, Theory, Var, subterms


class DSLError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)


class DSLSyntaxError(DSLError):
    pass


class ArityError(DSLError):
    def __init__(self, symbol, expected, found, line=None, col=None):
        self.symbol = symbol
        super().__init__(f"symbol {symbol!r} has arity {expected}, used with {found} argument(s)",
                         line, col)


class DuplicateSymbolError(DSLError):
    def __init__(self, symbol, line=None, col=None):
        self.symbol = symbol
        super().__init__(f"symbol {symbol!r} declared twice", line, col)


class UnknownSymbolError(DSLError):
    def __init__(self, symbol, line=None, col=None):
        self.symbol = symbol
        super().__init__(f"unknown operation symbol {symbol!r}", line, col)


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*) | (?P<nat>[0-9]+)
  | (?P<punct>:=|[{}(),:;=])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind in ("ident", "nat", "punct"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# Raw syntax trees keep positions so later resolution errors can point back.
@dataclass(frozen=True)
class _Raw:
    name: str
    args: tuple
    parens: bool
    line: int
    col: int


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text=None, kind=None):
        t = self.next()
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "eof" else "end of input"
            raise DSLSyntaxError(f"expected {want}, got {got}", t.line, t.col)
        return t

    def document(self):
        blocks = []
        while self.peek().kind != "eof":
            t = self.peek()
            if t.text == "theory":
                blocks.append(("theory", self.theory_block()))
            elif t.text == "interpret":
                blocks.append(("interpret", self.interpret_block()))
            else:
                raise DSLSyntaxError(f"expected 'theory' or 'interpret', got {t.text!r}",
                                     t.line, t.col)
        return blocks

    def theory_block(self):
        self.expect("theory")
        name = self.expect(kind="ident")
        self.expect("{")
        ops, eqs = [], []
        while self.peek().text != "}":
            t = self.next()
            if t.text == "op":
                sym = self.expect(kind="ident")
                self.expect(":")
                n = self.expect(kind="nat")
                self.expect(";")
                ops.append((sym, int(n.text)))
            elif t.text == "eq":
                lhs = self.term()
                self.expect("=")
                rhs = self.term()
                self.expect(";")
                eqs.append((lhs, rhs))
            else:
                raise DSLSyntaxError(f"expected 'op', 'eq' or '}}', got {t.text!r}", t.line, t.col)
        self.expect("}")
        return name, ops, eqs

    def interpret_block(self):
        self.expect("interpret")
        src = self.expect(kind="ident")
        self.expect("in")
        dst = self.expect(kind="ident")
        self.expect("{")
        defs = []
        while self.peek().text != "}":
            sym = self.expect(kind="ident")
            params = []
            if self.peek().text == "(":
                self.next()
                params.append(self.expect(kind="ident"))
                while self.peek().text == ",":
                    self.next()
                    params.append(self.expect(kind="ident"))
                self.expect(")")
            self.expect(":=")
            body = self.term()
            self.expect(";")
            defs.append((sym, params, body))
        self.expect("}")
        return src, dst, defs

    def term(self):
        t = self.expect(kind="ident")
        if self.peek().text != "(":
            return _Raw(t.text, (), False, t.line, t.col)
        self.next()
        args = [self.term()]
        while self.peek().text == ",":
            self.next()
            args.append(self.term())
        self.expect(")")
        return _Raw(t.text, tuple(args), True, t.line, t.col)


def _resolve(raw, arities, varnames):
    """Turn a raw tree into a Term; ``varnames`` maps surface names to indices."""
    if not raw.parens and arities.get(raw.name) is None:
        if raw.name not in varnames:
            varnames[raw.name] = len(varnames) + 1
        return Var(varnames[raw.name])
    if raw.name not in arities:
        raise UnknownSymbolError(raw.name, raw.line, raw.col)
    if arities[raw.name] != len(raw.args):
        raise ArityError(raw.name, arities[raw.name], len(raw.args), raw.line, raw.col)
    return App(raw.name, tuple(_resolve(a, arities, varnames) for a in raw.args))


def _build_theory(block):
    name, ops, eqs = block
    arities = {}
    for tok, arity in ops:
        if tok.text in arities:
            raise DuplicateSymbolError(tok.text, tok.line, tok.col)
        arities[tok.text] = arity
    equations = []
    for lhs, rhs in eqs:
        names = {}
        equations.append(Equation(_resolve(lhs, arities, names), _resolve(rhs, arities, names)))
    return Theory(name.text, Signature(tuple(arities.items())), tuple(equations))


def _build_interpretation(block, theories):
    src, dst, defs = block
    for tok in (src, dst):
        if tok.text not in theories:
            raise DSLError(f"unknown theory {tok.text!r}", tok.line, tok.col)
    source, target = theories[src.text], theories[dst.text]
    sarity = source.signature.as_dict()
    tarity = target.signature.as_dict()
    terms = {}
    for sym, params, body in defs:
        if sym.text not in sarity:
            raise UnknownSymbolError(sym.text, sym.line, sym.col)
        if sym.text in terms:
            raise DuplicateSymbolError(sym.text, sym.line, sym.col)
        n = sarity[sym.text]
        if params:
            if len(params) != n:
                raise ArityError(sym.text, n, len(params), sym.line, sym.col)
            names = {p.text: k + 1 for k, p in enumerate(params)}
            if len(names) != n:
                raise DSLError(f"repeated parameter in definition of {sym.text!r}",
                               sym.line, sym.col)
        else:
            names = {f"x{k}": k for k in range(1, n + 1)}
        frozen = dict(names)
        term = _resolve(body, tarity, names)
        if len(names) != len(frozen):
            extra = sorted(set(names) - set(frozen))
            raise DSLError(f"free variable(s) {', '.join(extra)} in definition of {sym.text!r}",
                           sym.line, sym.col)
        terms[sym.text] = term
    missing = [s for s in source.signature.names if s not in terms]
    if missing:
        raise DSLError(f"interpretation of {src.text} in {dst.text} misses {', '.join(missing)}",
                       src.line, src.col)
    return Interpretation(source, target, terms)


def parse_document(text: str, known: dict = None):
    """Parse every block; returns ``(theories by name, interpretations)``.

    ``known`` supplies further theories that ``interpret`` blocks may name;
    theories defined in the text take precedence.
    """
    theories, interps = {}, []
    for kind, block in _Parser(text).document():
        if kind == "theory":
            th = _build_theory(block)
            if th.name in theories:
                tok = block[0]
                raise DSLError(f"theory {th.name!r} defined twice", tok.line, tok.col)
            theories[th.name] = th
        else:
            interps.append(_build_interpretation(block, {**(known or {}), **theories}))
    return theories, interps


def parse_theory(text: str) -> Theory:
    theories, interps = parse_document(text)
    if len(theories) != 1 or interps:
        raise DSLError(f"expected exactly one theory block, found {len(theories)} "
                       f"theory and {len(interps)} interpret block(s)")
    return next(iter(theories.values()))


# -- printing ----------------------------------------------------------------

_NICE = "xyzuvw"


def _var_namer(theory: Theory, nvars: int):
    taken = set(theory.signature.names)
    if nvars <= len(_NICE) and not taken & set(_NICE[:nvars]):
        return lambda i: _NICE[i - 1]
    prefix = "x"
    while any(re.fullmatch(re.escape(prefix) + r"[0-9]+", n) for n in taken):
        prefix = "_" + prefix
    return lambda i: f"{prefix}{i}"


def format_term(term, name=lambda i: f"x{i}") -> str:
    if isinstance(term, Var):
        return name(term.index)
    if not term.args:
        return term.symbol
    return f"{term.symbol}({', '.join(format_term(a, name) for a in term.args)})"


def format_equation(eq: Equation, theory: Theory = None) -> str:
    name = _var_namer(theory or Theory("_"), eq.nvars)
    return f"{format_term(eq.lhs, name)} = {format_term(eq.rhs, name)}"


def format_theory(theory: Theory) -> str:
    lines = [f"theory {theory.name} {{"]
    for n, a in theory.signature:
        lines.append(f"  op {n}:{a};")
    for eq in theory.equations:
        lines.append(f"  eq {format_equation(eq.canonical(), theory)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_interpretation(interp: Interpretation) -> str:
    lines = [f"interpret {interp.source.name} in {interp.target.name} {{"]
    for sym, arity in interp.source.signature:
        term = interp.terms[sym]
        used = {t.symbol for t in subterms(term) if isinstance(t, App)}
        params = f"({', '.join(f'x{k}' for k in range(1, arity + 1))})" if arity else ""
        if any(re.fullmatch(r"x[0-9]+", s) for s in used):
            raise ValueError("target symbol names collide with printed variable names")
        lines.append(f"  {sym}{params} := {format_term(term)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
