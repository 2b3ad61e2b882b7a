"""Line-oriented spec format: lexer, parser and emitter.

One statement per line; a bracketed list may run over several lines.
``#`` starts a comment. Every statement parses to a :class:`Stmt` whose
``fields`` are plain ints, names, tuples, the marker ``"thin"`` or
:class:`Quoted` words, so that ``parse(emit(doc)) == doc``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Iterator

from .report import CatlawError

THIN = "thin"


class SpecError(CatlawError):
    """A diagnostic tied to a source position."""

    def __init__(self, message: str, line: int = 0, col: int = 0, source: str = ""):
        self.message, self.line, self.col, self.source = message, line, col, source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{col}: {message}")


@dataclass(frozen=True)
class Quoted:
    text: str


@dataclass(frozen=True)
class Token:
    kind: str  # name, int, str, op, nl, eof
    value: Any
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<str>"[^"\n]*")
  | (?P<int>-?\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>->|=>|[\[\](),=:*^])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, start, pos, depth = 1, 0, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - start + 1
        if not m:
            raise SpecError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            if depth == 0:
                tokens.append(Token("nl", None, line, col))
            line, start = line + 1, m.end()
        elif kind == "str":
            tokens.append(Token("str", value[1:-1], line, col))
        elif kind == "int":
            tokens.append(Token("int", int(value), line, col))
        elif kind == "name":
            tokens.append(Token("name", value, line, col))
        elif kind == "op":
            if value in "[(":
                depth += 1
            elif value in "])":
                depth = max(0, depth - 1)
            tokens.append(Token("op", value, line, col))
        pos = m.end()
    tokens.append(Token("nl", None, line, pos - start + 1))
    tokens.append(Token("eof", None, line, pos - start + 1))
    return tokens


# -- AST ------------------------------------------------------------------------

@dataclass(frozen=True)
class Stmt:
    kind: str
    name: str
    fields: tuple[tuple[str, Any], ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)
    positions: dict = field(default_factory=dict, compare=False, hash=False)

    def get(self, key: str, default: Any = None) -> Any:
        for k, v in self.fields:
            if k == key:
                return v
        return default

    def pos(self, key: str | None = None) -> tuple[int, int]:
        if key is not None and key in self.positions:
            return self.positions[key]
        return self.line, self.col


@dataclass(frozen=True)
class SpecDocument:
    statements: tuple[Stmt, ...]
    source: str = field(default="", compare=False)

    @property
    def declarations(self) -> list[Stmt]:
        return [s for s in self.statements if s.kind not in ("check", "option")]

    @property
    def checks(self) -> list[Stmt]:
        return [s for s in self.statements if s.kind == "check"]

    @property
    def options(self) -> dict[str, Any]:
        return {s.name: s.get("value") for s in self.statements if s.kind == "option"}


DECL_KINDS = ("category", "functor", "nattrans", "monad", "comonad", "distlaw", "distmap", "monadmap",
              "pro", "representation", "pair", "pairmap", "transformation", "lift")


# -- parser ---------------------------------------------------------------------

class _Cursor:
    def __init__(self, tokens: list[Token], source: str):
        self.toks, self.i, self.source = tokens, 0, source
        self.positions: dict[str, tuple[int, int]] = {}

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.peek()
        self.i += 1
        return t

    def error(self, message: str, tok: Token | None = None) -> SpecError:
        tok = tok or self.peek()
        return SpecError(message, tok.line, tok.col, self.source)

    def _describe(self, t: Token) -> str:
        return "end of line" if t.kind == "nl" else repr(t.value)

    def op(self, value: str) -> Token:
        t = self.peek()
        if t.kind != "op" or t.value != value:
            raise self.error(f"expected '{value}', found {self._describe(t)}")
        return self.next()

    def at_op(self, value: str) -> bool:
        t = self.peek()
        return t.kind == "op" and t.value == value

    def kw(self, *words: str) -> str:
        t = self.peek()
        if t.kind != "name" or t.value not in words:
            raise self.error(f"expected {' or '.join(repr(w) for w in words)}, found {self._describe(t)}")
        return self.next().value

    def at_kw(self, word: str) -> bool:
        t = self.peek()
        return t.kind == "name" and t.value == word

    def mark(self, key: str) -> None:
        t = self.peek()
        self.positions.setdefault(key, (t.line, t.col))

    def name(self, key: str | None = None) -> str:
        if key:
            self.mark(key)
        t = self.peek()
        if t.kind != "name":
            raise self.error(f"expected a name, found {self._describe(t)}")
        return self.next().value

    def integer(self, key: str | None = None) -> int:
        if key:
            self.mark(key)
        t = self.peek()
        if t.kind != "int":
            raise self.error(f"expected an integer, found {self._describe(t)}")
        return self.next().value

    def quoted(self) -> Quoted:
        t = self.peek()
        if t.kind != "str":
            raise self.error(f"expected a quoted word, found {self._describe(t)}")
        return Quoted(self.next().value)

    def seq(self, item) -> tuple:
        self.op("[")
        out = []
        if not self.at_op("]"):
            out.append(item())
            while self.at_op(","):
                self.next()
                out.append(item())
        self.op("]")
        return tuple(out)

    def intlist(self, key: str | None = None) -> tuple[int, ...]:
        if key:
            self.mark(key)
        return self.seq(self.integer)

    def matrix(self, key: str | None = None) -> tuple[tuple[int, ...], ...]:
        if key:
            self.mark(key)
        return self.seq(self.intlist)

    def components(self, key: str) -> Any:
        self.mark(key)
        if self.at_kw(THIN):
            self.next()
            return THIN
        return self.intlist()

    def end(self) -> None:
        t = self.peek()
        if t.kind != "nl":
            raise self.error(f"unexpected {self._describe(t)} at end of statement")
        self.next()


def _fexpr(c: _Cursor, key: str) -> tuple[tuple[str, int], ...]:
    c.mark(key)
    parts = []
    while True:
        n = c.name()
        k = 1
        if c.at_op("^"):
            c.next()
            k = c.integer()
        parts.append((n, k))
        if not c.at_op("*"):
            return tuple(parts)
        c.next()


def _on(c: _Cursor, f: list) -> None:
    if c.at_kw("on"):
        c.next()
        f.append(("category", c.name("category")))
    else:
        f.append(("category", None))


def _p_category(c: _Cursor, f: list) -> None:
    c.op("=")
    c.mark("form")
    kind = c.kw("poset", "monoid", "explicit", "product")
    if kind == "poset":
        if c.kw("chain", "table") == "chain":
            f += [("form", "chain"), ("n", c.integer("n"))]
        else:
            f += [("form", "poset"), ("leq", c.matrix("leq"))]
    elif kind == "monoid":
        t = c.peek()
        if t.kind == "name" and re.fullmatch(r"Z\d+", t.value):
            c.next()
            f += [("form", "cyclic"), ("n", int(t.value[1:]))]
        elif c.kw("cyclic", "table") == "cyclic":
            f += [("form", "cyclic"), ("n", c.integer("n"))]
        else:
            f += [("form", "monoid"), ("table", c.matrix("table"))]
            unit = 0
            if c.at_kw("unit"):
                c.next()
                unit = c.integer("unit")
            f.append(("unit", unit))
    elif kind == "explicit":
        f.append(("form", "explicit"))
        c.kw("objects")
        f.append(("objects", c.integer("objects")))
        for key in ("src", "tgt", "identity"):
            c.kw(key)
            f.append((key, c.intlist(key)))
        c.kw("table")
        f.append(("table", c.matrix("table")))
    else:
        f += [("form", "product"), ("factors", (c.name("factors"), c.name()))]


def _p_functor(c: _Cursor, f: list) -> None:
    source = target = None
    if c.at_kw("on"):
        c.next()
        source = target = c.name("source")
    elif c.at_op(":"):
        c.next()
        source = c.name("source")
        c.op("->")
        target = c.name("target")
    f += [("source", source), ("target", target)]
    c.op("=")
    c.mark("form")
    if c.at_op("["):
        f += [("form", "map"), ("objects", c.intlist("objects"))]
        arrows = None
        if c.at_kw("arrows"):
            c.next()
            arrows = c.intlist("arrows")
        f.append(("arrows", arrows))
        return
    kind = c.kw("id", "power", "compose")
    if kind == "id":
        f.append(("form", "id"))
    elif kind == "power":
        f += [("form", "power"), ("of", c.name("of")), ("n", c.integer("n"))]
    else:
        names = [c.name("factors")]
        while c.peek().kind == "name":
            names.append(c.name())
        f += [("form", "compose"), ("factors", tuple(names))]


def _p_nattrans(c: _Cursor, f: list) -> None:
    _on(c, f)
    c.op(":")
    f.append(("source", _fexpr(c, "source")))
    c.op("=>")
    f.append(("target", _fexpr(c, "target")))
    c.op("=")
    f.append(("components", c.components("components")))


def _p_structure(c: _Cursor, f: list, shorthand: str, mult: str, unit: str) -> None:
    _on(c, f)
    c.op("=")
    c.mark("form")
    kind = c.kw(shorthand, "identity", "functor")
    if kind == shorthand:
        f += [("form", shorthand), ("objects", c.intlist("objects"))]
    elif kind == "identity":
        f.append(("form", "identity"))
    else:
        f += [("form", "explicit"), ("functor", c.name("functor"))]
        c.kw(mult)
        f.append((mult, c.components(mult)))
        c.kw(unit)
        f.append((unit, c.components(unit)))


def _p_monad(c: _Cursor, f: list) -> None:
    _p_structure(c, f, "closure", "mu", "eta")


def _p_comonad(c: _Cursor, f: list) -> None:
    _p_structure(c, f, "interior", "delta", "eps")


def _p_distlaw(c: _Cursor, f: list) -> None:
    c.op(":")
    f.append(("monad", c.name("monad")))
    c.op(",")
    f.append(("companion", c.name("companion")))
    c.op("=")
    f.append(("components", c.components("components")))


def _p_arrow_decl(arrow: str):
    def parse(c: _Cursor, f: list) -> None:
        c.op(":")
        f.append(("source", c.name("source")))
        c.op(arrow)
        f.append(("target", c.name("target")))
        c.op("=")
        f.append(("components", c.components("components")))
    return parse


def _p_monadmap(c: _Cursor, f: list) -> None:
    c.op(":")
    f.append(("source", c.name("source")))
    c.op("->")
    f.append(("target", c.name("target")))
    c.kw("via")
    f.append(("functor", c.name("functor")))
    c.op("=")
    f.append(("components", c.components("components")))


def _p_pro(c: _Cursor, f: list) -> None:
    c.op("=")
    c.mark("form")
    kind = c.kw("monoid", "counital", "generators")
    if kind != "generators":
        f.append(("form", kind))
        return

    def gen():
        g = c.name("generators")
        c.op(":")
        n = c.integer()
        c.op("->")
        return (g, n, c.integer())

    def rel():
        a = c.quoted()
        c.op("=")
        return (a, c.quoted())

    f += [("form", "presented"), ("generators", c.seq(gen))]
    c.kw("relations")
    c.mark("relations")
    f.append(("relations", c.seq(rel)))


def _p_representation(c: _Cursor, f: list) -> None:
    c.kw("of")
    f.append(("pro", c.name("pro")))
    c.op("=")
    c.mark("form")
    kind = c.kw("monad", "comonad", "functor")
    f += [("form", kind), ("of", c.name("of"))]
    if kind == "functor":
        c.kw("images")

        def image():
            g = c.name("images")
            c.op("=")
            return (g, c.components("image:" + g))

        f.append(("images", c.seq(image)))


def _p_pair(c: _Cursor, f: list) -> None:
    c.op("=")
    c.mark("form")
    if c.kw("law", "rep") == "law":
        f += [("form", "law"), ("law", c.name("law"))]
        return
    f += [("form", "rep"), ("rep", c.name("rep"))]
    c.kw("action")
    f.append(("action", c.name("action")))
    c.kw("law")
    f.append(("components", c.components("components")))


def _p_pairmap(c: _Cursor, f: list) -> None:
    c.op(":")
    f.append(("source", c.name("source")))
    c.op("->")
    f.append(("target", c.name("target")))
    c.kw("via")
    f.append(("functor", c.name("functor")))
    c.kw("zeta")
    f.append(("zeta", c.components("zeta")))
    c.kw("alpha")
    f.append(("alpha", c.components("alpha")))


def _p_lift(c: _Cursor, f: list) -> None:
    if c.at_op("="):
        c.next()
        c.kw("of")
        f += [("form", "of"), ("law", c.name("law"))]
        return
    c.kw("on")
    f.append(("form", "explicit"))
    f.append(("monad", c.name("monad")))
    c.kw("by")
    f.append(("companion", c.name("companion")))
    c.op("=")
    f.append(("objects", c.intlist("objects")))
    arrows = None
    if c.at_kw("arrows"):
        c.next()
        arrows = c.intlist("arrows")
    f.append(("arrows", arrows))


def _p_check(c: _Cursor, f: list) -> None:
    args = []
    expect = None
    while c.peek().kind != "nl":
        t = c.peek()
        if t.kind == "name" and t.value == "expect":
            c.next()
            expect = c.integer("expect")
            break
        c.mark(f"arg{len(args)}")
        if t.kind == "str":
            args.append(c.quoted())
        elif t.kind in ("name", "int"):
            args.append(c.next().value)
        else:
            raise c.error(f"unexpected {c._describe(t)} in check arguments")
    f += [("args", tuple(args)), ("expect", expect)]


_PARSERS = {
    "category": _p_category, "functor": _p_functor, "nattrans": _p_nattrans, "monad": _p_monad,
    "comonad": _p_comonad, "distlaw": _p_distlaw, "distmap": _p_arrow_decl("->"),
    "monadmap": _p_monadmap, "pro": _p_pro, "representation": _p_representation, "pair": _p_pair,
    "pairmap": _p_pairmap, "transformation": _p_arrow_decl("=>"), "lift": _p_lift,
}


def parse_spec(text: str, source: str = "") -> SpecDocument:
    """Parse a document; raises :class:`SpecError` with line and column on bad input."""
    try:
        tokens = tokenize(text)
    except SpecError as e:
        raise SpecError(e.message, e.line, e.col, source) from None
    c = _Cursor(tokens, source)
    out: list[Stmt] = []
    names: dict[str, Stmt] = {}
    while c.peek().kind != "eof":
        if c.peek().kind == "nl":
            c.next()
            continue
        head = c.peek()
        c.positions = {}
        if head.kind != "name":
            raise c.error(f"expected a statement keyword, found {c._describe(head)}")
        kind = head.value
        c.next()
        f: list[tuple[str, Any]] = []
        if kind in _PARSERS:
            name_tok = c.peek()
            name = c.name()
            if name in names:
                prev = names[name]
                raise c.error(f"{name!r} is already declared at line {prev.line}", name_tok)
            _PARSERS[kind](c, f)
        elif kind == "check":
            name = c.name("op")
            _p_check(c, f)
        elif kind == "option":
            name = c.kw("bound", "format")
            c.mark("value")
            f.append(("value", c.integer() if name == "bound" else c.kw("text", "json")))
        else:
            raise c.error(f"unknown statement {kind!r}; expected one of "
                          f"{', '.join(DECL_KINDS + ('check', 'option'))}", head)
        c.end()
        stmt = Stmt(kind, name, tuple(f), head.line, head.col, dict(c.positions))
        if kind in _PARSERS:
            names[name] = stmt
        out.append(stmt)
    return SpecDocument(tuple(out), source)


def parse_file(path) -> SpecDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read(), str(path))


# -- emitter ----------------------------------------------------------------------

def _ints(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def _matrix(rows) -> str:
    return "[" + ", ".join(_ints(r) for r in rows) + "]"


def _comps(v) -> str:
    return THIN if v == THIN else _ints(v)


def _fx(parts) -> str:
    return "*".join(n if k == 1 else f"{n}^{k}" for n, k in parts)


def _on_text(s: Stmt) -> str:
    return f" on {s.get('category')}" if s.get("category") else ""


def emit_stmt(s: Stmt) -> str:
    g = s.get
    head = f"{s.kind} {s.name}"
    if s.kind == "category":
        form = g("form")
        body = {
            "chain": lambda: f"poset chain {g('n')}",
            "poset": lambda: f"poset table {_matrix(g('leq'))}",
            "cyclic": lambda: f"monoid cyclic {g('n')}",
            "monoid": lambda: f"monoid table {_matrix(g('table'))} unit {g('unit')}",
            "explicit": lambda: (f"explicit objects {g('objects')} src {_ints(g('src'))} tgt {_ints(g('tgt'))} "
                                 f"identity {_ints(g('identity'))} table {_matrix(g('table'))}"),
            "product": lambda: "product " + " ".join(g("factors")),
        }[form]()
        return f"{head} = {body}"
    if s.kind == "functor":
        src, tgt = g("source"), g("target")
        sig = "" if src is None else (f" on {src}" if src == tgt else f" : {src} -> {tgt}")
        form = g("form")
        if form == "map":
            body = _ints(g("objects")) + ("" if g("arrows") is None else f" arrows {_ints(g('arrows'))}")
        elif form == "id":
            body = "id"
        elif form == "power":
            body = f"power {g('of')} {g('n')}"
        else:
            body = "compose " + " ".join(g("factors"))
        return f"{head}{sig} = {body}"
    if s.kind == "nattrans":
        return f"{head}{_on_text(s)} : {_fx(g('source'))} => {_fx(g('target'))} = {_comps(g('components'))}"
    if s.kind in ("monad", "comonad"):
        short, mult, unit = ("closure", "mu", "eta") if s.kind == "monad" else ("interior", "delta", "eps")
        form = g("form")
        if form == short:
            body = f"{short} {_ints(g('objects'))}"
        elif form == "identity":
            body = "identity"
        else:
            body = f"functor {g('functor')} {mult} {_comps(g(mult))} {unit} {_comps(g(unit))}"
        return f"{head}{_on_text(s)} = {body}"
    if s.kind == "distlaw":
        return f"{head} : {g('monad')} , {g('companion')} = {_comps(g('components'))}"
    if s.kind in ("distmap", "transformation"):
        arrow = "->" if s.kind == "distmap" else "=>"
        return f"{head} : {g('source')} {arrow} {g('target')} = {_comps(g('components'))}"
    if s.kind == "monadmap":
        return f"{head} : {g('source')} -> {g('target')} via {g('functor')} = {_comps(g('components'))}"
    if s.kind == "pro":
        if g("form") != "presented":
            return f"{head} = {g('form')}"
        gens = ", ".join(f"{n} : {a} -> {b}" for n, a, b in g("generators"))
        rels = ", ".join(f'"{a.text}" = "{b.text}"' for a, b in g("relations"))
        return f"{head} = generators [{gens}] relations [{rels}]"
    if s.kind == "representation":
        body = f"{g('form')} {g('of')}"
        if g("form") == "functor":
            body += " images [" + ", ".join(f"{n} = {_comps(v)}" for n, v in g("images")) + "]"
        return f"{head} of {g('pro')} = {body}"
    if s.kind == "pair":
        if g("form") == "law":
            return f"{head} = law {g('law')}"
        return f"{head} = rep {g('rep')} action {g('action')} law {_comps(g('components'))}"
    if s.kind == "pairmap":
        return (f"{head} : {g('source')} -> {g('target')} via {g('functor')} "
                f"zeta {_comps(g('zeta'))} alpha {_comps(g('alpha'))}")
    if s.kind == "lift":
        if g("form") == "of":
            return f"{head} = of {g('law')}"
        arrows = "" if g("arrows") is None else f" arrows {_ints(g('arrows'))}"
        return f"{head} on {g('monad')} by {g('companion')} = {_ints(g('objects'))}{arrows}"
    if s.kind == "check":
        parts = [f"check {s.name}"]
        for a in g("args"):
            parts.append(f'"{a.text}"' if isinstance(a, Quoted) else str(a))
        if g("expect") is not None:
            parts.append(f"expect {g('expect')}")
        return " ".join(parts)
    if s.kind == "option":
        return f"option {s.name} {g('value')}"
    raise ValueError(f"cannot emit {s.kind}")


def emit_spec(doc: SpecDocument) -> str:
    return "".join(emit_stmt(s) + "\n" for s in doc.statements)


def iter_names(doc: SpecDocument) -> Iterator[str]:
    for s in doc.declarations:
        yield s.name
