"""Evidence formula language and CTL syntax.

Evidence formulas form a three-level hierarchy: base variables read one
tree node, derived variables aggregate a branch, and comparison templates
(phi1..phi4) relate two branches. The textual grammar is

    list    := formula (';' formula)*
    formula := name '(' arg (',' arg)* ')'
    arg     := integer | formula

Names are case-insensitive and the Greek spellings of the comparison
templates are accepted; the printer emits the canonical lowercase ASCII
form, which is also the wire format of the HTTP API and CLI.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

BASE_NAMES = ("tp", "td", "c", "o", "eta", "sp", "sd", "car", "availablecar")
DERIVED_NAMES = ("viod", "vioa", "pctd", "pcta", "vcv", "vcvq", "r", "rd1", "rd2")
COMPARE_NAMES = ("phi1", "phi2", "phi3", "phi4")
WHATIF_NAMES = ("search", "cong", "exclude", "multi", "reassign")

ARITY = {
    "tp": 1, "td": 1, "c": 1, "car": 1, "availablecar": 1, "eta": 1,
    "o": 2, "sp": 2, "sd": 2,
    "viod": 2, "vioa": 2, "pctd": 2, "pcta": 2, "vcv": 2, "vcvq": 2,
    "r": 1, "rd1": 1, "rd2": 1,
    "phi1": 2, "phi2": 2, "phi3": 2, "phi4": 2,
    "search": 1, "cong": 1, "exclude": 1, "multi": 1, "reassign": 1,
}

MAX_DEPTH = 3


@dataclass(frozen=True, slots=True)
class BaseVar:
    name: str
    args: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class DerivedVar:
    name: str
    args: tuple  # ints or BaseVar


@dataclass(frozen=True, slots=True)
class CompareVar:
    name: str
    operands: tuple  # two BaseVar/DerivedVar subtrees


@dataclass(frozen=True, slots=True)
class WhatIf:
    name: str
    arg: int


EvidenceFormula = BaseVar | DerivedVar | CompareVar | WhatIf
FormulaList = list  # list[EvidenceFormula], non-empty


def formula_depth(node: EvidenceFormula) -> int:
    if isinstance(node, BaseVar) or isinstance(node, WhatIf):
        return 1
    if isinstance(node, DerivedVar):
        inner = [formula_depth(a) for a in node.args if not isinstance(a, int)]
        return 1 + max(inner, default=0)
    return 1 + max(formula_depth(op) for op in node.operands)


# --- parsing ------------------------------------------------------------

class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def read_name(self) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] in "_Φφ"):
            self.pos += 1
        if self.pos == start:
            found = self.peek() or "end of input"
            raise ParseError(f"expected a variable name, found {found!r}", start)
        raw = self.text[start:self.pos]
        name = raw.lower().replace("φ", "phi")
        return name, start

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer argument", start)
        return int(self.text[start:self.pos])


def _parse_node(sc: _Scanner, depth: int) -> EvidenceFormula:
    name, start = sc.read_name()
    if name not in ARITY:
        raise ParseError(f"unknown variable name {name!r}", start)
    if depth > MAX_DEPTH:
        raise ParseError(f"formula nesting exceeds depth {MAX_DEPTH}", start)

    sc.expect("(")
    args: list = []
    while True:
        sc.skip_ws()
        if sc.peek().isdigit():
            args.append(sc.read_int())
        else:
            args.append(_parse_node(sc, depth + 1))
        sc.skip_ws()
        if sc.peek() == ",":
            sc.pos += 1
            continue
        break
    sc.expect(")")

    if len(args) != ARITY[name]:
        raise ParseError(f"{name} takes {ARITY[name]} argument(s), got {len(args)}", start)

    if name in WHATIF_NAMES:
        if not isinstance(args[0], int):
            raise ParseError(f"{name} takes an integer argument", start)
        return WhatIf(name, args[0])
    if name in BASE_NAMES:
        if not all(isinstance(a, int) for a in args):
            raise ParseError(f"{name} takes integer arguments only", start)
        return BaseVar(name, tuple(args))
    if name in DERIVED_NAMES:
        for a in args:
            if not isinstance(a, (int, BaseVar)):
                raise ParseError(f"{name} arguments must be integers or base variables", start)
        return DerivedVar(name, tuple(args))
    # comparison template
    for a in args:
        if not isinstance(a, (BaseVar, DerivedVar)):
            raise ParseError(f"{name} operands must be base or derived variables", start)
    return CompareVar(name, tuple(args))


def parse_formula(text: str) -> FormulaList:
    """Parse a ';'-separated formula list into ASTs."""
    if not text or not text.strip():
        raise ParseError("empty formula text", 0)
    sc = _Scanner(text)
    formulas = [_parse_node(sc, 1)]
    while True:
        sc.skip_ws()
        if sc.peek() == ";":
            sc.pos += 1
            formulas.append(_parse_node(sc, 1))
        else:
            break
    sc.skip_ws()
    if sc.pos < len(sc.text):
        raise ParseError(f"dangling input {sc.text[sc.pos:]!r}", sc.pos)
    return formulas


def print_node(node: EvidenceFormula) -> str:
    if isinstance(node, BaseVar):
        return f"{node.name}({', '.join(str(a) for a in node.args)})"
    if isinstance(node, WhatIf):
        return f"{node.name}({node.arg})"
    if isinstance(node, DerivedVar):
        parts = [str(a) if isinstance(a, int) else print_node(a) for a in node.args]
        return f"{node.name}({', '.join(parts)})"
    return f"{node.name}({', '.join(print_node(op) for op in node.operands)})"


def print_formula(formulas: FormulaList) -> str:
    """Canonical text: lowercase names, '; ' between formulas, ', ' in args."""
    if not formulas:
        raise ParseError("cannot print an empty formula list", 0)
    return "; ".join(print_node(f) for f in formulas)


# --- CTL ------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Atom:
    name: str
    arg: int | None = None

    def key(self) -> str:
        return self.name if self.arg is None else f"{self.name}({self.arg})"


@dataclass(frozen=True, slots=True)
class Bool:
    value: bool


@dataclass(frozen=True, slots=True)
class Unary:
    op: str  # ! EX AX EF AF EG AG
    sub: "CtlFormula"


@dataclass(frozen=True, slots=True)
class Binary:
    op: str  # & | -> EU AU
    left: "CtlFormula"
    right: "CtlFormula"


CtlFormula = Atom | Bool | Unary | Binary

_TEMPORAL_UNARY = ("EX", "AX", "EF", "AF", "EG", "AG")


class _CtlParser:
    """Recursive descent over: implies > or > and > unary > atom."""

    def __init__(self, text: str):
        self.sc = _Scanner(text)

    def parse(self) -> CtlFormula:
        node = self.implies()
        self.sc.skip_ws()
        if self.sc.pos < len(self.sc.text):
            raise ParseError(f"dangling input {self.sc.text[self.sc.pos:]!r}", self.sc.pos)
        return node

    def implies(self) -> CtlFormula:
        left = self.disjunct()
        self.sc.skip_ws()
        if self.sc.text.startswith("->", self.sc.pos):
            self.sc.pos += 2
            return Binary("->", left, self.implies())
        return left

    def disjunct(self) -> CtlFormula:
        left = self.conjunct()
        while True:
            self.sc.skip_ws()
            if self.sc.peek() == "|":
                self.sc.pos += 1
                left = Binary("|", left, self.conjunct())
            else:
                return left

    def conjunct(self) -> CtlFormula:
        left = self.unary()
        while True:
            self.sc.skip_ws()
            if self.sc.peek() == "&":
                self.sc.pos += 1
                left = Binary("&", left, self.unary())
            else:
                return left

    def unary(self) -> CtlFormula:
        self.sc.skip_ws()
        pos = self.sc.pos
        ch = self.sc.peek()
        if ch == "!":
            self.sc.pos += 1
            return Unary("!", self.unary())
        if ch == "(":
            self.sc.pos += 1
            node = self.implies()
            self.sc.expect(")")
            return node
        word = self._peek_word()
        if word in _TEMPORAL_UNARY:
            self.sc.pos += 2
            return Unary(word, self.unary())
        if word in ("E", "A"):
            self.sc.pos += 1
            self.sc.expect("[")
            left = self.implies()
            self.sc.skip_ws()
            if self._peek_word() != "U":
                raise ParseError("expected 'U' inside path quantifier brackets", self.sc.pos)
            self.sc.pos += 1
            right = self.implies()
            self.sc.expect("]")
            return Binary("EU" if word == "E" else "AU", left, right)
        return self.atom(pos)

    def _peek_word(self) -> str:
        text, pos = self.sc.text, self.sc.pos
        end = pos
        while end < len(text) and (text[end].isalnum() or text[end] == "_"):
            end += 1
        return text[pos:end]

    def atom(self, pos: int) -> CtlFormula:
        word = self._peek_word()
        if not word:
            found = self.sc.peek() or "end of input"
            raise ParseError(f"expected a proposition, found {found!r}", pos)
        self.sc.pos += len(word)
        if word == "true":
            return Bool(True)
        if word == "false":
            return Bool(False)
        self.sc.skip_ws()
        if self.sc.peek() == "(":
            self.sc.pos += 1
            arg = self.sc.read_int()
            self.sc.expect(")")
            return Atom(word, arg)
        return Atom(word)


def parse_ctl(text: str) -> CtlFormula:
    """Parse a CTL formula with prefix temporal operators and E[.U.]/A[.U.]."""
    if not text or not text.strip():
        raise ParseError("empty CTL formula", 0)
    return _CtlParser(text).parse()


def print_ctl(node: CtlFormula) -> str:
    if isinstance(node, Bool):
        return "true" if node.value else "false"
    if isinstance(node, Atom):
        return node.key()
    if isinstance(node, Unary):
        sub = print_ctl(node.sub)
        if isinstance(node.sub, Binary) and node.sub.op in ("&", "|", "->"):
            sub = f"({sub})"
        return f"!{sub}" if node.op == "!" else f"{node.op} {sub}"
    if node.op in ("EU", "AU"):
        return f"{node.op[0]}[{print_ctl(node.left)} U {print_ctl(node.right)}]"
    left, right = print_ctl(node.left), print_ctl(node.right)
    if isinstance(node.left, Binary) and node.left.op in ("&", "|", "->"):
        left = f"({left})"
    if isinstance(node.right, Binary) and node.right.op in ("&", "|", "->"):
        right = f"({right})"
    return f"{left} {node.op} {right}"
