"""Ring-expression language: parser, printer and builder.

Grammar (tokens are case-sensitive; whitespace separates freely):

    expr    := term { "x" term }                    products, left-assoc
    term    := atom { suffix }
    suffix  := "[" IDENT "]" "/" "(" poly {"," poly} ")"   polynomial quotient
             | "/" "(" elem {"," elem} ")"                 quotient by ideal
    atom    := "Z" "/" INT
             | "GF" "(" INT ["^" INT] ")"
             | "idealize" "(" expr "," modspec ")"
             | "(" expr ")"
    modspec := cyc { "+" cyc }                      direct sum of cyclics R/I
    cyc     := "(" [elem {"," elem}] ")"            ideal generators
    poly    := ["-"] mono { ("+"|"-") mono }
    mono    := factor { "*" factor }
    factor  := INT | IDENT ["^" INT]
    elem    := poly                                 no free variable allowed

In a polynomial quotient the first listed poly is the monic modulus; the
rest are extra relations.  Names bound by enclosing quotients stay usable
in element position; products clear the name environment, since a name has
no canonical image in a product."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import ParseError, PreconditionError, SizeLimitError
from .modules import FiniteModule, module_from_cyclics
from .rings import FiniteRing, make_gf, make_zmod, poly_quotient, product, quotient

MAX_INPUT = 64 * 1024


# ---------------------------------------------------------------------------
# syntax tree

@dataclass(frozen=True)
class IntF:
    value: int


@dataclass(frozen=True)
class NameF:
    name: str
    exp: int = 1


Factor = Union[IntF, NameF]


@dataclass(frozen=True)
class Term:
    sign: int  # +1 or -1
    factors: tuple[Factor, ...]


@dataclass(frozen=True)
class Poly:
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class ZModE:
    n: int


@dataclass(frozen=True)
class GFE:
    p: int
    k: int


@dataclass(frozen=True)
class ProductE:
    factors: tuple["RingExpr", ...]


@dataclass(frozen=True)
class PolyQuotE:
    base: "RingExpr"
    var: str
    polys: tuple[Poly, ...]  # first is the monic modulus


@dataclass(frozen=True)
class QuotE:
    base: "RingExpr"
    gens: tuple[Poly, ...]


@dataclass(frozen=True)
class IdealizeE:
    base: "RingExpr"
    cyclics: tuple[tuple[Poly, ...], ...]


RingExpr = Union[ZModE, GFE, ProductE, PolyQuotE, QuotE, IdealizeE]


# ---------------------------------------------------------------------------
# tokenizer

@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, or a literal symbol
    text: str
    line: int
    column: int


_SYMBOLS = ("[", "]", "(", ")", "/", ",", "+", "-", "*", "^")


def tokenize(text: str) -> list[Token]:
    if len(text.encode("utf-8", errors="replace")) > MAX_INPUT:
        raise SizeLimitError(f"expression longer than {MAX_INPUT} bytes")
    out: list[Token] = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c in _SYMBOLS:
            out.append(Token(c, c, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    out.append(Token("EOF", "", line, col))
    return out


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.column)
        return self.next()

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.column)

    # expr := term { "x" term }
    def expr(self) -> RingExpr:
        parts = [self.term()]
        while self.peek().kind == "IDENT" and self.peek().text == "x":
            self.next()
            parts.append(self.term())
        if len(parts) == 1:
            return parts[0]
        return ProductE(tuple(parts))

    # term := atom { suffix }
    def term(self) -> RingExpr:
        node = self.atom()
        while True:
            tok = self.peek()
            if tok.kind == "[":
                self.next()
                var = self.expect("IDENT").text
                self.expect("]")
                self.expect("/")
                self.expect("(")
                polys = [self.poly()]
                while self.peek().kind == ",":
                    self.next()
                    polys.append(self.poly())
                self.expect(")")
                node = PolyQuotE(node, var, tuple(polys))
            elif tok.kind == "/":
                self.next()
                self.expect("(")
                gens = [self.poly()]
                while self.peek().kind == ",":
                    self.next()
                    gens.append(self.poly())
                self.expect(")")
                node = QuotE(node, tuple(gens))
            else:
                return node

    def atom(self) -> RingExpr:
        tok = self.peek()
        if tok.kind == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "IDENT" and tok.text == "Z":
            self.next()
            self.expect("/")
            n = int(self.expect("INT").text)
            return ZModE(n)
        if tok.kind == "IDENT" and tok.text == "GF":
            self.next()
            self.expect("(")
            p = int(self.expect("INT").text)
            k = 1
            if self.peek().kind == "^":
                self.next()
                k = int(self.expect("INT").text)
            self.expect(")")
            return GFE(p, k)
        if tok.kind == "IDENT" and tok.text == "idealize":
            self.next()
            self.expect("(")
            base = self.expr()
            self.expect(",")
            cyclics = [self.cyclic()]
            while self.peek().kind == "+":
                self.next()
                cyclics.append(self.cyclic())
            self.expect(")")
            return IdealizeE(base, tuple(cyclics))
        self.fail(f"expected a ring expression, found {tok.text or 'end of input'!r}")

    def cyclic(self) -> tuple[Poly, ...]:
        self.expect("(")
        if self.peek().kind == ")":
            self.next()
            return ()
        gens = [self.poly()]
        while self.peek().kind == ",":
            self.next()
            gens.append(self.poly())
        self.expect(")")
        return tuple(gens)

    # poly := ["-"] mono { ("+"|"-") mono }
    def poly(self) -> Poly:
        terms = []
        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        terms.append(self.mono(sign))
        while self.peek().kind in ("+", "-"):
            sign = 1 if self.next().kind == "+" else -1
            terms.append(self.mono(sign))
        return Poly(tuple(terms))

    def mono(self, sign: int) -> Term:
        factors = [self.factor()]
        while self.peek().kind == "*":
            self.next()
            factors.append(self.factor())
        return Term(sign, tuple(factors))

    def factor(self) -> Factor:
        tok = self.peek()
        if tok.kind == "INT":
            self.next()
            return IntF(int(tok.text))
        if tok.kind == "IDENT":
            self.next()
            exp = 1
            if self.peek().kind == "^":
                self.next()
                exp = int(self.expect("INT").text)
            return NameF(tok.text, exp)
        self.fail(f"expected a coefficient or variable, found {tok.text or 'end of input'!r}")


def parse(text: str) -> RingExpr:
    parser = _Parser(tokenize(text))
    node = parser.expr()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column)
    return node


# ---------------------------------------------------------------------------
# printer (parse . print_expr = identity on the tree)

def _print_factor(f: Factor) -> str:
    if isinstance(f, IntF):
        return str(f.value)
    return f.name if f.exp == 1 else f"{f.name}^{f.exp}"


def print_poly(p: Poly) -> str:
    parts = []
    for i, t in enumerate(p.terms):
        body = "*".join(_print_factor(f) for f in t.factors)
        if i == 0:
            parts.append(body if t.sign > 0 else "-" + body)
        else:
            parts.append(("+" if t.sign > 0 else "-") + body)
    return "".join(parts)


def _print_term_level(e: RingExpr) -> str:
    text = print_expr(e)
    if isinstance(e, ProductE):
        return f"({text})"
    return text


def print_expr(e: RingExpr) -> str:
    if isinstance(e, ZModE):
        return f"Z/{e.n}"
    if isinstance(e, GFE):
        return f"GF({e.p})" if e.k == 1 else f"GF({e.p}^{e.k})"
    if isinstance(e, ProductE):
        return " x ".join(_print_term_level(f) for f in e.factors)
    if isinstance(e, PolyQuotE):
        base = _print_term_level(e.base)
        if isinstance(e.base, (PolyQuotE, QuotE)):
            base = f"({base})"
        return f"{base}[{e.var}]/({', '.join(print_poly(q) for q in e.polys)})"
    if isinstance(e, QuotE):
        base = _print_term_level(e.base)
        if isinstance(e.base, (PolyQuotE, QuotE)):
            base = f"({base})"
        return f"{base}/({', '.join(print_poly(g) for g in e.gens)})"
    if isinstance(e, IdealizeE):
        cycs = " + ".join("(" + ", ".join(print_poly(g) for g in c) + ")" for c in e.cyclics)
        return f"idealize({print_expr(e.base)}, {cycs})"
    raise PreconditionError(f"unknown expression node {e!r}")


# ---------------------------------------------------------------------------
# builder

@dataclass
class BuildResult:
    ring: FiniteRing
    names: dict[str, int] = field(default_factory=dict)


def _int_element(ring: FiniteRing, value: int) -> int:
    out = ring.zero
    step = ring.one if value >= 0 else int(ring.neg[ring.one])
    for _ in range(abs(value) % _additive_order(ring)):
        out = int(ring.add[out, step])
    return out


def _additive_order(ring: FiniteRing) -> int:
    # order of 1 in (R, +); literals reduce mod this
    seen = 1
    cur = ring.one
    while cur != ring.zero:
        cur = int(ring.add[cur, ring.one])
        seen += 1
    return seen


def _eval_factor(ring: FiniteRing, names: dict[str, int], f: Factor,
                 where: str) -> int:
    if isinstance(f, IntF):
        return _int_element(ring, f.value)
    if f.name not in names:
        raise PreconditionError(f"unknown name {f.name!r} in {where}")
    return ring.power(names[f.name], f.exp)


def eval_element(ring: FiniteRing, names: dict[str, int], p: Poly,
                 where: str = "element expression") -> int:
    """A poly with no free variable, evaluated to a ring element index."""
    total = ring.zero
    for t in p.terms:
        val = ring.one
        for f in t.factors:
            val = int(ring.mul[val, _eval_factor(ring, names, f, where)])
        if t.sign < 0:
            val = int(ring.neg[val])
        total = int(ring.add[total, val])
    return total


def _poly_coefficients(ring: FiniteRing, names: dict[str, int], p: Poly,
                       var: str) -> list[int]:
    """Little-endian coefficient indices of a poly in the named variable."""
    coeffs: dict[int, int] = {}
    for t in p.terms:
        exp = 0
        val = ring.one
        for f in t.factors:
            if isinstance(f, NameF) and f.name == var:
                exp += f.exp
            else:
                val = int(ring.mul[val, _eval_factor(ring, names, f, f"coefficient of {var}")])
        if t.sign < 0:
            val = int(ring.neg[val])
        coeffs[exp] = int(ring.add[coeffs.get(exp, ring.zero), val])
    deg = max(coeffs) if coeffs else 0
    return [coeffs.get(i, ring.zero) for i in range(deg + 1)]


def build_step(base: BuildResult, expr: RingExpr,
               max_order: Optional[int] = None) -> tuple[BuildResult, RingHom]:
    """One suffix construction (poly quotient, quotient, idealization) over an
    already built base, together with the map from the base into the result."""
    if isinstance(expr, PolyQuotE):
        monic = _poly_coefficients(base.ring, base.names, expr.polys[0], expr.var)
        relations = [
            _poly_coefficients(base.ring, base.names, q, expr.var) for q in expr.polys[1:]
        ]
        pq = poly_quotient(base.ring, monic, relations=relations, var=expr.var,
                           max_order=max_order)
        names = {k: int(pq.to_quotient.map[v]) for k, v in base.names.items()}
        names[expr.var] = pq.var_index
        return BuildResult(pq.ring, names), pq.to_quotient
    if isinstance(expr, QuotE):
        gens = [eval_element(base.ring, base.names, g, "ideal generator") for g in expr.gens]
        from .ideals import ideal_generated

        qr = quotient(base.ring, ideal_generated(base.ring, gens), max_order=max_order)
        names = {k: int(qr.projection.map[v]) for k, v in base.names.items()}
        return BuildResult(qr.ring, names), qr.projection
    if isinstance(expr, IdealizeE):
        from .modules import idealize

        mod = build_module(base, expr.cyclics, max_order=max_order)
        idl = idealize(base.ring, mod, max_order=max_order)
        names = {k: int(idl.embed.map[v]) for k, v in base.names.items()}
        return BuildResult(idl.ring, names), idl.embed
    raise PreconditionError(f"expression node {expr!r} is not a suffix construction")


def build(expr: RingExpr, max_order: Optional[int] = None) -> BuildResult:
    """Construct the ring, threading bound names through each step."""
    if isinstance(expr, ZModE):
        return BuildResult(make_zmod(expr.n, max_order=max_order))
    if isinstance(expr, GFE):
        return BuildResult(make_gf(expr.p, expr.k, max_order=max_order))
    if isinstance(expr, ProductE):
        parts = [build(f, max_order=max_order) for f in expr.factors]
        pr = product([b.ring for b in parts], max_order=max_order)
        return BuildResult(pr.ring)  # names have no canonical product image
    if isinstance(expr, (PolyQuotE, QuotE, IdealizeE)):
        base = build(expr.base, max_order=max_order)
        return build_step(base, expr, max_order=max_order)[0]
    raise PreconditionError(f"unknown expression node {expr!r}")


def suffix_chain(top: RingExpr, base: RingExpr) -> Optional[list[RingExpr]]:
    """Suffix steps leading from base up to top, innermost first, or None when
    top is not syntactically built over base."""
    chain: list[RingExpr] = []
    cur = top
    while cur != base:
        if isinstance(cur, (PolyQuotE, QuotE, IdealizeE)):
            chain.append(cur)
            cur = cur.base
        else:
            return None
    chain.reverse()
    return chain


def build_module(base: BuildResult, cyclics: tuple[tuple[Poly, ...], ...],
                 max_order: Optional[int] = None) -> FiniteModule:
    """Direct sum of cyclics R/(gens) from a parsed module spec."""
    ideal_gens = []
    for c in cyclics:
        ideal_gens.append([eval_element(base.ring, base.names, g, "module spec") for g in c])
    return module_from_cyclics(base.ring, ideal_gens, max_order=max_order)


def build_text(text: str, max_order: Optional[int] = None) -> BuildResult:
    return build(parse(text), max_order=max_order)


def parse_module_spec(text: str) -> tuple[tuple[Poly, ...], ...]:
    """Cyclic summands '(g,...) + (g,...) + ...'; an empty group '()' is a
    free rank-one summand."""
    if len(text) > MAX_INPUT:
        raise SizeLimitError("module spec too long")
    p = _Parser(tokenize(text))
    cyclics = [p.cyclic()]
    while p.peek().kind == "+":
        p.next()
        cyclics.append(p.cyclic())
    if p.peek().kind != "EOF":
        p.fail("expected '+' or end of module spec")
    return tuple(cyclics)


def parse_poly_list(text: str) -> tuple[Poly, ...]:
    """Comma-separated element expressions, e.g. ideal generators."""
    if len(text) > MAX_INPUT:
        raise SizeLimitError("generator list too long")
    p = _Parser(tokenize(text))
    polys = [p.poly()]
    while p.peek().kind == ",":
        p.next()
        polys.append(p.poly())
    if p.peek().kind != "EOF":
        p.fail("expected ',' or end of generator list")
    return tuple(polys)
