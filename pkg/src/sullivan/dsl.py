"""Surface syntax for describing models in files.

A document declares one space: its generators (name, degree, optional
origin tag) and differential clauses.  Whitespace is insignificant,
`*` separates factors, `^` takes powers, coefficients are optional
rationals like 3 or -1/2:

    space CP2 {
        generator x2 : 2;
        generator x5 : 5;
        d x5 = x2^3;
    }

A generator without a d-clause has zero differential.  Terms that square
an odd generator normalize away; the document records a note for each so
nothing disappears silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .algebra import Element, GeneratorSpec, Monomial, SullivanModel

KEYWORDS = ("space", "generator", "d", "base", "fiber")

_SYMBOLS = "{}:;=^*+-/"


class ParseError(Exception):
    """Syntax or semantic failure, pinned to a source location."""

    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected
        where = f"line {line}, col {col}: {message}"
        if expected:
            where += " (expected " + " or ".join(expected) + ")"
        super().__init__(where)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "sym", "end"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> Iterator[Token]:
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            word = text[start:i]
            yield Token("ident", word, line, col)
            col += i - start
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            yield Token("int", text[start:i], line, col)
            col += i - start
            continue
        if ch in _SYMBOLS:
            yield Token("sym", ch, line, col)
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    yield Token("end", "", line, col)


@dataclass(frozen=True)
class ModelDocument:
    name: str
    model: SullivanModel
    notes: tuple[str, ...]


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    @property
    def here(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.here
        if tok.kind != "end":
            self.pos += 1
        return tok

    def fail(self, message: str, expected: tuple[str, ...] = ()):
        tok = self.here
        raise ParseError(message, tok.line, tok.col, expected)

    def expect_sym(self, sym: str) -> Token:
        tok = self.here
        if tok.kind != "sym" or tok.text != sym:
            self.fail(f"found {tok.text!r}" if tok.text else "unexpected end of input", (repr(sym),))
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        tok = self.here
        if tok.kind != "ident" or tok.text != word:
            self.fail(f"found {tok.text!r}" if tok.text else "unexpected end of input", (repr(word),))
        return self.advance()

    def expect_name(self) -> Token:
        tok = self.here
        if tok.kind != "ident":
            self.fail("expected a name", ("identifier",))
        if tok.text in KEYWORDS:
            self.fail(f"{tok.text!r} is a keyword", ("identifier",))
        return self.advance()

    def expect_int(self) -> tuple[int, Token]:
        tok = self.here
        if tok.kind != "int":
            self.fail("expected an integer", ("integer",))
        self.advance()
        return int(tok.text), tok

    # -- document --------------------------------------------------------

    def document(self) -> ModelDocument:
        self.expect_keyword("space")
        name = self.expect_name().text
        self.expect_sym("{")
        gens: list[GeneratorSpec] = []
        declared: dict[str, Token] = {}
        clauses: list[tuple[Token, list]] = []
        while True:
            tok = self.here
            if tok.kind == "sym" and tok.text == "}":
                self.advance()
                break
            if tok.kind == "ident" and tok.text == "generator":
                self.advance()
                gname = self.expect_name()
                if gname.text in declared:
                    raise ParseError(
                        f"duplicate generator {gname.text!r}", gname.line, gname.col
                    )
                self.expect_sym(":")
                degree, dtok = self.expect_int()
                if degree < 1:
                    raise ParseError("degree must be >= 1", dtok.line, dtok.col)
                origin = "plain"
                if self.here.kind == "ident" and self.here.text in ("base", "fiber"):
                    origin = self.advance().text
                self.expect_sym(";")
                declared[gname.text] = gname
                gens.append(GeneratorSpec(gname.text, degree, origin))
            elif tok.kind == "ident" and tok.text == "d":
                self.advance()
                target = self.expect_name()
                self.expect_sym("=")
                terms = self.expression()
                self.expect_sym(";")
                clauses.append((target, terms))
            elif tok.kind == "end":
                self.fail("unterminated block", ("'}'", "'generator'", "'d'"))
            else:
                self.fail(f"found {tok.text!r}", ("'generator'", "'d'", "'}'"))
        tok = self.here
        if tok.kind != "end":
            self.fail(f"trailing input {tok.text!r}", ("end of input",))
        return self.build(name, gens, clauses)

    # -- expressions -----------------------------------------------------

    def expression(self) -> list[tuple[Fraction, list[tuple[str, int, Token]], Token]]:
        """Sum of terms: (coefficient, factors, position of term start)."""
        terms = [self.term()]
        while self.here.kind == "sym" and self.here.text in "+-":
            terms.append(self.term())
        return terms

    def term(self):
        start = self.here
        sign = Fraction(1)
        while self.here.kind == "sym" and self.here.text in "+-":
            if self.advance().text == "-":
                sign = -sign
        coeff = Fraction(1)
        if self.here.kind == "int":
            num, _ = self.expect_int()
            if self.here.kind == "sym" and self.here.text == "/":
                self.advance()
                den, dtok = self.expect_int()
                if den == 0:
                    raise ParseError("zero denominator", dtok.line, dtok.col)
                coeff = Fraction(num, den)
            else:
                coeff = Fraction(num)
            # a coefficient may be glued to its monomial with * or a space
            if self.here.kind == "sym" and self.here.text == "*":
                self.advance()
        factors = [self.factor()]
        while self.here.kind == "sym" and self.here.text == "*":
            self.advance()
            factors.append(self.factor())
        return (sign * coeff, factors, start)

    def factor(self) -> tuple[str, int, Token]:
        name = self.expect_name()
        power = 1
        if self.here.kind == "sym" and self.here.text == "^":
            self.advance()
            power, ptok = self.expect_int()
            if power < 1:
                raise ParseError("power must be >= 1", ptok.line, ptok.col)
        return (name.text, power, name)

    # -- semantics -------------------------------------------------------

    def build(self, name, gens, clauses) -> ModelDocument:
        free = SullivanModel.free(gens)
        notes: list[str] = []
        assignments: dict[str, Element | None] = {}
        seen_clause: dict[str, Token] = {}
        for target, terms in clauses:
            if target.text not in free.generator_index:
                raise ParseError(
                    f"differential for undeclared generator {target.text!r}",
                    target.line,
                    target.col,
                )
            if target.text in seen_clause:
                raise ParseError(
                    f"second differential clause for {target.text!r}",
                    target.line,
                    target.col,
                )
            seen_clause[target.text] = target
            want = free.degree_of(target.text) + 1
            total: dict[Monomial, Fraction] = {}
            for coeff, factors, start in terms:
                word: list[str] = []
                degree = 0
                for fname, power, ftok in factors:
                    if fname not in free.generator_index:
                        raise ParseError(
                            f"unknown generator {fname!r}", ftok.line, ftok.col
                        )
                    word.extend([fname] * power)
                    degree += free.degree_of(fname) * power
                if degree != want:
                    raise ParseError(
                        f"d({target.text}) needs degree {want}, term has degree {degree}",
                        start.line,
                        start.col,
                    )
                mon, sgn = free.normalize_word(word)
                if mon is None:
                    pretty = "*".join(
                        f"{n}^{p}" if p > 1 else n for n, p, _ in factors
                    )
                    notes.append(
                        f"line {start.line}: term {pretty} in d({target.text}) "
                        "normalizes to zero (odd generator squared)"
                    )
                    continue
                total[mon] = total.get(mon, Fraction(0)) + sgn * coeff
            element = free.element_from_terms(total)
            assignments[target.text] = None if element.is_zero() else element
        model = free.with_differentials(assignments)
        return ModelDocument(name=name, model=model, notes=tuple(notes))


def parse_document(text: str) -> ModelDocument:
    return _Parser(text).document()


def parse_model(text: str) -> SullivanModel:
    return parse_document(text).model


def format_model(model: SullivanModel, name: str = "M") -> str:
    """Render a model as a document that parses back to it."""
    lines = [f"space {name} {{"]
    for g in model.generators:
        tag = f" {g.origin}" if g.origin != "plain" else ""
        lines.append(f"    generator {g.name} : {g.degree}{tag};")
    for g in model.generators:
        dx = model.d_of_generator(g.name)
        if dx.is_zero():
            continue
        lines.append(f"    d {g.name} = {_element_text(dx)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _element_text(x: Element) -> str:
    parts = []
    for mon in sorted(x.terms, key=x.model.monomial_sort_key):
        c = x.terms[mon]
        word = mon.format()
        if c == 1:
            text = word
        elif c == -1:
            text = f"-{word}"
        else:
            text = f"{c}*{word}"
        parts.append(text)
    return " + ".join(parts).replace("+ -", "- ")
