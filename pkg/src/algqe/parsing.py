"""Parser for the formula grammar.

    formula := 'exists' VAR '.' formula | 'forall' VAR '.' formula
             | formula ('&&'|'||'|'->') formula | '!' formula
             | '(' formula ')' | atom
    atom    := term ('='|'<='|'!=') term
    term    := term ('+'|'-') term | term '*' term | '-' term
             | 'conj(' term ')' | VAR | INT

Precedence: unary - > * > +/- > comparisons > ! > && > || > ->.
Quantifiers scope maximally to the right; '->' associates right.

parse(text, "alg") returns an algebra formula; parse(text, "real")
compiles the same surface syntax (minus conj) into a formula over
polynomial atoms, alpha-renaming bound variables apart.
"""

import re

from . import formulas as F
from .errors import ParseError

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)|(?P<int>\d+)"
    r"|(?P<op><=|!=|&&|\|\||->|[()=+\-*!.]))"
)

_KEYWORDS = {"exists", "forall", "conj"}


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"{self.kind}:{self.text!r}@{self.line}:{self.col}"


def tokenize(text):
    tokens = []
    pos = 0
    line, col = 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].lstrip()
            if not rest:
                break
            skipped = len(text[pos:]) - len(rest)
            for ch in text[pos:pos + skipped]:
                if ch == "\n":
                    line, col = line + 1, 1
                else:
                    col += 1
            raise ParseError(f"unexpected character {rest[0]!r}", line, col)
        for ch in text[pos:m.start(m.lastgroup)]:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        tok_text = m.group(m.lastgroup)
        kind = m.lastgroup if m.lastgroup != "op" else tok_text
        if kind == "ident" and tok_text in _KEYWORDS:
            kind = tok_text
        tokens.append(_Token(kind, tok_text, line, col))
        col += len(tok_text)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.col)
        return self.next()

    def error(self, message):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col)

    # -- formulas ----------------------------------------------------------

    def formula(self):
        return self.implication()

    def implication(self):
        lhs = self.disjunction()
        if self.peek().kind == "->":
            self.next()
            return F.Implies(lhs, self.implication())
        return lhs

    def disjunction(self):
        lhs = self.conjunction()
        while self.peek().kind == "||":
            self.next()
            lhs = F.Or(lhs, self.conjunction())
        return lhs

    def conjunction(self):
        lhs = self.negation()
        while self.peek().kind == "&&":
            self.next()
            lhs = F.And(lhs, self.negation())
        return lhs

    def negation(self):
        tok = self.peek()
        if tok.kind == "!":
            self.next()
            return F.Not(self.negation())
        if tok.kind in ("exists", "forall"):
            self.next()
            var = self.expect("ident").text
            self.expect(".")
            body = self.formula()
            return (F.Exists if tok.kind == "exists" else F.Forall)(var, body)
        return self.primary()

    def primary(self):
        if self.peek().kind == "(":
            saved = self.pos
            self.next()
            try:
                inner = self.formula()
                self.expect(")")
                return inner
            except ParseError:
                self.pos = saved
        return self.atom()

    def atom(self):
        lhs = self.term()
        tok = self.peek()
        if tok.kind == "=":
            self.next()
            return F.Eq(lhs, self.term())
        if tok.kind == "<=":
            self.next()
            return F.Le(lhs, self.term())
        if tok.kind == "!=":
            self.next()
            return F.Not(F.Eq(lhs, self.term()))
        self.error(f"expected a comparison, found {tok.text or 'end of input'!r}")

    # -- terms -------------------------------------------------------------

    def term(self):
        lhs = self.product()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.product()
            lhs = F.Add(lhs, rhs) if op == "+" else F.Sub(lhs, rhs)
        return lhs

    def product(self):
        lhs = self.unary()
        while self.peek().kind == "*":
            self.next()
            lhs = F.Mul(lhs, self.unary())
        return lhs

    def unary(self):
        if self.peek().kind == "-":
            self.next()
            return F.Neg(self.unary())
        return self.factor()

    def factor(self):
        tok = self.peek()
        if tok.kind == "conj":
            self.next()
            self.expect("(")
            inner = self.term()
            self.expect(")")
            return F.Conj(inner)
        if tok.kind == "ident":
            self.next()
            return F.Var(tok.text)
        if tok.kind == "int":
            self.next()
            return F.int_term(int(tok.text))
        if tok.kind == "(":
            self.next()
            inner = self.term()
            self.expect(")")
            return inner
        self.error(f"expected a term, found {tok.text or 'end of input'!r}")


def parse(text, language="alg"):
    """Parse a formula; language is 'alg' or 'real'."""
    if language not in ("alg", "real"):
        raise ValueError(f"unknown language {language!r}")
    tokens = tokenize(text)
    if language == "real":
        for tok in tokens:
            if tok.kind == "conj":
                raise ParseError("unknown symbol 'conj' in the real language",
                                 tok.line, tok.col)
    parser = _Parser(tokens)
    phi = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    if language == "real":
        from .realqe import compile_real_formula
        return compile_real_formula(phi)
    return phi


def parse_term(text):
    """Parse a single algebra term."""
    parser = _Parser(tokenize(text))
    t = parser.term()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return t
