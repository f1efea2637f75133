"""
Text form of interactions.

Grammar::

    f      := term ('|' term)*
    term   := factor ('&' factor)*
    factor := atom | '(' f ')' | 'true' | 'false'
    atom   := name '=' value | name 'in' '{' value (',' value)* '}'
"""

from typing import List, Optional, Tuple
import re

from ..errors import FormulaError
from ..space import ConfigSpace
from .ast import FALSE, TRUE, And, Atom, Const, Interaction, Or, conjoin, disjoin

TOKEN_PATTERN = re.compile(r"\s*(?:([(){},&|=])|([^\s,#{}()&|=]+))")

Token = Tuple[str, int]


def _tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = TOKEN_PATTERN.match(text, pos)
        if match is None:
            raise FormulaError(f"unexpected character {text[pos].strip()!r}", pos)
        start = match.start(1) if match.group(1) else match.start(2)
        tokens.append((match.group(1) or match.group(2), start))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, space: Optional[ConfigSpace]):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.space = space

    def peek(self, offset: int = 0) -> Optional[str]:
        i = self.pos + offset
        return self.tokens[i][0] if i < len(self.tokens) else None

    def where(self) -> int:
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else len(self.text)

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None:
            raise FormulaError(
                f"unexpected end of formula, expected {expected or 'a token'}", self.where()
            )
        if expected is not None and token != expected:
            raise FormulaError(f"expected {expected!r} but found {token!r}", self.where())
        self.pos += 1
        return token

    def parse(self) -> Interaction:
        if not self.tokens:
            raise FormulaError("empty formula", 0)
        result = self.formula()
        if self.peek() is not None:
            raise FormulaError(f"unexpected {self.peek()!r}", self.where())
        return result

    def formula(self) -> Interaction:
        terms = [self.term()]
        while self.peek() == "|":
            self.take("|")
            terms.append(self.term())
        return disjoin(terms)

    def term(self) -> Interaction:
        factors = [self.factor()]
        while self.peek() == "&":
            self.take("&")
            factors.append(self.factor())
        return conjoin(factors)

    def factor(self) -> Interaction:
        token = self.peek()
        if token == "(":
            self.take("(")
            inner = self.formula()
            self.take(")")
            return inner
        if token in ("true", "false") and self.peek(1) not in ("=", "in"):
            self.take()
            return TRUE if token == "true" else FALSE
        return self.atom()

    def word(self, what: str) -> str:
        token = self.peek()
        if token is None or token in "(){},&|=":
            found = "end of formula" if token is None else repr(token)
            raise FormulaError(f"expected {what} but found {found}", self.where())
        self.pos += 1
        return token

    def atom(self) -> Interaction:
        start = self.where()
        name = self.word("option name")
        if self.peek() == "=":
            self.take("=")
            values = [self.word("value")]
        elif self.peek() == "in":
            self.take("in")
            self.take("{")
            values = [self.word("value")]
            while self.peek() == ",":
                self.take(",")
                values.append(self.word("value"))
            self.take("}")
        else:
            raise FormulaError(f"expected '=' or 'in' after {name!r}", self.where())
        return self.checked(Atom(name, frozenset(values)), start)

    def checked(self, node: Atom, start: int) -> Interaction:
        if self.space is None:
            return node
        if node.option not in self.space:
            raise FormulaError(f"unknown option {node.option!r}", start)
        domain = self.space.option(node.option).domain
        unknown = sorted(node.values - set(domain))
        if unknown:
            raise FormulaError(
                f"value(s) {', '.join(unknown)} not in domain of {node.option!r}", start
            )
        if len(node.values) == len(domain):
            return TRUE
        return node


def parse_formula(text: str, space: Optional[ConfigSpace] = None) -> Interaction:
    """
    Parse formula text.

    Args:
        text: Formula in the grammar above
        space: When given, options and values are checked against it and
            full-domain atoms reduce to ``true``

    Raises:
        FormulaError: With the character position of the problem
    """
    return _Parser(text, space).parse()


def _value_key(value: str) -> Tuple[int, float, str]:
    try:
        return (0, float(value), value)
    except ValueError:
        return (1, 0.0, value)


def render_atom(node: Atom, space: Optional[ConfigSpace] = None) -> str:
    if space is not None and node.option in space:
        domain = space.option(node.option).domain
        values = [v for v in domain if v in node.values]
    else:
        values = sorted(node.values, key=_value_key)
    if len(values) == 1:
        return f"{node.option}={values[0]}"
    return f"{node.option} in {{{','.join(values)}}}"


def render_formula(f: Interaction, space: Optional[ConfigSpace] = None) -> str:
    """
    Text form of a formula; ``parse_formula(render_formula(f)) == f`` for
    canonical formulas.

    Value sets are listed in domain order when a space is given, otherwise in
    natural order.
    """
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return render_atom(f, space)
    if isinstance(f, And):
        return " & ".join(
            f"({render_formula(c, space)})" if isinstance(c, Or) else render_formula(c, space)
            for c in f.children
        )
    if isinstance(f, Or):
        return " | ".join(
            f"({render_formula(c, space)})" if isinstance(c, And) else render_formula(c, space)
            for c in f.children
        )
    raise TypeError(f"not a formula: {f!r}")
