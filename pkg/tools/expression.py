import re
from fractions import Fraction
from typing import List, Tuple

from core.algebra import Element, Monomial, Signature, normalize
from core.errors import ExpressionError

GRAMMAR_VERSION = 1

TOKEN = re.compile(r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[\^*+\-()]))")


class ExpressionTools:
    """Element expressions, grammar v1.

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := rational | NAME ['^' exponent]
    exponent := ['-'] digits | '(' ['-'] digits ')'

    Factor order is significant: odd generators pick up Koszul signs.
    """

    @staticmethod
    def tokenize(text: str) -> List[Tuple[str, str, int]]:
        tokens = []
        position = 0
        stripped = text.rstrip()
        while position < len(stripped):
            match = TOKEN.match(stripped, position)
            if match is None or match.end() == position:
                raise ExpressionError(f"unexpected character {stripped[position]!r} at {position} in {text!r}")
            kind = match.lastgroup
            tokens.append((kind, match.group(kind), match.start(kind)))
            position = match.end()
        return tokens

    @staticmethod
    def parse(signature: Signature, text: str) -> Element:
        tokens = ExpressionTools.tokenize(text)
        if not tokens:
            raise ExpressionError("empty expression")
        index = 0

        def peek(offset: int = 0):
            i = index + offset
            return tokens[i] if i < len(tokens) else None

        def expect_op(symbol: str):
            nonlocal index
            tok = peek()
            if tok is None or tok[1] != symbol:
                where = "end of input" if tok is None else f"{tok[1]!r} at {tok[2]}"
                raise ExpressionError(f"expected {symbol!r}, found {where} in {text!r}")
            index += 1

        def exponent() -> int:
            nonlocal index
            wrapped = peek() is not None and peek()[1] == "("
            if wrapped:
                index += 1
            sign = 1
            if peek() is not None and peek()[1] == "-":
                sign = -1
                index += 1
            tok = peek()
            if tok is None or tok[0] != "number" or "/" in tok[1]:
                raise ExpressionError(f"exponent must be an integer in {text!r}")
            index += 1
            if wrapped:
                expect_op(")")
            return sign * int(tok[1])

        def term(coefficient: Fraction) -> Element:
            nonlocal index
            word = []
            while True:
                tok = peek()
                if tok is None:
                    raise ExpressionError(f"expression ends with an operator: {text!r}")
                if tok[0] == "number":
                    try:
                        coefficient *= Fraction(tok[1])
                    except ZeroDivisionError:
                        raise ExpressionError(f"zero denominator in {tok[1]!r} at {tok[2]} in {text!r}")
                    index += 1
                elif tok[0] == "name":
                    index += 1
                    power = 1
                    if peek() is not None and peek()[1] == "^":
                        index += 1
                        power = exponent()
                    word.append((tok[1], power))
                else:
                    raise ExpressionError(f"unexpected {tok[1]!r} at {tok[2]} in {text!r}")
                if peek() is not None and peek()[1] == "*":
                    index += 1
                    continue
                return normalize(signature, word, coefficient)

        total = Element.zero(signature)
        sign = Fraction(1)
        if peek()[1] in "+-":
            sign = Fraction(-1 if peek()[1] == "-" else 1)
            index += 1
        total = total + term(sign)
        while peek() is not None:
            tok = peek()
            if tok[1] not in ("+", "-"):
                raise ExpressionError(f"unexpected {tok[1]!r} at {tok[2]} in {text!r}")
            index += 1
            total = total + term(Fraction(-1 if tok[1] == "-" else 1))
        return total

    @staticmethod
    def parse_monomial(signature: Signature, text: str) -> Monomial:
        """A single basis monomial written in canonical order (coefficient exactly 1)."""
        element = ExpressionTools.parse(signature, text)
        terms = list(element.items())
        if len(terms) != 1 or terms[0][1] != 1:
            raise ExpressionError(f"{text!r} is not a basis monomial in canonical order (got {element})")
        return terms[0][0]
