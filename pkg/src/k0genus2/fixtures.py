"""Reference values shipped with the package and a small safe expression reader.

Expressions are parsed with :mod:`ast` and evaluated over
:class:`LaurentPolynomial`; only integer literals, variable names, ``+ - *``
and integer powers are accepted.  In an alphabet containing ``e1, e2``
(or ``eps, lam``) the names ``h0 .. h40`` denote complete homogeneous
polynomials.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .laurent import LaurentPolynomial, VariableAlphabet
from .symfun import complete_homogeneous

__all__ = [
    "FixtureError",
    "Fixture",
    "parse_alphabet",
    "evaluate",
    "fixtures",
    "fixture",
    "candidate_bases",
    "set_fixture_file",
]

_H = re.compile(r"^h(\d+)$")
_H_MAX = 40


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class Fixture:
    name: str
    alphabet: VariableAlphabet
    text: str
    value: LaurentPolynomial


def parse_alphabet(text: str) -> VariableAlphabet:
    """``"e1,e2~"`` -> alphabet with ``e2`` invertible."""
    names, inv = [], []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if item.endswith("~"):
            item = item[:-1]
            inv.append(item)
        names.append(item)
    return VariableAlphabet(names, inv)


def _h_class(n: int, alphabet: VariableAlphabet) -> LaurentPolynomial:
    names = alphabet.names
    if "e1" in names and "e2" in names:
        pair = {}
    elif "eps" in names and "lam" in names:
        pair = {"e1": "eps", "e2": "lam"}
    else:
        raise FixtureError(f"h{n} needs e1,e2 or eps,lam in the alphabet")
    return complete_homogeneous(n).rename(alphabet, pair)


def evaluate(text: str, alphabet: VariableAlphabet) -> LaurentPolynomial:
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise FixtureError(f"cannot parse {text!r}: {exc.msg}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return LaurentPolynomial.constant(alphabet, node.value)
        if isinstance(node, ast.Name):
            if node.id in alphabet.names:
                return LaurentPolynomial.variable(alphabet, node.id)
            m = _H.match(node.id)
            if m and int(m.group(1)) <= _H_MAX:
                return _h_class(int(m.group(1)), alphabet)
            raise FixtureError(f"unknown name {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = _int_literal(node.right)
                return ev(node.left) ** k
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        raise FixtureError(f"unsupported syntax {ast.dump(node)} in {text!r}")

    def _int_literal(node):
        sign = 1
        while isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            if isinstance(node.op, ast.USub):
                sign = -sign
            node = node.operand
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return sign * node.value
        raise FixtureError(f"exponent must be an integer literal in {text!r}")

    return ev(tree)


_OVERRIDE: dict[str, str] = {}


def set_fixture_file(path: str | None, name: str = "fixtures.txt") -> None:
    """Read ``name`` from ``path`` instead of the packaged copy (``None`` restores it)."""
    if path is None:
        _OVERRIDE.pop(name, None)
    else:
        _OVERRIDE[name] = str(path)
    fixtures.cache_clear()
    candidate_bases.cache_clear()


def _read(name: str) -> str:
    if name in _OVERRIDE:
        with open(_OVERRIDE[name], encoding="utf-8") as fh:
            return fh.read()
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def fixtures() -> dict[str, Fixture]:
    out = {}
    for lineno, raw in enumerate(_read("fixtures.txt").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            head, expr = line.split("=", 1)
            name, alph = head.split("@", 1)
        except ValueError:
            raise FixtureError(f"fixtures.txt:{lineno}: expected 'name @ alphabet = expression'") from None
        name = name.strip()
        if name in out:
            raise FixtureError(f"fixtures.txt:{lineno}: duplicate {name}")
        alphabet = parse_alphabet(alph)
        out[name] = Fixture(name, alphabet, expr.strip(), evaluate(expr.strip(), alphabet))
    return out


def fixture(name: str) -> LaurentPolynomial:
    try:
        return fixtures()[name].value
    except KeyError:
        raise FixtureError(f"no fixture named {name!r}") from None


@lru_cache(maxsize=None)
def candidate_bases() -> dict[str, tuple[VariableAlphabet, tuple[LaurentPolynomial, ...]]]:
    """``{ring name: (alphabet, monomials)}`` from ``bases.txt``."""
    out = {}
    current = None
    chunks: dict[str, list[str]] = {}
    alphs = {}
    for raw in _read("bases.txt").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = re.match(r"^\[(\w+)\]\s*(.*)$", line)
        if m:
            current = m.group(1)
            alphs[current] = parse_alphabet(m.group(2))
            chunks[current] = []
            continue
        if current is None:
            raise FixtureError("bases.txt: monomials before the first [name] header")
        chunks[current].append(line)
    for name, lines in chunks.items():
        items = [s.strip() for s in " ".join(lines).split(",") if s.strip()]
        mons = tuple(evaluate(s, alphs[name]) for s in items)
        for s, mono in zip(items, mons):
            if not mono.is_monomial():
                raise FixtureError(f"bases.txt: {s!r} is not a monomial")
        out[name] = (alphs[name], mons)
    return out
