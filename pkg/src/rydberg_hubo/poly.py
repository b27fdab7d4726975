"""Multilinear pseudo-Boolean cost functions over named binary variables.

A polynomial is a sum of integer-weighted monomials over {0,1} variables,
plus an integer constant. Canonical form: within a monomial, repeated
variables collapse (x*x = x); monomials over the same variable set merge by
coefficient addition; zero coefficients vanish. Coefficients are exact
integers throughout — the downstream graph compiler needs integer gadget
multiplicities, and exact arithmetic keeps ground-manifold comparisons free
of floating-point ties.

Text format, one monomial per line::

    # comment
    -1 x1
    +1 x1 x2 x3
    +36            <- a bare integer is the constant term

Variable order is first-appearance order in the source; serialization sorts
terms by (order, variable names) and is a parse round-trip for any
polynomial whose variables all occur in some term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

DEFAULT_ENUMERATION_BOUND = 24

_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_INT_RE = re.compile(r"[+-]?\d+\Z")

Assignment = tuple[int, ...]


class HuboParseError(ValueError):
    """Source text violates the HUBO line grammar."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EnumerationBoundError(ValueError):
    """Requested exhaustive scan exceeds the configured variable bound."""


@dataclass(frozen=True)
class Polynomial:
    """Canonical multilinear polynomial; immutable after construction."""

    names: tuple[str, ...]
    terms: Mapping[frozenset[int], int]
    constant: int = 0

    @property
    def num_vars(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        return self.names.index(name)

    def named_terms(self) -> dict[frozenset[str], int]:
        return {frozenset(self.names[i] for i in key): c for key, c in self.terms.items()}

    def max_order(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    def __eq__(self, other: object) -> bool:
        # Semantic equality: term maps keyed by variable names, so two
        # polynomials with different index orders still compare equal.
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            set(self.names) == set(other.names)
            and self.constant == other.constant
            and self.named_terms() == other.named_terms()
        )

    def sorted_terms(self) -> list[tuple[tuple[str, ...], int]]:
        """Terms as (variable-name tuple, coefficient), canonical order."""
        rows = []
        for key, coeff in self.terms.items():
            names = tuple(sorted(self.names[i] for i in key))
            rows.append((names, coeff))
        rows.sort(key=lambda r: (len(r[0]), r[0]))
        return rows

    def evaluate(self, bits: Sequence[int]) -> int:
        if len(bits) != self.num_vars:
            raise ValueError(
                f"assignment length {len(bits)} != variable count {self.num_vars}"
            )
        total = self.constant
        for key, coeff in self.terms.items():
            prod = 1
            for i in key:
                prod &= bits[i]
            total += coeff * prod
        return total

    def to_text(self) -> str:
        lines = []
        for names, coeff in self.sorted_terms():
            lines.append(f"{coeff:+d} " + " ".join(names))
        if self.constant or not lines:
            lines.append(f"{self.constant:+d}")
        return "\n".join(lines) + "\n"

    def assignment_from(self, values: Mapping[str, int]) -> Assignment:
        """Build an index-ordered assignment tuple from a name -> bit map."""
        missing = set(self.names) - set(values)
        if missing:
            raise KeyError(f"missing values for {sorted(missing)}")
        return tuple(int(values[n]) for n in self.names)


class PolyBuilder:
    """Mutable accumulator that canonicalizes into a Polynomial."""

    def __init__(self) -> None:
        self._index: dict[str, int] = {}
        self._terms: dict[frozenset[int], int] = {}
        self._constant = 0

    def declare(self, name: str) -> int:
        if name not in self._index:
            self._index[name] = len(self._index)
        return self._index[name]

    def add_constant(self, value: int) -> None:
        self._constant += value

    def add_term(self, variables: Iterable[str], coeff: int) -> None:
        key = frozenset(self.declare(v) for v in variables)
        if not key:
            self._constant += coeff
            return
        self._terms[key] = self._terms.get(key, 0) + coeff

    def add_polynomial(self, p: Polynomial, scale: int = 1) -> None:
        for key, coeff in p.terms.items():
            self.add_term((p.names[i] for i in key), coeff * scale)
        self._constant += p.constant * scale

    def build(self) -> Polynomial:
        terms = {k: c for k, c in self._terms.items() if c != 0}
        names = tuple(sorted(self._index, key=self._index.get))
        return Polynomial(names=names, terms=terms, constant=self._constant)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    """Product with idempotent reduction; variable universe is the union."""
    out = PolyBuilder()
    for n in a.names:
        out.declare(n)
    for n in b.names:
        out.declare(n)
    a_items = list(a.terms.items()) + ([(frozenset(), a.constant)] if a.constant else [])
    b_items = list(b.terms.items()) + ([(frozenset(), b.constant)] if b.constant else [])
    for ka, ca in a_items:
        for kb, cb in b_items:
            vars_ = [a.names[i] for i in ka] + [b.names[i] for i in kb]
            out.add_term(vars_, ca * cb)
    return out.build()


def parse_hubo(text: str) -> Polynomial:
    """Parse HUBO source text into a canonical Polynomial.

    Grammar per line: `<signed integer> [<var> ...]`; `#` starts a comment;
    a bare integer line adds to the constant. Raises HuboParseError with the
    offending line and column. Fractional coefficients are rejected with a
    pre-scaling hint, since the compiler requires integer weights.
    """
    builder = PolyBuilder()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = line.split()
        coeff_tok = tokens[0]
        col = line.index(coeff_tok) + 1
        if not _INT_RE.match(coeff_tok):
            if re.match(r"[+-]?(\d+\.\d*|\.\d+|\d+/\d+|\d+[eE][+-]?\d+)\Z", coeff_tok):
                raise HuboParseError(
                    f"non-integer coefficient {coeff_tok!r}; scale all "
                    "coefficients to integers before compiling",
                    lineno,
                    col,
                )
            raise HuboParseError(
                f"expected a signed integer coefficient, got {coeff_tok!r}", lineno, col
            )
        coeff = int(coeff_tok)
        variables = []
        cursor = line.index(coeff_tok) + len(coeff_tok)
        for tok in tokens[1:]:
            col = line.index(tok, cursor) + 1
            cursor = col - 1 + len(tok)
            if not _VAR_RE.match(tok):
                raise HuboParseError(f"invalid variable name {tok!r}", lineno, col)
            variables.append(tok)
        if variables:
            builder.add_term(variables, coeff)
        else:
            builder.add_constant(coeff)
    return builder.build()


def _term_masks(p: Polynomial) -> list[tuple[int, int]]:
    out = []
    for key, coeff in p.terms.items():
        mask = 0
        for i in key:
            mask |= 1 << i
        out.append((mask, coeff))
    out.sort()
    return out


def evaluate_all(p: Polynomial, *, max_vars: int = DEFAULT_ENUMERATION_BOUND) -> np.ndarray:
    """Values of p on all 2^N assignments; index bit j holds variable j."""
    n = p.num_vars
    if n > max_vars:
        raise EnumerationBoundError(
            f"{n} variables exceed the exhaustive enumeration bound {max_vars}"
        )
    idx = np.arange(1 << n, dtype=np.int64)
    values = np.full(1 << n, p.constant, dtype=np.int64)
    for mask, coeff in _term_masks(p):
        values += coeff * ((idx & mask) == mask)
    return values


def index_to_assignment(index: int, n: int) -> Assignment:
    return tuple((index >> j) & 1 for j in range(n))


def brute_force_minima(
    p: Polynomial, *, max_vars: int = DEFAULT_ENUMERATION_BOUND
) -> tuple[int, list[Assignment]]:
    """Exhaustive minimum and the complete argmin set, sorted.

    The scan covers all 2^N assignments; the bound guards runaway
    enumeration and is configurable for callers that can afford more.
    """
    values = evaluate_all(p, max_vars=max_vars)
    best = int(values.min())
    minima = [index_to_assignment(int(i), p.num_vars) for i in np.nonzero(values == best)[0]]
    return best, minima


def iter_assignments(n: int) -> Iterator[Assignment]:
    for i in range(1 << n):
        yield index_to_assignment(i, n)
