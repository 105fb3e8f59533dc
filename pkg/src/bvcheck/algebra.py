"""Free graded-commutative algebra on finitely many Z-graded generators.

An algebra is polynomial on its even generators and exterior on its odd ones.
Monomials are exponent vectors over a fixed generator table; the table order
is the canonical monomial order, so every element has a unique normal form
and equality is exact.  Coefficients are ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product
from typing import Iterable, Iterator, Mapping

Monomial = tuple[int, ...]
Coeff = Fraction


class AlgebraError(ValueError):
    """Domain error: mismatched tables, bad exponents, inhomogeneous input..."""


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered list of generator names with their integer degrees."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise AlgebraError("GeneratorTable: names/degrees length mismatch")
        if len(set(self.names)) != len(self.names):
            raise AlgebraError("GeneratorTable: duplicate generator names")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def parity(self, i: int) -> int:
        return self.degrees[i] % 2

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def monomial_parity(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees)) % 2

    def check_monomial(self, mono: Monomial) -> None:
        if len(mono) != len(self.names):
            raise AlgebraError(f"monomial {mono} has wrong length for table")
        for i, e in enumerate(mono):
            if e < 0:
                raise AlgebraError(f"negative exponent in {mono}")
            if e > 1 and self.parity(i):
                raise AlgebraError(
                    f"odd generator {self.names[i]!r} with exponent {e} > 1"
                )


def monomial_mul(table: GeneratorTable, a: Monomial, b: Monomial):
    """Product of two normal-form monomials: (sign, monomial) or None if zero.

    The sign counts crossings of odd factors of ``b`` moving left past odd
    factors of ``a`` with larger table index.
    """
    crossings = 0
    for i in range(len(a)):
        if not table.parity(i) or not a[i]:
            continue
        if b[i]:
            return None  # odd generator squared
        for j in range(i):
            if table.parity(j) and b[j]:
                crossings += 1
    mono = tuple(x + y for x, y in zip(a, b))
    return (Fraction(-1) if crossings % 2 else Fraction(1)), mono


class Element:
    """Finite rational linear combination of monomials, in normal form."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: GeneratorTable, coeffs: Mapping[Monomial, Coeff] | None = None):
        self.table = table
        clean: dict[Monomial, Coeff] = {}
        if coeffs:
            for mono, c in coeffs.items():
                c = Fraction(c)
                if c:
                    table.check_monomial(mono)
                    clean[mono] = c
        self.coeffs = clean

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, table: GeneratorTable) -> "Element":
        return cls(table)

    @classmethod
    def one(cls, table: GeneratorTable) -> "Element":
        return cls(table, {(0,) * len(table): Fraction(1)})

    @classmethod
    def generator(cls, table: GeneratorTable, name: str) -> "Element":
        i = table.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(table)))
        return cls(table, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, table: GeneratorTable, mono: Monomial, coeff: Coeff = Fraction(1)) -> "Element":
        return cls(table, {tuple(mono): Fraction(coeff)})

    # --- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.table == other.table
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.table, frozenset(self.coeffs.items())))

    def items(self) -> Iterator[tuple[Monomial, Coeff]]:
        return iter(sorted(self.coeffs.items()))

    def degree(self) -> int:
        """Degree of a homogeneous element; raises if inhomogeneous or zero."""
        degs = {self.table.monomial_degree(m) for m in self.coeffs}
        if len(degs) != 1:
            raise AlgebraError(
                "degree of a non-homogeneous or zero element; decompose first"
            )
        return degs.pop()

    def parity(self) -> int:
        """Parity of a parity-homogeneous element; raises otherwise."""
        pars = {self.table.monomial_parity(m) for m in self.coeffs}
        if len(pars) != 1:
            raise AlgebraError("parity of a mixed-parity or zero element")
        return pars.pop()

    def is_homogeneous(self) -> bool:
        return len({self.table.monomial_degree(m) for m in self.coeffs}) <= 1

    def grade_decompose(self) -> dict[int, "Element"]:
        """Split into homogeneous components, keyed by degree."""
        parts: dict[int, dict[Monomial, Coeff]] = {}
        for mono, c in self.coeffs.items():
            parts.setdefault(self.table.monomial_degree(mono), {})[mono] = c
        return {d: Element(self.table, cs) for d, cs in sorted(parts.items())}

    # --- arithmetic -------------------------------------------------------

    def _check_table(self, other: "Element") -> None:
        if self.table != other.table:
            raise AlgebraError("elements over different generator tables")

    def __add__(self, other: "Element") -> "Element":
        self._check_table(other)
        coeffs = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            coeffs[mono] = coeffs.get(mono, Fraction(0)) + c
        return Element(self.table, coeffs)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.table, {m: -c for m, c in self.coeffs.items()})

    def scale(self, s: Coeff) -> "Element":
        s = Fraction(s)
        return Element(self.table, {m: s * c for m, c in self.coeffs.items()})

    def __rmul__(self, s) -> "Element":
        if isinstance(s, (int, Fraction)):
            return self.scale(s)
        return NotImplemented

    def __mul__(self, other) -> "Element":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_table(other)
        coeffs: dict[Monomial, Coeff] = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                sm = monomial_mul(self.table, ma, mb)
                if sm is None:
                    continue
                sign, mono = sm
                coeffs[mono] = coeffs.get(mono, Fraction(0)) + sign * ca * cb
        return Element(self.table, coeffs)

    # --- display ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Element({format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def multiply(a: Element, b: Element) -> Element:
    """Graded-commutative product (functional alias for ``a * b``)."""
    return a * b


def grade_decompose(a: Element) -> dict[int, Element]:
    return a.grade_decompose()


def enumerate_monomials(table: GeneratorTable, max_degree: int) -> list[Monomial]:
    """All normal-form monomials with total exponent sum <= max_degree.

    Deterministic order: by total exponent, then by exponent tuple.  Odd
    generators contribute exponent 0 or 1.
    """
    ranges = []
    for i in range(len(table)):
        cap = 1 if table.parity(i) else max_degree
        ranges.append(range(min(cap, max_degree) + 1))
    monos = [
        m for m in iter_product(*ranges) if sum(m) <= max_degree
    ]
    monos.sort(key=lambda m: (sum(m), m))
    return monos


# --- parsing / formatting (shared with the CLI report round-trip) ----------

def format_monomial(table: GeneratorTable, mono: Monomial) -> str:
    parts = []
    for name, e in zip(table.names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_element(a: Element) -> str:
    if a.is_zero():
        return "0"
    chunks = []
    for mono, c in a.items():
        mstr = format_monomial(a.table, mono)
        if mstr == "1":
            term = str(c)
        elif c == 1:
            term = mstr
        elif c == -1:
            term = f"-{mstr}"
        else:
            term = f"{c}*{mstr}"
        chunks.append(term)
    out = chunks[0]
    for term in chunks[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def parse_element(table: GeneratorTable, text: str) -> Element:
    """Inverse of :func:`format_element`; also accepts hand-written input."""
    text = text.strip()
    if text in ("0", ""):
        return Element.zero(table)
    # split on top-level + and - (no parentheses in the grammar)
    terms: list[str] = []
    buf = ""
    for i, ch in enumerate(text):
        if ch in "+-" and buf.strip() and text[i - 1] not in "/^*eE+-":
            terms.append(buf)
            buf = ch
        else:
            buf += ch
    terms.append(buf)
    total = Element.zero(table)
    for term in terms:
        term = term.strip()
        sign = Fraction(1)
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:].strip()
        coeff = sign
        mono = [0] * len(table)
        for factor in term.split("*"):
            factor = factor.strip()
            if not factor:
                raise AlgebraError(f"empty factor in element term {term!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            if "^" in factor:
                name, _, exp = factor.partition("^")
                e = int(exp)
            else:
                name, e = factor, 1
            mono[table.index(name.strip())] += e
        table.check_monomial(tuple(mono))
        total = total + Element.monomial(table, tuple(mono), coeff)
    return total
