"""Differential operators on a free graded-commutative algebra, in normal form.

A term is (coefficient, multiplier monomial, derivative multi-index) and acts
as "differentiate, then multiply":

    term(a) = coeff * multiplier * d^alpha(a),

where d^alpha = d_0^{alpha_0} o d_1^{alpha_1} o ... in table order with the
lowest index outermost, and each d_i is the left partial derivative with the
parity of its generator.  Normal forms make composition and the square-zero
check exact and decidable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .algebra import (
    AlgebraError,
    Element,
    GeneratorTable,
    Monomial,
    enumerate_monomials,
    format_monomial,
    monomial_mul,
)

TermKey = tuple[Monomial, Monomial]  # (multiplier, derivatives)


def _diff_monomial(table: GeneratorTable, i: int, mono: Monomial):
    """Left derivative d_i of a normal-form monomial: (coeff, monomial) or None."""
    if mono[i] == 0:
        return None
    reduced = tuple(e - 1 if j == i else e for j, e in enumerate(mono))
    if table.parity(i):
        crossings = sum(mono[j] for j in range(i) if table.parity(j))
        coeff = Fraction(-1) if crossings % 2 else Fraction(1)
    else:
        coeff = Fraction(mono[i])
    return coeff, reduced


class Operator:
    """Normal-form finite sum of (multiplier x derivative) terms."""

    __slots__ = ("table", "terms")

    def __init__(self, table: GeneratorTable, terms: Mapping[TermKey, Fraction] | None = None):
        self.table = table
        clean: dict[TermKey, Fraction] = {}
        if terms:
            for (mult, deriv), c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                table.check_monomial(mult)
                if len(deriv) != len(table):
                    raise AlgebraError("derivative multi-index has wrong length")
                for i, e in enumerate(deriv):
                    if e < 0 or (e > 1 and table.parity(i)):
                        raise AlgebraError(
                            f"bad derivative exponent {e} for generator {table.names[i]!r}"
                        )
                clean[(tuple(mult), tuple(deriv))] = c
        self.terms = clean

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, table: GeneratorTable) -> "Operator":
        return cls(table)

    @classmethod
    def identity(cls, table: GeneratorTable) -> "Operator":
        z = (0,) * len(table)
        return cls(table, {(z, z): Fraction(1)})

    @classmethod
    def multiplication(cls, a: Element) -> "Operator":
        z = (0,) * len(a.table)
        return cls(a.table, {(m, z): c for m, c in a.coeffs.items()})

    @classmethod
    def derivative(cls, table: GeneratorTable, name: str, order: int = 1) -> "Operator":
        i = table.index(name)
        z = (0,) * len(table)
        deriv = tuple(order if j == i else 0 for j in range(len(table)))
        return cls(table, {(z, deriv): Fraction(1)})

    @classmethod
    def term(cls, table: GeneratorTable, coeff, mult: Monomial, deriv: Monomial) -> "Operator":
        return cls(table, {(tuple(mult), tuple(deriv)): Fraction(coeff)})

    # --- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Operator)
            and self.table == other.table
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.table, frozenset(self.terms.items())))

    def items(self) -> Iterator[tuple[TermKey, Fraction]]:
        return iter(sorted(self.terms.items()))

    def term_degree(self, key: TermKey) -> int:
        mult, deriv = key
        return self.table.monomial_degree(mult) - self.table.monomial_degree(deriv)

    def term_parity(self, key: TermKey) -> int:
        return self.term_degree(key) % 2

    def degree(self) -> int:
        degs = {self.term_degree(k) for k in self.terms}
        if len(degs) != 1:
            raise AlgebraError("degree of a non-homogeneous or zero operator")
        return degs.pop()

    def parity(self) -> int:
        pars = {self.term_parity(k) for k in self.terms}
        if len(pars) != 1:
            raise AlgebraError(
                "parity of a mixed-parity or zero operator; decompose first"
            )
        return pars.pop()

    def is_degree_homogeneous(self) -> bool:
        return len({self.term_degree(k) for k in self.terms}) <= 1

    def is_parity_homogeneous(self) -> bool:
        return len({self.term_parity(k) for k in self.terms}) <= 1

    # --- arithmetic -------------------------------------------------------

    def _check_table(self, other) -> None:
        if self.table != other.table:
            raise AlgebraError("operators over different generator tables")

    def __add__(self, other: "Operator") -> "Operator":
        self._check_table(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + c
        return Operator(self.table, terms)

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-other)

    def __neg__(self) -> "Operator":
        return Operator(self.table, {k: -c for k, c in self.terms.items()})

    def scale(self, s) -> "Operator":
        s = Fraction(s)
        return Operator(self.table, {k: s * c for k, c in self.terms.items()})

    def __rmul__(self, s) -> "Operator":
        if isinstance(s, (int, Fraction)):
            return self.scale(s)
        return NotImplemented

    # --- action -----------------------------------------------------------

    def apply(self, a: Element) -> Element:
        if self.table != a.table:
            raise AlgebraError("operator and element over different tables")
        table = self.table
        out = Element.zero(table)
        for (mult, deriv), c in self.terms.items():
            partial = a
            # innermost derivative is the highest generator index
            for i in reversed(range(len(table))):
                for _ in range(deriv[i]):
                    coeffs = {}
                    for mono, cm in partial.coeffs.items():
                        d = _diff_monomial(table, i, mono)
                        if d is None:
                            continue
                        dc, dm = d
                        coeffs[dm] = coeffs.get(dm, Fraction(0)) + dc * cm
                    partial = Element(table, coeffs)
                    if partial.is_zero():
                        break
            if partial.is_zero():
                continue
            out = out + Element.monomial(table, mult, c) * partial
        return out

    def __call__(self, a: Element) -> Element:
        return self.apply(a)

    # --- composition ------------------------------------------------------

    def compose(self, other: "Operator") -> "Operator":
        """Normal form of self o other (apply ``other`` first)."""
        self._check_table(other)
        table = self.table
        n = len(table)
        result: dict[TermKey, Fraction] = {}

        def add(key: TermKey, c: Fraction):
            result[key] = result.get(key, Fraction(0)) + c

        for (m1, alpha), c1 in self.terms.items():
            for (m2, beta), c2 in other.terms.items():
                # current: normal-form expansion of d^alpha o (m2 . d^beta)
                current: dict[TermKey, Fraction] = {(m2, beta): Fraction(1)}
                for i in reversed(range(n)):
                    for _ in range(alpha[i]):
                        nxt: dict[TermKey, Fraction] = {}
                        for (m, gamma), c in current.items():
                            # d_i acting on the multiplier
                            d = _diff_monomial(table, i, m)
                            if d is not None:
                                dc, dm = d
                                key = (dm, gamma)
                                nxt[key] = nxt.get(key, Fraction(0)) + c * dc
                            # d_i passing the multiplier into the derivative word
                            p_i = table.parity(i)
                            if p_i and gamma[i]:
                                continue  # odd derivative squared
                            pass_sign = -1 if p_i and table.monomial_parity(m) else 1
                            crossings = sum(
                                gamma[j] for j in range(i) if table.parity(j)
                            ) if p_i else 0
                            if crossings % 2:
                                pass_sign = -pass_sign
                            new_gamma = tuple(
                                e + 1 if j == i else e for j, e in enumerate(gamma)
                            )
                            key = (m, new_gamma)
                            nxt[key] = nxt.get(key, Fraction(0)) + c * pass_sign
                        current = {k: v for k, v in nxt.items() if v}
                        if not current:
                            break
                    if not current:
                        break
                for (m, gamma), c in current.items():
                    sm = monomial_mul(table, m1, m)
                    if sm is None:
                        continue
                    sign, mono = sm
                    add((mono, gamma), c1 * c2 * sign * c)
        return Operator(table, result)

    # --- structural queries ------------------------------------------------

    def degree_components(self) -> dict[int, "Operator"]:
        parts: dict[int, dict[TermKey, Fraction]] = {}
        for key, c in self.terms.items():
            parts.setdefault(self.term_degree(key), {})[key] = c
        return {d: Operator(self.table, t) for d, t in sorted(parts.items())}

    def structural_order(self) -> int:
        """Max total derivative count over terms; 0 for the zero operator."""
        if not self.terms:
            return 0
        return max(sum(deriv) for (_, deriv) in self.terms)

    def is_odd(self) -> bool:
        """True iff every term has odd degree."""
        return bool(self.terms) and all(
            self.term_degree(k) % 2 == 1 for k in self.terms
        )

    def is_square_zero(self, witness_degree: int = 4):
        """Exact check of D o D == 0 on normal forms.

        Returns (True, None) or (False, witness_monomial) where the witness is
        a monomial m with D(D(m)) != 0, found by scanning small monomials.
        """
        square = self.compose(self)
        if square.is_zero():
            return True, None
        for mono in enumerate_monomials(self.table, witness_degree):
            m = Element.monomial(self.table, mono)
            if not square.apply(m).is_zero():
                return False, mono
        # nonzero normal form whose action vanished on the scanned monomials:
        # widen the scan (faithfulness on the free algebra guarantees a witness)
        max_deriv = max(sum(d) for (_, d) in square.terms)
        for bound in range(witness_degree + 1, witness_degree + max_deriv + 2):
            for mono in enumerate_monomials(self.table, bound):
                m = Element.monomial(self.table, mono)
                if not square.apply(m).is_zero():
                    return False, mono
        raise AssertionError("nonzero normal form with no action witness")

    # --- display ----------------------------------------------------------

    def __str__(self) -> str:
        return format_operator(self)

    def __repr__(self) -> str:
        return f"Operator({format_operator(self)!r})"


def apply(D: Operator, a: Element) -> Element:
    return D.apply(a)


def compose(D: Operator, E: Operator) -> Operator:
    return D.compose(E)


def degree_components(D: Operator) -> dict[int, Operator]:
    return D.degree_components()


def structural_order(D: Operator) -> int:
    return D.structural_order()


def is_odd(D: Operator) -> bool:
    return D.is_odd()


def is_square_zero(D: Operator):
    return D.is_square_zero()


def format_operator(D: Operator) -> str:
    """Render an operator as `coeff | multiplier | derivatives` term lines."""
    if D.is_zero():
        return "0"
    lines = []
    for (mult, deriv), c in D.items():
        mstr = format_monomial(D.table, mult)
        dparts = []
        for name, e in zip(D.table.names, deriv):
            if e == 1:
                dparts.append(f"d/d{name}")
            elif e > 1:
                dparts.append(f"d/d{name}^{e}")
        dstr = " ".join(dparts) if dparts else "1"
        lines.append(f"{c} | {mstr} | {dstr}")
    return " ; ".join(lines)
