"""Structure-level checkers: Gerstenhaber axioms, order/degree splitting,
derivation lemmas, the homotopy-BV definition, cohomology, and the induced
BV structure on cohomology.

Reports never raise on a failed identity; they collect witnesses.  Domain
errors (violated preconditions) do raise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product

from .algebra import AlgebraError, Element, GeneratorTable, enumerate_monomials
from .brackets import (
    Budget,
    OrderCertificate,
    akman_bracket,
    akman_order_check,
    akman_recursion,
    bv_bracket,
    monomial_tuples,
)
from .linalg import RowSpace, kernel_and_image
from .operators import Operator


@dataclass
class CheckItem:
    name: str
    status: str  # "pass" | "fail" | "untested"
    details: str = ""
    witness: str | None = None

    def line(self) -> str:
        out = f"[{self.status.upper():8}] {self.name}"
        if self.details:
            out += f" - {self.details}"
        if self.witness:
            out += f" (witness: {self.witness})"
        return out


@dataclass
class StructReport:
    title: str
    items: list[CheckItem] = field(default_factory=list)

    def add(self, name, status, details="", witness=None):
        self.items.append(CheckItem(name, status, details, witness))

    @property
    def passed(self) -> bool:
        return all(i.status != "fail" for i in self.items)

    @property
    def fully_tested(self) -> bool:
        return all(i.status == "pass" for i in self.items)

    def lines(self) -> list[str]:
        return [self.title] + ["  " + i.line() for i in self.items]


def _pair_str(a: Element, b: Element) -> str:
    return f"({a}, {b})"


def _hom_bilinear(fn, a: Element, b: Element) -> Element:
    """Extend a bracket requiring homogeneous inputs bilinearly."""
    out = Element.zero(a.table)
    for ca in a.grade_decompose().values():
        for cb in b.grade_decompose().values():
            out = out + fn(ca, cb)
    return out


# --------------------------------------------------------------------------
# Gerstenhaber axioms
# --------------------------------------------------------------------------

def check_gerstenhaber(
    bracket,
    product,
    elements: list[Element],
    budget: Budget | None = None,
    bracket_degree: int | None = None,
    product_degree: int | None = None,
    title: str = "gerstenhaber axioms",
) -> StructReport:
    """Verify graded antisymmetry, Jacobi, Leibniz and degree offsets.

    ``bracket`` takes two homogeneous elements.  Conventions (with unshifted
    element degrees, bracket of odd degree):

        [a,b] = -(-1)^{(|a|+1)(|b|+1)} [b,a]
        [a,[b,c]] = [[a,b],c] + (-1)^{(|a|+1)(|b|+1)} [b,[a,c]]
        [a, b c] = [a,b] c + (-1)^{|b||c|} [a,c] b
    """
    budget = budget or Budget()
    report = StructReport(title)
    elems = [e for e in elements if not e.is_zero()]
    max_pairs = budget.max_tuples

    bad = None
    count = 0
    for a, b in iter_product(elems, repeat=2):
        if count >= max_pairs:
            break
        count += 1
        # [a,b] = -(-1)^{(|a|+1)(|b|+1)} [b,a]
        sign = -1 if ((a.degree() + 1) * (b.degree() + 1)) % 2 == 0 else 1
        if not (bracket(a, b) - sign * bracket(b, a)).is_zero():
            bad = (a, b)
            break
    if bad:
        report.add("graded antisymmetry", "fail", witness=_pair_str(*bad))
    else:
        report.add("graded antisymmetry", "pass", f"{count} pairs")

    bad = None
    count = 0
    for a, b, c in iter_product(elems, repeat=3):
        if count >= max_pairs:
            break
        count += 1
        sign = -1 if ((a.degree() + 1) * (b.degree() + 1)) % 2 else 1
        lhs = _hom_bilinear(bracket, a, bracket(b, c))
        rhs = _hom_bilinear(bracket, bracket(a, b), c) + sign * _hom_bilinear(
            bracket, b, bracket(a, c)
        )
        if not (lhs - rhs).is_zero():
            bad = (a, b, c)
            break
    if bad:
        report.add("graded Jacobi", "fail", witness=f"({bad[0]}, {bad[1]}, {bad[2]})")
    else:
        report.add("graded Jacobi", "pass", f"{count} triples")

    bad = None
    count = 0
    for a, b, c in iter_product(elems, repeat=3):
        if count >= max_pairs:
            break
        count += 1
        sign = -1 if (b.degree() * c.degree()) % 2 else 1
        lhs = _hom_bilinear(bracket, a, product(b, c))
        rhs = product(bracket(a, b), c) + sign * product(bracket(a, c), b)
        if not (lhs - rhs).is_zero():
            bad = (a, b, c)
            break
    if bad:
        report.add("Leibniz rule", "fail", witness=f"({bad[0]}, {bad[1]}, {bad[2]})")
    else:
        report.add("Leibniz rule", "pass", f"{count} triples")

    if bracket_degree is not None:
        bad = None
        for a, b in iter_product(elems[: max(4, len(elems) // 2)], repeat=2):
            v = bracket(a, b)
            if v.is_zero():
                continue
            if v.degree() != a.degree() + b.degree() + bracket_degree:
                bad = (a, b)
                break
        report.add(
            f"bracket degree offset {bracket_degree:+d}",
            "fail" if bad else "pass",
            witness=_pair_str(*bad) if bad else None,
        )
    if product_degree is not None:
        bad = None
        for a, b in iter_product(elems[: max(4, len(elems) // 2)], repeat=2):
            v = product(a, b)
            if v.is_zero():
                continue
            if v.degree() != a.degree() + b.degree() + product_degree:
                bad = (a, b)
                break
        report.add(
            f"product degree offset {product_degree:+d}",
            "fail" if bad else "pass",
            witness=_pair_str(*bad) if bad else None,
        )
    return report


# --------------------------------------------------------------------------
# Order/degree splitting of a square-zero operator
# --------------------------------------------------------------------------

@dataclass
class SplitResult:
    components: list[tuple[int, Operator]]  # (order index n, component)
    certificates: dict[int, OrderCertificate]
    residual_flag: bool
    residual_degrees: list[int]

    def component(self, n: int) -> Operator | None:
        for m, op in self.components:
            if m == n:
                return op
        return None


def degree_split(D: Operator, budget: Budget | None = None) -> SplitResult:
    """Split a square-zero operator into components indexed by order n via
    degree 3 - 2n, certifying order <= n for each.

    Components at degrees not of the form 3 - 2n (n >= 1) set the residual
    flag instead of being silently dropped.
    """
    budget = budget or Budget()
    ok, witness = D.is_square_zero()
    if not ok:
        raise AlgebraError(
            f"degree_split requires a square-zero operator; D^2 != 0 at {witness}"
        )
    comps = D.degree_components()
    plus_one = comps.get(1)
    if plus_one is not None and plus_one.structural_order() > 1:
        raise AlgebraError(
            "degree_split hypothesis violated: the degree +1 component must "
            "have order <= 1"
        )
    components: list[tuple[int, Operator]] = []
    residual: list[int] = []
    certificates: dict[int, OrderCertificate] = {}
    for degree, comp in comps.items():
        if (3 - degree) % 2 == 0 and (3 - degree) // 2 >= 1:
            n = (3 - degree) // 2
            components.append((n, comp))
            certificates[n] = akman_order_check(comp, n, budget)
        else:
            residual.append(degree)
    components.sort(key=lambda t: t[0])
    return SplitResult(components, certificates, bool(residual), residual)


def square_expansion_identities(D: Operator) -> StructReport:
    """Per-degree expansion of D^2 = 0 as exact operator identities.

    Grouping D = sum D_(g) by degree, for each total degree s the identity
    sum_{g+h=s} D_(g) o D_(h) = 0 must hold in normal form.
    """
    report = StructReport("per-degree expansion of the square")
    comps = D.degree_components()
    by_total: dict[int, Operator] = {}
    for g, A in comps.items():
        for h, B in comps.items():
            c = A.compose(B)
            if c.is_zero():
                continue
            by_total[g + h] = by_total.get(g + h, Operator.zero(D.table)) + c
    leftovers = {s: op for s, op in by_total.items() if not op.is_zero()}
    if not leftovers:
        report.add("all cross-degree anticommutators vanish", "pass")
    else:
        for s, op in sorted(leftovers.items()):
            report.add(f"degree {s:+d} part of the square", "fail", witness=str(op))
    return report


# --------------------------------------------------------------------------
# Derivation lemma
# --------------------------------------------------------------------------

def check_derivation_lemma(D: Operator, budget: Budget | None = None) -> StructReport:
    """The square-zero operator is a derivation of its own bracket but (when
    it has an order >= 2 part) not of the product, while its degree +1 part
    is a derivation of the product but generally not of the bracket.

    Derivation rule for the bracket [a,b] = (-1)^{|a|} F^2(a,b):

        D[a,b] = [Da, b] - (-1)^{|a|} [a, Db].
    """
    budget = budget or Budget()
    ok, witness = D.is_square_zero()
    if not ok:
        raise AlgebraError(f"derivation lemma requires D^2 = 0; witness {witness}")
    report = StructReport("derivation lemma")
    table = D.table

    def bracket(a, b):
        return _hom_bilinear(lambda u, v: bv_bracket(D, u, v), a, b)

    # (i) D is a derivation of the bracket
    bad = None
    count = 0
    for tup in monomial_tuples(table, 2, budget):
        a = Element.monomial(table, tup[0])
        b = Element.monomial(table, tup[1])
        count += 1
        lhs = D.apply(bracket(a, b))
        sign = -1 if table.monomial_parity(tup[0]) else 1
        rhs = bracket(D.apply(a), b) - sign * bracket(a, D.apply(b))
        if not (lhs - rhs).is_zero():
            bad = (a, b)
            break
    report.add(
        "D is a bracket derivation",
        "fail" if bad else "pass",
        "" if bad else f"{count} pairs",
        witness=_pair_str(*bad) if bad else None,
    )

    # (ii) product-Leibniz failure witness whenever D has an order >= 2 part
    higher = any(sum(d) >= 2 for (_, d) in D.terms)
    if not higher:
        report.add("product-Leibniz failure of D", "pass", "vacuous: no order >= 2 part")
    else:
        found = None
        for tup in monomial_tuples(table, 2, budget):
            a = Element.monomial(table, tup[0])
            b = Element.monomial(table, tup[1])
            if not akman_bracket(D, (a, b)).is_zero():
                found = (a, b)
                break
        if found:
            report.add(
                "product-Leibniz failure of D",
                "pass",
                "failure witness exhibited",
                witness=_pair_str(*found),
            )
        else:
            report.add(
                "product-Leibniz failure of D", "untested", "no witness within budget"
            )

    # (iii) the degree +1 component is a product derivation
    d1 = D.degree_components().get(1)
    if d1 is None:
        report.add("D1 product Leibniz", "pass", "vacuous: no degree +1 part")
    else:
        bad = None
        count = 0
        for tup in monomial_tuples(table, 2, budget):
            a = Element.monomial(table, tup[0])
            b = Element.monomial(table, tup[1])
            count += 1
            if not akman_bracket(d1, (a, b)).is_zero():
                bad = (a, b)
                break
        report.add(
            "D1 product Leibniz",
            "fail" if bad else "pass",
            "" if bad else f"{count} pairs",
            witness=_pair_str(*bad) if bad else None,
        )

        # (iv) bracket-derivation failure witness for D1, if one exists
        found = None
        for tup in monomial_tuples(table, 2, budget):
            a = Element.monomial(table, tup[0])
            b = Element.monomial(table, tup[1])
            lhs = d1.apply(bracket(a, b))
            sign = -1 if table.monomial_parity(tup[0]) else 1
            rhs = bracket(d1.apply(a), b) - sign * bracket(a, d1.apply(b))
            if not (lhs - rhs).is_zero():
                found = (a, b)
                break
        if found:
            report.add(
                "D1 bracket-derivation failure",
                "pass",
                "failure witness exhibited",
                witness=_pair_str(*found),
            )
        else:
            report.add(
                "D1 bracket-derivation failure",
                "untested",
                "no witness within budget (may hold on this model)",
            )
    return report


# --------------------------------------------------------------------------
# Homotopy-BV definition
# --------------------------------------------------------------------------

def check_bvinfty(
    table: GeneratorTable, d: Operator, D: Operator, budget: Budget | None = None
) -> StructReport:
    """Clause-by-clause check of the homotopy-BV triple (A, d, D):
    d a degree +1 differential and derivation, D odd and square zero, every
    degree component of D - d of negative degree.
    """
    budget = budget or Budget()
    report = StructReport("homotopy-BV triple")

    if d.is_zero():
        report.add("d homogeneous of degree +1", "pass", "d = 0, vacuous")
    elif d.is_degree_homogeneous() and d.degree() == 1:
        report.add("d homogeneous of degree +1", "pass")
    else:
        degs = sorted({d.term_degree(k) for k in d.terms})
        report.add("d homogeneous of degree +1", "fail", f"degrees {degs}")

    report.add(
        "d squares to zero",
        "pass" if d.compose(d).is_zero() else "fail",
        witness=None if d.compose(d).is_zero() else str(d.compose(d)),
    )

    cert = akman_order_check(d, 1, budget) if not d.is_zero() else None
    if cert is None:
        report.add("d is a product derivation", "pass", "d = 0, vacuous")
    else:
        report.add(
            "d is a product derivation",
            "pass" if cert.passed else "fail",
            cert.verdict(),
            witness=str(cert.failure_witness) if cert.failure_witness else None,
        )

    report.add("D is odd", "pass" if D.is_odd() else "fail")

    ok, witness = D.is_square_zero()
    report.add(
        "D squares to zero", "pass" if ok else "fail", witness=None if ok else str(witness)
    )

    tail = D - d
    offending = sorted(g for g in tail.degree_components() if g >= 0)
    report.add(
        "degree of D - d is negative",
        "pass" if not offending else "fail",
        "" if not offending else f"non-negative components at degrees {offending}",
    )
    return report


# --------------------------------------------------------------------------
# Cohomology
# --------------------------------------------------------------------------

@dataclass
class CohomologyBasis:
    """Per-degree representatives of ker d / im d on a finite monomial window."""

    table: GeneratorTable
    window_degree: int
    representatives: dict[int, list[Element]]
    cycle_dims: dict[int, int]
    boundary_space: RowSpace  # all boundaries from window monomials, one space
    warnings: list[str]

    def dims(self) -> dict[int, int]:
        return {g: len(reps) for g, reps in sorted(self.representatives.items())}

    def reduce(self, a: Element) -> Element:
        """Canonical representative of ``a`` modulo window boundaries."""
        residual = self.boundary_space.reduce(dict(a.coeffs))
        return Element(self.table, residual)


def cohomology(
    table: GeneratorTable, d: Operator, window_degree: int = 4
) -> CohomologyBasis:
    """Kernel-mod-image of a square-zero degree-homogeneous d, per degree,
    over the window of monomials with total exponent <= window_degree.
    """
    if not d.compose(d).is_zero():
        raise AlgebraError("cohomology requires d^2 = 0 (exact normal form)")
    if not d.is_zero() and not d.is_degree_homogeneous():
        raise AlgebraError("cohomology requires a degree-homogeneous d")

    monos = enumerate_monomials(table, window_degree)
    warnings: list[str] = []
    # growth of total exponent along d; negative growth can pull boundaries
    # in from outside the window
    growths = [sum(m) - sum(dv) for (m, dv) in d.terms]
    truncation_risk = bool(growths) and min(growths) <= 0

    by_degree: dict[int, list] = {}
    for m in monos:
        by_degree.setdefault(table.monomial_degree(m), []).append(m)

    boundary_space = RowSpace()
    images: dict[tuple, dict] = {}
    for m in monos:
        img = d.apply(Element.monomial(table, m))
        images[m] = dict(img.coeffs)
        if images[m]:
            boundary_space.add(images[m])

    representatives: dict[int, list[Element]] = {}
    cycle_dims: dict[int, int] = {}
    for g, slice_monos in sorted(by_degree.items()):
        kernel, _ = kernel_and_image(slice_monos, [images[m] for m in slice_monos])
        cycle_dims[g] = len(kernel)
        reps: list[Element] = []
        rep_space = RowSpace()
        for combo in kernel:
            cycle = {m: c for m, c in combo.items()}
            reduced = boundary_space.reduce(cycle)
            if not reduced:
                continue
            if rep_space.add(reduced):
                reps.append(Element(table, reduced))
        if reps:
            representatives[g] = reps
        if truncation_risk and any(
            sum(m) >= window_degree + min(growths) for m in slice_monos
        ):
            warnings.append(
                f"degree {g}: boundaries from outside the window may be missed"
            )
    return CohomologyBasis(
        table, window_degree, representatives, cycle_dims, boundary_space, warnings
    )


# --------------------------------------------------------------------------
# Induced BV structure on cohomology
# --------------------------------------------------------------------------

def induced_bv(
    table: GeneratorTable,
    d: Operator,
    D: Operator,
    window_degree: int = 4,
    budget: Budget | None = None,
) -> StructReport:
    """Extract the degree -1 part of D, verify it anticommutes with d as an
    exact operator identity, and check that it induces a square-zero order-2
    operator (hence a BV structure) on the d-cohomology representatives.
    """
    budget = budget or Budget()
    pre = check_bvinfty(table, d, D, budget)
    if not pre.passed:
        raise AlgebraError("induced_bv precondition: homotopy-BV check failed")
    report = StructReport("induced BV structure on cohomology")

    D2 = D.degree_components().get(-1, Operator.zero(table))
    anti = d.compose(D2) + D2.compose(d)
    report.add(
        "d D2 + D2 d = 0 (exact operator identity)",
        "pass" if anti.is_zero() else "fail",
        witness=None if anti.is_zero() else str(anti),
    )

    H = cohomology(table, d, window_degree)
    reps = [r for rs in H.representatives.values() for r in rs]
    report.add(
        "cohomology slice dimensions",
        "pass",
        str(H.dims()) + ("; " + "; ".join(H.warnings) if H.warnings else ""),
    )

    # well-definedness: D2 maps window boundaries to boundaries
    bad = None
    boundary_rows = list(H.boundary_space.rows.values())
    untested_boundary = False
    for row in boundary_rows:
        img2 = D2.apply(Element(table, row))
        if not H.boundary_space.contains(dict(img2.coeffs)):
            # distinguish a genuine failure from window truncation: the
            # residual may involve monomials outside the window
            residual = H.boundary_space.reduce(dict(img2.coeffs))
            if any(sum(m) > window_degree for m in residual):
                untested_boundary = True
            else:
                bad = Element(table, row)
                break
    if bad is not None:
        report.add("induced map well defined on classes", "fail", witness=str(bad))
    elif untested_boundary:
        report.add(
            "induced map well defined on classes",
            "untested",
            "untested at boundary: image leaves the window",
        )
    else:
        report.add(
            "induced map well defined on classes", "pass", f"{len(boundary_rows)} boundaries"
        )

    def induced(a: Element) -> Element:
        return H.reduce(D2.apply(a))

    def induced_product(a: Element, b: Element) -> Element:
        return H.reduce(a * b)

    # square zero on classes
    bad = None
    for r in reps:
        if not induced(induced(r)).is_zero():
            bad = r
            break
    report.add(
        "induced operator squares to zero on classes",
        "fail" if bad else "pass",
        witness=str(bad) if bad else None,
    )

    # order <= 2 w.r.t. the induced product: arity-3 brackets vanish
    def hom_parts(e: Element):
        return list(e.grade_decompose().values())

    bad = None
    tested = 0
    p_D2 = 1  # degree -1 component is odd
    for trip in iter_product(reps, repeat=3):
        if tested >= budget.max_tuples:
            break
        tested += 1
        total = Element.zero(table)
        for a in hom_parts(trip[0]):
            for b in hom_parts(trip[1]):
                for c in hom_parts(trip[2]):
                    pars = (a.parity(), b.parity(), c.parity())
                    total = total + akman_recursion(
                        induced, induced_product, p_D2, (a, b, c), pars
                    )
        if not total.is_zero():
            bad = trip
            break
    report.add(
        "induced operator has order <= 2 on representatives",
        "fail" if bad else "pass",
        "" if bad else f"{tested} triples",
        witness=f"({bad[0]}, {bad[1]}, {bad[2]})" if bad else None,
    )

    # induced bracket satisfies the Gerstenhaber axioms on the window
    def induced_bracket(a: Element, b: Element) -> Element:
        pars = (a.parity(), b.parity())
        val = akman_recursion(induced, induced_product, p_D2, (a, b), pars)
        return -val if a.parity() else val

    hom_reps = [p for r in reps for p in hom_parts(r)]
    g_report = check_gerstenhaber(
        induced_bracket,
        induced_product,
        hom_reps,
        budget,
        title="induced bracket axioms",
    )
    for item in g_report.items:
        report.add("induced bracket: " + item.name, item.status, item.details, item.witness)
    return report
