"""Equation manifolds.

A PDE F = 0 together with a chosen principal derivative gives a
submanifold E_k of jet space on which the principal derivative and all
its total-derivative consequences are expressed through the remaining
(parametric) coordinates. Restriction to E_k, symmetry verification and
determining-equation generation live here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy as sp
from sympy.core.function import AppliedUndef

from .jetcalc import DEFAULT_ORDER_CAP, Dt, Dx, VectorField, apply_prolonged
from .symcore import (
    JetVar,
    SymcoreError,
    ZeroVerdict,
    is_zero,
    jet,
    jets_in,
    kernelize,
    max_jet_order,
    normalize,
    unkernelize,
)


class RestrictionError(SymcoreError):
    pass


@dataclass(frozen=True)
class GenericityCondition:
    """Expressions required to be nonzero for a construction to be valid."""

    nonvanishing: tuple[sp.Expr, ...]

    def __iter__(self):
        return iter(self.nonvanishing)

    def extended(self, *extra) -> "GenericityCondition":
        return GenericityCondition(self.nonvanishing + tuple(sp.sympify(e) for e in extra))


class PdeManifold:
    """The equation manifold of F = 0 with a chosen principal derivative.

    The principal derivative is solved for once; its total-derivative
    consequences are derived lazily and cached. ``restrict`` eliminates
    the principal derivative and everything above it from an expression.
    """

    # Restriction intermediates run a bit above the order of the final
    # result (eliminating an order-k jet differentiates the solved rhs up
    # to order k+1), so the manifold cap sits above the jetcalc default.
    DEFAULT_CAP = DEFAULT_ORDER_CAP + 4

    def __init__(self, F: sp.Expr, principal: JetVar | tuple[int, int],
                 cap: int | None = None):
        cap = self.DEFAULT_CAP if cap is None else cap
        self.F = sp.sympify(F)
        if isinstance(principal, tuple):
            principal = JetVar(*principal)
        self.principal = principal
        self.cap = cap
        p = principal.symbol
        coeff = self.F.diff(p)
        if coeff == 0:
            raise RestrictionError(f"{p} does not occur in F")
        if p in coeff.free_symbols:
            raise RestrictionError(f"F is not affine in the principal derivative {p}")
        rhs = sp.cancel(-(self.F - coeff * p) / coeff)
        if p in rhs.free_symbols:
            raise RestrictionError(f"could not solve F = 0 for {p}")
        self._rhs: dict[tuple[int, int], sp.Expr] = {}
        self._rhs[(0, 0)] = self.restrict(rhs)
        self.genericity = GenericityCondition((coeff,) if not coeff.is_Number else ())

    def order(self) -> int:
        return max_jet_order(self.F)

    def solved_rhs(self) -> sp.Expr:
        return self._rhs[(0, 0)]

    def rhs(self, offset: tuple[int, int]) -> sp.Expr:
        """Restricted expression for the principal derivative shifted by offset."""
        if offset not in self._rhs:
            i, j = offset
            if i > 0:
                r = self.restrict(Dt(self.rhs((i - 1, j)), self.cap))
            else:
                r = self.restrict(Dx(self.rhs((i, j - 1)), self.cap))
            self._rhs[offset] = r
        return self._rhs[offset]

    def restrict(self, e: sp.Expr) -> sp.Expr:
        """Eliminate the principal derivative and all its consequences from e."""
        e = sp.sympify(e)
        pi, pj = self.principal.t_order, self.principal.x_order
        while True:
            sub = {}
            for sym, (i, j) in jets_in(e).items():
                if i >= pi and j >= pj:
                    sub[sym] = self.rhs((i - pi, j - pj))
            if not sub:
                return e
            e = e.xreplace(sub)

    def is_parametric(self, v: JetVar) -> bool:
        return not (v.t_order >= self.principal.t_order
                    and v.x_order >= self.principal.x_order)

    def parametric_coordinates(self, k: int) -> list[JetVar]:
        """The jet coordinates of order ≤ k surviving restriction (plus t, x)."""
        coords = []
        for n in range(k + 1):
            for i in range(n + 1):
                v = JetVar(i, n - i)
                if self.is_parametric(v):
                    coords.append(v)
        return coords

    def __repr__(self):
        return f"PdeManifold({self.F} = 0, principal={self.principal.name})"


def dimension(M: PdeManifold, k: int) -> int:
    """dim E_k = dim J^k minus the number of prolonged equations.

    E_k is cut out by F = 0 together with D_t^i D_x^j F = 0 for
    i + j ≤ k − order(F); both sets are enumerated explicitly and the
    result is checked against the closed formula 3 + 2k for second-order
    equations.
    """
    m = M.order()
    if k < m:
        raise SymcoreError(f"k must be at least the order of F ({m})")
    jets = [JetVar(i, n - i) for n in range(k + 1) for i in range(n + 1)]
    equations = [(i, j) for i in range(k - m + 1) for j in range(k - m + 1 - i)]
    count = 2 + len(jets) - len(equations)
    if m == 2:
        assert count == 3 + 2 * k
    return count


@dataclass
class SymmetryVerdict:
    holds: bool
    verdict: ZeroVerdict
    residual: sp.Expr

    def __bool__(self):
        return self.holds


def check_symmetry(X: VectorField, M: PdeManifold, **zero_opts) -> SymmetryVerdict:
    """Test X^{(k)}(F)|_E = 0 and return the restricted residual as certificate."""
    residual = M.restrict(apply_prolonged(X, M.F, cap=M.cap))
    residual = normalize(residual)
    verdict = is_zero(residual, **zero_opts)
    return SymmetryVerdict(bool(verdict), verdict, residual)


def determining_equations(M: PdeManifold) -> list[sp.Expr]:
    """The linear system on unknown coefficients a(t,x,u), b(t,x,u), c(t,x,u).

    Returns the coefficient list of restrict(X^{(2)}F, M) as a polynomial
    in the parametric jet coordinates of order ≥ 1. The system is not
    solved; substituting candidate (a, b, c) must annihilate every entry.
    """
    from .symcore import t, u, x

    a = sp.Function("a")(t, x, u)
    b = sp.Function("b")(t, x, u)
    c = sp.Function("c")(t, x, u)
    X = VectorField(a, b, c)
    residual = M.restrict(apply_prolonged(X, M.F, cap=M.cap))
    gens = sorted(
        (sym for sym, (i, j) in jets_in(residual).items() if i + j >= 1),
        key=lambda s: s.name,
    )
    body, table = kernelize(sp.expand(residual))
    if not gens:
        return [residual]
    poly = sp.Poly(body, *gens)
    return [unkernelize(coeff, table) for coeff in poly.coeffs()]


def solution_residual(F: sp.Expr, u_expr: sp.Expr) -> sp.Expr:
    """Residual of F on a candidate solution u(t, x).

    Every jet variable in F is replaced by the corresponding partial
    derivative of ``u_expr``; an exact solution gives (something that
    zero-tests to) 0.
    """
    from .symcore import t, x

    F = sp.sympify(F)
    u_expr = sp.sympify(u_expr)
    subs = {}
    for sym, (i, j) in jets_in(F).items():
        subs[sym] = sp.diff(u_expr, t, i, x, j)
    return normalize(F.xreplace(subs))


def substitute_coefficients(equations: list[sp.Expr], a: sp.Expr, b: sp.Expr,
                            c: sp.Expr) -> list[sp.Expr]:
    """Plug concrete coefficient functions into a determining system."""
    from .symcore import t, u, x

    out = []
    subs = {"a": sp.sympify(a), "b": sp.sympify(b), "c": sp.sympify(c)}
    for eq in equations:
        e = eq
        for name, val in subs.items():
            e = e.replace(
                lambda n, name=name: isinstance(n, AppliedUndef) and n.func.__name__ == name,
                lambda n, val=val: val,
            )
        out.append(normalize(e.doit()))
    return out
