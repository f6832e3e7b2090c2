"""Weighted rank-one certificates and the exact verification oracle.

A factorization is stored as a multiset of atoms (weight, support) with
weight >= 0 and support entrywise >= 0; the Gram contribution of an atom is
weight * support * support^T.  Keeping the weight separate from the column
means every Gram entry stays inside the rational (or fixed quadratic) field
even when the numeric column sqrt(weight) * support does not, so equality
against a target matrix can be certified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .scalars import as_fraction, is_integer, is_rational, surd_sign
from .symmetric import DimensionMismatchError, SymMatrix, dot, ldl_certify


class ResourceLimitError(RuntimeError):
    """A bounded exhaustive check ran out of its configured budget."""


@dataclass(frozen=True)
class Atom:
    """One weighted rank-one term: contributes weight * support * support^T."""

    weight: object
    support: tuple

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))
        if surd_sign(self.weight) < 0:
            raise ValueError(f"negative atom weight: {self.weight}")
        for k, x in enumerate(self.support):
            if surd_sign(x) < 0:
                raise ValueError(f"negative support entry at {k}: {x}")

    def is_zero(self) -> bool:
        return surd_sign(self.weight) == 0 or all(x == 0 for x in self.support)

    def column(self):
        """Nonzero (index, value) pairs of the support."""
        return [(k, x) for k, x in enumerate(self.support) if x != 0]


@dataclass(frozen=True)
class CpFactorization:
    """A multiset of atoms certifying complete positivity of their Gram sum."""

    dim: int
    atoms: tuple
    integral: bool = False

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        for a in self.atoms:
            if len(a.support) != self.dim:
                raise DimensionMismatchError(
                    f"atom support length {len(a.support)} != dim {self.dim}"
                )
            if a.is_zero():
                raise ValueError("zero atoms may not be stored")
            if self.integral:
                if a.weight != 1:
                    raise ValueError("integral factorization requires unit weights")
                if not all(is_integer(x) for x in a.support):
                    raise ValueError("integral factorization requires integer supports")


def gram(fac: CpFactorization) -> SymMatrix:
    """Exact Gram matrix sum(weight * support * support^T) of a factorization."""
    n = fac.dim
    g = [[Fraction(0)] * n for _ in range(n)]
    for atom in fac.atoms:
        w = atom.weight
        nz = atom.column()
        for a, (i, vi) in enumerate(nz):
            wvi = w * vi
            for j, vj in nz[a:]:
                g[i][j] = g[i][j] + wvi * vj
    for i in range(n):
        for j in range(i + 1, n):
            g[j][i] = g[i][j]
    return SymMatrix(g)


@dataclass(frozen=True)
class VerificationReport:
    gram_matches: bool
    columns_nonneg: bool
    kernel_orthogonal: bool
    first_discrepancy: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.gram_matches and self.columns_nonneg and self.kernel_orthogonal


def verify(a: SymMatrix, fac: CpFactorization, kernel=()) -> VerificationReport:
    """Check gram(fac) == a exactly, atom nonnegativity, and kernel orthogonality."""
    if fac.dim != a.n:
        raise DimensionMismatchError(f"matrix dim {a.n} != factorization dim {fac.dim}")
    for v in kernel:
        if len(v) != a.n:
            raise DimensionMismatchError(f"kernel vector length {len(v)} != {a.n}")

    g = gram(fac)
    discrepancy = None
    for i in range(a.n):
        for j in range(i, a.n):
            if g[i, j] != a[i, j]:
                discrepancy = (i, j, a[i, j], g[i, j])
                break
        if discrepancy:
            break

    nonneg = all(
        surd_sign(atom.weight) >= 0 and all(surd_sign(x) >= 0 for x in atom.support)
        for atom in fac.atoms
    )
    orthogonal = all(dot(atom.support, v) == 0 for atom in fac.atoms for v in kernel)
    return VerificationReport(discrepancy is None, nonneg, orthogonal, discrepancy)


@dataclass(frozen=True)
class DnnReport:
    """Exact doubly-nonnegative verdict: entrywise check then PSD certification."""

    status: str  # "dnn" | "not_nonneg" | "not_psd"
    position: tuple | None = None
    witness: tuple | None = None

    @property
    def dnn(self) -> bool:
        return self.status == "dnn"


def dnn_check(a: SymMatrix) -> DnnReport:
    pos = a.first_negative_entry()
    if pos is not None:
        return DnnReport("not_nonneg", position=pos)
    cert = ldl_certify(a)
    if not cert.psd:
        return DnnReport("not_psd", witness=cert.witness)
    return DnnReport("dnn")


@dataclass(frozen=True)
class GraphReport:
    status: str  # "ok" | "odd_cycle"
    cycle: tuple | None = None


def _adjacency(a: SymMatrix):
    n = a.n
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j] != 0:
                adj[i].add(j)
                adj[j].add(i)
    return adj


def _is_bipartite(adj) -> bool:
    color = {}
    for s in range(len(adj)):
        if s in color or not adj[s]:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for u in adj[v]:
                if u not in color:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def cp_graph_check(a: SymMatrix, max_dim: int = 12, step_limit: int = 500_000) -> GraphReport:
    """Search the off-diagonal pattern for an odd cycle of length >= 5.

    Bipartite patterns are accepted immediately.  Otherwise all simple cycles
    are enumerated by DFS, which is exhaustive only at desk scale: above
    ``max_dim`` vertices the search is budgeted and raises
    :class:`ResourceLimitError` unless a cycle turns up early.
    """
    adj = _adjacency(a)
    if _is_bipartite(adj):
        return GraphReport("ok")
    n = a.n
    budget = [step_limit if n > max_dim else None]

    # Enumerate simple cycles whose smallest vertex is the DFS root.
    def dfs(root, v, path, on_path):
        if budget[0] is not None:
            budget[0] -= 1
            if budget[0] <= 0:
                raise ResourceLimitError(
                    f"odd-cycle search exceeded budget on a {n}-vertex pattern"
                )
        for u in sorted(adj[v]):
            if u == root and len(path) >= 5 and len(path) % 2 == 1:
                return path
            if u <= root or u in on_path:
                continue
            found = dfs(root, u, path + [u], on_path | {u})
            if found:
                return found
        return None

    for root in range(n):
        found = dfs(root, root, [root], {root})
        if found:
            return GraphReport("odd_cycle", tuple(found))
    if n > max_dim:
        raise ResourceLimitError(
            f"pattern has {n} > {max_dim} vertices; exhaustive check not attempted"
        )
    return GraphReport("ok")


def special_hypothesis_check(a: SymMatrix, m: int, w, eigenvalue) -> bool:
    """Block-bipartite shape test: a = [[D1, C], [C^T, D2]] with diagonal D1, D2,
    C >= 0, a*w == eigenvalue*w exactly, eigenvalue >= 0, and w strictly positive
    on the first m coordinates, strictly negative on the rest."""
    n = a.n
    if not 1 <= m < n or len(w) != n:
        return False
    if surd_sign(eigenvalue) < 0:
        return False
    for i in range(n):
        s = surd_sign(w[i])
        if i < m and s <= 0:
            return False
        if i >= m and s >= 0:
            return False
    for i in range(n):
        for j in range(i + 1, n):
            same_block = (i < m) == (j < m)
            if same_block and a[i, j] != 0:
                return False
            if not same_block and surd_sign(a[i, j]) < 0:
                return False
    return a.matvec(w) == tuple(eigenvalue * x for x in w)


def _decimal_value(x, ctx) -> Decimal:
    if is_rational(x):
        f = as_fraction(x)
        return ctx.divide(Decimal(f.numerator), Decimal(f.denominator))
    root = ctx.sqrt(Decimal(x.rad))
    return ctx.add(_decimal_value(x.rat, ctx), ctx.multiply(_decimal_value(x.coef, ctx), root))


@dataclass(frozen=True)
class NumericExport:
    """Decimal columns sqrt(weight) * support and the worst Gram residual."""

    digits: int
    columns: tuple
    max_residual: float


def to_numeric(fac: CpFactorization, digits: int) -> NumericExport:
    """Round the factor columns to ``digits`` decimal places and report the
    largest entrywise deviation of their Gram product from the exact one."""
    if digits < 1:
        raise ValueError("need at least one digit")
    with localcontext() as ctx:
        ctx.prec = 2 * digits + 30
        quantum = Decimal(1).scaleb(-digits)
        cols = []
        for atom in fac.atoms:
            scale = ctx.sqrt(_decimal_value(atom.weight, ctx))
            cols.append(
                tuple(
                    (scale * _decimal_value(x, ctx)).quantize(quantum)
                    for x in atom.support
                )
            )
        target = gram(fac)
        worst = Decimal(0)
        for i in range(fac.dim):
            for j in range(i, fac.dim):
                approx = sum((c[i] * c[j] for c in cols), Decimal(0))
                dev = abs(approx - _decimal_value(target[i, j], ctx))
                worst = max(worst, dev)
    return NumericExport(digits, tuple(cols), float(worst))
