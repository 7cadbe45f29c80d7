"""
Resolutions - Free maps, syzygies, presented modules, free resolutions and Ext over S
A PresentedModule is the cokernel of its presentation matrix
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config_loader import get_config
from error_handler import ResourceLimitExceeded, RingMismatch, ZeroModule
from field_poly import Monomial, Polynomial, PolynomialRing, monomials_of_degree
from groebner import (
    INFINITE, Ideal, Length, ReducerSet, TermOrder, Vector, buchberger_vectors,
    count_standard_monomials, reduce_vector,
)
from ideal_algebra import QuotientRingSpec, intersect_all, symbolic_power
from structured_logger import get_logger

logger = get_logger()

Column = Tuple[Polynomial, ...]


class FreeMap:
    """
    Matrix of a map between free modules; column j is the image of the j-th basis vector
    """
    __slots__ = ('ring', 'rows', 'cols', '_entries')

    def __init__(self, ring: PolynomialRing, rows: int, cols: int,
                 entries: Optional[Sequence[Sequence[Union[Polynomial, int]]]] = None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if entries is None:
            zero = ring.zero()
            self._entries = tuple(tuple(zero for _ in range(cols)) for _ in range(rows))
        else:
            if len(entries) != rows or any(len(row) != cols for row in entries):
                raise ValueError(f"entries do not form a {rows}x{cols} matrix")
            self._entries = tuple(tuple(ring.coerce(a) for a in row) for row in entries)

    @classmethod
    def from_columns(cls, ring: PolynomialRing, rows: int,
                     columns: Sequence[Sequence[Union[Polynomial, int]]]) -> 'FreeMap':
        columns = list(columns)
        entries = [[col[r] for col in columns] for r in range(rows)]
        return cls(ring, rows, len(columns), entries)

    @classmethod
    def identity(cls, ring: PolynomialRing, n: int) -> 'FreeMap':
        return cls(ring, n, n, [[1 if r == c else 0 for c in range(n)] for r in range(n)])

    @classmethod
    def zero(cls, ring: PolynomialRing, rows: int, cols: int) -> 'FreeMap':
        return cls(ring, rows, cols)

    @classmethod
    def diagonal(cls, ring: PolynomialRing, entries: Sequence[Polynomial]) -> 'FreeMap':
        n = len(entries)
        zero = ring.zero()
        return cls(ring, n, n, [[entries[r] if r == c else zero for c in range(n)] for r in range(n)])

    def entry(self, r: int, c: int) -> Polynomial:
        return self._entries[r][c]

    def row(self, r: int) -> Column:
        return self._entries[r]

    def column(self, c: int) -> Column:
        return tuple(row[c] for row in self._entries)

    def columns(self) -> List[Column]:
        return [self.column(c) for c in range(self.cols)]

    def rows_list(self) -> List[List[Polynomial]]:
        return [list(row) for row in self._entries]

    def apply(self, vector: Sequence[Polynomial]) -> Column:
        if len(vector) != self.cols:
            raise ValueError("vector length does not match the source rank")
        zero = self.ring.zero()
        result = []
        for row in self._entries:
            acc = zero
            for a, v in zip(row, vector):
                if a and v:
                    acc = acc + a * v
            result.append(acc)
        return tuple(result)

    def compose(self, other: 'FreeMap') -> 'FreeMap':
        """self ∘ other"""
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        return FreeMap.from_columns(self.ring, self.rows, [self.apply(col) for col in other.columns()])

    __matmul__ = compose

    def transpose(self) -> 'FreeMap':
        return FreeMap(self.ring, self.cols, self.rows,
                       [[self._entries[r][c] for r in range(self.rows)] for c in range(self.cols)])

    def hstack(self, *others: 'FreeMap') -> 'FreeMap':
        columns = self.columns()
        for other in others:
            if other.rows != self.rows:
                raise ValueError("hstack needs equal row counts")
            columns.extend(other.columns())
        return FreeMap.from_columns(self.ring, self.rows, columns)

    def select_columns(self, indices: Sequence[int]) -> 'FreeMap':
        return FreeMap.from_columns(self.ring, self.rows, [self.column(c) for c in indices])

    def nonzero_columns(self) -> 'FreeMap':
        return self.select_columns([c for c in range(self.cols) if any(self.column(c))])

    def scale(self, f: Polynomial) -> 'FreeMap':
        return FreeMap(self.ring, self.rows, self.cols, [[f * a for a in row] for row in self._entries])

    def is_zero(self) -> bool:
        return not any(a for row in self._entries for a in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeMap):
            return NotImplemented
        return (self.ring, self.rows, self.cols, self._entries) == \
            (other.ring, other.rows, other.cols, other._entries)

    def __hash__(self) -> int:
        return hash((self.ring, self.rows, self.cols, self._entries))

    def __str__(self) -> str:
        return '[' + '; '.join('[' + ', '.join(str(a) for a in row) + ']' for row in self._entries) + ']'

    def __repr__(self) -> str:
        return f"FreeMap({self.rows}x{self.cols} {self})"


def column_to_vector(column: Sequence[Polynomial], offset: int = 0) -> Vector:
    return {(offset + r, e): c for r, f in enumerate(column) for e, c in f.terms}


def vector_to_column(ring: PolynomialRing, vec: Vector, rank: int, offset: int = 0) -> Column:
    parts: List[Dict[Monomial, int]] = [{} for _ in range(rank)]
    for (comp, mono), c in vec.items():
        parts[comp - offset][mono] = c
    return tuple(ring.from_dict(part) for part in parts)


class ModuleBasis:
    """Reduced Groebner basis of a submodule of S^rank"""

    def __init__(self, ring: PolynomialRing, rank: int, columns: Sequence[Sequence[Polynomial]]):
        self.ring = ring
        self.rank = rank
        self.order = TermOrder(ring.order)
        self.vectors = buchberger_vectors(
            (column_to_vector(col) for col in columns),
            ring.p,
            self.order,
            product_criterion=False,
            max_steps=get_config().max_gb_steps,
        )
        self._reducers = ReducerSet(self.order)
        for vec in self.vectors:
            self._reducers.add(self.order.lead(vec), vec)

    def reduce(self, column: Sequence[Polynomial]) -> Vector:
        return reduce_vector(column_to_vector(column), self._reducers, self.ring.p)

    def contains(self, column: Sequence[Polynomial]) -> bool:
        return not self.reduce(column)

    def leads_by_component(self) -> Dict[int, List[Monomial]]:
        leads: Dict[int, List[Monomial]] = {}
        for vec in self.vectors:
            comp, mono = self.order.lead(vec)
            leads.setdefault(comp, []).append(mono)
        return leads

    def columns(self) -> List[Column]:
        return [vector_to_column(self.ring, v, self.rank) for v in self.vectors]

    def signature(self) -> tuple:
        """Canonical form: equal signatures iff equal submodules"""
        key = self.order.key
        return tuple(tuple(sorted(v.items(), key=lambda tc: key(tc[0]), reverse=True)) for v in self.vectors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleBasis):
            return NotImplemented
        return self.ring == other.ring and self.rank == other.rank and self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash((self.ring, self.rank, self.signature()))


def _tagged_basis(A: FreeMap) -> List[Vector]:
    """Position-over-term basis of the columns [A_j ; e_j]; the tags record coefficients"""
    one = (0,) * A.ring.nvars
    vectors = []
    for j in range(A.cols):
        vec = column_to_vector(A.column(j))
        vec[(A.rows + j, one)] = 1
        vectors.append(vec)
    return buchberger_vectors(vectors, A.ring.p, TermOrder(A.ring.order), product_criterion=False,
                              max_steps=get_config().max_gb_steps)


def syzygies(A: FreeMap) -> FreeMap:
    """
    Generators of ker(A): the basis elements of [A_j ; e_j] living in the tags only
    """
    ring = A.ring
    r, c = A.rows, A.cols
    if c == 0:
        return FreeMap(ring, 0, 0)
    kernel = [vector_to_column(ring, vec, c, offset=r)
              for vec in _tagged_basis(A) if min(comp for comp, _ in vec) >= r]
    return FreeMap.from_columns(ring, c, kernel)


def lift_along(A: FreeMap, targets: FreeMap) -> FreeMap:
    """
    X with A ∘ X = targets. Each target column [b ; 0] is reduced by the
    tagged basis; b lies in the image iff the remainder lives in the tags,
    and the negated tags are the coefficients.

    Raises:
        ValueError: some target column is not in the image of A
    """
    ring = A.ring
    r, c = A.rows, A.cols
    if targets.rows != r:
        raise ValueError(f"targets have {targets.rows} rows, the map has {r}")
    if c == 0:
        if not targets.is_zero():
            raise ValueError("nonzero target for the zero map")
        return FreeMap(ring, 0, targets.cols)
    order = TermOrder(ring.order)
    reducers = ReducerSet(order)
    for vec in _tagged_basis(A):
        reducers.add(order.lead(vec), vec)
    solutions = []
    for target in targets.columns():
        rem = reduce_vector(column_to_vector(target), reducers, ring.p)
        if any(comp < r for comp, _ in rem):
            raise ValueError("target column is not in the image of the map")
        solutions.append(tuple(-f for f in vector_to_column(ring, rem, c, offset=r)))
    return FreeMap.from_columns(ring, c, solutions)


def _find_unit(rows: List[List[Polynomial]], ncols: int) -> Optional[Tuple[int, int]]:
    for c in range(ncols):
        for r, row in enumerate(rows):
            if row[c].is_unit():
                return r, c
    return None


def _eliminate_unit(rows: List[List[Polynomial]], ncols: int, r: int, c: int) -> List[List[Polynomial]]:
    """Schur complement at the unit entry (r, c): drops row r and column c"""
    field = rows[r][c].ring.field
    u_inv = field.inv(rows[r][c].lc)
    pivot_row = rows[r]
    result = []
    for i, row in enumerate(rows):
        if i == r:
            continue
        factor = row[c].scale(u_inv) if row[c] else None
        new_row = []
        for j in range(ncols):
            if j == c:
                continue
            a = row[j]
            if factor is not None and pivot_row[j]:
                a = a - factor * pivot_row[j]
            new_row.append(a)
        result.append(new_row)
    return result


def _drop_zero_columns(rows: List[List[Polynomial]], ncols: int) -> Tuple[List[List[Polynomial]], int]:
    keep = [c for c in range(ncols) if any(row[c] for row in rows)]
    return [[row[c] for c in keep] for row in rows], len(keep)


class PresentedModule:
    """
    Finitely presented S-module coker(presentation).

    generator_lift, when present, sends the generators into an ambient
    free module (columns = generators); ambient_relations spans the
    submodule divided out there. Subquotients carry both.
    """

    def __init__(self, ring: PolynomialRing, presentation: FreeMap,
                 generator_lift: Optional[FreeMap] = None, ambient_relations: Optional[FreeMap] = None):
        if presentation.ring != ring:
            raise RingMismatch(f"{presentation.ring} vs {ring}")
        if generator_lift is not None and generator_lift.cols != presentation.rows:
            raise ValueError("generator lift needs one column per generator")
        self.ring = ring
        self.presentation = presentation
        self.generator_lift = generator_lift
        self.ambient_relations = ambient_relations

    @classmethod
    def zero(cls, ring: PolynomialRing) -> 'PresentedModule':
        return cls(ring, FreeMap(ring, 0, 0))

    @classmethod
    def free(cls, ring: PolynomialRing, rank: int) -> 'PresentedModule':
        return cls(ring, FreeMap(ring, rank, 0))

    @classmethod
    def cyclic(cls, ideal: Ideal) -> 'PresentedModule':
        """S/I"""
        return cls(ideal.ring, FreeMap(ideal.ring, 1, len(ideal.generators), [list(ideal.generators)]))

    @classmethod
    def from_rows(cls, ring: PolynomialRing, rows: Sequence[Sequence[Union[Polynomial, int]]]) -> 'PresentedModule':
        ncols = len(rows[0]) if rows else 0
        return cls(ring, FreeMap(ring, len(rows), ncols, rows))

    @property
    def rank(self) -> int:
        """Number of generators"""
        return self.presentation.rows

    @cached_property
    def basis(self) -> ModuleBasis:
        return ModuleBasis(self.ring, self.rank, self.presentation.columns())

    def unit_vector(self, r: int) -> Column:
        zero, one = self.ring.zero(), self.ring.one()
        return tuple(one if i == r else zero for i in range(self.rank))

    def contains(self, column: Sequence[Polynomial]) -> bool:
        """True if column lies in the image of the presentation (is zero in M)"""
        if self.rank == 0:
            return True
        return self.basis.contains(column)

    def is_zero(self) -> bool:
        return all(self.contains(self.unit_vector(r)) for r in range(self.rank))

    def annihilates(self, f: Polynomial) -> bool:
        f = self.ring.coerce(f)
        return all(self.contains(tuple(f * a for a in self.unit_vector(r))) for r in range(self.rank))

    def with_relations(self, columns: Sequence[Sequence[Polynomial]]) -> 'PresentedModule':
        extra = FreeMap.from_columns(self.ring, self.rank, columns)
        return PresentedModule(self.ring, self.presentation.hstack(extra),
                               self.generator_lift, self.ambient_relations)

    def over_quotient(self, quotient: QuotientRingSpec) -> 'PresentedModule':
        """M ⊗ S/P, so that the result is an R-module"""
        columns = []
        for r in range(self.rank):
            for g in quotient.defining.generators:
                columns.append(tuple(g * a for a in self.unit_vector(r)))
        return self.with_relations(columns) if columns else self

    def quotient_by(self, ideal: Ideal) -> 'PresentedModule':
        """M / I M"""
        columns = [tuple(g * a for a in self.unit_vector(r))
                   for r in range(self.rank) for g in ideal.generators]
        return self.with_relations(columns) if columns else self

    def direct_sum(self, other: 'PresentedModule') -> 'PresentedModule':
        a, b = self.presentation, other.presentation
        zero = self.ring.zero()
        rows = [list(a.row(r)) + [zero] * b.cols for r in range(a.rows)]
        rows += [[zero] * a.cols + list(b.row(r)) for r in range(b.rows)]
        return PresentedModule(self.ring, FreeMap(self.ring, a.rows + b.rows, a.cols + b.cols, rows))

    def pruned(self) -> 'PresentedModule':
        """Isomorphic presentation with no unit entries and no zero relations"""
        rows = self.presentation.rows_list()
        ncols = self.presentation.cols
        lift_cols = self.generator_lift.columns() if self.generator_lift is not None else None
        rows, ncols = _drop_zero_columns(rows, ncols)
        while True:
            hit = _find_unit(rows, ncols)
            if hit is None:
                break
            r, c = hit
            rows = _eliminate_unit(rows, ncols, r, c)
            ncols -= 1
            if lift_cols is not None:
                del lift_cols[r]
            rows, ncols = _drop_zero_columns(rows, ncols)
        presentation = FreeMap(self.ring, len(rows), ncols if rows else 0, rows if rows else None)
        lift = None
        if lift_cols is not None:
            lift = FreeMap.from_columns(self.ring, self.generator_lift.rows, lift_cols)
        return PresentedModule(self.ring, presentation, lift, self.ambient_relations)

    def length(self) -> Length:
        return module_length(self)

    def annihilator(self) -> Ideal:
        """ann_S(M), the intersection of the annihilators of the generators"""
        if self.rank == 0:
            return Ideal.unit(self.ring)
        if self.rank == 1:
            return Ideal(self.ring, self.presentation.row(0))
        return intersect_all([self.element_annihilator(self.unit_vector(r)) for r in range(self.rank)])

    def element_annihilator(self, column: Sequence[Polynomial]) -> Ideal:
        """{f : f * column is zero in M}, the last entries of the syzygies of [presentation | column]"""
        element = FreeMap.from_columns(self.ring, self.rank, [column])
        kernel = syzygies(self.presentation.hstack(element))
        return Ideal(self.ring, [col[-1] for col in kernel.columns()])

    def hilbert_samuel(self, k: int) -> Length:
        """λ(M / m^k M) with m the ideal of all variables"""
        if k <= 0 or self.rank == 0:
            return 0
        columns = [tuple(self.ring.monomial(m) if i == r else self.ring.zero() for i in range(self.rank))
                   for r in range(self.rank) for m in monomials_of_degree(self.ring.nvars, k)]
        return self.with_relations(columns).length()

    def hilbert_samuel_function(self, bound: int) -> List[Length]:
        return [self.hilbert_samuel(k) for k in range(1, bound + 1)]

    def __repr__(self) -> str:
        return f"PresentedModule(rank={self.rank}, relations={self.presentation.cols})"


def module_length(M: PresentedModule) -> Length:
    """Standard-monomial count of the module basis, summed over components"""
    if M.rank == 0:
        return 0
    leads = M.basis.leads_by_component()
    total = 0
    for comp in range(M.rank):
        count = count_standard_monomials(leads.get(comp, []), M.ring.nvars)
        if count is INFINITE:
            return INFINITE
        total += count
    return total


def annihilates(f: Polynomial, M: PresentedModule) -> bool:
    return M.annihilates(f)


def subquotient(Z: FreeMap, B: FreeMap) -> PresentedModule:
    """
    (Im Z + Im B) / Im B presented on the columns of Z, pruned.
    Relations are the Z-parts of the syzygies of [Z | B].
    """
    ring = Z.ring
    g = Z.cols
    if g == 0:
        return PresentedModule(ring, FreeMap(ring, 0, 0), Z, B)
    W = syzygies(Z.hstack(B))
    relations = [col[:g] for col in W.columns() if any(col[:g])]
    module = PresentedModule(ring, FreeMap.from_columns(ring, g, relations), Z, B)
    return module.pruned()


@dataclass(frozen=True)
class ChainComplex:
    """
    Finite complex of free modules. Homological complexes have
    maps[k]: F_{k+1} -> F_k; cohomological ones have maps[i]: K^i -> K^(i+1).
    """
    ring: PolynomialRing
    maps: Tuple[FreeMap, ...]
    ranks: Tuple[int, ...]
    cohomological: bool = False

    @property
    def length(self) -> int:
        return len(self.maps)

    def betti_numbers(self) -> List[int]:
        return list(self.ranks)

    def is_complex(self) -> bool:
        for first, second in zip(self.maps, self.maps[1:]):
            composite = second.compose(first) if self.cohomological else first.compose(second)
            if not composite.is_zero():
                return False
        return True


def _minimize_last(maps: List[FreeMap]) -> None:
    """Cancel unit entries of maps[-1] against columns of maps[-2]"""
    last = maps[-1]
    rows = last.rows_list()
    ncols = last.cols
    prev_cols = maps[-2].columns()
    rows, ncols = _drop_zero_columns(rows, ncols)
    while rows:
        hit = _find_unit(rows, ncols)
        if hit is None:
            break
        r, c = hit
        rows = _eliminate_unit(rows, ncols, r, c)
        ncols -= 1
        del prev_cols[r]
        rows, ncols = _drop_zero_columns(rows, ncols)
    ring = last.ring
    maps[-2] = FreeMap.from_columns(ring, maps[-2].rows, prev_cols)
    maps[-1] = FreeMap(ring, len(rows), ncols if rows else 0, rows if rows else None)


def free_resolution(M: PresentedModule, max_len: Optional[int] = None) -> ChainComplex:
    """
    Free resolution of M by iterated syzygies, pruned of unit entries

    Raises:
        ResourceLimitExceeded: more than max_len maps would be needed
    """
    ring = M.ring
    limit = max_len if max_len is not None else ring.nvars + get_config().resolution_slack
    M = M.pruned()
    first = M.presentation.nonzero_columns()
    maps: List[FreeMap] = [first] if first.cols else []
    while maps:
        nxt = syzygies(maps[-1]).nonzero_columns()
        if nxt.cols == 0:
            break
        if len(maps) >= limit:
            ranks = [M.rank] + [m.cols for m in maps]
            raise ResourceLimitExceeded(
                f"free resolution longer than {limit}",
                partial_rows=[{'index': k, 'rank': r} for k, r in enumerate(ranks)],
            )
        maps.append(nxt)
        _minimize_last(maps)
        while maps and maps[-1].cols == 0:
            maps.pop()
    ranks = (M.rank,) + tuple(m.cols for m in maps)
    logger.debug("free_resolution_computed", betti=list(ranks))
    return ChainComplex(ring, tuple(maps), ranks)


def ext_module(M: PresentedModule, i: int, max_len: Optional[int] = None) -> PresentedModule:
    """Ext^i_S(M, S) = ker(d_{i+1}^T) / im(d_i^T) on a resolution of M"""
    if i < 0:
        raise ValueError("Ext index must be non-negative")
    return _ext_from_resolution(free_resolution(M, max_len), i)


def _ext_from_resolution(res: ChainComplex, i: int) -> PresentedModule:
    """Cohomology of the dual complex at F_i^*; generator_lift lands in F_i^*"""
    ring = res.ring
    L = res.length
    if i > L or res.ranks[i] == 0:
        return PresentedModule.zero(ring)
    n_i = res.ranks[i]
    Z = syzygies(res.maps[i].transpose()) if i < L else FreeMap.identity(ring, n_i)
    B = res.maps[i - 1].transpose() if i > 0 else FreeMap.zero(ring, n_i, 0)
    return subquotient(Z, B)


def depth_via_ab(M: PresentedModule) -> int:
    """
    depth M = nvars - pd M

    Raises:
        ZeroModule: M is zero
    """
    if M.is_zero():
        raise ZeroModule("depth of the zero module is undefined")
    return M.ring.nvars - free_resolution(M).length


def biduality_kernel(M: PresentedModule, c: int, max_len: Optional[int] = None) -> Ideal:
    """
    Kernel of the natural map S/I -> Ext^c(Ext^c(S/I, S), S) for a cyclic
    M = S/I of grade c, as an ideal containing I.

    With F resolving S/I and G resolving E = Ext^c(S/I, S), the generators
    of E sit in ker(F_c^* -> F_(c+1)^*). That inclusion is lifted to a map
    of complexes G_k -> F_(c-k)^*, k = 0..c. Its last component
    G_c -> F_0^* = S, transposed, sends 1 to a cocycle v of G^*, and the
    kernel is {f : f v in im(G_(c-1)^* -> G_c^*)}.

    Raises:
        ValueError: M is not cyclic, or S/I has grade below c
    """
    if M.rank != 1:
        raise ValueError("biduality kernel is computed for cyclic modules")
    if c < 1:
        raise ValueError("biduality kernel needs a positive grade")
    ring = M.ring
    outer = free_resolution(M, max_len)
    ext = _ext_from_resolution(outer, c)
    if ext.rank == 0:
        return Ideal.unit(ring)
    inner = free_resolution(ext, max_len)
    if inner.length < c:
        # Ext^c(E, S) = 0
        return Ideal.unit(ring)

    chain = ext.generator_lift
    for k in range(1, c + 1):
        chain = lift_along(outer.maps[c - k].transpose(), chain.compose(inner.maps[k - 1]))

    cocycle = chain.row(0)
    double_ext = PresentedModule(ring, inner.maps[c - 1].transpose())
    kernel = double_ext.element_annihilator(cocycle)
    logger.debug("biduality_kernel_computed", grade=c, outer_betti=list(outer.ranks),
                 inner_betti=list(inner.ranks))
    return kernel


def double_ext_kernel_check(R: QuotientRingSpec, J: Ideal, i: int, sat: Ideal) -> bool:
    """
    Whether the kernel of R/J^i -> Ext^(h+1)(Ext^(h+1)(R/J^i, S), S)
    equals J^(i)/J^i, compared by membership both ways on preimages in S
    """
    power = R.lift(J ** i)
    c = R.height + 1
    kernel = biduality_kernel(PresentedModule.cyclic(power), c)
    symbolic = symbolic_power(J, i, sat, quotient=R)
    agrees = kernel.is_subideal_of(symbolic) and symbolic.is_subideal_of(kernel)
    logger.debug("double_ext_kernel_checked", exponent=i, grade=c, agrees=agrees)
    return agrees
