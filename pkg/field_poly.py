"""
Field Poly - Prime field arithmetic and sparse multivariate polynomials
Polynomials are immutable, canonically sorted term tuples over F_p
"""
import operator
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import isprime

from constants import MAX_CHARACTERISTIC, ORDER_ELIMINATION, ORDER_GREVLEX, ORDER_LEX, ORDER_NAMES
from error_handler import DivisionByZero, InvalidCharacteristic, RingMismatch

# A monomial is its exponent vector
Monomial = Tuple[int, ...]


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a"""
    return tuple(map(operator.sub, a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True if a divides b"""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def monomials_of_degree(nvars: int, degree: int) -> List[Monomial]:
    """All exponent vectors of the given total degree, lex-descending"""
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    result = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            result.append((first,) + rest)
    return result


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p"""
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise InvalidCharacteristic(f"characteristic must be an integer, got {self.p!r}")
        if not 2 <= self.p < MAX_CHARACTERISTIC or not isprime(self.p):
            raise InvalidCharacteristic(f"{self.p} is not a prime below 2^31")

    def element(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def signed(self, a: int) -> int:
        """Representative of a in (-p/2, p/2], used for printing"""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def arith(self, op: str, a: int, b: Optional[int] = None) -> int:
        """
        Dispatch a field operation by name

        Args:
            op: One of add, sub, mul, neg, inv
            a: First operand
            b: Second operand for binary operations

        Returns:
            Reduced result
        """
        if op == 'neg':
            return self.neg(a)
        if op == 'inv':
            return self.inv(a)
        if b is None:
            raise ValueError(f"field operation {op!r} needs two operands")
        if op == 'add':
            return self.add(a, b)
        if op == 'sub':
            return self.sub(a, b)
        if op == 'mul':
            return self.mul(a, b)
        raise ValueError(f"unknown field operation {op!r}")

    def __str__(self) -> str:
        return f"GF({self.p})"


def field_arith(field: PrimeField, op: str, a: int, b: Optional[int] = None) -> int:
    return field.arith(op, a, b)


def _grevlex_key(exps: Monomial) -> tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """
    Monomial order on exponent vectors.

    kind is grevlex, lex, or elim; elim compares the first `block` variables
    by grevlex and breaks ties with grevlex on the remaining ones.
    """
    kind: str = ORDER_GREVLEX
    block: int = 0

    def __post_init__(self):
        if self.kind not in ORDER_NAMES:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.block < 0 or (self.kind == ORDER_ELIMINATION and self.block == 0):
            raise ValueError("elimination order needs a positive block size")

    @classmethod
    def grevlex(cls) -> 'MonomialOrder':
        return cls(ORDER_GREVLEX)

    @classmethod
    def lex(cls) -> 'MonomialOrder':
        return cls(ORDER_LEX)

    @classmethod
    def elimination(cls, block: int) -> 'MonomialOrder':
        return cls(ORDER_ELIMINATION, block)

    def key(self, exps: Monomial) -> tuple:
        """Sort key: larger key means larger monomial"""
        if self.kind == ORDER_GREVLEX:
            return _grevlex_key(exps)
        if self.kind == ORDER_LEX:
            return exps
        return (_grevlex_key(exps[:self.block]), _grevlex_key(exps[self.block:]))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self) -> str:
        if self.kind == ORDER_ELIMINATION:
            return f"{self.kind}({self.block})"
        return self.kind


@dataclass(frozen=True)
class PolynomialRing:
    """F_p[variables] with a fixed monomial order"""
    field: PrimeField
    variables: Tuple[str, ...]
    order: MonomialOrder = MonomialOrder()

    def __post_init__(self):
        object.__setattr__(self, 'variables', tuple(self.variables))
        for name in self.variables:
            if not isinstance(name, str) or not name.isidentifier():
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        if self.order.block > len(self.variables):
            raise ValueError("elimination block larger than the number of variables")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def from_dict(self, coeffs: Dict[Monomial, int]) -> 'Polynomial':
        """Build a polynomial from {exponents: coefficient}, reducing mod p"""
        p = self.p
        clean = {}
        for exps, c in coeffs.items():
            c %= p
            if c:
                if len(exps) != self.nvars:
                    raise ValueError(f"exponent vector {exps} has wrong length for {self}")
                clean[tuple(exps)] = c
        return Polynomial(self, clean)

    def zero(self) -> 'Polynomial':
        return Polynomial(self, {})

    def one(self) -> 'Polynomial':
        return self.constant(1)

    def constant(self, c: int) -> 'Polynomial':
        return self.from_dict({(0,) * self.nvars: c})

    def monomial(self, exps: Monomial, coeff: int = 1) -> 'Polynomial':
        return self.from_dict({tuple(exps): coeff})

    def gen(self, name: Union[str, int]) -> 'Polynomial':
        i = self.index(name) if isinstance(name, str) else name
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(tuple(exps))

    def gens(self) -> Tuple['Polynomial', ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def coerce(self, value: Union['Polynomial', int]) -> 'Polynomial':
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch(f"polynomial from {value.ring} used in {self}")
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return self.constant(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def parse(self, text: str) -> 'Polynomial':
        """Parse a polynomial expression such as 'x^2*y - 3*z'"""
        from script_parser import parse_polynomial
        return parse_polynomial(text, self)

    def __str__(self) -> str:
        return f"GF({self.p})[{','.join(self.variables)}] order={self.order}"


PolyLike = Union['Polynomial', int]


class Polynomial:
    """
    Sparse polynomial: terms are (exponents, coefficient) pairs sorted
    strictly descending in the ring's order, coefficients in 1..p-1.
    """
    __slots__ = ('ring', 'terms', '_coeffs', '_hash')

    def __init__(self, ring: PolynomialRing, coeffs: Dict[Monomial, int]):
        # coeffs must already be reduced and free of zeros; use ring.from_dict otherwise
        key = ring.order.key
        self.ring = ring
        self._coeffs = coeffs
        self.terms: Tuple[Tuple[Monomial, int], ...] = tuple(
            sorted(coeffs.items(), key=lambda t: key(t[0]), reverse=True)
        )
        self._hash: Optional[int] = None

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def lm(self) -> Monomial:
        """Leading monomial"""
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lc(self) -> int:
        """Leading coefficient"""
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def coefficient(self, exps: Monomial) -> int:
        return self._coeffs.get(tuple(exps), 0)

    def monomials(self) -> List[Monomial]:
        return [e for e, _ in self.terms]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial"""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and not any(self.terms[0][0])

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def support(self) -> frozenset:
        """Indices of the variables that occur"""
        return frozenset(i for e, _ in self.terms for i, a in enumerate(e) if a)

    # -- arithmetic -------------------------------------------------------
    def _other(self, other: PolyLike) -> 'Polynomial':
        return self.ring.coerce(other)

    def __add__(self, other: PolyLike) -> 'Polynomial':
        other = self._other(other)
        p = self.ring.p
        acc = dict(self._coeffs)
        for e, c in other.terms:
            v = (acc.get(e, 0) + c) % p
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return Polynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> 'Polynomial':
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms})

    def __sub__(self, other: PolyLike) -> 'Polynomial':
        return self + (-self._other(other))

    def __rsub__(self, other: PolyLike) -> 'Polynomial':
        return self._other(other) - self

    def scale(self, c: int) -> 'Polynomial':
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: (a * c) % p for e, a in self.terms})

    def __mul__(self, other: PolyLike) -> 'Polynomial':
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(other)
        other = self._other(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        p = self.ring.p
        acc: Dict[Monomial, int] = {}
        add = operator.add
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(map(add, e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Polynomial(self.ring, {e: c % p for e, c in acc.items() if c % p})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'Polynomial':
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> 'Polynomial':
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def frobenius(self, q: int) -> 'Polynomial':
        """
        The q-th power when q is a power of p: coefficients are fixed by
        Frobenius, so only exponents are multiplied.
        """
        return Polynomial(self.ring, {tuple(a * q for a in e): c for e, c in self.terms})

    def exact_quotient(self, divisor: 'Polynomial') -> 'Polynomial':
        """
        self / divisor when divisor divides self exactly

        Raises:
            DivisionByZero: divisor is zero
            ValueError: divisor does not divide self
        """
        divisor = self._other(divisor)
        if not divisor.terms:
            raise DivisionByZero("division by the zero polynomial")
        p = self.ring.p
        key = self.ring.order.key
        lm_d = divisor.lm
        inv = self.ring.field.inv(divisor.lc)
        rem = dict(self._coeffs)
        quot: Dict[Monomial, int] = {}
        while rem:
            lt = max(rem, key=key)
            if not monomial_divides(lm_d, lt):
                raise ValueError(f"{divisor} does not divide {self}")
            shift = monomial_div(lt, lm_d)
            c = (rem[lt] * inv) % p
            quot[shift] = c
            for e, a in divisor.terms:
                t = monomial_mul(e, shift)
                v = (rem.get(t, 0) - c * a) % p
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Polynomial(self.ring, quot)

    # -- ring changes ------------------------------------------------------
    def change_ring(self, target: PolynomialRing, positions: Sequence[Optional[int]]) -> 'Polynomial':
        """
        Move into another ring over the same field.

        positions[i] is the target index of variable i, or None when the
        variable must not occur.
        """
        if target.field != self.ring.field:
            raise RingMismatch(f"cannot move {self.ring} into {target}")
        coeffs = {}
        for e, c in self.terms:
            new = [0] * target.nvars
            for i, a in enumerate(e):
                if a:
                    j = positions[i]
                    if j is None:
                        raise ValueError(f"variable {self.ring.variables[i]} occurs in {self}")
                    new[j] = a
            coeffs[tuple(new)] = c
        return Polynomial(target, coeffs)

    def embed(self, target: PolynomialRing) -> 'Polynomial':
        """Move into a ring containing every variable of this one, matched by name"""
        return self.change_ring(target, [target.index(v) for v in self.ring.variables])

    def substitute(self, images: Sequence['Polynomial']) -> 'Polynomial':
        """Replace variable i by images[i]; all images share one ring"""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable is required")
        target = images[0].ring if images else self.ring
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(i: int, a: int) -> Polynomial:
            if (i, a) not in powers:
                powers[(i, a)] = images[i] ** a
            return powers[(i, a)]

        result = target.zero()
        for e, c in self.terms:
            term = target.constant(c)
            for i, a in enumerate(e):
                if a:
                    term = term * power(i, a)
            result = result + term
        return result

    # -- comparison and printing ------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def _format_monomial(self, exps: Monomial) -> str:
        parts = []
        for name, a in zip(self.ring.variables, exps):
            if a == 1:
                parts.append(name)
            elif a > 1:
                parts.append(f"{name}^{a}")
        return '*'.join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        out = []
        for idx, (e, c) in enumerate(self.terms):
            s = self.ring.field.signed(c)
            mono = self._format_monomial(e)
            mag = abs(s)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if idx == 0:
                out.append(f"-{body}" if s < 0 else body)
            else:
                out.append(f" - {body}" if s < 0 else f" + {body}")
        return ''.join(out)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def poly_arith(op: str, f: Polynomial, g: PolyLike) -> Polynomial:
    """
    Polynomial arithmetic by name

    Args:
        op: add, sub, mul or scale
        f: Left operand
        g: Polynomial, or a field element for scale

    Raises:
        RingMismatch: operands from different rings
    """
    if op == 'scale':
        if not isinstance(g, int):
            raise TypeError("scale takes a field element")
        return f.scale(g)
    if isinstance(g, Polynomial) and g.ring != f.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")
    if op == 'add':
        return f + g
    if op == 'sub':
        return f - g
    if op == 'mul':
        return f * g
    raise ValueError(f"unknown polynomial operation {op!r}")


def polynomial_ring(p: int, variables: Union[str, Sequence[str]], order: str = ORDER_GREVLEX,
                    block: int = 0) -> PolynomialRing:
    """Convenience constructor: polynomial_ring(5, 'x,y')"""
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(',') if v.strip()]
    if order == ORDER_ELIMINATION:
        mono = MonomialOrder.elimination(block)
    elif order == ORDER_LEX:
        mono = MonomialOrder.lex()
    else:
        mono = MonomialOrder(order)
    return PolynomialRing(PrimeField(p), tuple(variables), mono)
