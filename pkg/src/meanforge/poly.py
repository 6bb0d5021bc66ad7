"""Exact sparse multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`.  A monomial is stored as a
single packed integer: the total degree sits in the highest field and the
exponent of symbol ``i`` sits below it, with symbol 0 most significant.
Integer comparison of two keys is therefore graded-lexicographic comparison,
and monomial multiplication is integer addition.
"""

from __future__ import annotations

import ast
import heapq
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "SymbolTable",
    "Poly",
    "SymbolTableMismatch",
    "NotDivisible",
    "MissingSymbol",
    "poly_add",
    "poly_mul",
    "poly_exact_div",
    "poly_subst",
    "poly_eval",
]

_BITS = 16
_MASK = (1 << _BITS) - 1

Scalar = Union[int, Fraction]


class SymbolTableMismatch(ValueError):
    """Raised when two polynomials over different symbol tables are combined."""


class NotDivisible(ArithmeticError):
    """Raised by exact division when the divisor does not divide the dividend."""


class MissingSymbol(KeyError):
    """Raised by evaluation when an occurring symbol has no assigned value."""


class SymbolTable:
    """An immutable, ordered set of symbol names.

    The position of a name is its ``SymbolId``.  Earlier names rank higher in
    the monomial order.
    """

    __slots__ = ("_names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(str(n) for n in names)
        for n in names:
            if not n.isidentifier():
                raise ValueError(f"invalid symbol name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbol names in {names}")
        self._names = names
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    def __len__(self) -> int:
        return len(self._names)

    def __iter__(self):
        return iter(self._names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolTable) and self._names == other._names

    def __hash__(self) -> int:
        return hash(self._names)

    def __repr__(self) -> str:
        return f"SymbolTable({list(self._names)!r})"

    def index(self, symbol: Union[str, int]) -> int:
        if isinstance(symbol, int):
            if not 0 <= symbol < len(self._names):
                raise IndexError(f"symbol id {symbol} out of range")
            return symbol
        try:
            return self._index[symbol]
        except KeyError:
            raise KeyError(f"unknown symbol {symbol!r}") from None

    def extend(self, *names: str) -> "SymbolTable":
        return SymbolTable(self._names + tuple(names))

    def __getitem__(self, symbol: Union[str, int]) -> "Poly":
        return Poly.var(self, symbol)

    def gens(self) -> tuple["Poly", ...]:
        return tuple(Poly.var(self, i) for i in range(len(self)))

    # packing helpers ---------------------------------------------------
    def _shift(self, i: int) -> int:
        return _BITS * (len(self._names) - 1 - i)

    def _pack(self, exps) -> int:
        n = len(self._names)
        if len(exps) != n:
            raise ValueError(f"exponent vector of arity {len(exps)}, table has {n}")
        key = 0
        for e in exps:
            if not 0 <= e <= _MASK:
                raise OverflowError(f"exponent {e} outside [0, {_MASK}]")
            key = (key << _BITS) | e
        deg = sum(exps)
        if deg > _MASK:
            raise OverflowError("total degree too large")
        return (deg << (_BITS * n)) | key

    def _unpack(self, key: int) -> tuple[int, ...]:
        n = len(self._names)
        return tuple((key >> (_BITS * (n - 1 - i))) & _MASK for i in range(n))


def _scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Rational)) and not isinstance(x, bool)


class Poly:
    """A polynomial with :class:`Fraction` coefficients over a fixed symbol table.

    Values are immutable; every operation returns a new canonical polynomial
    with no zero coefficients stored.
    """

    __slots__ = ("table", "_terms")

    def __init__(self, table: SymbolTable, terms: Mapping | None = None):
        self.table = table
        if not terms:
            self._terms = {}
            return
        clean = {}
        for k, v in terms.items():
            if isinstance(k, tuple):
                k = table._pack(k)
            v = _scalar(v)
            if v:
                clean[k] = v
        self._terms = clean

    @classmethod
    def _raw(cls, table: SymbolTable, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.table = table
        p._terms = terms
        return p

    @classmethod
    def zero(cls, table: SymbolTable) -> "Poly":
        return cls._raw(table, {})

    @classmethod
    def const(cls, table: SymbolTable, value: Scalar) -> "Poly":
        value = _scalar(value)
        return cls._raw(table, {0: value} if value else {})

    @classmethod
    def var(cls, table: SymbolTable, symbol: Union[str, int]) -> "Poly":
        i = table.index(symbol)
        exps = [0] * len(table)
        exps[i] = 1
        return cls._raw(table, {table._pack(exps): Fraction(1)})

    @classmethod
    def parse(cls, table: SymbolTable, text: str) -> "Poly":
        """Parse the text rendering produced by ``str(poly)``.

        Accepts ``+ - *``, ``^`` or ``**`` with non-negative integer
        exponents, integer literals and division by constants.
        """
        tree = ast.parse(text.replace("^", "**").replace("−", "-"), mode="eval")
        return _PolyBuilder(table).visit(tree.body)

    # basic structure ----------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Exponent-vector view of the terms, in increasing grlex order."""
        return {self.table._unpack(k): self._terms[k] for k in sorted(self._terms)}

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(self._terms) >> (_BITS * len(self.table))

    def degree(self, symbol: Union[str, int]) -> int:
        """Largest exponent of ``symbol``; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        sh = self.table._shift(self.table.index(symbol))
        return max((k >> sh) & _MASK for k in self._terms)

    def coeff(self, symbol: Union[str, int], power: int) -> "Poly":
        """Coefficient of ``symbol**power``, as a polynomial free of ``symbol``."""
        sh = self.table._shift(self.table.index(symbol))
        off = (power << sh) | (power << (_BITS * len(self.table)))
        return Poly._raw(
            self.table,
            {k - off: v for k, v in self._terms.items() if (k >> sh) & _MASK == power},
        )

    def free_symbols(self) -> set[str]:
        out = set()
        for i, name in enumerate(self.table.names):
            sh = self.table._shift(i)
            if any((k >> sh) & _MASK for k in self._terms):
                out.add(name)
        return out

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._terms)
        return self.table._unpack(k), self._terms[k]

    def embed(self, table: SymbolTable) -> "Poly":
        """Re-express over a larger table containing every current symbol."""
        if table == self.table:
            return self
        missing = [n for n in self.table.names if n not in table]
        if missing:
            raise SymbolTableMismatch(f"target table lacks symbols {missing}")
        pos = [table.index(n) for n in self.table.names]
        out = {}
        for k, v in self._terms.items():
            exps = [0] * len(table)
            for i, e in zip(pos, self.table._unpack(k)):
                exps[i] = e
            out[table._pack(exps)] = v
        return Poly._raw(table, out)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Poly") -> None:
        if other.table != self.table:
            raise SymbolTableMismatch(f"{self.table!r} vs {other.table!r}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if _is_scalar(other):
            return Poly.const(self.table, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, v in small.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Poly._raw(self.table, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.table, {k: -v for k, v in self._terms.items()})

    def __pos__(self) -> "Poly":
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def _scale(self, s: Fraction) -> "Poly":
        if not s:
            return Poly._raw(self.table, {})
        if s == 1:
            return self
        return Poly._raw(self.table, {k: v * s for k, v in self._terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self._scale(_scalar(other))
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return Poly._raw(self.table, {})
        if self.total_degree() + other.total_degree() > _MASK:
            raise OverflowError("product degree exceeds the packed exponent range")
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Fraction] = {}
        get = out.get
        bitems = list(b.items())
        for k1, v1 in a.items():
            for k2, v2 in bitems:
                k = k1 + k2
                out[k] = get(k, 0) + v1 * v2
        return Poly._raw(self.table, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            other = _scalar(other)
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self._scale(1 / other)
        if isinstance(other, Poly):
            return self.exact_div(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Poly.const(self.table, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, q: "Poly") -> "Poly":
        """Return ``r`` with ``r * q == self``.

        Term-wise reduction against the grlex leading term of ``q``; raises
        :class:`NotDivisible` at the first step that leaves a remainder.
        """
        self._check(q)
        if not q._terms:
            raise ZeroDivisionError("exact division by the zero polynomial")
        if q.is_constant():
            return self._scale(1 / q._terms[0])
        n = len(self.table)
        shifts = [self.table._shift(i) for i in range(n)]
        lk = max(q._terms)
        lc = q._terms[lk]
        lexps = [(lk >> s) & _MASK for s in shifts]
        qrest = [(k, v) for k, v in q._terms.items() if k != lk]

        rem = dict(self._terms)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quot: dict[int, Fraction] = {}
        while rem:
            k = -heapq.heappop(heap)
            v = rem.get(k)
            if v is None:
                continue
            for s, e in zip(shifts, lexps):
                if (k >> s) & _MASK < e:
                    raise NotDivisible(
                        f"leading monomial {self.table._unpack(k)} of the remainder "
                        f"is not divisible by {self.table._unpack(lk)}"
                    )
            mk = k - lk
            mv = v / lc
            quot[mk] = mv
            del rem[k]
            for k2, v2 in qrest:
                kk = mk + k2
                old = rem.get(kk)
                if old is None:
                    rem[kk] = -mv * v2
                    heapq.heappush(heap, -kk)
                else:
                    s_ = old - mv * v2
                    if s_:
                        rem[kk] = s_
                    else:
                        del rem[kk]
        return Poly._raw(self.table, quot)

    def subs(self, symbol: Union[str, int], value) -> "Poly":
        """Replace ``symbol`` by ``value`` (a polynomial or a rational)."""
        value = self._coerce(value)
        if value is NotImplemented:
            raise TypeError("substitution value must be a Poly or a rational")
        i = self.table.index(symbol)
        deg = self.degree(i)
        if deg <= 0:
            return self
        parts = [self.coeff(i, k) for k in range(deg + 1)]
        result = parts[deg]
        for k in range(deg - 1, -1, -1):
            result = result * value + parts[k]
        return result

    def eval(self, assignment: Mapping) -> Fraction:
        """Exact value under ``assignment`` (symbol name or id -> rational)."""
        n = len(self.table)
        values: list = [None] * n
        for s, v in assignment.items():
            values[self.table.index(s)] = _scalar(v)
        total = Fraction(0)
        for k, c in self._terms.items():
            term = c
            for i, e in enumerate(self.table._unpack(k)):
                if e:
                    if values[i] is None:
                        raise MissingSymbol(self.table.names[i])
                    term *= values[i] ** e
            total += term
        return total

    # comparison and display ----------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.table == other.table and self._terms == other._terms
        if _is_scalar(other):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.table, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self.table.names
        pieces = []
        for k in sorted(self._terms):
            c = self._terms[k]
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}"
                for i, e in enumerate(self.table._unpack(k))
                if e
            )
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


class _PolyBuilder(ast.NodeVisitor):
    def __init__(self, table: SymbolTable):
        self.table = table

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax in polynomial: {ast.dump(node)}")

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"only integer literals are allowed, got {node.value!r}")
        return Poly.const(self.table, node.value)

    def visit_Name(self, node):
        return Poly.var(self.table, node.id)

    def visit_UnaryOp(self, node):
        operand = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -operand
        if isinstance(node.op, ast.UAdd):
            return operand
        return self.generic_visit(node)

    def visit_BinOp(self, node):
        left = self.visit(node.left)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponents must be integer literals")
            return left ** node.right.value
        right = self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant():
                raise ValueError("division is only allowed by constants")
            return left / right.constant_term()
        return self.generic_visit(node)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_exact_div(p: Poly, q: Poly) -> Poly:
    return p.exact_div(q)


def poly_subst(p: Poly, symbol: Union[str, int], value) -> Poly:
    return p.subs(symbol, value)


def poly_eval(p: Poly, assignment: Mapping) -> Fraction:
    return p.eval(assignment)
