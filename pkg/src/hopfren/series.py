"""Exact truncated power series and Laurent series.

A :class:`TruncatedSeries` stores the nonzero coefficients of a series in one
variable together with the order ``N`` up to which those coefficients are
known.  ``order=None`` marks an exact (polynomial) series.  Every operation
computes the order that is guaranteed for its result, and reading a
coefficient above that order raises :class:`TruncationError`.

Coefficients live in a pluggable commutative algebra described by an
algebra object (see :class:`RationalField`); the elements themselves only
need ``+``, ``-``, ``*`` and ``==``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping


class SeriesError(ArithmeticError):
    """Base class for series arithmetic errors."""


class TruncationError(SeriesError):
    """A coefficient above the guaranteed order was requested."""


class NonComposable(SeriesError):
    pass


class NotInvertible(SeriesError):
    pass


class NotTangentToIdentity(SeriesError):
    pass


class NotUnitConstant(SeriesError):
    pass


class RationalField:
    """The field of rationals, realised with :class:`fractions.Fraction`."""

    name = "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to a rational")

    def is_zero(self, x):
        return x == 0

    def is_one(self, x):
        return x == 1

    def inverse(self, x):
        if x == 0:
            raise NotInvertible("zero is not invertible")
        return 1 / x

    def render(self, x):
        return str(x)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def algebra_of(x):
    """Coefficient algebra an element belongs to."""
    if isinstance(x, (int, Fraction)):
        return QQ
    alg = getattr(x, "element_algebra", None)
    if alg is None:
        raise TypeError(f"{type(x).__name__} is not a coefficient")
    return alg


def _join(a, b):
    """Algebra of a product/sum of elements from ``a`` and ``b``."""
    if a is b:
        return a
    if a is QQ:
        return b
    if b is QQ:
        return a
    raise TypeError(f"incompatible coefficient algebras {a!r} and {b!r}")


# ``None`` stands for +infinity in order bookkeeping.
def _omin(*xs):
    finite = [x for x in xs if x is not None]
    return min(finite) if finite else None


def _oadd(a, b):
    return None if a is None or b is None else a + b


def _power_exponent(k: int) -> str:
    return "" if k == 1 else f"^{k}"


class TruncatedSeries:
    """Formal series ``sum c_k var^k + O(var^(order+1))``.

    Parameters
    ----------
    coeffs : mapping from int exponent to coefficient
        Zero coefficients and exponents above ``order`` are discarded.
    order : int or None
        Truncation order; ``None`` means the series is exact.
    algebra : coefficient algebra, default :data:`QQ`
    var : str
        Variable name used for rendering only.
    """

    __slots__ = ("_coeffs", "_order", "_algebra", "_var")

    def __init__(self, coeffs: Mapping[int, object] | None = None,
                 order: int | None = None, algebra=QQ, var: str = "g"):
        clean = {}
        for k, c in (coeffs or {}).items():
            k = int(k)
            if order is not None and k > order:
                continue
            c = algebra.coerce(c)
            if not algebra.is_zero(c):
                clean[k] = c
        self._coeffs = dict(sorted(clean.items()))
        self._order = order
        self._algebra = algebra
        self._var = var

    # -- construction helpers -------------------------------------------------

    def _new(self, coeffs, order, algebra=None):
        return type(self)(coeffs, order, algebra or self._algebra, self._var)

    @classmethod
    def constant(cls, c, order=None, algebra=QQ, var="g"):
        return cls({0: c}, order, algebra, var)

    @classmethod
    def variable(cls, order=None, algebra=QQ, var="g"):
        return cls({1: algebra.one()}, order, algebra, var)

    # -- accessors --------------------------------------------------------------

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    @property
    def order(self) -> int | None:
        return self._order

    @property
    def algebra(self):
        return self._algebra

    @property
    def var(self) -> str:
        return self._var

    @property
    def k_min(self) -> int | None:
        """Lowest exponent with a nonzero coefficient (None for zero)."""
        return next(iter(self._coeffs), None)

    @property
    def valuation(self) -> int | None:
        """Valuation used for order bookkeeping; None means exact zero."""
        if self._coeffs:
            return next(iter(self._coeffs))
        return None if self._order is None else self._order + 1

    def is_exact(self) -> bool:
        return self._order is None

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, k: int):
        if self._order is not None and k > self._order:
            raise TruncationError(
                f"coefficient of {self._var}^{k} requested but series is "
                f"only known to order {self._order}")
        return self._coeffs.get(k, self._algebra.zero())

    def __getitem__(self, k):
        return self.coeff(k)

    def items(self):
        return self._coeffs.items()

    def truncate(self, n: int | None):
        return self._new(self._coeffs, _omin(self._order, n))

    def shift(self, k: int):
        """Multiply by ``var**k``."""
        return self._new({e + k: c for e, c in self._coeffs.items()},
                         _oadd(self._order, k))

    def map_coeffs(self, fn: Callable, algebra=None):
        """Apply ``fn`` to every stored coefficient."""
        algebra = algebra or self._algebra
        return type(self)({k: fn(c) for k, c in self._coeffs.items()},
                          self._order, algebra, self._var)

    def scale(self, c):
        """Multiply every coefficient by ``c`` (on the left)."""
        if isinstance(c, TruncatedSeries):
            return self * c
        algebra = _join(algebra_of(c), self._algebra)
        return type(self)({k: c * v for k, v in self._coeffs.items()},
                          self._order, algebra, self._var)

    # -- ring operations --------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return self._new({0: other}, None, _join(self._algebra, algebra_of(other)))

    def __add__(self, other):
        other = self._lift(other)
        algebra = _join(self._algebra, other._algebra)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out[k] + c if k in out else c
        return self._new(out, _omin(self._order, other._order), algebra)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self._coeffs.items()}, self._order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        algebra = _join(self._algebra, other._algebra)
        va, vb = self.valuation, other.valuation
        if va is None or vb is None:
            return self._new({}, None, algebra)
        order = _omin(_oadd(self._order, vb), _oadd(other._order, va))
        out = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                k = i + j
                if order is not None and k > order:
                    break
                out[k] = out[k] + a * b if k in out else a * b
        return self._new(out, order, algebra)

    def __rmul__(self, other):
        # scalars commute with everything we multiply
        return self.scale(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers; use rational_power")
        result = self._new({0: self._algebra.one()}, None)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * series_recip(other)
        return self.scale(Fraction(1) / Fraction(other))

    def __eq__(self, other):
        """Compare coefficients up to the smaller of the two orders."""
        if not isinstance(other, TruncatedSeries):
            other = self._lift(other)
        limit = _omin(self._order, other._order)
        keys = set(self._coeffs) | set(other._coeffs)
        for k in keys:
            if limit is not None and k > limit:
                continue
            # stored coefficients are nonzero, so a missing key means zero
            if k not in self._coeffs or k not in other._coeffs:
                return False
            if self._coeffs[k] != other._coeffs[k]:
                return False
        return True

    __hash__ = None

    def identical(self, other) -> bool:
        """Equality including the recorded order."""
        return (isinstance(other, TruncatedSeries) and self._order == other._order
                and self == other)

    # -- rendering ---------------------------------------------------------------

    def render(self) -> str:
        alg = self._algebra
        parts = []
        for k, c in self._coeffs.items():
            mono = "" if k == 0 else f"{self._var}{_power_exponent(k)}"
            if alg is QQ:
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                if mono and mag == 1:
                    body = mono
                elif mono:
                    body = f"{mag}*{mono}"
                else:
                    body = str(mag)
            else:
                sign = "+"
                text = alg.render(c)
                if mono and alg.is_one(c):
                    body = mono
                elif mono:
                    body = f"({text})*{mono}"
                else:
                    body = f"({text})" if " " in text else text
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        text = " ".join(parts) if parts else "0"
        suffix = "exact" if self._order is None else f"order {self._order}"
        return f"{text} ({suffix})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"{type(self).__name__}({self.render()!r})"


class LaurentSeries(TruncatedSeries):
    """Rational Laurent series in ``eps`` with finite pole depth."""

    __slots__ = ()

    def __init__(self, coeffs=None, order=None, algebra=QQ, var="eps"):
        super().__init__(coeffs, order, algebra, var)

    @property
    def element_algebra(self):
        return LAURENT

    def split(self):
        return laurent_split(self)


class LaurentAlgebra:
    """Laurent series over QQ viewed as a coefficient algebra."""

    name = "Laurent"

    def zero(self):
        return LaurentSeries({}, None)

    def one(self):
        return LaurentSeries({0: 1}, None)

    def coerce(self, x):
        if isinstance(x, LaurentSeries):
            return x
        if isinstance(x, TruncatedSeries):
            return LaurentSeries(x.coeffs, x.order)
        return LaurentSeries({0: QQ.coerce(x)}, None)

    def is_zero(self, x):
        return x.is_zero() and x.is_exact()

    def is_one(self, x):
        return x.is_exact() and x.coeffs == {0: 1}

    def inverse(self, x):
        return series_recip(x)

    def render(self, x):
        return x.render()

    def __repr__(self):
        return "Laurent"


LAURENT = LaurentAlgebra()


# -- named operations -----------------------------------------------------------

def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Substitute ``inner`` for the variable of ``outer``.

    With ``outer`` known to order N, ``inner`` known to order M and of
    valuation v >= 1, the result is known to order
    ``min((N+1)*v - 1, (k1-1)*v + M)`` where k1 is the lowest positive
    exponent present in ``outer``.
    """
    if inner.k_min is not None and inner.k_min < 1:
        raise NonComposable("inner series must have zero constant term "
                            "and no negative powers")
    if outer.k_min is not None and outer.k_min < 0:
        raise NonComposable("outer series has negative powers")
    algebra = _join(outer.algebra, inner.algebra)
    v = inner.valuation
    if v is None:
        # exact zero inner: only the constant term survives
        return outer._new({0: outer.coeff(0)}, None, algebra)
    candidates = []
    if outer.order is not None:
        candidates.append((outer.order + 1) * v - 1)
    positive = [k for k in outer._coeffs if k >= 1]
    if inner.order is not None and positive:
        candidates.append((positive[0] - 1) * v + inner.order)
    order = _omin(*candidates)

    result = {}
    power = inner._new({0: inner.algebra.one()}, None)
    top = max(outer._coeffs, default=0)
    for k in range(0, top + 1):
        if k > 0:
            power = (power * inner).truncate(order)
        if order is not None and k * v > order:
            break
        c = outer._coeffs.get(k)
        if c is None:
            continue
        for e, p in power._coeffs.items():
            term = c * p
            result[e] = result[e] + term if e in result else term
    return type(outer)(result, order, algebra, outer.var)


def series_recip(a: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """Multiplicative inverse; the lowest coefficient must be invertible."""
    if a.is_zero():
        raise NotInvertible("zero series has no reciprocal")
    v = a.k_min
    inv = a.algebra.inverse(a._coeffs[v])
    unit = a.shift(-v)
    target = unit.order
    if order is not None:
        target = _omin(target, order + v)
    if target is None:
        if len(unit._coeffs) == 1:
            return a._new({-v: inv}, None)
        raise SeriesError("reciprocal of an exact non-monomial series needs "
                          "an explicit order")
    b = [inv]
    uc = unit._coeffs
    for n in range(1, target + 1):
        acc = None
        for k in range(1, n + 1):
            if k in uc:
                t = uc[k] * b[n - k]
                acc = t if acc is None else acc + t
        b.append(a.algebra.zero() if acc is None else -(inv * acc))
    out = a._new(dict(enumerate(b)), target)
    return out.shift(-v)


def series_comp_inverse(a: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """Compositional inverse of a series ``g + O(g^2)``."""
    alg = a.algebra
    if (a.k_min is None or a.k_min < 1 or 1 not in a._coeffs
            or not alg.is_one(a._coeffs[1])):
        raise NotTangentToIdentity("series must be of the form g + O(g^2)")
    target = _omin(a.order, order)
    if target is None:
        if len(a._coeffs) == 1:
            return a
        raise SeriesError("inverse of an exact nonlinear series needs an "
                          "explicit order")
    g = a._new({1: alg.one()}, target)
    b = g
    for k in range(2, target + 1):
        err = series_compose(a, b).coeff(k)
        if not alg.is_zero(err):
            b = b - a._new({k: err}, None)
    return b


def _binomial(p: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out = out * (p - j) / (j + 1)
    return out


def series_rational_power(a: TruncatedSeries, p, order: int | None = None) -> TruncatedSeries:
    """``a**p`` for rational ``p`` via the binomial series; ``a = 1 + O(g)``."""
    p = Fraction(p)
    alg = a.algebra
    if (a.k_min is not None and a.k_min < 0) or not alg.is_one(a.coeff(0)):
        raise NotUnitConstant("rational powers need constant term exactly 1")
    u = a - a._new({0: alg.one()}, None)
    target = _omin(a.order, order)
    if target is None:
        if p.denominator == 1 and p >= 0:
            return a ** int(p)
        if u.is_zero():
            return a
        raise SeriesError("non-polynomial power of an exact series needs an "
                          "explicit order")
    u = u.truncate(target)
    result = a._new({0: alg.one()}, target)
    power = a._new({0: alg.one()}, None)
    vu = u.valuation
    k = 1
    while vu is not None and k * vu <= target:
        power = (power * u).truncate(target)
        result = result + power.scale(_binomial(p, k))
        k += 1
    return result


def laurent_split(a: TruncatedSeries):
    """Return ``(negative part, nonnegative part)`` of a Laurent series.

    The pole part is exact when every negative coefficient is known.
    """
    neg = {k: c for k, c in a._coeffs.items() if k < 0}
    pos = {k: c for k, c in a._coeffs.items() if k >= 0}
    neg_order = None if (a.order is None or a.order >= -1) else a.order
    return a._new(neg, neg_order), a._new(pos, a.order)


def from_list(values: Iterable, order: int | None = None, algebra=QQ, var="g",
              start: int = 0) -> TruncatedSeries:
    """Build a series from consecutive coefficients starting at ``start``."""
    return TruncatedSeries({start + i: c for i, c in enumerate(values)},
                           order, algebra, var)
