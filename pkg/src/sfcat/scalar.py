"""Exact coefficients: Laurent polynomials in a formal pi over Q(zeta_8).

``Cyclotomic`` is the field Q(z) with z a primitive 8th root of unity
(z^4 = -1, i = z^2).  ``Scalar`` is the ring Q(z)[pi, 1/pi] with pi a formal
transcendental symbol.  Both are immutable.
"""
from __future__ import annotations

import cmath
import os
from fractions import Fraction
from numbers import Rational

if os.environ.get("SFCAT_PURE_PYTHON"):
    from . import _pykernels as _k
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _k
        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _pykernels as _k
        BACKEND = "python"

_cyc_norm = _k.cyc_norm
_cyc_mul = _k.cyc_mul
_cyc_add = _k.cyc_add
_laurent_add = _k.laurent_add
_laurent_mul = _k.laurent_mul

_ONE = (1, 0, 0, 0, 1)
ZETA = cmath.exp(1j * cmath.pi / 4)


class NotAUnit(ArithmeticError):
    """Raised when inverting a Scalar that is not a monomial c*pi^k."""


def _tuple_from_fractions(coords) -> tuple | None:
    fr = [Fraction(c) for c in coords]
    den = 1
    for f in fr:
        den = den * f.denominator // _gcd(den, f.denominator)
    nums = [f.numerator * (den // f.denominator) for f in fr]
    return _cyc_norm(nums[0], nums[1], nums[2], nums[3], den)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _neg(t):
    return (-t[0], -t[1], -t[2], -t[3], t[4])


def _galois(t, k):
    # z -> z^k for k in {1,3,5,7}
    out = [0, 0, 0, 0]
    for j in range(4):
        e = (j * k) % 8
        sign = 1
        if e >= 4:
            e -= 4
            sign = -1
        out[e] += sign * t[j]
    return (out[0], out[1], out[2], out[3], t[4])


def _cyc_inverse(t):
    # product of the three non-trivial conjugates, divided by the norm
    conj = _cyc_mul(_cyc_mul(_galois(t, 3), _galois(t, 5)), _galois(t, 7))
    norm = _cyc_mul(t, conj)
    # norm is rational: (n, 0, 0, 0, d)
    n, d = norm[0], norm[4]
    c = conj
    num_scale, den_scale = d, n
    if den_scale < 0:
        num_scale, den_scale = -num_scale, -den_scale
    return _cyc_norm(c[0] * num_scale, c[1] * num_scale, c[2] * num_scale,
                     c[3] * num_scale, c[4] * den_scale)


class Cyclotomic:
    """Element a + b z + c z^2 + d z^3 of Q(zeta_8)."""

    __slots__ = ("_t",)

    def __init__(self, a=0, b=0, c=0, d=0):
        self._t = _tuple_from_fractions((a, b, c, d))

    @classmethod
    def _raw(cls, t):
        obj = cls.__new__(cls)
        obj._t = t
        return obj

    @property
    def coords(self) -> tuple:
        if self._t is None:
            return (Fraction(0),) * 4
        den = self._t[4]
        return tuple(Fraction(x, den) for x in self._t[:4])

    def __bool__(self):
        return self._t is not None

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            return other._t
        if isinstance(other, (int, Rational)):
            return _tuple_from_fractions((other, 0, 0, 0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._t is None:
            return Cyclotomic._raw(o)
        if o is None:
            return self
        return Cyclotomic._raw(_cyc_add(self._t, o))

    __radd__ = __add__

    def __neg__(self):
        return self if self._t is None else Cyclotomic._raw(_neg(self._t))

    def __sub__(self, other):
        return self + (-Cyclotomic._raw(self._coerce(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._t is None or o is None:
            return Cyclotomic._raw(None)
        return Cyclotomic._raw(_cyc_mul(self._t, o))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self._t is None:
            raise ZeroDivisionError("zero has no inverse in Q(zeta_8)")
        return Cyclotomic._raw(_cyc_inverse(self._t))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Cyclotomic._raw(o).inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._t == o

    def __hash__(self):
        return hash(self._t)

    def to_complex(self) -> complex:
        if self._t is None:
            return 0j
        a, b, c, d, den = self._t
        return (a + b * ZETA + c * 1j + d * ZETA ** 3) / den

    def __repr__(self):
        return f"Cyclotomic({_fmt_cyc(self._t)})"


def _fmt_q(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _fmt_cyc(t) -> str:
    if t is None:
        return "0"
    den = t[4]
    coords = [Fraction(x, den) for x in t[:4]]
    return "{}+{}*z+{}*z^2+{}*z^3".format(*(_fmt_q(c) for c in coords))


class Scalar:
    """Laurent polynomial in the formal symbol pi with Q(zeta_8) coefficients."""

    __slots__ = ("_d",)

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._d = value._d
        elif isinstance(value, Cyclotomic):
            self._d = {} if value._t is None else {0: value._t}
        elif isinstance(value, (int, Rational)):
            t = _tuple_from_fractions((value, 0, 0, 0))
            self._d = {} if t is None else {0: t}
        elif isinstance(value, dict):
            d = {}
            for k, c in value.items():
                t = c._t if isinstance(c, Cyclotomic) else _tuple_from_fractions(c)
                if t is not None:
                    d[int(k)] = t
            self._d = d
        else:
            raise TypeError(f"cannot build Scalar from {type(value).__name__}")

    @classmethod
    def _raw(cls, d):
        obj = cls.__new__(cls)
        obj._d = d
        return obj

    @classmethod
    def zeta(cls, k: int = 1) -> "Scalar":
        """z^k; z^4 = -1 so z^k depends on k mod 8."""
        k %= 8
        sign = 1
        if k >= 4:
            k -= 4
            sign = -1
        coords = [0, 0, 0, 0]
        coords[k] = sign
        return cls._raw({0: (coords[0], coords[1], coords[2], coords[3], 1)})

    @classmethod
    def pi(cls, k: int = 1) -> "Scalar":
        return cls._raw({k: _ONE})

    @classmethod
    def i(cls) -> "Scalar":
        return cls.zeta(2)

    def terms(self) -> dict:
        """Map pi-exponent -> Cyclotomic."""
        return {k: Cyclotomic._raw(t) for k, t in self._d.items()}

    def __bool__(self):
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    @staticmethod
    def _coerce(other):
        if isinstance(other, Scalar):
            return other._d
        if isinstance(other, int):
            return {0: (other, 0, 0, 0, 1)} if other else {}
        if isinstance(other, (Rational, Cyclotomic)):
            return Scalar(other)._d
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o:
            return self
        if not self._d:
            return Scalar._raw(o)
        return Scalar._raw(_laurent_add(self._d, o))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({k: _neg(t) for k, t in self._d.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + Scalar._raw({k: _neg(t) for k, t in o.items()})

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o or not self._d:
            return ZERO
        return Scalar._raw(_laurent_mul(self._d, o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.try_invert() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def try_invert(self) -> "Scalar":
        if len(self._d) != 1:
            raise NotAUnit(f"{self} is not a monomial c*pi^k")
        (k, t), = self._d.items()
        return Scalar._raw({-k: _cyc_inverse(t)})

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Scalar._raw(o).try_invert()

    def is_unit(self) -> bool:
        return len(self._d) == 1

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._d == o

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def eval_complex(self, pi_value: complex = cmath.pi) -> complex:
        total = 0j
        for k, t in self._d.items():
            total += Cyclotomic._raw(t).to_complex() * pi_value ** k
        return total

    __complex__ = eval_complex

    def to_text(self) -> str:
        """Terms "a+b*z+c*z^2+d*z^3 : pi^k" joined by " ; "."""
        if not self._d:
            return "0+0*z+0*z^2+0*z^3 : pi^0"
        return " ; ".join(f"{_fmt_cyc(self._d[k])} : pi^{k}" for k in sorted(self._d))

    @classmethod
    def from_text(cls, text: str) -> "Scalar":
        d = {}
        for part in text.split(";"):
            coeff, _, power = part.partition(":")
            k = int(power.strip().removeprefix("pi^"))
            coords = [Fraction(0)] * 4
            for term in coeff.strip().replace("+-", "+ -").split("+"):
                term = term.strip()
                if not term:
                    continue
                num, _, zp = term.partition("*z")
                j = 0 if not _ else (int(zp[1:]) if zp.startswith("^") else 1)
                coords[j] += Fraction(num)
            d[k] = tuple(coords)
        return cls(d)

    def to_json(self) -> list:
        out = []
        for k in sorted(self._d):
            t = self._d[k]
            out.append([k, [_fmt_q(Fraction(x, t[4])) for x in t[:4]]])
        return out

    @classmethod
    def from_json(cls, data) -> "Scalar":
        return cls({int(k): tuple(Fraction(c) for c in coords) for k, coords in data})

    def __repr__(self):
        return f"Scalar({self.to_text()})"


ZERO = Scalar._raw({})
ONE = Scalar._raw({0: _ONE})
I = Scalar.zeta(2)
PI = Scalar.pi(1)


def as_scalar(value):
    """Coerce plain numbers to Scalar; Scalar and LogPoly pass through."""
    if isinstance(value, (Scalar, LogPoly)):
        return value
    return Scalar(value)


def exp_i_pi(q) -> Scalar:
    """e^{i pi q} for q a multiple of 1/4."""
    q = Fraction(q)
    k = q * 4
    if k.denominator != 1:
        raise ValueError("exp_i_pi needs q in Z/4")
    return Scalar.zeta(int(k))


class LogPoly:
    """Laurent polynomial in named formal symbols with Scalar coefficients.

    Used for formal logarithms (``L`` = ln x, ``T`` = ln 2, ...) and for the
    variable t = 2 pi i tau.  Keys are sorted tuples of (symbol, power).
    """

    __slots__ = ("_d",)

    def __init__(self, terms=None):
        d = {}
        for key, c in (terms or {}).items():
            key = tuple(sorted((n, p) for n, p in key if p))
            c = as_scalar(c)
            if c:
                d[key] = d[key] + c if key in d else c
        self._d = {k: v for k, v in d.items() if v}

    @classmethod
    def symbol(cls, name: str, power: int = 1, coeff=ONE) -> "LogPoly":
        return cls({((name, power),): coeff})

    @classmethod
    def const(cls, c) -> "LogPoly":
        return cls({(): c})

    @classmethod
    def lift(cls, value) -> "LogPoly":
        """Any Scalar-like value or LogPoly as a LogPoly."""
        if isinstance(value, LogPoly):
            return value
        return cls.const(value)

    @staticmethod
    def _lift(other):
        if isinstance(other, LogPoly):
            return other._d
        if isinstance(other, (Scalar, int, Rational, Cyclotomic)):
            c = as_scalar(other)
            return {(): c} if c else {}
        return None

    def terms(self) -> dict:
        return dict(self._d)

    def coefficient(self, **powers) -> Scalar:
        key = tuple(sorted((n, p) for n, p in powers.items() if p))
        return self._d.get(key, ZERO)

    def symbols(self) -> set:
        return {n for key in self._d for n, _ in key}

    def degree(self, name: str) -> int:
        return max((dict(k).get(name, 0) for k in self._d), default=0)

    def __bool__(self):
        return bool(self._d)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = dict(self._d)
        for k, v in o.items():
            s = d.get(k)
            s = v if s is None else s + v
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        out = LogPoly.__new__(LogPoly)
        out._d = d
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LogPoly.__new__(LogPoly)
        out._d = {k: -v for k, v in self._d.items()}
        return out

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-LogPoly._from(o))

    def __rsub__(self, other):
        return (-self) + other

    @classmethod
    def _from(cls, d):
        out = cls.__new__(cls)
        out._d = dict(d)
        return out

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d: dict = {}
        for k1, v1 in self._d.items():
            for k2, v2 in o.items():
                if not k2:
                    key = k1
                elif not k1:
                    key = k2
                else:
                    m = dict(k1)
                    for n, p in k2:
                        m[n] = m.get(n, 0) + p
                    key = tuple(sorted((n, p) for n, p in m.items() if p))
                v = v1 * v2
                s = d.get(key)
                d[key] = v if s is None else s + v
        return LogPoly._from({k: v for k, v in d.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._d) != 1:
                raise NotAUnit("only monomials can be inverted")
            (k, v), = self._d.items()
            inv = LogPoly._from({tuple((s, -p) for s, p in k): v.try_invert()})
            return inv ** (-n)
        out = LogPoly.const(ONE)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * LogPoly._from(o) ** -1

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._d == o

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def substitute(self, name: str, value: "LogPoly") -> "LogPoly":
        """Replace a symbol (non-negative powers only) by a LogPoly."""
        out = LogPoly()
        for key, c in self._d.items():
            rest = tuple((n, p) for n, p in key if n != name)
            p = dict(key).get(name, 0)
            out = out + LogPoly._from({rest: c}) * value ** p
        return out

    def eval_complex(self, values: dict | None = None, pi_value: complex = cmath.pi) -> complex:
        values = values or {}
        total = 0j
        for key, c in self._d.items():
            t = c.eval_complex(pi_value)
            for n, p in key:
                t *= complex(values[n]) ** p
            total += t
        return total

    def to_text(self) -> str:
        if not self._d:
            return "0"
        parts = []
        for key in sorted(self._d):
            mono = "*".join(f"{n}^{p}" for n, p in key) or "1"
            parts.append(f"({self._d[key].to_text()}) {mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LogPoly({self.to_text()})"


def eval_entry(value, values: dict | None = None, pi_value: complex = cmath.pi) -> complex:
    """Complex value of a Scalar, LogPoly or plain number."""
    if isinstance(value, LogPoly):
        return value.eval_complex(values, pi_value)
    if isinstance(value, Scalar):
        return value.eval_complex(pi_value)
    return complex(value)
