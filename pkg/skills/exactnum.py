"""
精確數值層：

- AlgebraicNumber：ℚ 或虛二次域 ℚ(√d) (d < 0, squarefree) 的元素
- RealDR：帶捨入方向 (down / up / nearest) 的高精度實數
- ComplexInterval：mpmath iv 區間組成的複數，用來做 outward rounding
- Weil height、complex embedding、D = [ℚ(α,β):ℚ] / [ℝ(α,β):ℝ]

所有跟證書有關的比較都走 mpmath.iv 的區間運算：
lower bound 取區間下端、upper bound 取區間上端。
"""

from __future__ import annotations

import math
import re
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator, Literal, Tuple, Union

import mpmath
from mpmath import iv, mp

from .errors import ParseError, UnsupportedFieldError

Rounding = Literal["down", "up", "nearest"]
RationalLike = Union[int, Fraction]

DEFAULT_PRECISION = 256
DECIMAL_DIGITS = 40

_IV_TYPE = type(iv.mpf(1))


# ========= precision / interval helpers ========= #

# mp / iv 的精度是 process 全域狀態；所有改動都在這把 lock 之內，同一 thread 可巢狀進入。
_PRECISION_LOCK = threading.RLock()


@contextmanager
def engine_section() -> Iterator[None]:
    """整段計算獨佔 mpmath 精度（給 orchestrator 之類的入口用）。"""
    with _PRECISION_LOCK:
        yield


@contextmanager
def precision_context(bits: int) -> Iterator[None]:
    """同時設定 mp 與 iv 的工作精度（bits），離開時還原。"""
    with _PRECISION_LOCK:
        saved_mp, saved_iv = mp.prec, iv.prec
        mp.prec = bits
        iv.prec = bits
        try:
            yield
        finally:
            mp.prec = saved_mp
            iv.prec = saved_iv


@contextmanager
def workprec(bits: int) -> Iterator[None]:
    """只動 mp.prec 的版本，跟 mp.workprec 一樣但持有精度 lock。"""
    with _PRECISION_LOCK, mp.workprec(bits):
        yield


def to_interval(x: Any) -> Any:
    """int / Fraction / mpf / iv → iv 區間（在目前 iv.prec 下 outward rounding）。"""
    if isinstance(x, _IV_TYPE):
        return x
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    if isinstance(x, RealDR):
        return iv.mpf(x.value)
    return iv.mpf(x)


def lower(x: Any) -> mpmath.mpf:
    # endpoint 直接包裝，不再經過一次 rounding
    return mp.make_mpf(to_interval(x)._mpi_[0])


def upper(x: Any) -> mpmath.mpf:
    return mp.make_mpf(to_interval(x)._mpi_[1])


def interval_from_bounds(lo: Any, hi: Any) -> Any:
    return iv.mpf([lower(lo), upper(hi)])


def iv_max(x: Any, y: Any) -> Any:
    x, y = to_interval(x), to_interval(y)
    return iv.mpf([max(lower(x), lower(y)), max(upper(x), upper(y))])


def iv_min(x: Any, y: Any) -> Any:
    x, y = to_interval(x), to_interval(y)
    return iv.mpf([min(lower(x), lower(y)), min(upper(x), upper(y))])


def iv_log_rational(q: RationalLike) -> Any:
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"log of non-positive rational {q}")
    return iv.log(to_interval(q))


def interval_contains(x: Any, value: Any) -> bool:
    with workprec(max(mp.prec, iv.prec)):
        return lower(x) <= mpmath.mpf(value) <= upper(x)


def mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    if not mpmath.isfinite(x):
        raise ValueError(f"non-finite value {x}")
    # man_exp 的 mantissa 不帶正負號，符號在 _mpf_[0]
    sign, man, exp, _ = x._mpf_
    if sign:
        man = -man
    if exp >= 0:
        return Fraction(man * (1 << exp))
    return Fraction(man, 1 << (-exp))


def format_decimal(value: Fraction, rounding: Rounding, digits: int = DECIMAL_DIGITS) -> str:
    """把精確有理數轉成固定小數位數的十進位字串，依 rounding 方向捨入。"""
    scaled = Fraction(value) * 10**digits
    if rounding == "down":
        n = math.floor(scaled)
    elif rounding == "up":
        n = math.ceil(scaled)
    else:
        n = round(scaled)
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def interval_decimal(x: Any, rounding: Rounding) -> str:
    """區間 → 十進位字串；down 取下端往下、up 取上端往上。"""
    end = lower(x) if rounding == "down" else upper(x)
    return format_decimal(mpf_to_fraction(end), rounding)


def parse_decimal(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError, AttributeError) as e:
        raise ParseError(f"not a decimal number: {text!r}") from e


def parse_rational(text: str) -> Fraction:
    s = re.sub(r"\s+", "", str(text))
    if not re.fullmatch(r"[+-]?\d+(?:/\d+)?|[+-]?\d+\.\d+", s):
        raise ParseError(f"not a rational literal: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as e:
        raise ParseError(f"zero denominator in {text!r}") from e


# ========= RealDR / ComplexInterval ========= #

@dataclass(frozen=True)
class RealDR:
    """高精度實數 + 捨入方向 + 精度（bits）。"""

    value: mpmath.mpf
    rounding: Rounding
    precision: int

    @classmethod
    def from_interval(cls, x: Any, rounding: Rounding, precision: int) -> "RealDR":
        if rounding == "down":
            v = lower(x)
        elif rounding == "up":
            v = upper(x)
        else:
            with workprec(precision + 2):
                v = (lower(x) + upper(x)) / 2
        return cls(value=v, rounding=rounding, precision=precision)

    def to_fraction(self) -> Fraction:
        return mpf_to_fraction(self.value)

    def to_decimal(self, digits: int = DECIMAL_DIGITS) -> str:
        return format_decimal(self.to_fraction(), self.rounding, digits)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return f"{self.to_decimal(20)} (rounded {self.rounding})"


@dataclass(frozen=True)
class ComplexInterval:
    """實部、虛部都是 iv 區間；運算在呼叫端的 precision_context 內進行。"""

    re: Any
    im: Any

    @classmethod
    def from_real(cls, x: Any) -> "ComplexInterval":
        return cls(to_interval(x), iv.mpf(0))

    def __add__(self, other: "ComplexInterval") -> "ComplexInterval":
        return ComplexInterval(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexInterval") -> "ComplexInterval":
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexInterval":
        return ComplexInterval(-self.re, -self.im)

    def __mul__(self, other: Union["ComplexInterval", Any]) -> "ComplexInterval":
        if not isinstance(other, ComplexInterval):
            other = ComplexInterval.from_real(other)
        return ComplexInterval(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ComplexInterval":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = ComplexInterval(iv.mpf(1), iv.mpf(0))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def abs(self) -> Any:
        return iv.sqrt(self.re**2 + self.im**2)

    def exp(self) -> "ComplexInterval":
        r = iv.exp(self.re)
        return ComplexInterval(r * iv.cos(self.im), r * iv.sin(self.im))

    def contains(self, z: Any) -> bool:
        z = mpmath.mpc(z)
        return interval_contains(self.re, z.real) and interval_contains(self.im, z.imag)

    def width(self) -> mpmath.mpf:
        return max(upper(self.re) - lower(self.re), upper(self.im) - lower(self.im))


# ========= AlgebraicNumber ========= #

def _squarefree_part(n: int) -> Tuple[int, int]:
    """n > 0 → (s, f) 使得 n = s·f² 且 s squarefree。"""
    s, f = n, 1
    p = 2
    while p * p <= s:
        while s % (p * p) == 0:
            s //= p * p
            f *= p
        p += 1
    return s, f


def _coerce(x: Any) -> "AlgebraicNumber":
    if isinstance(x, AlgebraicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return AlgebraicNumber(Fraction(x))
    return NotImplemented


def _common_d(x: "AlgebraicNumber", y: "AlgebraicNumber") -> int:
    if x.d and y.d and x.d != y.d:
        raise UnsupportedFieldError(
            f"{x} and {y} lie in different quadratic fields Q(sqrt({x.d})), Q(sqrt({y.d}))"
        )
    return x.d or y.d


@dataclass(frozen=True)
class AlgebraicNumber:
    """
    a + b·√d，a, b ∈ ℚ，d < 0 squarefree（b = 0 時 d 一律為 0，代表有理數）。

    non-squarefree 的 d 會在建構時正規化（例如 √-12 → 2·√-3）。
    """

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self) -> None:
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if b == 0:
            d = 0
        else:
            if d >= 0:
                raise UnsupportedFieldError(
                    f"only imaginary quadratic fields are supported, got d = {d}"
                )
            s, f = _squarefree_part(-d)
            d, b = -s, b * f
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    # ---- constructors ---- #

    @classmethod
    def rational(cls, value: RationalLike) -> "AlgebraicNumber":
        return cls(Fraction(value))

    @classmethod
    def parse(cls, text: str) -> "AlgebraicNumber":
        return parse_algebraic(text)

    # ---- structure ---- #

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_quadratic(self) -> bool:
        return self.b != 0

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    @property
    def degree(self) -> int:
        return 1 if self.is_rational else 2

    def conjugate(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self.a, -self.b, self.d)

    @property
    def abs_squared(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    @cached_property
    def minimal_polynomial(self) -> Tuple[int, ...]:
        """
        ℤ 上 primitive、首項為正的最小多項式係數（由高次到低次）。

        二次情形直接用 c²X² − 2ac²X + c²(a² − b²d)，不做一般的因式分解。
        """
        if self.is_rational:
            return (self.a.denominator, -self.a.numerator)
        c = math.lcm(self.a.denominator, self.b.denominator)
        raw = (
            Fraction(c * c),
            -2 * self.a * c * c,
            c * c * self.abs_squared,
        )
        ints = [int(v) for v in raw if v.denominator == 1]
        if len(ints) != 3:
            raise ArithmeticError(f"minimal polynomial of {self} is not integral: {raw}")
        g = math.gcd(*ints)
        return tuple(v // g for v in ints)

    # ---- arithmetic (same field only) ---- #

    def __add__(self, other: Any) -> "AlgebraicNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = _common_d(self, other)
        return AlgebraicNumber(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraicNumber":
        return AlgebraicNumber(-self.a, -self.b, self.d)

    def __sub__(self, other: Any) -> "AlgebraicNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "AlgebraicNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Any) -> "AlgebraicNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = _common_d(self, other)
        return AlgebraicNumber(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "AlgebraicNumber":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = AlgebraicNumber(Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ---- numerics ---- #

    def abs_interval(self) -> Any:
        """|x| 的 iv 區間（目前精度）。"""
        return iv.sqrt(to_interval(self.abs_squared))

    def to_mpc(self, precision: int = DEFAULT_PRECISION) -> mpmath.mpc:
        with workprec(precision):
            im = mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(-self.d) if self.d else 0
            return mpmath.mpc(mpmath.mpf(self.a.numerator) / self.a.denominator, im)

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.a)
        root = f"sqrt({self.d})"
        if abs(self.b) == 1:
            tail = root
        else:
            tail = f"{abs(self.b)}*{root}"
        if self.a == 0:
            return tail if self.b > 0 else f"-{tail}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{tail}"


_QUADRATIC_RE = re.compile(
    r"^(?:(?P<a>[+-]?\d+(?:/\d+)?)(?=[+-]))?"
    r"(?P<sign>[+-]?)(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<d>[+-]?\d+)\)$"
)


def parse_algebraic(text: str) -> AlgebraicNumber:
    """
    解析 `p/q`、`a/c+b/c*sqrt(-d)` 形式（忽略空白），`i` 視為 sqrt(-1)。
    """
    s = re.sub(r"\s+", "", str(text))
    if not s:
        raise ParseError("empty algebraic expression")
    if s in ("i", "+i"):
        return AlgebraicNumber(Fraction(0), Fraction(1), -1)
    if s == "-i":
        return AlgebraicNumber(Fraction(0), Fraction(-1), -1)
    if "sqrt" not in s:
        return AlgebraicNumber(parse_rational(s))
    m = _QUADRATIC_RE.match(s)
    if m is None:
        raise ParseError(f"cannot parse algebraic number {text!r}; expected p/q or a+b*sqrt(-d)")
    try:
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    except ZeroDivisionError as e:
        raise ParseError(f"zero denominator in {text!r}") from e
    if m.group("sign") == "-":
        b = -b
    d = int(m.group("d"))
    if d >= 0:
        raise UnsupportedFieldError(f"sqrt({d}) is not imaginary quadratic")
    return AlgebraicNumber(a, b, d)


def as_algebraic(x: Union[AlgebraicNumber, str]) -> AlgebraicNumber:
    return x if isinstance(x, AlgebraicNumber) else parse_algebraic(str(x))


# ========= heights / embedding / D ========= #

def embed(x: AlgebraicNumber, precision: int = DEFAULT_PRECISION) -> ComplexInterval:
    """a + b√d 的複數區間，√d 取正虛軸上的 principal root。"""
    if precision < 32:
        raise ValueError("precision must be at least 32 bits")
    with precision_context(precision):
        re_part = to_interval(x.a)
        if x.is_rational:
            return ComplexInterval(re_part, iv.mpf(0))
        im_part = to_interval(x.b) * iv.sqrt(iv.mpf(-x.d))
        return ComplexInterval(re_part, im_part)


def height_interval(x: AlgebraicNumber) -> Any:
    """
    h(x) = (1/deg)(log|a_lead| + Σ log max(1, |x^{(i)}|))，在目前精度下的 iv 區間。
    """
    coeffs = x.minimal_polynomial
    lead = coeffs[0]
    total = iv.log(iv.mpf(lead))
    if x.is_rational:
        if coeffs[1] != 0:
            total += iv_max(0, iv_log_rational(abs(Fraction(-coeffs[1], lead))))
    else:
        # 兩個共軛根模長相同：|x|² = C/A
        log_abs = iv.log(to_interval(Fraction(coeffs[2], lead))) / 2
        total += 2 * iv_max(0, log_abs)
    return total / x.degree


def weil_height(
    x: AlgebraicNumber,
    rounding: Rounding = "nearest",
    precision: int = DEFAULT_PRECISION,
) -> RealDR:
    with precision_context(precision):
        if x.is_zero:
            return RealDR(mpmath.mpf(0), rounding, precision)
        return RealDR.from_interval(height_interval(x), rounding, precision)


def log_max1_abs_interval(x: AlgebraicNumber) -> Any:
    """log max(1, |x|)（目前精度）。"""
    if x.is_zero:
        return iv.mpf(0)
    return iv_max(0, iv.log(to_interval(x.abs_squared)) / 2)


def field_degree_ratio(*numbers: AlgebraicNumber) -> int:
    """
    D = [ℚ(α,β,…):ℚ] / [ℝ(α,β,…):ℝ]。

    支援的表示下：
    - 全部有理數 → 1/1
    - 至少一個在 ℚ(√d)（d < 0）、其他都有理或在同一個域 → 2/2
    - 兩個不同的虛二次域 → 拒絕（合成域次數 4）
    """
    fields = {x.d for x in numbers if x.is_quadratic}
    if len(fields) > 1:
        raise UnsupportedFieldError(
            "numbers lie in different quadratic fields: "
            + ", ".join(f"Q(sqrt({d}))" for d in sorted(fields))
        )
    return 1


__all__ = [
    "Rounding",
    "DEFAULT_PRECISION",
    "DECIMAL_DIGITS",
    "engine_section",
    "precision_context",
    "workprec",
    "to_interval",
    "lower",
    "upper",
    "interval_from_bounds",
    "iv_max",
    "iv_min",
    "iv_log_rational",
    "interval_contains",
    "mpf_to_fraction",
    "format_decimal",
    "interval_decimal",
    "parse_decimal",
    "parse_rational",
    "RealDR",
    "ComplexInterval",
    "AlgebraicNumber",
    "parse_algebraic",
    "as_algebraic",
    "embed",
    "height_interval",
    "weil_height",
    "log_max1_abs_interval",
    "field_degree_ratio",
]
