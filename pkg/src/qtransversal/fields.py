"""Exact arithmetic in GF(p^e) with an explicit irreducible modulus.

Field elements are coefficient vectors over GF(p), lowest degree first,
reduced modulo a monic irreducible polynomial of degree e.  A vector
(c0, c1, ..., c_{e-1}) also travels in packed form as the integer code
c0 + c1*p + ... + c_{e-1}*p^(e-1); codes are what the linear-algebra
layers store and what FieldSpec's *_codes methods operate on, while
FieldElement is the public value type at the API edge.

Serialization is the little-endian digit string of the coefficient
vector, so alpha + 1 in GF(4) reads "11" and zero in GF(8) reads "000".

When no modulus is given, construction picks the least irreducible
monic polynomial of degree e in counting order of the coefficient
vector (constant term varies fastest), which is also the
lexicographically least polynomial written in descending-degree form.
This yields x^2+x+1 for GF(4), x^3+x+1 for GF(8), x^4+x+1 for GF(16).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import (
    DivisionByZero,
    NonPrimeCharacteristic,
    OutOfRange,
    ReducibleModulus,
    SpecMismatch,
)

_DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _trim(poly: tuple[int, ...]) -> tuple[int, ...]:
    i = len(poly)
    while i > 0 and poly[i - 1] == 0:
        i -= 1
    return poly[:i]


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of a modulo a monic polynomial m, coefficients mod p."""
    work = list(a)
    dm = len(m) - 1
    while len(work) > dm:
        lead = work[-1]
        if lead:
            shift = len(work) - 1 - dm
            for i in range(dm):
                work[shift + i] = (work[shift + i] - lead * m[i]) % p
        work.pop()
    return _trim(tuple(work))


def _monic_polys(p: int, degree: int):
    for lower in itertools.product(range(p), repeat=degree):
        yield tuple(lower) + (1,)


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for div in _monic_polys(p, d):
            if not _poly_mod(poly, div, p):
                return False
    return True


def _codes_to_digits(code: int, p: int, width: int) -> tuple[int, ...]:
    digits = []
    for _ in range(width):
        code, d = divmod(code, p)
        digits.append(d)
    return tuple(digits)


@dataclass(frozen=True)
class FieldSpec:
    """Arithmetic context for GF(p^e).

    modulus is the monic reduction polynomial, lowest degree first,
    length e+1.  For e = 1 it is fixed to x, i.e. (0, 1).
    """

    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise NonPrimeCharacteristic(f"characteristic {self.p!r} is not prime")
        if not isinstance(self.e, int) or self.e < 1:
            raise OutOfRange(f"extension degree must be a positive integer, got {self.e!r}")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise OutOfRange(f"modulus must be monic of degree {self.e}")
        if any(not 0 <= c < self.p for c in mod):
            raise OutOfRange("modulus coefficients must lie in [0, p)")
        if self.e == 1:
            if mod != (0, 1):
                raise OutOfRange("prime fields use the fixed modulus x")
        elif not _is_irreducible(mod, self.p):
            raise ReducibleModulus(
                f"modulus {mod} is reducible over GF({self.p})"
            )

    @cached_property
    def order(self) -> int:
        return self.p**self.e

    @cached_property
    def _mod_mask(self) -> int:
        # p == 2 only: modulus bits packed as an int, bit e set.
        return sum(c << i for i, c in enumerate(self.modulus))

    @cached_property
    def _xpow(self) -> tuple[tuple[int, ...], ...]:
        # x^e .. x^(2e-2) reduced mod modulus, as digit vectors of length e.
        p, e = self.p, self.e
        xe = tuple((-c) % p for c in self.modulus[:e])
        out = [xe]
        cur = xe
        for _ in range(e - 2):
            nxt = [0] + list(cur[:-1])
            top = cur[-1]
            if top:
                for i, xi in enumerate(xe):
                    nxt[i] = (nxt[i] + top * xi) % p
            cur = tuple(nxt)
            out.append(cur)
        return tuple(out)

    # -- code-level arithmetic -------------------------------------------

    def decode(self, code: int) -> tuple[int, ...]:
        """Coefficient vector (length e) of an element code."""
        return _codes_to_digits(code, self.p, self.e)

    def encode(self, digits) -> int:
        code = 0
        for d in reversed(tuple(digits)):
            code = code * self.p + d
        return code

    def add_codes(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self.decode(a), self.decode(b)
        return self.encode((x + y) % self.p for x, y in zip(da, db))

    def sub_codes(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self.decode(a), self.decode(b)
        return self.encode((x - y) % self.p for x, y in zip(da, db))

    def neg_code(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.encode((-x) % self.p for x in self.decode(a))

    def mul_codes(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        if p == 2:
            mask = self._mod_mask
            top = 1 << e
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= mask
            return r
        da, db = self.decode(a), self.decode(b)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        acc = list(prod[:e])
        for t in range(e, 2 * e - 1):
            ct = prod[t]
            if ct:
                for i, xi in enumerate(self._xpow[t - e]):
                    acc[i] = (acc[i] + ct * xi) % p
        return self.encode(acc)

    def pow_code(self, a: int, m: int) -> int:
        """a**m by square and multiply; 0**0 is defined as 1."""
        if m < 0:
            raise OutOfRange("exponent must be non-negative")
        result = 1
        base = a
        while m:
            if m & 1:
                result = self.mul_codes(result, base)
            base = self.mul_codes(base, base)
            m >>= 1
        return result

    def inv_code(self, a: int) -> int:
        # Lagrange: a^(q-2) inverts every nonzero a.
        if a == 0:
            raise DivisionByZero(f"division by zero in GF({self.order})")
        return self.pow_code(a, self.order - 2)

    def div_codes(self, a: int, b: int) -> int:
        return self.mul_codes(a, self.inv_code(b))

    # -- elements and serialization --------------------------------------

    def element(self, coeffs) -> "FieldElement":
        return FieldElement(self, tuple(coeffs))

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise OutOfRange(f"element code {code} outside [0, {self.order})")
        return FieldElement(self, self.decode(code))

    def zero(self) -> "FieldElement":
        return self.from_code(0)

    def one(self) -> "FieldElement":
        return self.from_code(1)

    def gen(self) -> "FieldElement":
        """The class of x; only defined for proper extensions (e >= 2)."""
        if self.e < 2:
            raise OutOfRange("prime fields have no polynomial generator x")
        return self.from_code(self.p)

    def format_code(self, code: int) -> str:
        if self.p > len(_DIGIT_CHARS):
            raise OutOfRange(f"digit serialization supports p <= {len(_DIGIT_CHARS)}")
        return "".join(_DIGIT_CHARS[d] for d in self.decode(code))

    def parse_code(self, text: str) -> int:
        if len(text) != self.e:
            raise OutOfRange(
                f"element string {text!r} must have exactly {self.e} digits"
            )
        digits = []
        for ch in text:
            d = _DIGIT_CHARS.find(ch.lower())
            if d < 0 or d >= self.p:
                raise OutOfRange(f"bad digit {ch!r} for characteristic {self.p}")
            digits.append(d)
        return self.encode(digits)

    def to_jsonable(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": "".join(_DIGIT_CHARS[c] for c in self.modulus)}

    def __repr__(self):
        return f"FieldSpec(GF({self.p}^{self.e}))" if self.e > 1 else f"FieldSpec(GF({self.p}))"


@dataclass(frozen=True)
class FieldElement:
    """A field element: its FieldSpec and coefficient vector over GF(p)."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.spec.e:
            raise OutOfRange(
                f"coefficient vector must have length {self.spec.e}, got {len(coeffs)}"
            )
        if any(not 0 <= c < self.spec.p for c in coeffs):
            raise OutOfRange("coefficients must lie in [0, p)")

    @property
    def code(self) -> int:
        return self.spec.encode(self.coeffs)

    def _peer(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise SpecMismatch(f"expected FieldElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatch("operands live in different fields")

    def __add__(self, other):
        self._peer(other)
        return self.spec.from_code(self.spec.add_codes(self.code, other.code))

    def __sub__(self, other):
        self._peer(other)
        return self.spec.from_code(self.spec.sub_codes(self.code, other.code))

    def __neg__(self):
        return self.spec.from_code(self.spec.neg_code(self.code))

    def __mul__(self, other):
        self._peer(other)
        return self.spec.from_code(self.spec.mul_codes(self.code, other.code))

    def __truediv__(self, other):
        self._peer(other)
        return self.spec.from_code(self.spec.div_codes(self.code, other.code))

    def __pow__(self, m: int):
        return self.spec.from_code(self.spec.pow_code(self.code, m))

    def __bool__(self):
        return any(self.coeffs)

    def __str__(self):
        return self.spec.format_code(self.code)


def _canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return (0, 1)
    for code in range(p**e):
        cand = _codes_to_digits(code, p, e) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible monic polynomial of degree {e} over GF({p})")


@lru_cache(maxsize=None)
def _field_make_cached(p: int, e: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    if modulus is None:
        if not _is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p!r} is not prime")
        if not isinstance(e, int) or e < 1:
            raise OutOfRange(f"extension degree must be a positive integer, got {e!r}")
        modulus = _canonical_modulus(p, e)
    return FieldSpec(p, e, modulus)


def field_make(p: int, e: int, modulus=None) -> FieldSpec:
    """Build a validated GF(p^e).

    If modulus is omitted the canonical (least, see module docstring)
    irreducible monic polynomial is selected, so the construction is
    deterministic given (p, e).
    """
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _field_make_cached(p, e, modulus)


def field_arith(op: str, a: FieldElement, b: FieldElement) -> FieldElement:
    """Apply one of add/sub/mul/div to two elements of one field."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise OutOfRange(f"unknown field operation {op!r}")


def field_pow(a: FieldElement, m: int) -> FieldElement:
    return a**m


def modulus_from_string(text: str) -> tuple[int, ...]:
    """Parse a little-endian modulus digit string back to coefficients."""
    out = []
    for ch in text:
        d = _DIGIT_CHARS.find(ch.lower())
        if d < 0:
            raise OutOfRange(f"bad modulus digit {ch!r}")
        out.append(d)
    return tuple(out)


def prime_power(q: int) -> tuple[int, int]:
    """Split a prime power q into (p, e); rejects everything else."""
    if not isinstance(q, int) or q < 2:
        raise OutOfRange(f"field order must be an integer >= 2, got {q!r}")
    p = q
    for f in range(2, q + 1):
        if f * f > q:
            break
        if q % f == 0:
            p = f
            break
    e = 0
    rem = q
    while rem % p == 0:
        rem //= p
        e += 1
    if rem != 1 or not _is_prime(p):
        raise OutOfRange(f"{q} is not a prime power")
    return p, e
