"""Exact arithmetic in GF(p**s) with a canonical integer encoding of elements.

An element is a plain int in [0, q). Its base-p digits, least significant
first, are the coefficients of the element in the polynomial basis, so 0 and
1 always encode the additive and multiplicative identities. For s == 1 the
encoding is the ordinary residue mod p.

The reduction modulus for s > 1 is pinned to the lexicographically smallest
monic irreducible polynomial of degree s over GF(p), comparing coefficient
lists from the constant term upward, so every build agrees bit-exactly on
element encodings and on serialized matrices.
"""

from __future__ import annotations

import re

from .errors import BadExponent, DivisionByZero, NotPrime, NotPrimePower, ParseError

MAX_ORDER = 1 << 16

# Pascal triangle rows mod p, shared by all fields of the same characteristic.
_PASCAL_ROWS: dict[int, list[list[int]]] = {}

_FIELD_STRING_RE = re.compile(r"^q=(\d+)\^(\d+)(?:;mod=([0-9,]+))?$")


def is_prime(n: int) -> bool:
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


def factor_prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, s) with q = p**s and p prime."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = q
    for d in range(2, q + 1):
        if d * d > q:
            break
        if q % d == 0:
            p = d
            break
    s = 0
    rest = q
    while rest % p == 0:
        rest //= p
        s += 1
    if rest != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, s


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _digits(value: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        value, d = divmod(value, p)
        out.append(d)
    return out


def _undigits(digits: list[int], p: int) -> int:
    acc = 0
    for d in reversed(digits):
        acc = acc * p + d
    return acc


# Polynomials over GF(p) as little-endian coefficient lists, trailing zeros
# stripped ([] is the zero polynomial). Used for modulus selection and for
# bootstrapping extension-field multiplication before the log tables exist.


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    """Remainder of a modulo monic f."""
    a = [c % p for c in a]
    df = len(f) - 1
    while len(a) > df:
        c = a[-1]
        if c:
            k = len(a) - 1 - df
            for i in range(df):
                a[k + i] = (a[k + i] - c * f[i]) % p
        a.pop()
    return _ptrim(a)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    while b:
        inv_lc = pow(b[-1], p - 2, p)
        monic = [(c * inv_lc) % p for c in b]
        a, b = monic, _pmod(a, monic, p)
    return a


def _ppow_x(e: int, f: list[int], p: int) -> list[int]:
    """x**e modulo monic f."""
    result = [1]
    base = _pmod([0, 1], f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's criterion for a monic polynomial f over GF(p)."""
    s = len(f) - 1
    if s == 1:
        return True
    if f[0] == 0:
        return False
    if _ppow_x(p**s, f, p) != [0, 1]:
        return False
    for r in _prime_factors(s):
        g = list(_ppow_x(p ** (s // r), f, p))
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        g = _ptrim(g)
        if not g:
            return False
        if len(_pgcd(f, g, p)) > 1:
            return False
    return True


def _smallest_irreducible(p: int, s: int) -> list[int]:
    for code in range(p**s):
        f = _digits(code, p, s) + [1]
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


class Field:
    """The finite field GF(p**s), acting on canonically encoded int elements."""

    __slots__ = ("p", "s", "q", "modulus", "_alpha", "_exp", "_log", "_neg_table", "_add_table")

    def __init__(self, p: int, s: int = 1):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if s < 1:
            raise BadExponent(f"exponent must be positive, got {s}")
        q = p**s
        if q > MAX_ORDER:
            raise BadExponent(f"field order {q} exceeds the supported maximum 2**16")
        self.p = p
        self.s = s
        self.q = q
        self.modulus = None if s == 1 else _smallest_irreducible(p, s)
        self._exp = None
        self._log = None
        self._neg_table = None
        self._add_table = None
        self._alpha = self._find_primitive()
        if s > 1:
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        da = _digits(a, self.p, self.s)
        db = _digits(b, self.p, self.s)
        rem = _pmod(_pmul(da, db, self.p), self.modulus, self.p)
        return _undigits(rem, self.p)

    def _raw_pow(self, a: int, e: int) -> int:
        if self.s == 1:
            return pow(a, e, self.p)
        acc = 1
        base = a
        while e:
            if e & 1:
                acc = self._raw_mul(acc, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return acc

    def _find_primitive(self) -> int:
        cofactors = [(self.q - 1) // r for r in _prime_factors(self.q - 1)]
        for a in range(1, self.q):
            if all(self._raw_pow(a, m) != 1 for m in cofactors):
                return a
        raise AssertionError("no primitive element found")  # unreachable

    def _build_tables(self):
        q = self.q
        exp = [1] * (q - 1)
        cur = 1
        for k in range(1, q - 1):
            cur = self._raw_mul(cur, self._alpha)
            exp[k] = cur
        log = [0] * q
        for k, v in enumerate(exp):
            log[v] = k
        self._exp = exp
        self._log = log
        if self.p != 2:
            p, s = self.p, self.s
            self._neg_table = [
                _undigits([(p - d) % p for d in _digits(a, p, s)], p) for a in range(q)
            ]
            if q <= 256:
                self._add_table = [
                    [self._add_digitwise(a, b) for b in range(q)] for a in range(q)
                ]

    def _add_digitwise(self, a: int, b: int) -> int:
        p, s = self.p, self.s
        da = _digits(a, p, s)
        db = _digits(b, p, s)
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digitwise(a, b)

    def neg(self, a: int) -> int:
        if self.s == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        if self._neg_table is not None:
            return self._neg_table[a]
        p = self.p
        return _undigits([(p - d) % p for d in _digits(a, p, self.s)], p)

    def sub(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        """a**e with the convention a**0 == 1 for every a, including zero."""
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        e %= self.q - 1
        if self.s == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    # -- field-specific queries ----------------------------------------------

    def nat_map(self, z: int) -> int:
        """Image of an arbitrary integer in the prime subfield."""
        return z % self.p

    def primitive_element(self) -> int:
        """The smallest-encoded element of multiplicative order q - 1."""
        return self._alpha

    def binom(self, a: int, b: int) -> int:
        """Binomial coefficient of two arbitrary integers, reduced into GF(p).

        Computed with the Pascal recurrence carried out mod p; no big-integer
        values are ever formed. Negative upper index is folded to the
        non-negative case through C(a, b) = (-1)**b * C(b - a - 1, b).
        """
        if b < 0:
            return 0
        if b == 0:
            return 1
        if a < 0:
            v = self.binom(b - a - 1, b)
            return v if b % 2 == 0 else (self.p - v) % self.p
        if b > a:
            return 0
        rows = _PASCAL_ROWS.setdefault(self.p, [[1]])
        while len(rows) <= a:
            prev = rows[-1]
            row = [1]
            row.extend((prev[j - 1] + prev[j]) % self.p for j in range(1, len(prev)))
            row.append(1)
            rows.append(row)
        return rows[a][b]

    def elements(self) -> range:
        return range(self.q)

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.s == other.s
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.s))

    def __repr__(self) -> str:
        return f"GF({self.q})"


def field_string(field: Field) -> str:
    """Canonical header form, e.g. 'q=3^1' or 'q=2^2;mod=1,1,1'."""
    if field.s == 1:
        return f"q={field.p}^1"
    mod = ",".join(str(c) for c in field.modulus)
    return f"q={field.p}^{field.s};mod={mod}"


def parse_field_string(text: str) -> Field:
    m = _FIELD_STRING_RE.match(text)
    if not m:
        raise ParseError(f"bad field string: {text!r}")
    p, s = int(m.group(1)), int(m.group(2))
    try:
        field = Field(p, s)
    except (NotPrime, BadExponent) as exc:
        raise ParseError(str(exc)) from exc
    if m.group(3) is None:
        if s != 1:
            raise ParseError(f"field string {text!r} is missing the modulus")
    else:
        declared = [int(c) for c in m.group(3).split(",")]
        if s == 1 or declared != field.modulus:
            raise ParseError(
                f"field string {text!r} does not use the canonical modulus "
                f"for GF({p}^{s})"
            )
    return field
