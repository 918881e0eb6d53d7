"""Finite fields GF(p^m) as exp/log/Zech tables.

Elements are integer codes: the residue polynomial a_0 + a_1*x + ... of
degree < m is coded as the base-p integer a_0 + a_1*p + ....  Code 0 is the
zero element.  Nonzero elements also carry a discrete log with respect to
the canonical generator exp_table[1], and addition in log form goes through
the Zech table, so multiplication, inversion and powering are pure index
arithmetic.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import (
    FieldMismatch,
    NonPrime,
    NotASubfield,
    SizeCapExceeded,
    ZeroElement,
)

DEFAULT_SIZE_CAP = 1 << 20

# Zech sentinel: 1 + g^i = 0 has no log.
ZECH_NONE = -1


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


def factor_prime_power(size: int) -> tuple[int, int]:
    """Split size = p^s with p prime; raises NonPrime otherwise."""
    if size < 2:
        raise NonPrime(f"{size} is not a prime power")
    p = 2
    while p * p <= size:
        if size % p == 0:
            break
        p += 1
    else:
        p = size
    s = 0
    rest = size
    while rest % p == 0:
        rest //= p
        s += 1
    if rest != 1:
        raise NonPrime(f"{size} is not a prime power")
    return p, s


class FieldTable:
    """GF(p^m) with precomputed exp, log and Zech tables.

    Immutable after construction; safe to share between workers.  All
    element-level methods take and return integer codes.
    """

    __slots__ = (
        "p",
        "m",
        "size",
        "order",
        "primitive_polynomial",
        "exp_table",
        "log_table",
        "zech_table",
    )

    def __init__(self, p: int, m: int, coeffs: tuple[int, ...],
                 exp_table: list[int], log_table: list[int]):
        self.p = p
        self.m = m
        self.size = p ** m
        self.order = self.size - 1
        # Monic: coefficient vector (c_0, ..., c_{m-1}, 1), low to high degree.
        self.primitive_polynomial = coeffs + (1,)
        self.exp_table = exp_table
        self.log_table = log_table
        self.zech_table = self._build_zech()

    def _build_zech(self) -> list[int]:
        # adding one only touches the constant digit, carry-free
        zech = [ZECH_NONE] * self.order
        p = self.p
        for i, code in enumerate(self.exp_table):
            d0 = code % p
            s = code - d0 + (d0 + 1) % p
            zech[i] = ZECH_NONE if s == 0 else self.log_table[s]
        return zech

    # -- code-level arithmetic ------------------------------------------

    def add_codes_digitwise(self, a: int, b: int) -> int:
        """Base-p digitwise addition; used to bootstrap the Zech table."""
        if self.p == 2:
            return a ^ b
        out = 0
        mult = 1
        for _ in range(self.m):
            out += ((a + b) % self.p) * mult
            a //= self.p
            b //= self.p
            mult *= self.p
        return out

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        i, j = self.log_table[a], self.log_table[b]
        if i > j:
            i, j = j, i
        z = self.zech_table[j - i]
        if z == ZECH_NONE:
            return 0
        return self.exp_table[(i + z) % self.order]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        half = self.order // 2  # log of -1 in odd characteristic
        return self.exp_table[(self.log_table[a] + half) % self.order]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("zero has no inverse")
        return self.exp_table[(-self.log_table[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroElement("zero has no inverse")
            return 0 if k else 1
        return self.exp_table[(self.log_table[a] * k) % self.order]

    # -- element handles ------------------------------------------------

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.size:
            raise FieldMismatch(f"code {code} outside GF({self.size})")
        return FieldElement(self, None if code == 0 else self.log_table[code])

    def from_log(self, log: int) -> "FieldElement":
        return FieldElement(self, log % self.order)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, None)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def generator(self) -> "FieldElement":
        return FieldElement(self, 1 % max(self.order, 1))

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.size):
            yield self.element(code)

    def __repr__(self) -> str:
        return f"FieldTable(GF({self.p}^{self.m}))"

    def to_json(self) -> str:
        """Debug dump: one JSON object holding the defining tables."""
        return json.dumps(
            {
                "p": self.p,
                "m": self.m,
                "size": self.size,
                "primitive_polynomial": list(self.primitive_polynomial),
                "exp_table": list(self.exp_table),
                "log_table": list(self.log_table),
                "zech_table": list(self.zech_table),
            }
        )


@dataclass(frozen=True)
class FieldElement:
    """A field element held as a discrete log; log None encodes zero."""

    field: FieldTable
    log: Optional[int]

    @property
    def code(self) -> int:
        return 0 if self.log is None else self.field.exp_table[self.log]

    @property
    def is_zero(self) -> bool:
        return self.log is None

    def _coerce(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            raise FieldMismatch(f"cannot combine a field element with {type(other)}")
        if other.field is not self.field:
            raise FieldMismatch("elements of different fields")
        return other

    def __add__(self, other) -> "FieldElement":
        other = self._coerce(other)
        return self.field.element(self.field.add(self.code, other.code))

    def __sub__(self, other) -> "FieldElement":
        other = self._coerce(other)
        return self.field.element(self.field.sub(self.code, other.code))

    def __neg__(self) -> "FieldElement":
        return self.field.element(self.field.neg(self.code))

    def __mul__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return self.field.zero
        return self.field.from_log(self.log + other.log)

    def __truediv__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroElement("division by zero")
        if self.is_zero:
            return self
        return self.field.from_log(self.log - other.log)

    def __pow__(self, k: int) -> "FieldElement":
        if self.is_zero:
            if k < 0:
                raise ZeroElement("zero has no inverse")
            return self if k else self.field.one
        return self.field.from_log(self.log * k)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.field is self.field
            and other.log == self.log
        )

    def __hash__(self) -> int:
        return hash((id(self.field), self.log))

    def __repr__(self) -> str:
        if self.is_zero:
            return f"0@GF({self.field.size})"
        return f"g^{self.log}@GF({self.field.size})"


# -- construction ---------------------------------------------------------

_FIELD_CACHE: dict[tuple[int, int], FieldTable] = {}


def build_field(p: int, m: int, size_cap: int = DEFAULT_SIZE_CAP) -> FieldTable:
    """Construct GF(p^m), reusing a cached table when available.

    The defining polynomial is the first primitive one in lexicographic
    order of the coefficient vector (c_0, ..., c_{m-1}), so repeated builds
    agree across runs.
    """
    if not is_prime(p):
        raise NonPrime(f"p={p} is not prime")
    if m < 1:
        raise SizeCapExceeded(f"extension degree m={m} must be >= 1")
    if p ** m > size_cap:
        raise SizeCapExceeded(f"{p}^{m} exceeds the size cap {size_cap}")
    key = (p, m)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = _construct(p, m)
    return _FIELD_CACHE[key]


def field_for_size(size: int, size_cap: int = DEFAULT_SIZE_CAP) -> FieldTable:
    p, s = factor_prime_power(size)
    return build_field(p, s, size_cap)


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mul_mod(a, b, coeffs, p):
    """Product of residue polynomials modulo x^m + coeffs, coefficients mod p."""
    m = len(coeffs)
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for k, bk in enumerate(b):
            prod[i + k] = (prod[i + k] + ai * bk) % p
    for k in range(2 * m - 2, m - 1, -1):
        d = prod[k]
        if d:
            for i in range(m):
                prod[k - m + i] = (prod[k - m + i] - d * coeffs[i]) % p
    return prod[:m]


def _x_pow_mod(e: int, coeffs, p):
    """x^e in the candidate quotient ring, by square and multiply."""
    m = len(coeffs)
    x = [0] * m
    if m == 1:
        x[0] = (-coeffs[0]) % p
    else:
        x[1] = 1
    result = [0] * m
    result[0] = 1
    base = x
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, coeffs, p)
        base = _poly_mul_mod(base, base, coeffs, p)
        e >>= 1
    return result


def _quick_primitivity_filter(p, m, coeffs, order, factors) -> bool:
    """Cheap modexp screen: x must have multiplicative order exactly p^m-1.

    Any candidate passing here is primitive (a reducible modulus caps the
    order strictly below p^m - 1), but the table sweep re-certifies anyway.
    """
    one = [0] * m
    one[0] = 1
    if _x_pow_mod(order, coeffs, p) != one:
        return False
    for r in factors:
        if _x_pow_mod(order // r, coeffs, p) == one:
            return False
    return True


def _valid_constant_terms(p: int, m: int) -> set[int]:
    """Constant terms a primitive polynomial can have.

    The constant term is (-1)^m times the norm of a root, and the norm of
    a generator must generate GF(p)*; anything else cannot be primitive.
    """
    sign = 1 if m % 2 == 0 else p - 1
    factors = _prime_factors(p - 1) if p > 2 else []
    out = set()
    for c in range(1, p):
        root = (sign * c) % p
        if all(pow(root, (p - 1) // r, p) != 1 for r in factors):
            out.add(c)
    return out


def _construct(p: int, m: int) -> FieldTable:
    order = p**m - 1
    factors = _prime_factors(order) if order > 1 else []
    constant_terms = _valid_constant_terms(p, m)
    for coeffs in itertools.product(range(p), repeat=m):
        if coeffs[0] not in constant_terms:
            continue
        if not _quick_primitivity_filter(p, m, coeffs, order, factors):
            continue
        tables = _try_primitive(p, m, coeffs)
        if tables is not None:
            return FieldTable(p, m, coeffs, *tables)
    raise RuntimeError(f"no primitive polynomial found for GF({p}^{m})")


def _try_primitive(p: int, m: int, coeffs: tuple[int, ...]):
    """Accept the candidate iff powers of x enumerate the whole group.

    This sweep certifies irreducibility and primitivity at once (if the
    quotient ring had zero divisors or x had smaller order, the powers
    would collide before covering all p^m - 1 nonzero codes) and doubles
    as the exp/log table fill.
    """
    size = p ** m
    order = size - 1
    log = [-1] * size
    exp = [0] * order
    if p == 2:
        # bit path: codes are bit vectors, reduction is one xor
        red = (1 << m) | sum(c << i for i, c in enumerate(coeffs))
        code = 1
        for i in range(order):
            if log[code] != -1:
                return None
            exp[i] = code
            log[code] = i
            code <<= 1
            if code >> m:
                code ^= red
        return (exp, log) if code == 1 else None
    digits = [0] * m
    digits[0] = 1
    top = m - 1
    for i in range(order):
        code = 0
        for d in reversed(digits):
            code = code * p + d
        if log[code] != -1:
            return None
        exp[i] = code
        log[code] = i
        # multiply by x modulo the candidate polynomial
        carry = digits[top]
        for k in range(top, 0, -1):
            digits[k] = (digits[k - 1] - carry * coeffs[k]) % p
        digits[0] = (-carry * coeffs[0]) % p
    back_to_one = digits[0] == 1 and not any(digits[1:])
    return (exp, log) if back_to_one else None


# -- subfield embeddings --------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """The field homomorphism GF(q) -> GF(q^t) in discrete-log form.

    The generator of the subfield maps to sup_generator^(ratio * twist),
    with the smallest twist that makes the map additive (checked by
    transporting every Zech relation).  Multiplicative-only powers of the
    ratio are not ring maps in general, so the twist is essential.
    """

    sub: FieldTable
    sup: FieldTable
    ratio: int
    twist: int

    @property
    def generator_log(self) -> int:
        return (self.ratio * self.twist) % self.sup.order

    def apply(self, a: FieldElement) -> FieldElement:
        if a.field is not self.sub:
            raise FieldMismatch("element not in the subfield")
        if a.is_zero:
            return self.sup.zero
        return self.sup.from_log(a.log * self.generator_log)

    def apply_code(self, code: int) -> int:
        if code == 0:
            return 0
        log = self.sub.log_table[code]
        return self.sup.exp_table[(log * self.generator_log) % self.sup.order]

    def preimage(self, b: FieldElement) -> FieldElement:
        if b.field is not self.sup:
            raise FieldMismatch("element not in the extension")
        if b.is_zero:
            return self.sub.zero
        log = b.log % self.sup.order
        if log % self.ratio:
            raise FieldMismatch("element lies outside the embedded subfield")
        t = (log // self.ratio) * self._twist_inv % max(self.sub.order, 1)
        return self.sub.from_log(t)

    def preimage_code(self, code: int) -> int:
        if code == 0:
            return 0
        return self.sub.exp_table[self.preimage(self.sup.element(code)).log]

    @property
    def _twist_inv(self) -> int:
        return pow(self.twist, -1, self.sub.order) if self.sub.order > 1 else 0

    def contains(self, b: FieldElement) -> bool:
        return b.is_zero or b.log % self.ratio == 0


def _is_field_hom(sub: FieldTable, sup: FieldTable, gen_log: int) -> bool:
    """Does g_sub^t -> g_sup^(gen_log * t) transport 1 + x correctly?

    Additivity at every (1, g^i) pair extends to all sums by
    multiplicativity, so this check certifies a ring homomorphism.
    """
    for i in range(sub.order):
        image = sup.add(1, sup.exp_table[(gen_log * i) % sup.order])
        z = sub.zech_table[i]
        if z == ZECH_NONE:
            if image != 0:
                return False
        elif image != sup.exp_table[(gen_log * z) % sup.order]:
            return False
    return True


_EMBED_CACHE: dict[tuple[int, int, int], Embedding] = {}


def embed_subfield(sub: FieldTable, sup: FieldTable) -> Embedding:
    if sub.p != sup.p or sup.m % sub.m:
        raise NotASubfield(f"GF({sub.size}) is not a subfield of GF({sup.size})")
    key = (sub.p, sub.m, sup.m)
    if key in _EMBED_CACHE:
        return _EMBED_CACHE[key]
    ratio = (sup.size - 1) // (sub.size - 1)
    twist = None
    for u in range(1, sub.order + 2):
        if sub.order and math.gcd(u, sub.order) != 1:
            continue
        if _is_field_hom(sub, sup, (ratio * u) % sup.order):
            twist = u
            break
    if twist is None:  # pragma: no cover - a conjugate embedding always exists
        raise NotASubfield(f"no field embedding GF({sub.size}) -> GF({sup.size})")
    emb = Embedding(sub, sup, ratio, twist)
    _EMBED_CACHE[key] = emb
    return emb


# -- traces, orders, minimal polynomials -----------------------------------


def trace(sup: FieldTable, sub: FieldTable, a: FieldElement) -> FieldElement:
    """Trace from sup down to sub: sum of the sub-conjugates of a."""
    if a.field is not sup:
        raise FieldMismatch("element does not live in the source field")
    if sub.p != sup.p or sup.m % sub.m:
        raise FieldMismatch(f"GF({sub.size}) is not a subfield of GF({sup.size})")
    emb = embed_subfield(sub, sup)
    if a.is_zero:
        return sub.zero
    q = sub.size
    steps = sup.m // sub.m
    acc = 0
    exponent = 1
    for _ in range(steps):
        acc = sup.add(acc, sup.exp_table[(a.log * exponent) % sup.order])
        exponent = (exponent * q) % sup.order if sup.order else exponent
    return emb.preimage(sup.element(acc))


def element_order(a: FieldElement) -> int:
    if a.is_zero:
        raise ZeroElement("order of zero is undefined")
    order = a.field.order
    if order == 0:
        return 1
    return order // math.gcd(order, a.log % order)


def frobenius_orbit_size(a: FieldElement, base: FieldTable) -> int:
    """Length of {a, a^Q, a^(Q^2), ...} for Q = base.size."""
    if a.field.p != base.p or a.field.m % base.m:
        raise FieldMismatch("base is not a subfield")
    if a.is_zero:
        return 1
    n = element_order(a)
    q = base.size
    r = 1
    acc = q % n
    while acc != 1 % n:
        acc = (acc * q) % n
        r += 1
    return r


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with coefficient codes over a fixed field."""

    field: FieldTable
    coeffs: tuple[int, ...]  # low to high degree, no trailing zeros

    def __post_init__(self):
        c = self.coeffs
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if other.field is not self.field:
            raise FieldMismatch("polynomials over different fields")
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.field, ())
        f = self.field
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for k, b in enumerate(other.coeffs):
                out[i + k] = f.add(out[i + k], f.mul(a, b))
        return Polynomial(self.field, tuple(out))

    def evaluate(self, x: FieldElement) -> FieldElement:
        """Horner evaluation; x may live in an extension of the field."""
        target = x.field
        if target is self.field:
            lift = lambda c: target.element(c)
        else:
            emb = embed_subfield(self.field, target)
            lift = lambda c: emb.apply(self.field.element(c))
        acc = target.zero
        for c in reversed(self.coeffs):
            acc = acc * x + lift(c)
        return acc

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.field is not self.field:
            raise FieldMismatch("polynomials over different fields")
        if not other.coeffs:
            raise ZeroElement("division by the zero polynomial")
        f = self.field
        rem = list(self.coeffs)
        quot = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv_lead = f.inv(other.coeffs[-1])
        for i in range(len(rem) - len(other.coeffs), -1, -1):
            c = f.mul(rem[i + other.degree], inv_lead)
            if c == 0:
                continue
            quot[i] = c
            for k, b in enumerate(other.coeffs):
                rem[i + k] = f.sub(rem[i + k], f.mul(c, b))
        return Polynomial(f, tuple(quot)), Polynomial(f, tuple(rem))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            base = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(base if (c == 1 and i > 0) else (f"{c}" if i == 0 else f"{c}*{base}"))
        return "Poly(" + " + ".join(terms) + ")"


def minimal_polynomial(a: FieldElement, base: FieldTable) -> Polynomial:
    """Monic minimal polynomial of a over base: product over its orbit."""
    sup = a.field
    if base.p != sup.p or sup.m % base.m:
        raise FieldMismatch(f"GF({base.size}) is not a subfield of GF({sup.size})")
    if a.is_zero:
        raise ZeroElement("minimal polynomial of zero not supported")
    emb = embed_subfield(base, sup)
    q = base.size
    orbit = [a]
    nxt = a ** q
    while nxt != a:
        orbit.append(nxt)
        nxt = nxt ** q
    # expand prod (x - c) with coefficients in the big field
    coeffs = [sup.one]
    for c in orbit:
        nxt_coeffs = [sup.zero] * (len(coeffs) + 1)
        for i, k in enumerate(coeffs):
            nxt_coeffs[i + 1] = nxt_coeffs[i + 1] + k
            nxt_coeffs[i] = nxt_coeffs[i] - k * c
        coeffs = nxt_coeffs
    return Polynomial(base, tuple(emb.preimage(c).code for c in coeffs))
