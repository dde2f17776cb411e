"""Table-driven arithmetic in GF(p^d).

Elements are plain ints: the coefficient vector (c_0, ..., c_{d-1}) of the
polynomial-basis representation packed base p with c_0 least significant.
So for GF(4) = GF(2)[x]/(x^2+x+1) the codes 0, 1, 2, 3 are 0, 1, x, x+1.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import FieldError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
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


# --- polynomials over GF(p), coefficient lists low-to-high -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return poly_mod(prod, f, p)


def poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    d = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= d:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - d
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    return a


def _x_pow_mod(e: int, f: list[int], p: int) -> list[int]:
    result, base = [1], poly_mod([0, 1], f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    f = _trim([c % p for c in f])
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        return False
    if d == 1:
        return True

    def x_pow_minus_x(e):
        r = _x_pow_mod(e, f, p)
        r = r + [0] * (2 - len(r))
        r[1] = (r[1] - 1) % p
        return _trim(r)

    if x_pow_minus_x(p ** d):
        return False
    for r in prime_factors(d):
        g = poly_gcd(f, x_pow_minus_x(p ** (d // r)), p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree d.

    The coefficient list (c_0, ..., c_{d-1}, 1) is compared left to right.
    """
    for low in product(range(p), repeat=d):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {d} over GF({p})")


# --- the field --------------------------------------------------------------

class GF:
    """GF(p^d) defined by a monic irreducible ``modulus`` (low-to-high)."""

    def __init__(self, p: int, modulus):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if not is_irreducible(list(modulus), p):
            raise FieldError(f"modulus {modulus} is not a monic irreducible over GF({p})")
        self.p = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.order = p ** self.degree
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.degree}, modulus={self.modulus})"

    # digit helpers
    def to_coords(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.degree):
            out.append(a % p)
            a //= p
        return out

    def from_coords(self, coords) -> int:
        a = 0
        for c in reversed(list(coords)):
            a = a * self.p + int(c) % self.p
        return a

    def _slow_mul(self, a: int, b: int) -> int:
        if self.p == 2:
            d, mod = self.degree, self.from_coords(self.modulus[:-1])
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> d:
                    a = (a ^ (1 << d)) ^ mod
            return r
        prod = poly_mulmod(self.to_coords(a), self.to_coords(b), list(self.modulus), self.p)
        return self.from_coords(prod)

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        q = self.order
        n = q - 1
        factors = prime_factors(n)
        g = next(c for c in range(1, q)
                 if all(self._slow_pow(c, n // r) != 1 for r in factors))
        self.generator = g
        exp = [0] * (2 * n)
        log = [0] * q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self.exp, self.log = exp, log
        # Zech logarithms: 1 + g^i = g^zech[i], -1 when the sum vanishes
        if self.p != 2:
            p = self.p
            zech = [0] * n
            for i in range(n):
                v = exp[i]
                s = v - v % p + (v % p + 1) % p
                zech[i] = log[s] if s else -1
            self._zech = zech
            self._half = n // 2

    # arithmetic
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        z = self._zech[(self.log[b] - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self.exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.exp[self.log[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        return self.exp[(self.log[a] * e) % (self.order - 1)]

    def sum(self, values) -> int:
        s = 0
        for v in values:
            s = self.add(s, v)
        return s

    def dot(self, xs, ys) -> int:
        s = 0
        for x, y in zip(xs, ys):
            s = self.add(s, self.mul(x, y))
        return s

    def scalar(self, c: int) -> int:
        """Embed the prime-field integer c."""
        return c % self.p

    def elements(self):
        return range(self.order)

    def multiplicative_order(self, a: int) -> int:
        from math import gcd
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.order - 1
        return n // gcd(self.log[a], n) if n else 1
