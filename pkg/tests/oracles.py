"""Brute-force reference arithmetic, independent of rsrepair's tables.

Elements use the same integer packing as rsrepair (coefficients base p,
constant term least significant) so results can be compared directly, but
every operation here is plain polynomial arithmetic and exhaustive search.
"""

from itertools import product


class SlowField:
    def __init__(self, p, irr):
        self.p = p
        self.irr = list(irr)
        self.d = len(irr) - 1
        self.q = p ** self.d

    def digits(self, a):
        out = []
        for _ in range(self.d):
            out.append(a % self.p)
            a //= self.p
        return out

    def pack(self, ds):
        a = 0
        for c in reversed(ds):
            a = a * self.p + c % self.p
        return a

    def add(self, a, b):
        return self.pack([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self.pack([-x for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        p, d = self.p, self.d
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * d)
        for i in range(d):
            for j in range(d):
                prod[i + j] += x[i] * y[j]
        for top in range(2 * d - 1, d - 1, -1):
            c = prod[top] % p
            if c:
                for i in range(d + 1):
                    prod[top - d + i] -= c * self.irr[i]
        return self.pack([c % p for c in prod[:d]])

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def inv(self, a):
        return next(b for b in range(1, self.q) if self.mul(a, b) == 1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def order(self, a):
        x, k = a, 1
        while x != 1:
            x, k = self.mul(x, a), k + 1
        return k


class SlowTower:
    """B is found as the fixed field of x -> x^(p^m); no subfield generator needed."""

    def __init__(self, p, m, t, irr):
        self.F = SlowField(p, irr)
        self.p, self.m, self.t = p, m, t
        self.Q = p ** m
        self.subfield = [x for x in range(self.F.q) if self.frob(x, 1) == x]

    def frob(self, x, i):
        e = self.Q ** i
        r, base = 1, x
        while e:
            if e & 1:
                r = self.F.mul(r, base)
            base = self.F.mul(base, base)
            e >>= 1
        return r

    def trace(self, x):
        s = 0
        for i in range(self.t):
            s = self.F.add(s, self.frob(x, i))
        return s

    def span(self, elems):
        """All B-combinations of elems, as a set of field elements."""
        out = set()
        for coeffs in product(self.subfield, repeat=len(elems)):
            s = 0
            for c, e in zip(coeffs, elems):
                s = self.F.add(s, self.F.mul(c, e))
            out.add(s)
        return out

    def independent(self, elems):
        return len(self.span(elems)) == self.Q ** len(elems)

    def dual_by_search(self, basis):
        """For each j, the unique d with Tr(u_i d) = delta_ij, by scanning all of F."""
        out = []
        for j in range(len(basis)):
            hits = [d for d in range(self.F.q)
                    if all(self.trace(self.F.mul(u, d)) == (1 if i == j else 0) for i, u in enumerate(basis))]
            assert len(hits) == 1
            out.append(hits[0])
        return out


def poly_eval(F, coeffs, x):
    acc, power = 0, 1
    for c in coeffs:
        acc = F.add(acc, F.mul(c, power))
        power = F.mul(power, x)
    return acc


def interpolate_eval(F, xs, ys, x):
    """Evaluate the interpolating polynomial at x straight from the Lagrange formula."""
    acc = 0
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        num, den = 1, 1
        for j, xj in enumerate(xs):
            if j != i:
                num = F.mul(num, F.sub(x, xj))
                den = F.mul(den, F.sub(xi, xj))
        acc = F.add(acc, F.mul(yi, F.div(num, den)))
    return acc
