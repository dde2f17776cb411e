"""Reed-Solomon codes over the top field of a tower, and trace check polynomials.

Positions are 0-based indices into ``CodeParams.points``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import ArityError, CorruptionError, DomainError
from .tower import Felem, Tower


@dataclass(frozen=True)
class CodeParams:
    tower: Tower
    points: tuple[Felem, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if len(set(self.points)) != len(self.points):
            raise DomainError("evaluation points must be distinct")
        if any(not 0 <= a < self.tower.q for a in self.points):
            raise DomainError("evaluation point outside the field")
        if not 1 <= self.k < self.n:
            raise DomainError(f"need 1 <= k < n, got k={self.k}, n={self.n}")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def repair_eligible(self) -> bool:
        """n - k >= |B|^(t-1), the trace-repair condition."""
        return self.n - self.k >= self.tower.Q ** (self.tower.t - 1)

    @cached_property
    def multipliers(self) -> tuple[Felem, ...]:
        return dual_multipliers(self)

    def header(self) -> str:
        pts = ";".join(self.tower.format_felem(a) for a in self.points)
        return f"{self.tower.describe()} n={self.n} k={self.k} points={pts}"


def full_length_code(tower: Tower, k: int | None = None, n: int | None = None) -> CodeParams:
    """Code on the first n field elements by integer code; defaults n = |F|, k = n - |B|^(t-1)."""
    n = tower.q if n is None else n
    if k is None:
        k = n - tower.Q ** (tower.t - 1)
    return CodeParams(tower, tuple(range(n)), k)


# --- polynomial helpers over F ---------------------------------------------

def poly_eval(F, coeffs, x: Felem) -> Felem:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _mul_linear(F, poly, root):
    """poly * (x - root)."""
    out = [0] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] = F.add(out[i + 1], c)
        out[i] = F.sub(out[i], F.mul(root, c))
    return out


def lagrange_interpolate(F, xs, ys):
    """Coefficients (low-to-high, length len(xs)) of the interpolating polynomial."""
    n = len(xs)
    result = [0] * n
    for i in range(n):
        basis, denom = [1], 1
        for j in range(n):
            if j != i:
                basis = _mul_linear(F, basis, xs[j])
                denom = F.mul(denom, F.sub(xs[i], xs[j]))
        scale = F.div(ys[i], denom)
        for d, c in enumerate(basis):
            result[d] = F.add(result[d], F.mul(scale, c))
    return result


# --- encoding / decoding ----------------------------------------------------

def encode(code: CodeParams, message) -> list[Felem]:
    """Evaluate f(x) = sum message_i x^i at every point."""
    message = list(message)
    if len(message) != code.k:
        raise ArityError(f"message must have k={code.k} symbols, got {len(message)}")
    F = code.tower.F
    return [poly_eval(F, message, a) for a in code.points]


def systematic_coefficients(code: CodeParams, data) -> list[Felem]:
    """Coefficients of the f with f(points[i]) = data[i] for i < k."""
    data = list(data)
    if len(data) != code.k:
        raise ArityError(f"need k={code.k} data symbols, got {len(data)}")
    return lagrange_interpolate(code.tower.F, code.points[:code.k], data)


def encode_systematic(code: CodeParams, data) -> list[Felem]:
    return encode(code, systematic_coefficients(code, data))


def interpolate_decode(code: CodeParams, positions, values) -> list[Felem]:
    """Recover the k message coefficients from symbols at ``positions``.

    Extra positions beyond k are checked for consistency.
    """
    positions, values = list(positions), list(values)
    if len(positions) != len(values):
        raise ArityError("positions and values differ in length")
    if len(set(positions)) != len(positions):
        raise DomainError("positions must be distinct")
    if len(positions) < code.k:
        raise ArityError(f"need at least k={code.k} positions, got {len(positions)}")
    F = code.tower.F
    k = code.k
    xs = [code.points[i] for i in positions]
    coeffs = lagrange_interpolate(F, xs[:k], values[:k])
    for x, y in zip(xs[k:], values[k:]):
        if poly_eval(F, coeffs, x) != y:
            raise CorruptionError("symbols are not consistent with a polynomial of degree < k")
    return coeffs


def naive_recover(code: CodeParams, symbols: dict[int, Felem], targets) -> dict[int, Felem]:
    """Interpolation oracle: decode from the k lowest surviving positions, re-evaluate targets."""
    alive = sorted(symbols)[:code.k]
    coeffs = interpolate_decode(code, alive, [symbols[i] for i in alive])
    F = code.tower.F
    return {i: poly_eval(F, coeffs, code.points[i]) for i in targets}


def dual_multipliers(code: CodeParams) -> tuple[Felem, ...]:
    """GRS multipliers of the dual code: lambda_i = -1 / prod_{j != i}(a_i - a_j).

    The sign makes every lambda_i equal 1 for a full-length code.
    """
    F = code.tower.F
    pts = code.points
    if code.n == code.tower.q:
        return (1,) * code.n
    lam = []
    for i, a in enumerate(pts):
        prod = 1
        for j, b in enumerate(pts):
            if j != i:
                prod = F.mul(prod, F.sub(a, b))
        lam.append(F.neg(F.inv(prod)))
    # sum lambda_i a_i^e = 0 for e <= n-2 spans every (check, codeword) product
    for e in range(code.n - 1):
        if F.sum(F.mul(l, F.pow(a, e)) for l, a in zip(lam, pts)):
            raise AssertionError("dual multipliers fail orthogonality")
    return tuple(lam)


# --- trace check polynomials -------------------------------------------------

@dataclass(frozen=True)
class CheckSpec:
    """p(x) = tau * Tr(u (x - alpha)) / (x - alpha)."""
    u: Felem
    alpha: Felem
    tau: Felem = field(default=1)


def check_eval(tower: Tower, check: CheckSpec, x: Felem) -> Felem:
    F = tower.F
    if x == check.alpha:
        return F.mul(check.tau, check.u)
    d = F.sub(x, check.alpha)
    tr = tower.embed(tower.trace_of_product(check.u, d))
    return F.mul(check.tau, F.div(tr, d))


def _binom_mod(n: int, r: int, p: int) -> int:
    """C(n, r) mod p by Lucas."""
    from math import comb
    out = 1
    while n or r:
        ni, ri = n % p, r % p
        if ri > ni:
            return 0
        out = out * comb(ni, ri) % p
        n //= p
        r //= p
    return out


def expand_check(tower: Tower, check: CheckSpec) -> list[Felem]:
    """Monomial coefficients of tau * sum_i u^(|B|^i) (x - alpha)^(|B|^i - 1)."""
    if check.u == 0:
        raise DomainError("u = 0 gives the zero polynomial")
    F, p, Q = tower.F, tower.p, tower.Q
    size = Q ** (tower.t - 1)
    coeffs = [0] * size
    neg_alpha = F.neg(check.alpha)
    for i in range(tower.t):
        e = Q ** i - 1
        lead = F.pow(check.u, Q ** i)
        for j in range(e + 1):
            b = _binom_mod(e, j, p)
            if b:
                term = F.mul(F.scalar(b), F.mul(lead, F.pow(neg_alpha, e - j)))
                coeffs[j] = F.add(coeffs[j], term)
    return [F.mul(check.tau, c) for c in coeffs]
