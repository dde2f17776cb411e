"""The field tower GF(p) < B = GF(p^m) < F = GF(p^(m t)).

F elements ("symbols") are ints in the polynomial basis of ``irr``; see
:mod:`rsrepair.gf`. B elements ("sub-symbols") are ints in ``0..p^m - 1``
holding their coordinates over GF(p) in the basis 1, s, ..., s^(m-1), where
``s = subfield_gen``. ``embed``/``project`` move between the two.

A few orders are fixed so that bases, and hence golden tests, are
reproducible:

* default ``irr``: lexicographically least monic irreducible;
* ``g`` (``F.generator``): least primitive element by integer code;
* basis scans walk g^1, g^2, ..., g^(q-1) and keep the first element that
  raises the B-rank.
"""

from __future__ import annotations

from functools import cached_property, lru_cache

from . import linalg
from .errors import ArityError, DomainError, FieldError, NotInSpanError, RankError
from .gf import GF, is_prime, least_irreducible

Felem = int
Belem = int


class Tower:
    """Immutable description of B inside F plus all trace/basis machinery."""

    def __init__(self, p: int, m: int, t: int, irr=None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1 or t < 1:
            raise FieldError("m and t must be at least 1")
        if irr is None:
            irr = least_irreducible(p, m * t)
        irr = tuple(int(c) for c in irr)
        if len(irr) - 1 != m * t:
            raise FieldError(f"irr has degree {len(irr) - 1}, expected {m * t}")
        self.p, self.m, self.t = p, m, t
        self.irr = irr
        self.F = GF(p, irr)
        self.q = self.F.order
        self.Q = p ** m                        # |B|
        F = self.F
        self.subfield_gen = F.pow(F.generator, (self.q - 1) // (self.Q - 1))

        # B as GF(p)[y]/minpoly(s); B codes are coordinates in 1, s, ..., s^(m-1)
        self.B = GF(p, self._minpoly(self.subfield_gen))
        self._embed = [self._embed_slow(b) for b in range(self.Q)]
        self._project = dict((x, b) for b, x in enumerate(self._embed))
        if len(self._project) != self.Q:
            raise FieldError("subfield generator does not span a subfield of dimension m")
        self._frob = [self.Q ** i for i in range(t)]

        # reference basis 1, g, ..., g^(t-1) of F over B and its GF(p) change of basis
        g = F.generator
        self.reference_basis = tuple(F.pow(g, i) for i in range(t))
        self._prime = GF(p, (0, 1))
        cols = [F.to_coords(F.mul(self._embed[p ** j], e))
                for e in self.reference_basis for j in range(m)]
        mat = [[cols[c][r] for c in range(m * t)] for r in range(m * t)]
        self._to_ref = linalg.inverse(self._prime, mat)
        self._coords_cache: dict[int, tuple[int, ...]] = {}

    def _minpoly(self, s):
        F, p = self.F, self.p
        poly = [1]                             # coefficients in F, low-to-high
        conj = s
        for _ in range(self.m):
            shifted = [0] + poly
            scaled = [F.mul(conj, c) for c in poly] + [0]
            poly = [F.sub(a, b) for a, b in zip(shifted, scaled)]
            conj = F.pow(conj, p)
        if any(c >= p for c in poly):
            raise FieldError("minimal polynomial of the subfield generator is not over GF(p)")
        return poly

    def _embed_slow(self, b):
        F = self.F
        x, power = 0, 1
        for c in self.B.to_coords(b):
            x = F.add(x, F.mul(F.scalar(c), power))
            power = F.mul(power, self.subfield_gen)
        return x

    def __repr__(self):
        return f"Tower({self.describe()})"

    def __eq__(self, other):
        return isinstance(other, Tower) and (self.p, self.m, self.t, self.irr) == (
            other.p, other.m, other.t, other.irr)

    def __hash__(self):
        return hash((self.p, self.m, self.t, self.irr))

    # --- text form -------------------------------------------------------

    def describe(self) -> str:
        return f"p={self.p} m={self.m} t={self.t} irr={','.join(map(str, self.irr))}"

    @classmethod
    def parse(cls, text: str) -> "Tower":
        fields = dict(part.split("=", 1) for part in text.split())
        try:
            irr = tuple(int(c) for c in fields["irr"].split(",")) if "irr" in fields else None
            return make_tower(int(fields["p"]), int(fields["m"]), int(fields["t"]), irr)
        except KeyError as exc:
            raise FieldError(f"tower description missing {exc}") from None

    def format_felem(self, x: Felem) -> str:
        return ",".join(map(str, self.F.to_coords(x)))

    def parse_felem(self, text: str) -> Felem:
        coords = [int(c) for c in text.split(",")]
        if len(coords) != self.m * self.t or any(not 0 <= c < self.p for c in coords):
            raise ArityError(f"expected {self.m * self.t} coordinates in 0..{self.p - 1}")
        return self.F.from_coords(coords)

    # --- subfield --------------------------------------------------------

    def embed(self, b: Belem) -> Felem:
        return self._embed[b]

    def project(self, x: Felem) -> Belem:
        try:
            return self._project[x]
        except KeyError:
            raise DomainError(f"{x} is not in the subfield") from None

    def in_subfield(self, x: Felem) -> bool:
        return x in self._project

    # --- trace -----------------------------------------------------------

    @cached_property
    def _trace_table(self) -> list[Belem]:
        F = self.F
        n = self.q - 1
        table = [0] * self.q
        for x in range(1, self.q):
            lx = F.log[x]
            s = 0
            for e in self._frob:
                s = F.add(s, F.exp[(lx * e) % n])
            # invariant: the trace lands in B
            table[x] = self._project[s]
        return table

    def trace(self, x: Felem) -> Belem:
        """Tr_{F/B}(x) = sum of x^(|B|^i), i < t."""
        return self._trace_table[x]

    def trace_of_product(self, a: Felem, b: Felem) -> Belem:
        return self._trace_table[self.F.mul(a, b)]

    # --- coordinates over B ---------------------------------------------

    def coords(self, x: Felem) -> tuple[Belem, ...]:
        """Coordinates of x over B in :attr:`reference_basis`."""
        c = self._coords_cache.get(x)
        if c is None:
            m = self.m
            flat = linalg.mat_vec(self._prime, self._to_ref, self.F.to_coords(x))
            c = tuple(self.B.from_coords(flat[l * m:(l + 1) * m]) for l in range(self.t))
            self._coords_cache[x] = c
        return c

    def from_coords(self, coords) -> Felem:
        F = self.F
        return F.sum(F.mul(self._embed[b], e) for b, e in zip(coords, self.reference_basis))

    def is_independent(self, elems) -> bool:
        return linalg.rank(self.B, [self.coords(x) for x in elems]) == len(elems)

    def coords_in_basis(self, x: Felem, basis) -> tuple[Belem, ...]:
        """Coefficients c over B with x = sum c_i basis_i.

        ``basis`` may span a proper subspace; :class:`NotInSpanError` when x
        lies outside it.
        """
        basis = list(basis)
        if not basis:
            if x:
                raise NotInSpanError("nonzero element is not in the zero space")
            return ()
        return tuple(linalg.solve(self.B, [self.coords(b) for b in basis], self.coords(x)))

    def combine(self, coeffs, basis) -> Felem:
        F = self.F
        return F.sum(F.mul(self._embed[c], b) for c, b in zip(coeffs, basis))

    # --- bases -----------------------------------------------------------

    def _scan(self, accept, start=(), limit=None):
        """Greedy power scan: extend ``start`` with accepted elements that raise the rank."""
        limit = self.t if limit is None else limit
        ech = linalg.Echelon(self.B, self.t)
        for x in start:
            if not ech.add(self.coords(x)):
                raise RankError("starting elements are linearly dependent over B")
        picked = []
        F = self.F
        for i in range(1, self.q):
            if len(ech) >= limit:
                break
            z = F.exp[i]
            if accept(z) and ech.add(self.coords(z)):
                picked.append(z)
        return tuple(picked)

    def trace_kernel_basis(self) -> tuple[Felem, ...]:
        """t-1 elements spanning {x : Tr(x) = 0} over B."""
        if self.t < 2:
            raise DomainError("the trace kernel is trivial when t = 1")
        tr = self._trace_table
        return self._scan(lambda z: tr[z] == 0, limit=self.t - 1)

    def root_space(self, alpha: Felem, beta: Felem) -> tuple[Felem, ...]:
        """Basis of {z : Tr(z (beta - alpha)) = 0}; identical output for (beta, alpha)."""
        if alpha == beta:
            raise DomainError("root space needs two distinct points")
        if self.t < 2:
            raise DomainError("the root space is trivial when t = 1")
        F, tr = self.F, self._trace_table
        delta = F.sub(beta, alpha)
        return self._scan(lambda z: tr[F.mul(z, delta)] == 0, limit=self.t - 1)

    def complete_basis(self, partial=()) -> tuple[Felem, ...]:
        partial = tuple(partial)
        return partial + self._scan(lambda z: True, start=partial)

    def extend_basis(self, partial) -> tuple[tuple[Felem, ...], Felem]:
        """Append one element to t-1 independent elements; returns (basis, new element)."""
        partial = tuple(partial)
        if len(partial) != self.t - 1:
            raise ArityError(f"expected {self.t - 1} elements, got {len(partial)}")
        full = self.complete_basis(partial)
        return full, full[-1]

    def dual_basis(self, basis) -> tuple[Felem, ...]:
        """The trace-orthogonal basis: Tr(u_i d_j) = delta_ij."""
        basis = tuple(basis)
        if len(basis) != self.t:
            raise ArityError(f"a basis of F over B has {self.t} elements")
        ref = self.reference_basis
        gram = [[self.trace_of_product(u, e) for e in ref] for u in basis]
        try:
            inv = linalg.inverse(self.B, gram)
        except RankError:
            raise RankError("elements are linearly dependent over B") from None
        return tuple(self.from_coords([inv[l][j] for l in range(self.t)]) for j in range(self.t))

    def reconstruct_from_traces(self, traces, basis, dual=None) -> Felem:
        """x = sum Tr(u_i x) u_i^perp."""
        traces = list(traces)
        if len(traces) != self.t:
            raise ArityError(f"need {self.t} traces, got {len(traces)}")
        if dual is None:
            dual = self.dual_basis(basis)
        return self.combine(traces, dual)


@lru_cache(maxsize=32)
def make_tower(p: int, m: int, t: int, irr=None) -> Tower:
    """Validated, cached tower. ``irr`` lists coefficients low-to-high."""
    return Tower(p, m, t, None if irr is None else tuple(irr))
