"""Slope arithmetic on the peripheral Z x Z and its relevant left-orderings.

The orderings enumerated here are exactly the left-orderings of Z^2 in
which a prescribed rank-1 subgroup <(p,q)> is convex: compare by the
sign of the primitive functional +-(q,-p), breaking ties along the
kernel line by a fixed sign.  Irrational-slope orderings have no proper
nontrivial convex subgroups, so these four are all that is needed for
the opposite-sign arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


class SlopeError(ValueError):
    pass


@dataclass(frozen=True, order=False)
class Slope:
    """A primitive class p/q with q >= 0; 1/0 is the meridian slope."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise SlopeError("slope 0/0")
        if self.q < 0:
            raise SlopeError("normalise slopes to q >= 0")
        if self.q == 0 and self.p != 1:
            raise SlopeError("infinite slope must be written 1/0")
        if gcd(abs(self.p), self.q) != 1:
            raise SlopeError(f"slope {self.p}/{self.q} is not primitive")

    @classmethod
    def of(cls, p: int, q: int) -> "Slope":
        if q < 0:
            p, q = -p, -q
        if q == 0:
            p = 1
        return cls(p, q)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def value(self) -> Fraction:
        if self.is_infinite:
            raise SlopeError("1/0 has no rational value")
        return Fraction(self.p, self.q)

    def vector(self) -> tuple[int, int]:
        return (self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def decompose(v0: tuple[int, int], basis: tuple[tuple[int, int], tuple[int, int]]
              ) -> tuple[Fraction, Fraction]:
    """Exact coefficients (c, d) with v0 = c * basis[0] + d * basis[1]."""
    (p, q), (u, v) = basis
    det = p * v - q * u
    if det == 0:
        raise SlopeError(f"singular basis {basis}")
    x, y = v0
    c = Fraction(x * v - y * u, det)
    d = Fraction(p * y - q * x, det)
    return c, d


def _require_open_interval(s0: Slope, s1: Slope, s: Slope) -> None:
    for sl in (s0, s1, s):
        if sl.p <= 0 or sl.q <= 0:
            raise SlopeError(f"all entries must be positive, got {sl}")
    lo, hi = sorted((s0.value(), s1.value()))
    if not lo < s.value() < hi:
        raise SlopeError(f"{s} is not strictly between {s0} and {s1}")


def lemma_opp_check(s0: Slope, s1: Slope, s: Slope, uv: tuple[int, int]) -> bool:
    """d-coefficients of s0 and s1 in the basis {s, uv} have opposite signs
    whenever s lies strictly between s0 and s1 (all entries positive)."""
    _require_open_interval(s0, s1, s)
    basis = (s.vector(), uv)
    _, d0 = decompose(s0.vector(), basis)
    _, d1 = decompose(s1.vector(), basis)
    return d0 * d1 < 0


@dataclass(frozen=True)
class Z2Ordering:
    """Left-ordering of Z^2: sign of functional . v, ties broken along the
    kernel direction by tie_sign."""

    functional: tuple[int, int]
    kernel_direction: tuple[int, int]
    tie_sign: int

    def __post_init__(self):
        fa, fb = self.functional
        ka, kb = self.kernel_direction
        if (fa, fb) == (0, 0) or gcd(abs(fa), abs(fb)) != 1:
            raise SlopeError("functional must be primitive and nonzero")
        if (ka, kb) == (0, 0) or gcd(abs(ka), abs(kb)) != 1:
            raise SlopeError("kernel direction must be primitive and nonzero")
        if fa * ka + fb * kb != 0:
            raise SlopeError("kernel direction must annihilate the functional")
        if self.tie_sign not in (1, -1):
            raise SlopeError("tie_sign must be +-1")

    def sign(self, v: tuple[int, int]) -> int:
        value = self.functional[0] * v[0] + self.functional[1] * v[1]
        if value > 0:
            return 1
        if value < 0:
            return -1
        # v lies on the kernel line: v = t * kernel_direction
        ka, kb = self.kernel_direction
        t = v[0] // ka if ka else v[1] // kb
        if t == 0 and v == (0, 0):
            return 0
        return self.tie_sign if t > 0 else -self.tie_sign

    def describe(self) -> str:
        return f"functional {self.functional}, tie {'+' if self.tie_sign > 0 else '-'}"


def z2_sign(ordering: Z2Ordering, v: tuple[int, int]) -> int:
    return ordering.sign(v)


def convex_orderings(pq: Slope) -> tuple[Z2Ordering, ...]:
    """The four Z^2 left-orderings in which <(p,q)> is convex."""
    p, q = pq.vector()
    kernel = (p, q)
    out = []
    for functional in ((q, -p), (-q, p)):
        for tie in (1, -1):
            out.append(Z2Ordering(functional, kernel, tie))
    return tuple(out)


def prop_opp_check(pq: Slope, s0: Slope, s1: Slope) -> bool:
    """In every ordering with <(p,q)> convex, s0 and s1 carry opposite
    signs when p/q lies strictly between them."""
    _require_open_interval(s0, s1, pq)
    return all(
        ordering.sign(s0.vector()) * ordering.sign(s1.vector()) < 0
        for ordering in convex_orderings(pq)
    )


# -- obstruction reports -------------------------------------------------------


@dataclass(frozen=True)
class Evidence:
    """Provenance handle for one obstruction component."""

    kind: str  # "cone-unsat" | "certificate-family" | "torsion-quotient" | "case-tree"
    description: str
    payload: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        return {"kind": self.kind, "description": self.description, **self.payload}


@dataclass(frozen=True)
class ObstructionComponent:
    kind: str  # "interval" | "point"
    lo: Fraction | None
    hi: Fraction | None  # None = +infinity
    provenance: str

    def as_json(self) -> dict:
        def fmt(x):
            if x is None:
                return None
            return f"{x.numerator}/{x.denominator}"

        return {"kind": self.kind, "lo": fmt(self.lo), "hi": fmt(self.hi),
                "provenance": self.provenance}


@dataclass(frozen=True)
class ObstructionReport:
    knot: str
    components: tuple[ObstructionComponent, ...]
    evidence: tuple[Evidence, ...]
    caveats: tuple[str, ...] = ()

    def closure_start(self) -> Fraction | None:
        starts = [c.lo for c in self.components if c.lo is not None]
        points = [c.lo for c in self.components if c.kind == "point"]
        return min(starts + points) if starts or points else None

    def as_json(self) -> dict:
        return {
            "schema": 1,
            "knot": self.knot,
            "components": [c.as_json() for c in self.components],
            "evidence": [e.as_json() for e in self.evidence],
            "caveats": list(self.caveats),
        }


class EvidenceError(ValueError):
    pass


def interval_obstruction(s0: Slope, s1: Slope, certified: Evidence) -> ObstructionComponent:
    """The open interval between two slopes whose sign implication is
    certified (an Unsat certificate for {s0 positive, s1 negative} or the
    mirrored pair)."""
    if s0 == s1:
        raise EvidenceError("degenerate interval: endpoints coincide")
    if certified.kind not in ("cone-unsat", "certificate-family", "case-tree"):
        raise EvidenceError(f"evidence kind {certified.kind!r} cannot certify an interval")
    pair = certified.payload.get("slopes")
    if pair is not None and set(pair) != {str(s0), str(s1)}:
        raise EvidenceError(f"evidence is for slopes {pair}, not ({s0}, {s1})")
    lo, hi = sorted((s0.value(), s1.value()))
    return ObstructionComponent("interval", lo, hi, certified.description)


def monotone_obstruction(base: Slope, evidences: tuple[Evidence, ...]
                         ) -> tuple[tuple[ObstructionComponent, ...], tuple[str, ...]]:
    """Components certified by a family of implications mu^p lambda^q > 1 =>
    mu^(p+N) lambda^q > 1.

    With symbolic (shape-uniform certificate family) evidence the whole ray
    (base, infinity) is emitted; otherwise only the union of the finitely
    certified intervals, with the gap reported as a caveat.
    """
    symbolic = [e for e in evidences if e.kind in ("certificate-family", "case-tree")
                and e.payload.get("symbolic")]
    finite_ns = sorted(
        n for e in evidences if e.kind == "cone-unsat"
        for n in e.payload.get("offsets", [])
    )
    base_value = base.value()
    if symbolic:
        component = ObstructionComponent(
            "interval", base_value, None,
            "; ".join(e.description for e in symbolic))
        return (component,), ()
    if finite_ns:
        hi = base_value + Fraction(max(finite_ns), base.q)
        component = ObstructionComponent(
            "interval", base_value, hi,
            f"cone refutations for offsets N in {finite_ns}")
        caveat = (f"no symbolic family evidence: obstruction certified only up to "
                  f"{hi} beyond {base}")
        return (component,), (caveat,)
    return (), (f"no evidence for slopes beyond {base}",)
