"""Builders and checkers for S_k-stable Lefschetz collections of line bundles.

A Lefschetz collection on (P^n)^k is a list of blocks B_0 >= B_1 >= ... of
S_k-stable bundle sets; block i enters the collection twisted by O(i,...,i).
The checkers return violations as data (witness pairs with their graded Ext
dimensions) rather than raising, so failed checks are themselves reportable
certificates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .ext import ext_graded, is_orthogonal_pair
from .lattice import (
    Multidegree,
    OrbitSet,
    canonical_rep,
    format_multidegree,
    orbit_set,
    parse_multidegree,
    twist,
)

JSON_SCHEMA = "lefkit/1"


@dataclass(frozen=True)
class LefschetzCollection:
    """Blocks of orbit sets; block i is implicitly twisted by O(i,...,i)."""

    k: int
    n: int
    blocks: tuple[OrbitSet, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if not self.blocks:
            raise ValueError("a collection needs at least one block")
        for b in self.blocks:
            if b.k != self.k:
                raise ValueError(f"block arity {b.k} does not match k={self.k}")

    @property
    def d(self) -> int:
        """Largest twist used (number of blocks minus one)."""
        return len(self.blocks) - 1


@dataclass(frozen=True)
class Violation:
    """One failed check, with enough data to re-verify it independently.

    kind: "order" (duplicate bundle), "ext" (nonvanishing Ext where required
    to vanish, detail holds the graded dimensions), "nesting" (block not
    contained in its predecessor), "invariance" (orbit arity mismatch), or
    "generation" (window closure failed to reach the target cube).
    """

    kind: str
    witness: tuple
    detail: tuple = field(default=())


def _slope_reps(k: int, n: int, strict: bool):
    """Reps c_1 >= ... >= c_k = 0 with k*c_i < (n+1)*(k-i) (or <=) for i < k."""
    h = n + 1

    def bound(i):
        # largest value allowed at position i (1-based), before the chain cap
        slack = h * (k - i)
        if strict:
            return (slack - 1) // k
        return slack // k

    def rec(i, prev):
        if i == k:
            yield (0,)
            return
        for c in range(min(prev, bound(i)), -1, -1):
            for rest in rec(i + 1, c):
                yield (c,) + rest

    if k == 1:
        yield (0,)
        return
    yield from rec(1, bound(1))


def build_E(k: int, n: int) -> OrbitSet:
    """Orbits of c with c_1 >= ... >= c_k = 0 and k*c_i < (n+1)*(k-i) for i < k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    return orbit_set(k, _slope_reps(k, n, strict=True))


def build_Ehat(k: int, n: int) -> OrbitSet:
    """Non-strict variant of build_E: k*c_i <= (n+1)*(k-i) for i < k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    return orbit_set(k, _slope_reps(k, n, strict=False))


def adjust(base: OrbitSet, add=(), remove=()) -> OrbitSet:
    """Add and remove whole orbits, validating presence and absence by rep."""
    reps = set(base.reps())
    for a in remove:
        r = canonical_rep(a)
        if r not in reps:
            raise ValueError(f"cannot remove orbit {format_multidegree(r)}: not present")
        reps.discard(r)
    for a in add:
        r = canonical_rep(a)
        if r in reps:
            raise ValueError(f"cannot add orbit {format_multidegree(r)}: already present")
        reps.add(r)
    return orbit_set(base.k, reps)


def flatten_bundles(coll: LefschetzCollection) -> tuple[Multidegree, ...]:
    """The collection as one ordered bundle list.

    Blocks in order, block i twisted by i; within a block, orbits ascending
    lex by rep, elements ascending lex.  Inside the cube [0, n]^k this order
    linearly extends the componentwise order, which is what exceptionality
    needs there.
    """
    return tuple(
        twist(el, i)
        for i, block in enumerate(coll.blocks)
        for o in block.orbits
        for el in o.elements
    )


def ranks(coll: LefschetzCollection) -> tuple[int, ...]:
    """Bundle counts per block."""
    return tuple(b.bundle_count for b in coll.blocks)


def is_rectangular(coll: LefschetzCollection) -> bool:
    """True when every block is the same orbit set."""
    return all(b.reps() == coll.blocks[0].reps() for b in coll.blocks[1:])


def check_lefschetz(coll: LefschetzCollection):
    """None if blocks are weakly decreasing; else a nesting Violation."""
    for i in range(len(coll.blocks) - 1):
        prev = set(coll.blocks[i].reps())
        for rep in coll.blocks[i + 1].reps():
            if rep not in prev:
                return Violation(kind="nesting", witness=(rep,), detail=(i + 1,))
    return None


def check_exceptional(coll: LefschetzCollection) -> list[Violation]:
    """All later-to-earlier pairs with nonvanishing Ext, in flatten order.

    An empty list certifies the flattened sequence is exceptional (each
    member is a line bundle, hence exceptional on its own).
    """
    flat = flatten_bundles(coll)
    n = coll.n
    out = []
    for q in range(1, len(flat)):
        later = flat[q]
        for p in range(q):
            earlier = flat[p]
            if later == earlier:
                out.append(Violation(kind="order", witness=(later, earlier)))
            elif not is_orthogonal_pair(n, later, earlier):
                out.append(
                    Violation(
                        kind="ext",
                        witness=(later, earlier),
                        detail=ext_graded(n, later, earlier),
                    )
                )
    return out


def check_theorem_semiorthogonality(k: int, n: int):
    """Every bundle of build_E twisted by 1..n is Ext-orthogonal into build_Ehat.

    Returns None on success, else the first Violation in scan order
    (ascending twist, then flatten order on both sides).
    """
    e_bundles = build_E(k, n).bundles()
    ehat_bundles = build_Ehat(k, n).bundles()
    for i in range(1, n + 1):
        for a in e_bundles:
            ai = twist(a, i)
            for b in ehat_bundles:
                if not is_orthogonal_pair(n, ai, b):
                    return Violation(
                        kind="ext", witness=(ai, b), detail=ext_graded(n, ai, b)
                    )
    return None


def x3n_rectangular(n: int) -> LefschetzCollection:
    """The rectangular candidate on (P^n)^3: n+1 copies of build_E(3, n)."""
    block = build_E(3, n)
    return LefschetzCollection(k=3, n=n, blocks=(block,) * (n + 1))


def x32_minimal() -> LefschetzCollection:
    """The minimal-first-block collection on (P^2)^3.

    First block: the non-strict orbit set minus the orbit of (2,0,0).
    Second and third: the strict orbit set plus the orbit of (1,1,0).
    Ranks come out (13, 7, 7).
    """
    b = adjust(build_E(3, 2), add=[(1, 1, 0)])
    bhat = adjust(build_Ehat(3, 2), remove=[(2, 0, 0)])
    return LefschetzCollection(k=3, n=2, blocks=(bhat, b, b))


def x32_rectangular_part() -> LefschetzCollection:
    """Three untruncated copies of the small block of x32_minimal."""
    b = adjust(build_E(3, 2), add=[(1, 1, 0)])
    return LefschetzCollection(k=3, n=2, blocks=(b, b, b))


def x32_residual() -> OrbitSet:
    """The orbit complementing x32_rectangular_part: O(1,-1,0) and its permutations."""
    return orbit_set(3, [(1, -1, 0)])


def xk1(k: int) -> LefschetzCollection:
    """The two-block collection on (P^1)^k.

    For odd k both blocks equal build_E(k, 1) (more than half the
    coordinates zero); for even k the first block is the non-strict
    build_Ehat(k, 1) (at least half zero), giving ranks
    ((2^k + C(k, k/2)) / 2, (2^k - C(k, k/2)) / 2).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    a = build_E(k, 1)
    if k % 2 == 1:
        return LefschetzCollection(k=k, n=1, blocks=(a, a))
    return LefschetzCollection(k=k, n=1, blocks=(build_Ehat(k, 1), a))


def collection_to_json(coll: LefschetzCollection) -> str:
    """Deterministic JSON form: fixed key order, reps ascending lex per block."""
    doc = {
        "schema": JSON_SCHEMA,
        "k": coll.k,
        "n": coll.n,
        "blocks": [
            [format_multidegree(rep) for rep in block.reps()] for block in coll.blocks
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def collection_from_json(text: str) -> LefschetzCollection:
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("schema") != JSON_SCHEMA:
        raise ValueError(f"expected a collection document with schema {JSON_SCHEMA!r}")
    try:
        k = int(doc["k"])
        n = int(doc["n"])
        raw_blocks = doc["blocks"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed collection document: {exc}") from None
    blocks = tuple(
        orbit_set(k, [parse_multidegree(r, k) for r in reps]) for reps in raw_blocks
    )
    return LefschetzCollection(k=k, n=n, blocks=blocks)
