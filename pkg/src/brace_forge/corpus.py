"""Brace constructors and the enumeration corpus.

``holomorph_enumerate`` lists every circle table on a given additive
group's carrier: a skew brace structure is exactly a map a -> lambda_a
into Aut(N,+) with lambda_{a + lambda_a(b)} = lambda_a lambda_b, i.e. a
regular subgroup of the holomorph N x| Aut(N).  The search assigns
lambda-values with forward propagation of that closure law.
"""

from __future__ import annotations

import functools
import itertools
import math

import numpy as np

from .core import (
    FiniteSkewBrace,
    PreconditionError,
    SizeCapExceeded,
    brace_from_tables,
    table_dtype,
)
from .groups import GroupSpec, group_table, parse_group_spec

__all__ = [
    "group_brace",
    "radical_ring_brace",
    "group_automorphisms",
    "holomorph_enumerate",
    "standard_corpus",
    "CORPUS_GROUPS",
]

# one representative labeling per isomorphism class of expressible groups
# of order <= 8 (quaternion is not in the named families)
CORPUS_GROUPS = ("c1", "c2", "c3", "c4", "c2xc2", "c5", "c6", "s3",
                 "c7", "c8", "c2xc4", "c2xc2xc2", "d4")


def group_brace(spec, variant: str = "trivial", name: str | None = None) -> FiniteSkewBrace:
    """Brace with both operations induced by one group table.

    trivial: circ = add.  almost_trivial: a o b = b + a (the opposite
    group), which satisfies the compatibility relation for any group.
    """
    table = group_table(spec)
    if variant == "trivial":
        circ = table
    elif variant == "almost_trivial":
        circ = table.T.copy()
    else:
        raise PreconditionError(f"unknown variant {variant!r}")
    if name is None:
        name = f"{spec}-{variant.replace('_', '-')}"
    return brace_from_tables(table, circ, name)


def radical_ring_brace(modulus: int, generator: int, name: str | None = None) -> FiniteSkewBrace:
    """Brace of the radical subring of Z/modulus generated by ``generator``.

    Carrier is the additive subgroup {0, g, 2g, ...} with labels in
    ascending order; add is label addition and a o b = a + b + ab.  Raises
    when some element is not nilpotent (the circle operation would not be
    a group).  The star table is asserted to match ring multiplication.
    """
    if modulus < 2:
        raise PreconditionError("modulus must be at least 2")
    g = generator % modulus
    d = math.gcd(g, modulus) or modulus
    labels = list(range(0, modulus, d))
    n = len(labels)
    for x in labels:
        power = x
        seen = set()
        while power != 0:
            if power in seen:
                raise PreconditionError(
                    f"element {x} of {generator}Z/{modulus}Z is not nilpotent; "
                    "the subring is not radical")
            seen.add(power)
            power = power * x % modulus
    # index arithmetic: label of index i is i*d
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    circ = (idx[:, None] + idx[None, :] + d * idx[:, None] * idx[None, :]) % n
    brace = brace_from_tables(add.astype(table_dtype(n)), circ.astype(table_dtype(n)),
                              name or f"R{n}")
    mult = (d * idx[:, None] * idx[None, :]) % n
    assert np.array_equal(brace.star_table(), mult), "star must equal ring multiplication"
    return brace


def group_automorphisms(table: np.ndarray) -> list[np.ndarray]:
    """All automorphisms of a group table, as permutation arrays sorted
    lexicographically (identity first).  Brute force over identity-fixing
    permutations; intended for small orders."""
    n = table.shape[0]
    if n > 9:
        raise SizeCapExceeded(f"automorphism brute force capped at order 9, got {n}")
    out = []
    for rest in itertools.permutations(range(1, n)):
        p = np.array((0,) + rest, dtype=table.dtype)
        if np.array_equal(p[table], table[np.ix_(p, p)]):
            out.append(p)
    return out


def _lambda_system_search(add: np.ndarray, auts: list[np.ndarray]) -> list[np.ndarray]:
    """All total maps a -> aut index with lambda_0 = id and
    lambda_{a + lambda_a(b)} = lambda_a . lambda_b; returns circ tables."""
    n = add.shape[0]
    k = len(auts)
    aut_rows = [tuple(int(x) for x in p) for p in auts]
    index_of = {p: i for i, p in enumerate(aut_rows)}
    comp = [[index_of[tuple(aut_rows[i][x] for x in aut_rows[j])] for j in range(k)]
            for i in range(k)]
    addl = [tuple(int(x) for x in row) for row in add]

    alpha = [-1] * n
    alpha[0] = 0  # identity automorphism is lexicographically first
    assigned = [0]
    results: list[np.ndarray] = []

    def propagate(queue: list[int], trail: list[int]) -> bool:
        while queue:
            a = queue.pop()
            for b in list(assigned):
                for x, y in ((a, b), (b, a)):
                    c = addl[x][aut_rows[alpha[x]][y]]
                    req = comp[alpha[x]][alpha[y]]
                    if alpha[c] == -1:
                        alpha[c] = req
                        assigned.append(c)
                        trail.append(c)
                        queue.append(c)
                    elif alpha[c] != req:
                        return False
        return True

    def undo(trail: list[int]):
        for c in trail:
            alpha[c] = -1
            assigned.remove(c)

    def dfs():
        try:
            free = alpha.index(-1)
        except ValueError:
            circ = np.array([[addl[a][aut_rows[alpha[a]][b]] for b in range(n)]
                             for a in range(n)], dtype=add.dtype)
            results.append(circ)
            return
        for t in range(k):
            alpha[free] = t
            assigned.append(free)
            trail = [free]
            if propagate([free], trail):
                dfs()
            undo(trail)

    # seed: propagate the forced values around the identity
    trail0: list[int] = []
    if propagate([0], trail0):
        dfs()
    return results


@functools.lru_cache(maxsize=None)
def _holomorph_enumerate_cached(canonical: str, limit: int) -> tuple[FiniteSkewBrace, ...]:
    add = group_table(canonical)
    n = add.shape[0]
    if n > limit:
        raise SizeCapExceeded(f"group order {n} exceeds the enumeration limit {limit}")
    auts = group_automorphisms(add)
    tables = _lambda_system_search(add, auts)
    seen: dict[bytes, np.ndarray] = {}
    for circ in tables:
        seen.setdefault(circ.tobytes(), circ)
    ordered = sorted(seen.values(), key=lambda t: tuple(t.ravel()))
    braces = []
    for i, circ in enumerate(ordered):
        braces.append(brace_from_tables(add, circ, f"{canonical}#{i}"))
    return tuple(braces)


def holomorph_enumerate(spec, limit: int = 8) -> list[FiniteSkewBrace]:
    """Every skew brace whose additive group is the given table, listed as
    circle tables on the same carrier, deduplicated, in a fixed order."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if isinstance(spec, GroupSpec):
        return list(_holomorph_enumerate_cached(spec.canonical, limit))
    # raw table: no cache
    add = np.asarray(spec)
    n = add.shape[0]
    if n > limit:
        raise SizeCapExceeded(f"group order {n} exceeds the enumeration limit {limit}")
    auts = group_automorphisms(add)
    tables = _lambda_system_search(add, auts)
    seen: dict[bytes, np.ndarray] = {}
    for circ in tables:
        seen.setdefault(circ.tobytes(), circ)
    ordered = sorted(seen.values(), key=lambda t: tuple(t.ravel()))
    return [brace_from_tables(add, circ, f"table{n}#{i}") for i, circ in enumerate(ordered)]


def _named_examples(max_order: int) -> list[FiniteSkewBrace]:
    out = [
        group_brace("c2", "trivial", name="T2"),
        radical_ring_brace(8, 2, name="R4"),
        group_brace("s3", "almost_trivial", name="S3at"),
        group_brace("a4", "almost_trivial", name="A4at"),
        group_brace("a5", "almost_trivial", name="A5at"),
        radical_ring_brace(4, 2, name="R2"),
        radical_ring_brace(9, 3, name="R3"),
        radical_ring_brace(16, 2, name="R8"),
        radical_ring_brace(27, 3, name="R9"),
        radical_ring_brace(32, 2, name="R16"),
    ]
    return [b for b in out if b.order <= max_order]


def standard_corpus(max_order: int = 8, holomorph_limit: int = 8) -> list[FiniteSkewBrace]:
    """The named examples plus every holomorph-enumerated brace on the
    canonical group list, deduplicated by exact tables (first name wins)."""
    braces = _named_examples(max_order)
    for spec in CORPUS_GROUPS:
        g = parse_group_spec(spec)
        if g.order <= min(max_order, holomorph_limit):
            braces.extend(holomorph_enumerate(g, limit=holomorph_limit))
    seen: set[tuple] = set()
    out = []
    for b in braces:
        key = (b.order, b.add.tobytes(), b.circ.tobytes())
        if key not in seen:
            seen.add(key)
            out.append(b)
    return out
