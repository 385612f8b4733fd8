"""Ideals, quotients, and semiprimality of finite skew braces.

An ideal is a subgroup of the circle group that is normal under circle
conjugation, invariant under every lambda_a, and commutes with every
element additively (a + I = I + a as sets).  Those four conditions force
additive closure and normality, which downstream code relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import (
    FiniteSkewBrace,
    PreconditionError,
    SizeCapExceeded,
    brace_from_tables,
    fmt_members,
    normalize_members,
    star_set,
)

__all__ = [
    "Ideal",
    "SemiprimeVerdict",
    "ExtensionReport",
    "is_ideal",
    "as_ideal",
    "ideal_closure",
    "enumerate_ideals",
    "quotient",
    "restrict",
    "is_trivial",
    "is_semiprime",
    "check_semiprime_extension",
    "DEFAULT_IDEAL_CAP",
]

DEFAULT_IDEAL_CAP = 128

IDEAL_RULES = ("circ-subgroup", "circ-normality", "lambda-invariance", "coset-symmetry")


@dataclass(frozen=True)
class Ideal:
    """A verified ideal: the parent brace and its member set."""

    brace: FiniteSkewBrace
    members: frozenset[int]

    def __len__(self):
        return len(self.members)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __repr__(self):
        return f"Ideal({fmt_members(self.members)} of order-{self.brace.order} brace)"


def is_ideal(brace: FiniteSkewBrace, members: Iterable[int]) -> tuple[bool, str | None]:
    """Decide whether ``members`` is an ideal; returns (flag, first failed rule).

    Rules are checked in the fixed order circ-subgroup, circ-normality,
    lambda-invariance, coset-symmetry.
    """
    n = brace.order
    S = normalize_members(n, members)
    mask = np.zeros(n, dtype=bool)
    mask[S] = True
    if not S.size or not mask[0]:
        return False, "circ-subgroup"
    if not (mask[brace.circ[np.ix_(S, S)]].all() and mask[brace.inv[S]].all()):
        return False, "circ-subgroup"
    conj = brace.circ[brace.circ[:, S], brace.inv[:, None]]
    if not mask[conj].all():
        return False, "circ-normality"
    if not mask[brace.lam[:, S]].all():
        return False, "lambda-invariance"
    left = np.sort(brace.add[:, S], axis=1)       # row a: a + I
    right = np.sort(brace.add[S, :].T, axis=1)    # row a: I + a
    if not np.array_equal(left, right):
        return False, "coset-symmetry"
    return True, None


def as_ideal(brace: FiniteSkewBrace, members: Iterable[int]) -> Ideal:
    """Wrap a member set as an Ideal after verifying it; raises otherwise."""
    S = frozenset(int(m) for m in members)
    ok, rule = is_ideal(brace, S)
    if not ok:
        raise PreconditionError(f"{fmt_members(S)} is not an ideal (fails {rule})")
    return Ideal(brace, S)


def _closure_mask(brace: FiniteSkewBrace, mask: np.ndarray, frontier: np.ndarray) -> np.ndarray:
    """Grow ``mask`` to the ideal fixed point, treating everything already
    set as processed and expanding only from ``frontier``."""
    add, circ, neg, inv, lam = brace.add, brace.circ, brace.neg, brace.inv, brace.lam
    while frontier.size:
        members = np.flatnonzero(mask)
        F = frontier
        cand = np.unique(np.concatenate([
            circ[np.ix_(F, members)].ravel(),
            circ[np.ix_(members, F)].ravel(),
            inv[F],
            circ[circ[:, F], inv[:, None]].ravel(),   # x o f o x^-1
            add[add[:, F], neg[:, None]].ravel(),     # x + f - x
            lam[:, F].ravel(),
        ]))
        new = cand[~mask[cand]]
        mask[new] = True
        frontier = new
    return mask


def ideal_closure(brace: FiniteSkewBrace, seed: Iterable[int]) -> Ideal:
    """Least ideal containing ``seed``: fixed point under circle products and
    inverses, circle and additive conjugation by every element, and every
    lambda_a image."""
    n = brace.order
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    mask[normalize_members(n, seed)] = True
    mask = _closure_mask(brace, mask, np.flatnonzero(mask))
    return Ideal(brace, frozenset(int(x) for x in np.flatnonzero(mask)))


def enumerate_ideals(brace: FiniteSkewBrace, cap: int = DEFAULT_IDEAL_CAP) -> list[Ideal]:
    """All ideals, ascending by size then lexicographic membership.

    Every ideal is a join of principal ideals, so the list is the closure
    of the principal ideals under single-generator joins.
    """
    n = brace.order
    if n > cap:
        raise SizeCapExceeded(f"order {n} exceeds the ideal enumeration cap {cap}")

    def key_of(mask: np.ndarray) -> bytes:
        return np.packbits(mask).tobytes()

    # distinct principal ideals, each tagged with a generating element
    principal: dict[bytes, tuple[np.ndarray, int]] = {}
    for a in range(n):
        mask = np.zeros(n, dtype=bool)
        mask[0] = True
        mask[a] = True
        mask = _closure_mask(brace, mask, np.array([a]) if a else np.array([0]))
        principal.setdefault(key_of(mask), (mask, a))

    # joins of an ideal with one principal generator; incremental closure
    # from the already-closed ideal keeps each join cheap
    known: dict[bytes, np.ndarray] = {k: m for k, (m, _) in principal.items()}
    generators = [a for _, a in principal.values()]
    queue = list(known.values())
    while queue:
        base = queue.pop()
        for a in generators:
            if base[a]:
                continue
            mask = base.copy()
            mask[a] = True
            mask = _closure_mask(brace, mask, np.array([a]))
            k = key_of(mask)
            if k not in known:
                known[k] = mask
                queue.append(mask)
    sets = sorted((frozenset(int(x) for x in np.flatnonzero(m)) for m in known.values()),
                  key=lambda s: (len(s), tuple(sorted(s))))
    return [Ideal(brace, s) for s in sets]


def _coerce_ideal(brace: FiniteSkewBrace, ideal) -> Ideal:
    if isinstance(ideal, Ideal):
        if ideal.brace is not brace and ideal.brace != brace:
            raise PreconditionError("ideal belongs to a different brace")
        return ideal
    return as_ideal(brace, ideal)


def quotient(brace: FiniteSkewBrace, ideal) -> tuple[FiniteSkewBrace, np.ndarray]:
    """Quotient brace and the element -> coset-index map.

    The coset of 0 gets index 0; the remaining cosets are ordered by their
    least member.  The result is re-validated.
    """
    I = _coerce_ideal(brace, ideal)
    n = brace.order
    members = np.fromiter(sorted(I.members), dtype=np.int64)
    # coset of x is x + I; reps are least members
    coset_min = np.min(brace.add[:, members], axis=1)
    reps = np.unique(coset_min)
    assert reps[0] == 0
    coset_index = np.searchsorted(reps, coset_min)
    k = reps.size
    qadd = coset_index[brace.add[np.ix_(reps, reps)]]
    qcirc = coset_index[brace.circ[np.ix_(reps, reps)]]
    name = f"{brace.name}/{fmt_members(I.members)}" if brace.name else ""
    q = brace_from_tables(qadd, qcirc, name)
    return q, coset_index.astype(np.int64)


def restrict(brace: FiniteSkewBrace, members: Iterable[int], name: str = "") -> FiniteSkewBrace:
    """View a sub-skew-brace (e.g. an ideal) as a brace on its own members,
    relabeled in ascending order so 0 stays first."""
    n = brace.order
    S = normalize_members(n, members)
    if not S.size or S[0] != 0:
        raise PreconditionError("restriction needs a subset containing 0")
    index = np.full(n, -1, dtype=np.int64)
    index[S] = np.arange(S.size)
    sub_add = index[brace.add[np.ix_(S, S)]]
    sub_circ = index[brace.circ[np.ix_(S, S)]]
    if (sub_add < 0).any() or (sub_circ < 0).any():
        raise PreconditionError("subset is not closed under the operations")
    return brace_from_tables(sub_add, sub_circ, name)


def is_trivial(brace: FiniteSkewBrace) -> bool:
    """True when a * b = 0 everywhere, i.e. add and circ coincide."""
    return not brace.star_table().any()


@dataclass(frozen=True)
class SemiprimeVerdict:
    semiprime: bool
    witness: Ideal | None
    method: str

    def __repr__(self):
        if self.semiprime:
            return f"SemiprimeVerdict(semiprime, method={self.method!r})"
        return (f"SemiprimeVerdict(not semiprime, witness={fmt_members(self.witness.members)}, "
                f"method={self.method!r})")


def _stars_vanish(brace: FiniteSkewBrace, members: np.ndarray) -> bool:
    vals = brace.add[brace.lam[np.ix_(members, members)],
                     np.broadcast_to(brace.neg[members], (members.size, members.size))]
    return not vals.any()


def _principal_star_scan(brace: FiniteSkewBrace) -> Ideal | None:
    """First a (ascending) whose principal ideal has all-zero pairwise stars.

    The closure of {a} is grown incrementally; as soon as a nonzero star
    shows up between known members the candidate is discarded, which keeps
    the scan cheap on semiprime braces.
    """
    n = brace.order
    add, circ, neg, inv, lam = brace.add, brace.circ, brace.neg, brace.inv, brace.lam
    for a in range(1, n):
        mask = np.zeros(n, dtype=bool)
        mask[0] = True
        mask[a] = True
        frontier = np.array([a])
        aborted = False
        while frontier.size:
            members = np.flatnonzero(mask)
            F = frontier
            s1 = add[lam[np.ix_(F, members)],
                     np.broadcast_to(neg[members], (F.size, members.size))]
            s2 = add[lam[np.ix_(members, F)],
                     np.broadcast_to(neg[F], (members.size, F.size))]
            if s1.any() or s2.any():
                aborted = True
                break
            cand = np.unique(np.concatenate([
                circ[np.ix_(F, members)].ravel(),
                circ[np.ix_(members, F)].ravel(),
                inv[F],
                circ[circ[:, F], inv[:, None]].ravel(),
                add[add[:, F], neg[:, None]].ravel(),
                lam[:, F].ravel(),
            ]))
            new = cand[~mask[cand]]
            mask[new] = True
            frontier = new
        if not aborted:
            return Ideal(brace, frozenset(int(x) for x in np.flatnonzero(mask)))
    return None


def is_semiprime(brace: FiniteSkewBrace, method: str = "fast",
                 cap: int = DEFAULT_IDEAL_CAP) -> SemiprimeVerdict:
    """Decide semiprimality: no nonzero ideal I with I * I = 0.

    fast: scans principal ideals (the closure of each single element); any
    witness ideal contains a principal witness, so this is complete.
    exhaustive: enumerates all ideals and returns the smallest witness.
    """
    if method == "fast":
        witness = _principal_star_scan(brace)
        return SemiprimeVerdict(witness is None, witness, "fast")
    if method == "exhaustive":
        for ideal in enumerate_ideals(brace, cap=cap):
            members = np.fromiter(sorted(ideal.members), dtype=np.int64)
            if members.size > 1 and _stars_vanish(brace, members):
                return SemiprimeVerdict(False, ideal, "exhaustive")
        return SemiprimeVerdict(True, None, "exhaustive")
    raise PreconditionError(f"unknown method {method!r}, expected 'fast' or 'exhaustive'")


@dataclass(frozen=True)
class ExtensionReport:
    """Evidence for the extension property of semiprimality.

    If the ideal (as a brace) and the quotient are both semiprime then the
    whole brace must be; ``containment_ok`` records the supporting coset
    containment (J+I) * (J+I) <= J*J + I for every ideal J.
    """

    ideal_semiprime: SemiprimeVerdict
    quotient_semiprime: SemiprimeVerdict
    parent_semiprime: SemiprimeVerdict
    implication_ok: bool
    containment_ok: bool
    containment_failures: tuple[tuple[int, ...], ...]


def check_semiprime_extension(brace: FiniteSkewBrace, ideal,
                              cap: int = DEFAULT_IDEAL_CAP) -> ExtensionReport:
    """Evaluate the three semiprimality verdicts around an ideal and check
    the implication plus its supporting containment over all ideals J."""
    I = _coerce_ideal(brace, ideal)
    I_sorted = np.fromiter(sorted(I.members), dtype=np.int64)
    sub = restrict(brace, I.members)
    q, _ = quotient(brace, I)
    v_ideal = is_semiprime(sub, "exhaustive", cap=cap)
    v_quot = is_semiprime(q, "exhaustive", cap=cap)
    v_parent = is_semiprime(brace, "exhaustive", cap=cap)
    implication_ok = not (v_ideal.semiprime and v_quot.semiprime) or v_parent.semiprime

    from .core import star_product  # local import to keep module load light
    containment_failures = []
    imask = np.zeros(brace.order, dtype=bool)
    imask[I_sorted] = True
    for J in enumerate_ideals(brace, cap=cap):
        J_sorted = np.fromiter(sorted(J.members), dtype=np.int64)
        ji = np.unique(brace.add[np.ix_(J_sorted, I_sorted)])
        lhs = star_product(brace, ji, ji)
        jj = np.fromiter(sorted(star_product(brace, J_sorted, J_sorted)), dtype=np.int64)
        rhs_mask = np.zeros(brace.order, dtype=bool)
        rhs_mask[np.unique(brace.add[np.ix_(jj, I_sorted)])] = True
        if not all(rhs_mask[x] for x in lhs):
            containment_failures.append(J.sorted())
    return ExtensionReport(
        v_ideal, v_quot, v_parent, implication_ok,
        not containment_failures, tuple(containment_failures),
    )
