"""Finite skew brace carriers, axiom validation, and the lambda/star calculus.

A brace lives on the carrier {0..n-1} with the shared identity of both
group operations pinned at index 0.  Construction always goes through
validation; the per-element inverse tables and the full lambda table are
materialized as read-only numpy arrays so that downstream closure sweeps
are pure table gathers.
"""

from __future__ import annotations

import os
from typing import Iterable

import numpy as np

__all__ = [
    "DEFAULT_MAX_ORDER",
    "MAX_ORDER_ENV",
    "BraceForgeError",
    "TableFormatError",
    "ValidationFailure",
    "SizeCapExceeded",
    "PreconditionError",
    "DocumentSyntaxError",
    "ValidationReport",
    "FiniteSkewBrace",
    "max_order",
    "validate",
    "brace_from_tables",
    "table_eval",
    "generated_subbrace",
    "star_product",
    "normalize_members",
    "fmt_members",
]

DEFAULT_MAX_ORDER = 4096
MAX_ORDER_ENV = "BRACE_FORGE_MAX_ORDER"

# Above this order the n^3 triple scans are replaced by the generator-based
# check (Latin square + associativity on a generating set + additivity of
# every lambda_a on additive generators).  Both modes decide exactly the
# same axioms; only witness minimality differs, see ValidationReport.
FAST_VALIDATE_THRESHOLD = 300


class BraceForgeError(Exception):
    """Base class for all library errors."""


class TableFormatError(BraceForgeError, ValueError):
    """Malformed table input: ragged, non-square, or entries out of range."""


class ValidationFailure(BraceForgeError, ValueError):
    """Tables were well-formed but violate the brace axioms."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        rules = ", ".join(sorted({rule for rule, _ in report.violations}))
        super().__init__(f"tables do not define a skew brace (violated: {rules})")


class SizeCapExceeded(BraceForgeError, ValueError):
    """A size or enumeration cap was exceeded."""


class PreconditionError(BraceForgeError, ValueError):
    """An operation's precondition does not hold for the given arguments."""


class DocumentSyntaxError(BraceForgeError, ValueError):
    """Text document does not conform to the grammar."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def max_order() -> int:
    """Global carrier-size cap.  Override with the BRACE_FORGE_MAX_ORDER env var."""
    raw = os.environ.get(MAX_ORDER_ENV)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        cap = int(raw)
    except ValueError:
        raise SizeCapExceeded(f"{MAX_ORDER_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise SizeCapExceeded(f"{MAX_ORDER_ENV} must be positive, got {cap}")
    return cap


def table_dtype(n: int):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


def as_table(obj, what: str = "table") -> np.ndarray:
    """Coerce a Cayley table to a square numpy int array, range-checked."""
    try:
        arr = np.asarray(obj)
    except ValueError as exc:  # pragma: no cover - numpy >=2 raises on ragged
        raise TableFormatError(f"{what}: {exc}") from None
    if arr.dtype == object:
        raise TableFormatError(f"{what} is ragged or non-numeric")
    if arr.dtype.kind == "f":
        as_int = arr.astype(np.int64)
        if not np.array_equal(as_int, arr):
            raise TableFormatError(f"{what} has non-integer entries")
        arr = as_int
    elif arr.dtype.kind not in "iu":
        raise TableFormatError(f"{what} has non-integer entries")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise TableFormatError(f"{what} must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        raise TableFormatError(f"{what} is empty")
    if arr.min() < 0 or arr.max() >= n:
        bad = np.argwhere((arr < 0) | (arr >= n))[0]
        raise TableFormatError(
            f"{what} entry {arr[tuple(bad)]} at ({bad[0]},{bad[1]}) out of range 0..{n - 1}"
        )
    return arr.astype(table_dtype(n))


# A violation is (rule-name, witness triple).  The witness replays as:
#   *-identity:      (a,0,0)  with t[0,a] != a or t[a,0] != a
#   *-associativity: (a,b,c)  with t[t[a,b],c] != t[a,t[b,c]]
#   *-inverses:      exhaustive: (a,0,0) with no b: t[a,b] == t[b,a] == 0;
#                    fast:       (a,b,c) with t[a,b] == t[a,c], b != c
#                                (a row/column duplicate, so a is not invertible)
#   brace-relation:  (a,b,c)  with a o (b+c) != (a o b) - a + (a o c)
Violation = tuple[str, tuple[int, int, int]]


class ValidationReport:
    """Outcome of validating a pair of tables.

    ``violations`` lists every violated rule once, each with a witness
    triple.  In exhaustive mode witnesses are the lexicographically
    smallest; in fast mode (large orders) they are valid but not
    necessarily minimal.
    """

    def __init__(self, order: int, violations: list[Violation], mode: str,
                 brace: "FiniteSkewBrace | None" = None):
        self.order = order
        self.violations = violations
        self.mode = mode
        self.brace = brace

    @property
    def ok(self) -> bool:
        return not self.violations

    def __repr__(self):
        state = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"ValidationReport(order={self.order}, {state}, mode={self.mode!r})"


def _identity_violation(t: np.ndarray, prefix: str) -> list[Violation]:
    n = t.shape[0]
    ar = np.arange(n)
    bad = np.flatnonzero((t[0] != ar) | (t[:, 0] != ar))
    if bad.size:
        return [(f"{prefix}-identity", (int(bad[0]), 0, 0))]
    return []


def _assoc_violation_full(t: np.ndarray, prefix: str) -> list[Violation]:
    # row-major scan keeps the first witness lexicographically smallest
    for a in range(t.shape[0]):
        lhs = t[t[a]]          # t[t[a,b], c]
        rhs = t[a][t]          # t[a, t[b,c]]
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            return [(f"{prefix}-associativity", (a, int(b), int(c)))]
    return []


def _inverse_violation_full(t: np.ndarray, prefix: str) -> list[Violation]:
    zero = t == 0
    ok = (zero & zero.T).any(axis=1)
    bad = np.flatnonzero(~ok)
    if bad.size:
        return [(f"{prefix}-inverses", (int(bad[0]), 0, 0))]
    return []


def closure_generators(t: np.ndarray) -> list[int]:
    """Greedy generating set of the magma closure of ``t`` starting at {0}."""
    n = t.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    while not mask.all():
        g = int(np.flatnonzero(~mask)[0])
        gens.append(g)
        mask[g] = True
        frontier = np.array([g])
        while frontier.size:
            members = np.flatnonzero(mask)
            cand = np.concatenate([
                t[np.ix_(frontier, members)].ravel(),
                t[np.ix_(members, frontier)].ravel(),
            ])
            cand = np.unique(cand)
            new = cand[~mask[cand]]
            mask[new] = True
            frontier = new
    return gens


def _group_violations_fast(t: np.ndarray, prefix: str) -> list[Violation]:
    out = _identity_violation(t, prefix)
    n = t.shape[0]
    ar = np.arange(n)
    rows_sorted = np.sort(t, axis=1)
    cols_sorted = np.sort(t, axis=0)
    bad_row = np.flatnonzero((rows_sorted != ar[None, :]).any(axis=1))
    bad_col = np.flatnonzero((cols_sorted != ar[:, None]).any(axis=0))
    if bad_row.size or bad_col.size:
        # a duplicate in a line of the table: some element is not invertible
        if bad_row.size:
            a = int(bad_row[0])
            line = t[a]
        else:
            a = int(bad_col[0])
            line = t[:, a]
        order = np.argsort(line, kind="stable")
        dup = np.flatnonzero(np.diff(line[order]) == 0)[0]
        b, c = sorted((int(order[dup]), int(order[dup + 1])))
        out.append((f"{prefix}-inverses", (a, b, c)))
        return out
    for g in closure_generators(t):
        lhs = t[:, t[g]]       # t[a, t[g,c]]
        rhs = t[t[:, g]]       # t[t[a,g], c]
        if not np.array_equal(lhs, rhs):
            a, c = np.argwhere(lhs != rhs)[0]
            out.append((f"{prefix}-associativity", (int(a), g, int(c))))
            return out
    return out


def _group_violations_full(t: np.ndarray, prefix: str) -> list[Violation]:
    out = _identity_violation(t, prefix)
    out += _assoc_violation_full(t, prefix)
    out += _inverse_violation_full(t, prefix)
    return out


def _brace_relation_violation_full(add, circ, neg) -> list[Violation]:
    for a in range(add.shape[0]):
        lam_a = add[neg[a]][circ[a]]           # lambda_a(b) for all b
        lhs = lam_a[add]                       # lambda_a(b+c)
        rhs = add[lam_a[:, None], lam_a[None, :]]
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            return [("brace-relation", (a, int(b), int(c)))]
    return []


def _brace_relation_violation_fast(add, circ, neg, lam) -> list[Violation]:
    # lambda_a is additive for all (b,c) iff it is additive for b in a
    # generating set of (A,+) and all c; checked for every a at once.
    for g in closure_generators(add):
        lhs = lam[:, add[g]]                       # lambda_a(g+c)
        rhs = add[lam[:, g][:, None], lam]         # lambda_a(g) + lambda_a(c)
        if not np.array_equal(lhs, rhs):
            a, c = np.argwhere(lhs != rhs)[0]
            return [("brace-relation", (int(a), g, int(c)))]
    return []


def _derive_neg(t: np.ndarray) -> np.ndarray:
    return np.argmax(t == 0, axis=1).astype(t.dtype)


def validate(add, circ, name: str = "", mode: str | None = None,
             size_cap: int | None = None) -> ValidationReport:
    """Check that two Cayley tables define a finite skew brace.

    Verifies the group axioms of both tables, the shared identity at
    index 0, and the compatibility relation a o (b+c) = (a o b) - a + (a o c)
    over all triples.  Returns a report; ``report.brace`` is the constructed
    carrier when everything passes.

    ``mode`` is "exhaustive", "fast", or None to pick by order.  Both modes
    verify the same statements (the fast mode checks associativity and the
    relation on generating sets, which is equivalent).
    """
    add = as_table(add, "add table")
    circ = as_table(circ, "circ table")
    if add.shape != circ.shape:
        raise TableFormatError(
            f"tables disagree on order: {add.shape[0]} vs {circ.shape[0]}")
    n = add.shape[0]
    cap = max_order() if size_cap is None else size_cap
    if n > cap:
        raise SizeCapExceeded(f"order {n} exceeds the size cap {cap}")
    if mode is None:
        mode = "exhaustive" if n <= FAST_VALIDATE_THRESHOLD else "fast"
    if mode not in ("exhaustive", "fast"):
        raise PreconditionError(f"unknown validation mode {mode!r}")

    group_check = _group_violations_full if mode == "exhaustive" else _group_violations_fast
    violations = group_check(add, "add") + group_check(circ, "circ")
    if violations:
        return ValidationReport(n, violations, mode)

    neg = _derive_neg(add)
    inv = _derive_neg(circ)
    lam = add[neg[:, None], circ]              # lambda_a(b) = -a + (a o b)
    if mode == "exhaustive":
        violations = _brace_relation_violation_full(add, circ, neg)
    else:
        violations = _brace_relation_violation_fast(add, circ, neg, lam)
    if violations:
        return ValidationReport(n, violations, mode)

    brace = FiniteSkewBrace(n, add, circ, neg, inv, lam, name)
    return ValidationReport(n, [], mode, brace)


class FiniteSkewBrace:
    """Immutable finite skew brace on {0..n-1} with identity 0.

    Do not call the constructor directly on unchecked tables; use
    ``brace_from_tables`` or ``validate``.
    """

    __slots__ = ("order", "add", "circ", "neg", "inv", "lam", "name", "_star")

    def __init__(self, order, add, circ, neg, inv, lam, name=""):
        self.order = int(order)
        self.add = add
        self.circ = circ
        self.neg = neg
        self.inv = inv
        self.lam = lam
        self.name = name
        self._star = None
        for arr in (add, circ, neg, inv, lam):
            arr.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, FiniteSkewBrace):
            return NotImplemented
        # labeled tables only; names are informational
        return (self.order == other.order
                and np.array_equal(self.add, other.add)
                and np.array_equal(self.circ, other.circ))

    def __hash__(self):
        return hash((self.order, self.add.tobytes(), self.circ.tobytes()))

    def __repr__(self):
        label = f", name={self.name!r}" if self.name else ""
        return f"FiniteSkewBrace(order={self.order}{label})"

    def with_name(self, name: str) -> "FiniteSkewBrace":
        clone = FiniteSkewBrace.__new__(FiniteSkewBrace)
        for slot in ("order", "add", "circ", "neg", "inv", "lam", "_star"):
            object.__setattr__(clone, slot, getattr(self, slot))
        object.__setattr__(clone, "name", name)
        return clone

    def __setattr__(self, key, value):
        if hasattr(self, "name") and key != "_star":
            raise AttributeError("FiniteSkewBrace is immutable")
        object.__setattr__(self, key, value)

    # -- scalar calculus ------------------------------------------------

    def star(self, a: int, b: int) -> int:
        """a * b = lambda_a(b) - b."""
        return int(self.add[self.lam[a, b], self.neg[b]])

    def star_table(self) -> np.ndarray:
        if self._star is None:
            tab = self.add[self.lam, np.broadcast_to(self.neg, self.lam.shape)]
            tab.setflags(write=False)
            self._star = tab
        return self._star

    def elements(self) -> range:
        return range(self.order)

    # pickling support (slots-based class)
    def __getstate__(self):
        return {s: getattr(self, s) for s in self.__slots__ if s != "_star"}

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)
        object.__setattr__(self, "_star", None)


def brace_from_tables(add, circ, name: str = "", mode: str | None = None) -> FiniteSkewBrace:
    """Validate and construct; raises ValidationFailure on axiom violations."""
    report = validate(add, circ, name, mode=mode)
    if not report.ok:
        raise ValidationFailure(report)
    assert report.brace is not None
    return report.brace


def _check_index(n: int, value: int, what: str = "index") -> int:
    v = int(value)
    if not 0 <= v < n:
        raise PreconditionError(f"{what} {value} out of range 0..{n - 1}")
    return v


def normalize_members(n: int, members: Iterable[int]) -> np.ndarray:
    """Sorted unique member array, range-checked against the carrier."""
    arr = np.unique(np.fromiter((int(m) for m in members), dtype=np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= n):
        bad = arr[0] if arr[0] < 0 else arr[-1]
        raise PreconditionError(f"member {bad} out of range 0..{n - 1}")
    return arr


def fmt_members(members: Iterable[int]) -> str:
    return "{" + ",".join(str(int(m)) for m in sorted(members)) + "}"


_EVAL_KINDS = ("add", "circ", "neg", "inv", "lambda", "star")


def table_eval(brace: FiniteSkewBrace, kind: str, a: int, b: int | None = None) -> int:
    """Evaluate one table entry: add, circ, neg, inv, lambda, or star."""
    if kind not in _EVAL_KINDS:
        raise PreconditionError(f"unknown table kind {kind!r}, expected one of {_EVAL_KINDS}")
    n = brace.order
    a = _check_index(n, a, "a")
    if kind in ("neg", "inv"):
        if b is not None:
            raise PreconditionError(f"{kind} takes a single element")
        return int(brace.neg[a] if kind == "neg" else brace.inv[a])
    if b is None:
        raise PreconditionError(f"{kind} needs two elements")
    b = _check_index(n, b, "b")
    if kind == "add":
        return int(brace.add[a, b])
    if kind == "circ":
        return int(brace.circ[a, b])
    if kind == "lambda":
        return int(brace.lam[a, b])
    return brace.star(a, b)


def _closure(brace: FiniteSkewBrace, seed: Iterable[int], families) -> frozenset[int]:
    """Generic frontier-based fixed point.  ``families(F, M)`` yields
    candidate arrays generated by the frontier F against members M."""
    n = brace.order
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    seed_arr = normalize_members(n, seed)
    mask[seed_arr] = True
    frontier = np.flatnonzero(mask)
    while frontier.size:
        members = np.flatnonzero(mask)
        cand = np.unique(np.concatenate(families(frontier, members)))
        new = cand[~mask[cand]]
        mask[new] = True
        frontier = new
    return frozenset(int(x) for x in np.flatnonzero(mask))


def generated_subbrace(brace: FiniteSkewBrace, seed: Iterable[int]) -> frozenset[int]:
    """Smallest subset containing ``seed`` and 0 that is closed under add,
    circ, and both kinds of inverse.  Deterministic fixed-point sweep."""
    add, circ, neg, inv = brace.add, brace.circ, brace.neg, brace.inv

    def families(F, M):
        return [
            add[np.ix_(F, M)].ravel(), add[np.ix_(M, F)].ravel(),
            circ[np.ix_(F, M)].ravel(), circ[np.ix_(M, F)].ravel(),
            neg[F], inv[F],
        ]

    return _closure(brace, seed, families)


def star_set(brace: FiniteSkewBrace, bs: Iterable[int], cs: Iterable[int]) -> frozenset[int]:
    """The raw set {b * c : b in bs, c in cs} (no closure)."""
    n = brace.order
    B = normalize_members(n, bs)
    C = normalize_members(n, cs)
    if not B.size or not C.size:
        return frozenset()
    vals = brace.add[brace.lam[np.ix_(B, C)], np.broadcast_to(brace.neg[C], (B.size, C.size))]
    return frozenset(int(x) for x in np.unique(vals))


def star_product(brace: FiniteSkewBrace, bs: Iterable[int], cs: Iterable[int]) -> frozenset[int]:
    """B * C: the sub-skew-brace generated by all pairwise stars b * c."""
    return generated_subbrace(brace, star_set(brace, bs, cs))
