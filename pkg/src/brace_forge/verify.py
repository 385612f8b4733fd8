"""Sweeps that machine-check the statements behind the CLI ids
lemma31, lemma32, cor28, thm33, and q34 over the standard corpus.

Every sweep builds a deterministic list of cases, runs them (optionally
across worker processes in contiguous chunks, which keeps output
byte-identical for any worker count), and returns a SweepReport whose
counterexamples carry the serialized inputs needed to replay them.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .autos import sigma_actions
from .core import FiniteSkewBrace, PreconditionError, fmt_members, max_order
from .corpus import group_brace, standard_corpus
from .docio import serialize_document
from .ideals import (
    DEFAULT_IDEAL_CAP,
    enumerate_ideals,
    is_ideal,
    is_semiprime,
)
from .products import SigmaAction, pointwise_lift, semidirect, wreath, wreath_base

__all__ = [
    "Counterexample",
    "CaseResult",
    "SweepReport",
    "render_report",
    "verify_lemma31",
    "verify_lemma32",
    "verify_cor28_thm33",
    "search_q34",
    "DEFAULT_SIGMA_BUDGET",
    "STATEMENTS",
]

DEFAULT_SIGMA_BUDGET = 64
DEFAULT_CORPUS_MAX = 8
STATEMENTS = ("lemma31", "lemma32", "cor28", "thm33", "q34")


@dataclass(frozen=True)
class Counterexample:
    case_id: str
    documents: tuple[str, ...]
    witness: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    ok: bool
    info: str
    witness: tuple[int, ...] = ()
    documents: tuple[str, ...] = ()


@dataclass(frozen=True)
class SweepReport:
    statement: str
    attempted: int
    passed: int
    counterexamples: tuple[Counterexample, ...]
    elapsed: float
    notes: tuple[str, ...]
    cases: tuple[CaseResult, ...]

    def __post_init__(self):
        assert self.passed + len(self.counterexamples) == self.attempted


def _assemble(statement: str, results: list[CaseResult], elapsed: float,
              notes: tuple[str, ...]) -> SweepReport:
    passed = sum(1 for r in results if r.ok)
    cx = tuple(Counterexample(r.case_id, r.documents, r.witness, r.info)
               for r in results if not r.ok)
    return SweepReport(statement, len(results), passed, cx, elapsed, notes, tuple(results))


def render_report(report: SweepReport, stream) -> None:
    """Line-oriented text: one CASE line per case, a summary line, then a
    REPLAY block per counterexample with the serialized inputs."""
    for note in report.notes:
        stream.write(f"NOTE {note}\n")
    for r in report.cases:
        verdict = "PASS" if r.ok else "FAIL"
        tail = f" {r.info}" if r.info else ""
        stream.write(f"CASE {r.case_id} {verdict}{tail}\n")
    stream.write(f"{report.statement}: {report.attempted} cases, "
                 f"{len(report.counterexamples)} counterexamples\n")
    for cx in report.counterexamples:
        witness = fmt_members(cx.witness) if cx.witness else "{}"
        stream.write(f"REPLAY {cx.case_id} witness={witness}\n")
        for doc in cx.documents:
            stream.write(doc)


# ---------------------------------------------------------------------------
# case execution

def _dispatch(item: tuple) -> CaseResult:
    kind = item[0]
    return _CASE_FUNCS[kind](*item[1:])


def _run_chunk(items: list[tuple]) -> list[CaseResult]:
    return [_dispatch(it) for it in items]


def _run_items(items: list[tuple], jobs: int) -> list[CaseResult]:
    if jobs <= 1 or len(items) <= 1:
        return _run_chunk(items)
    jobs = min(jobs, len(items))
    bounds = np.linspace(0, len(items), jobs + 1).astype(int)
    chunks = [items[bounds[i]:bounds[i + 1]] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_chunk, chunk) for chunk in chunks if chunk]
        return [r for f in futures for r in f.result()]


def _filter_items(items: list[tuple], only: str | None) -> list[tuple]:
    if only is None:
        return items
    kept = [it for it in items if it[1] == only]
    if not kept:
        raise PreconditionError(f"no case matches id {only!r}")
    return kept


# ---------------------------------------------------------------------------
# lemma31: every ideal of the function-space base projects positionwise
# to an ideal of the bottom brace

# base tables and their ideal lists depend only on (G, positions); cache
# per process so repeated (G, H) pairs with equal |H| are free
_BASE_MEMO: dict[tuple[bytes, bytes, int], tuple[np.ndarray, list[np.ndarray]]] = {}


def _base_ideals(G: FiniteSkewBrace, H: FiniteSkewBrace):
    key = (G.add.tobytes(), G.circ.tobytes(), H.order)
    hit = _BASE_MEMO.get(key)
    if hit is None:
        W, ctx = wreath_base(G, H)
        digits = ctx.digit_matrix()
        members = [np.fromiter(i.sorted(), dtype=np.int64)
                   for i in enumerate_ideals(W, cap=DEFAULT_IDEAL_CAP)]
        hit = (digits, members)
        _BASE_MEMO[key] = hit
    return hit


def _case_lemma31(case_id: str, G: FiniteSkewBrace, H: FiniteSkewBrace) -> CaseResult:
    digits, ideal_members = _base_ideals(G, H)
    for members in ideal_members:
        digs = digits[members]
        for h in range(H.order):
            proj = np.unique(digs[:, h])
            ok, rule = is_ideal(G, proj)
            if not ok:
                return CaseResult(
                    case_id, False,
                    f"ideal={fmt_members(members)} h={h} fails {rule}",
                    witness=tuple(int(x) for x in proj),
                    documents=(serialize_document(G), serialize_document(H)),
                )
    return CaseResult(case_id, True,
                      f"ideals={len(ideal_members)} positions={H.order}")


def verify_lemma31(max_g: int = DEFAULT_CORPUS_MAX, max_h: int = DEFAULT_CORPUS_MAX,
                   base_cap: int = 64, jobs: int = 1,
                   only: str | None = None) -> SweepReport:
    """For corpus pairs (G, H) with |G|^|H| <= base_cap: every ideal of
    the function-space base projects at every position to an ideal of G."""
    t0 = time.perf_counter()
    notes = []
    if base_cap > DEFAULT_IDEAL_CAP:
        notes.append(f"base order cap clamped from {base_cap} to {DEFAULT_IDEAL_CAP} "
                     "(ideal enumeration limit)")
        base_cap = DEFAULT_IDEAL_CAP
    corpus = standard_corpus(DEFAULT_CORPUS_MAX)
    gs = [b for b in corpus if b.order <= max_g]
    hs = [b for b in corpus if b.order <= max_h]
    items = []
    for G in gs:
        for H in hs:
            if G.order ** H.order <= base_cap:
                items.append(("lemma31", f"lemma31:{G.name}:{H.name}", G, H))
    items = _filter_items(items, only)
    results = _run_items(items, jobs)
    return _assemble("lemma31", results, time.perf_counter() - t0, tuple(notes))


# ---------------------------------------------------------------------------
# lemma32: base of a semiprime brace is semiprime; lifted witnesses
# certify the converse direction on non-semiprime bottoms

def _case_lemma32_base(case_id: str, G: FiniteSkewBrace, H: FiniteSkewBrace) -> CaseResult:
    W, _ = wreath_base(G, H)
    verdict = is_semiprime(W, method="fast")
    if verdict.semiprime:
        return CaseResult(case_id, True, f"order={W.order} semiprime")
    return CaseResult(
        case_id, False, f"order={W.order} unexpectedly not semiprime",
        witness=verdict.witness.sorted(),
        documents=(serialize_document(G), serialize_document(H)),
    )


def _case_lemma32_lift(case_id: str, G: FiniteSkewBrace, H: FiniteSkewBrace) -> CaseResult:
    verdict = is_semiprime(G, method="fast")
    docs = (serialize_document(G), serialize_document(H))
    if verdict.semiprime:
        return CaseResult(case_id, False, "expected a non-semiprime bottom brace",
                          documents=docs)
    W, ctx = wreath_base(G, H)
    lifted = pointwise_lift(ctx, verdict.witness.sorted())
    wit = tuple(int(x) for x in lifted)
    if lifted.size <= 1:
        return CaseResult(case_id, False, "lift is zero", witness=wit, documents=docs)
    ok, rule = is_ideal(W, lifted)
    if not ok:
        return CaseResult(case_id, False, f"lift fails {rule}", witness=wit,
                          documents=docs)
    rows = lifted
    stars = W.add[W.lam[np.ix_(rows, rows)],
                  np.broadcast_to(W.neg[rows], (rows.size, rows.size))]
    if stars.any():
        return CaseResult(case_id, False, "lifted stars do not vanish", witness=wit,
                          documents=docs)
    return CaseResult(
        case_id, True,
        f"witness={fmt_members(verdict.witness.members)} lift_size={lifted.size} "
        f"certifies W order={W.order} not semiprime")


def verify_lemma32(G: FiniteSkewBrace | None = None, H: FiniteSkewBrace | None = None,
                   base_max: int | None = None, corpus_max: int = DEFAULT_CORPUS_MAX,
                   jobs: int = 1, only: str | None = None) -> SweepReport:
    """Main case: the function-space base over a semiprime G is itself
    semiprime.  Converse cases: for every non-semiprime corpus brace, the
    pointwise lift of its witness is a vanishing-star ideal of the base."""
    t0 = time.perf_counter()
    if G is None:
        G = group_brace("a5", "almost_trivial", name="A5at")
    if H is None:
        H = group_brace("c2", "trivial", name="T2")
    if base_max is None:
        base_max = max_order()
    if not is_semiprime(G, method="fast").semiprime:
        raise PreconditionError(f"{G.name or 'G'} is not semiprime")
    notes = []
    items = []
    if G.order ** H.order <= base_max:
        items.append(("lemma32-base", f"lemma32:base:{G.name}:m{H.order}", G, H))
    else:
        notes.append(f"base case skipped: {G.order}^{H.order} exceeds {base_max}")
    for B in standard_corpus(corpus_max):
        if B.order ** H.order > base_max:
            continue
        if not is_semiprime(B, method="fast").semiprime:
            items.append(("lemma32-lift", f"lemma32:lift:{B.name}:m{H.order}", B, H))
    items = _filter_items(items, only)
    results = _run_items(items, jobs)
    return _assemble("lemma32", results, time.perf_counter() - t0, tuple(notes))


# ---------------------------------------------------------------------------
# cor28 / thm33: semiprimality of semidirect and wreath products of
# semiprime pairs, on top of a corpus-wide classification

def _case_classify(case_id: str, B: FiniteSkewBrace) -> CaseResult:
    fast = is_semiprime(B, method="fast")
    exhaustive = is_semiprime(B, method="exhaustive")
    docs = (serialize_document(B),)
    if fast.semiprime != exhaustive.semiprime:
        return CaseResult(case_id, False, "fast and exhaustive verdicts disagree",
                          documents=docs)
    if exhaustive.semiprime:
        return CaseResult(case_id, True, "semiprime=yes")
    # both witnesses must actually be vanishing-star ideals
    for v in (fast, exhaustive):
        members = np.fromiter(v.witness.sorted(), dtype=np.int64)
        ok, rule = is_ideal(B, members)
        stars = B.add[B.lam[np.ix_(members, members)],
                      np.broadcast_to(B.neg[members], (members.size, members.size))]
        if not ok or stars.any():
            return CaseResult(case_id, False, f"invalid witness via {v.method}",
                              witness=v.witness.sorted(), documents=docs)
    return CaseResult(case_id, True,
                      f"semiprime=no witness={fmt_members(exhaustive.witness.members)}")


def _case_cor28(case_id: str, G: FiniteSkewBrace, H: FiniteSkewBrace,
                perms: np.ndarray, tag: int) -> CaseResult:
    sd = semidirect(G, H, SigmaAction(G, H, perms))
    verdict = is_semiprime(sd, method="fast")
    if verdict.semiprime:
        return CaseResult(case_id, True, f"order={sd.order} semiprime")
    return CaseResult(
        case_id, False, f"order={sd.order} not semiprime under sigma {tag}",
        witness=verdict.witness.sorted(),
        documents=(serialize_document(G), serialize_document(H), _sigma_text(perms)),
    )


def _case_thm33(case_id: str, G: FiniteSkewBrace, H: FiniteSkewBrace) -> CaseResult:
    W, _ = wreath(G, H)
    verdict = is_semiprime(W, method="fast")
    if verdict.semiprime:
        return CaseResult(case_id, True, f"order={W.order} semiprime")
    return CaseResult(
        case_id, False, f"order={W.order} not semiprime",
        witness=verdict.witness.sorted(),
        documents=(serialize_document(G), serialize_document(H)),
    )


def _sigma_text(perms: np.ndarray) -> str:
    lines = [" ".join(str(int(x)) for x in row) for row in perms]
    return "# sigma action table, one row per acting element\n" + "\n".join(lines) + "\n"


def verify_cor28_thm33(corpus_max: int = DEFAULT_CORPUS_MAX,
                       sigma_budget: int = DEFAULT_SIGMA_BUDGET,
                       statements: tuple[str, ...] = ("cor28", "thm33"),
                       jobs: int = 1, only: str | None = None) -> dict[str, SweepReport]:
    """Classify the corpus by semiprimality, then check products of every
    semiprime pair: all semidirect products within the sigma budget
    (cor28) and the wreath product (thm33).  When no semiprime brace of
    order > 1 exists at these orders, the note says so and the order-60
    stand-in exercises the wreath-base path."""
    t0 = time.perf_counter()
    corpus = standard_corpus(corpus_max)
    classify_items = [("classify", f"classify:{B.name}", B) for B in corpus]
    semiprime_braces = [B for B in corpus if is_semiprime(B, method="fast").semiprime]

    notes = []
    cap = max_order()
    if all(B.order == 1 for B in semiprime_braces):
        notes.append("only order-1 semiprime braces exist at order <= "
                     f"{corpus_max}; the order-60 stand-in exercises the wreath path")

    cor_items = []
    thm_items = []
    for G in semiprime_braces:
        for H in semiprime_braces:
            if G.order * H.order <= cap:
                for i, act in enumerate(sigma_actions(G, H, budget=sigma_budget)):
                    cor_items.append(("cor28", f"cor28:{G.name}:{H.name}:s{i}",
                                      G, H, np.asarray(act.perms), i))
            if G.order ** H.order * H.order <= cap:
                thm_items.append(("thm33", f"thm33:{G.name}:{H.name}", G, H))
    if all(B.order == 1 for B in semiprime_braces):
        A5at = group_brace("a5", "almost_trivial", name="A5at")
        for H in corpus:
            if H.order <= 2 and A5at.order ** H.order <= cap:
                thm_items.append(("lemma32-base",
                                  f"thm33:standin:{A5at.name}:m{H.order}", A5at, H))

    reports = {}
    for statement in statements:
        if statement == "cor28":
            items = classify_items + cor_items
        elif statement == "thm33":
            items = classify_items + thm_items
        else:
            raise PreconditionError(f"unknown statement {statement!r}")
        kept = _filter_items(items, only)
        results = _run_items(kept, jobs)
        reports[statement] = _assemble(statement, results,
                                       time.perf_counter() - t0, tuple(notes))
    return reports


# ---------------------------------------------------------------------------
# q34: search for a semiprime semidirect product over a non-semiprime G

def _case_q34(case_id: str, G: FiniteSkewBrace, H: FiniteSkewBrace,
              perms: np.ndarray, tag: int) -> CaseResult:
    sd = semidirect(G, H, SigmaAction(G, H, perms))
    fast = is_semiprime(sd, method="fast")
    if not fast.semiprime:
        return CaseResult(case_id, True,
                          f"order={sd.order} not semiprime "
                          f"witness={fmt_members(fast.witness.members)}")
    confirm = is_semiprime(sd, method="exhaustive")
    if not confirm.semiprime:
        # methods must agree; this would be an implementation bug
        return CaseResult(
            case_id, False, "fast and exhaustive verdicts disagree",
            documents=(serialize_document(G), serialize_document(H), _sigma_text(perms)),
        )
    return CaseResult(
        case_id, False,
        f"order={sd.order} SEMIPRIME (exhaustively confirmed) - counterexample",
        documents=(serialize_document(G), serialize_document(H), _sigma_text(perms)),
    )


def search_q34(max_g: int = 6, max_h: int = 4,
               sigma_budget: int = DEFAULT_SIGMA_BUDGET,
               jobs: int = 1, only: str | None = None) -> SweepReport:
    """Try every corpus pair with G non-semiprime and every action within
    the budget; a semiprime semidirect product is a counterexample and is
    re-verified exhaustively before being reported."""
    t0 = time.perf_counter()
    corpus = standard_corpus(DEFAULT_CORPUS_MAX)
    gs = [B for B in corpus
          if B.order <= max_g and not is_semiprime(B, method="fast").semiprime]
    hs = [B for B in corpus if B.order <= max_h]
    cap = max_order()
    items = []
    for G in gs:
        for H in hs:
            if G.order * H.order > cap:
                continue
            for i, act in enumerate(sigma_actions(G, H, budget=sigma_budget)):
                items.append(("q34", f"q34:{G.name}:{H.name}:s{i}",
                              G, H, np.asarray(act.perms), i))
    items = _filter_items(items, only)
    results = _run_items(items, jobs)
    return _assemble("q34", results, time.perf_counter() - t0, ())


_CASE_FUNCS = {
    "lemma31": _case_lemma31,
    "lemma32-base": _case_lemma32_base,
    "lemma32-lift": _case_lemma32_lift,
    "classify": _case_classify,
    "cor28": _case_cor28,
    "thm33": _case_thm33,
    "q34": _case_q34,
}
