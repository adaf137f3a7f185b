"""In-memory lexicon assembled from parsed records.

The store is built once and never mutated. It answers the questions a
POS tagger and a parser ask of the lexicon: which analyses does a surface
string have, what are the senses of a lemma, what is the argument frame of
a sense.
"""

from __future__ import annotations

import logging
import pickle
from bisect import insort
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .lexmodel import (
    Form,
    Lemma,
    Meaning,
    MeaningId,
    ValencyArgument,
    ValencyFrame,
    Violation,
    frame_violations,
    render_mng,
    vl_functions,
)
from .recordio import Database

log = logging.getLogger(__name__)

SNAPSHOT_MAGIC = b"SLDSNAP"
SNAPSHOT_VERSION = 1


class StoreError(LookupError):
    pass


class MeaningNotFound(StoreError, KeyError):
    def __str__(self) -> str:
        return f"no meaning {self.args[0]}"


class UnresolvedLinkError(StoreError):
    def __init__(self, chain: list[Lemma], target: str):
        names = " -> ".join(f"{l.id} {l.basic_form!r}" for l in chain)
        super().__init__(f"link target {target!r} not found (chain: {names})")
        self.chain = chain
        self.target = target


class LinkCycleError(StoreError):
    def __init__(self, chain: list[Lemma]):
        names = " -> ".join(f"{l.id} {l.basic_form!r}" for l in chain)
        super().__init__(f"link cycle: {names}")
        self.chain = chain


@dataclass(frozen=True)
class MorphAnalysis:
    form: Form
    lemma: Lemma
    resolved_lemma: Lemma
    meanings: tuple[MeaningId, ...] = ()

    @property
    def link_chain(self) -> tuple[Lemma, ...]:
        if self.lemma is self.resolved_lemma:
            return (self.lemma,)
        return (self.lemma, self.resolved_lemma)


@dataclass
class StoreStats:
    forms: int = 0
    lemmas: int = 0
    meanings: int = 0
    frames: int = 0
    valency_records: int = 0


class LexStore:
    """Indices over the four tables. Build with :func:`build_store`."""

    def __init__(self) -> None:
        self.forms: list[Form] = []
        self.lemmas: list[Lemma] = []
        self.meanings: list[Meaning] = []
        self.warnings: list[str] = []
        self._by_surface: dict[str, list[Form]] = {}
        self._lemmas_by_id: dict[int, list[Lemma]] = {}
        self._lemmas_by_form: dict[str, list[Lemma]] = {}
        self._meanings: dict[MeaningId, Meaning] = {}
        self._senses: dict[int, list[MeaningId]] = {}
        self._frames: dict[MeaningId, ValencyFrame] = {}
        self._orphan_frames: dict[MeaningId, ValencyFrame] = {}
        self._resolved: dict[int, Lemma] = {}

    # ---- queries -----------------------------------------------------

    def lemmas_with_id(self, lemma_id: int) -> list[Lemma]:
        return list(self._lemmas_by_id.get(lemma_id, ()))

    def lemmas_named(self, basic_form: str) -> list[Lemma]:
        return list(self._lemmas_by_form.get(basic_form, ()))

    def meaning(self, mng: MeaningId) -> Meaning:
        try:
            return self._meanings[mng]
        except KeyError:
            raise MeaningNotFound(render_mng(mng)) from None

    def lookup_form(self, surface: str) -> list[MorphAnalysis]:
        return lookup_form(self, surface)

    def resolve_link(self, lemma: Lemma) -> Lemma:
        return resolve_link(self, lemma)

    def meanings_of(self, lemma_id: int) -> list[Meaning]:
        return meanings_of(self, lemma_id)

    def valency_frame(self, mng: MeaningId) -> ValencyFrame:
        return valency_frame(self, mng)

    def check_integrity(self) -> list[Violation]:
        return check_integrity(self)

    def stats(self) -> StoreStats:
        return stats(self)

    # ---- snapshots ---------------------------------------------------

    def save(self, path: str | Path) -> None:
        header = SNAPSHOT_MAGIC + bytes([SNAPSHOT_VERSION])
        payload = (self.forms, self.lemmas, self.meanings, self._orphan_frames)
        with open(path, "wb") as fh:
            fh.write(header)
            pickle.dump(payload, fh, protocol=pickle.HIGHEST_PROTOCOL)

    @classmethod
    def load(cls, path: str | Path) -> LexStore:
        with open(path, "rb") as fh:
            header = fh.read(len(SNAPSHOT_MAGIC) + 1)
            if header[:-1] != SNAPSHOT_MAGIC:
                raise StoreError(f"{path}: not a lexicon snapshot")
            if header[-1] != SNAPSHOT_VERSION:
                raise StoreError(f"{path}: snapshot version {header[-1]}, expected {SNAPSHOT_VERSION}")
            forms, lemmas, meanings, orphans = pickle.load(fh)
        store = _assemble(forms, lemmas, meanings, extra_frames=orphans)
        return store


def _assemble(
    forms: Iterable[Form],
    lemmas: Iterable[Lemma],
    meanings: Iterable[Meaning],
    extra_frames: dict[MeaningId, ValencyFrame] | None = None,
) -> LexStore:
    store = LexStore()
    by_surface = store._by_surface
    seen: set = set()
    kept = store.forms
    for form in forms:
        key = (form.surface, form.features, form.lemma_id)
        if key in seen:
            store.warnings.append(f"duplicate form {form.surface!r} for lemma {form.lemma_id} dropped")
            continue
        seen.add(key)
        kept.append(form)
        bucket = by_surface.get(form.surface)
        if bucket is None:
            by_surface[form.surface] = [form]
        else:
            bucket.append(form)
    for lemma in lemmas:
        store.lemmas.append(lemma)
        store._lemmas_by_id.setdefault(lemma.id, []).append(lemma)
        store._lemmas_by_form.setdefault(lemma.basic_form, []).append(lemma)
    for bucket in store._lemmas_by_form.values():
        bucket.sort(key=lambda l: l.id)
    for meaning in meanings:
        if meaning.mng in store._meanings:
            store.warnings.append(f"duplicate meaning {render_mng(meaning.mng)}; keeping the first")
            continue
        store.meanings.append(meaning)
        store._meanings[meaning.mng] = meaning
        insort(store._senses.setdefault(meaning.mng.lemma_id, []), meaning.mng)
        if meaning.valency:
            store._frames[meaning.mng] = ValencyFrame.from_arguments(meaning.mng, meaning.valency)
    for mng, frame in (extra_frames or {}).items():
        store._orphan_frames[mng] = frame
        store._frames.setdefault(mng, frame)
    return store


def build_store(records: Database, extra_frames: dict[MeaningId, Iterable[ValencyArgument]] | None = None) -> LexStore:
    """Index parsed records. Duplicate forms are dropped with a warning.

    ``extra_frames`` attaches valency arguments by MNG key for data that
    carries no positional association.
    """
    frames = None
    if extra_frames:
        frames = {mng: ValencyFrame.from_arguments(mng, args) for mng, args in extra_frames.items()}
    store = _assemble(records.forms, records.lemmas, records.meanings, extra_frames=frames)
    for w in store.warnings:
        log.warning(w)
    return store


# ---------------------------------------------------------------------------
# queries


def _pick_link_target(store: LexStore, lemma: Lemma, warn: bool = True) -> Lemma | None:
    candidates = store._lemmas_by_form.get(lemma.link_target or "", ())
    if not candidates:
        return None
    for cand in candidates:
        if cand.category_label == lemma.category_label:
            return cand
    if len(candidates) > 1 and warn:
        store.warnings.append(
            f"link {lemma.basic_form!r} -> {lemma.link_target!r}: no category match, using lowest ID {candidates[0].id}"
        )
    return candidates[0]


def resolve_link(store: LexStore, lemma: Lemma) -> Lemma:
    """Follow link targets until a lemma without a link."""
    chain = [lemma]
    seen = {id(lemma)}
    current = lemma
    while current.link_target is not None:
        nxt = _pick_link_target(store, current)
        if nxt is None:
            raise UnresolvedLinkError(chain, current.link_target)
        if id(nxt) in seen:
            raise LinkCycleError(chain + [nxt])
        chain.append(nxt)
        seen.add(id(nxt))
        current = nxt
    return current


def _resolved(store: LexStore, lemma: Lemma) -> Lemma:
    if lemma.link_target is None:
        return lemma
    cached = store._resolved.get(id(lemma))
    if cached is None:
        try:
            cached = resolve_link(store, lemma)
        except StoreError:
            cached = lemma
        store._resolved[id(lemma)] = cached
    return cached


def lookup_form(store: LexStore, surface: str) -> list[MorphAnalysis]:
    """All analyses of an exact surface string, ordered by lemma ID.

    A form whose lemma ID is shared by several lemmas (different
    categories) yields one analysis per lemma. Broken links degrade to the
    unresolved lemma; check_integrity reports them.
    """
    forms = store._by_surface.get(surface)
    if not forms:
        return []
    out = []
    for form in sorted(forms, key=lambda f: (f.lemma_id, f.features)):
        for lemma in store._lemmas_by_id.get(form.lemma_id, ()):
            target = _resolved(store, lemma)
            senses = tuple(store._senses.get(target.id, ()))
            out.append(MorphAnalysis(form, lemma, target, senses))
    return out


def meanings_of(store: LexStore, lemma_id: int) -> list[Meaning]:
    return [store._meanings[m] for m in store._senses.get(lemma_id, ())]


def valency_frame(store: LexStore, mng: MeaningId) -> ValencyFrame:
    frame = store._frames.get(mng)
    if frame is not None:
        return frame
    if mng in store._meanings:
        return ValencyFrame(mng, ())
    raise MeaningNotFound(render_mng(mng))


def check_integrity(store: LexStore) -> list[Violation]:
    """Cross-record checks. Violations are ordered by kind, then location."""
    out: list[Violation] = []
    for form in store.forms:
        if form.lemma_id not in store._lemmas_by_id:
            out.append(Violation("dangling-form-lemma", f"form {form.surface!r}", f"lemma ID {form.lemma_id} not found"))
    for meaning in store.meanings:
        if meaning.mng.lemma_id not in store._lemmas_by_id:
            out.append(
                Violation("dangling-meaning-lemma", render_mng(meaning.mng), f"lemma ID {meaning.mng.lemma_id} not found")
            )
        if meaning.valency:
            out.extend(frame_violations(meaning.mng, meaning.valency))
            if meaning.vl:
                expected = len(vl_functions(meaning.vl))
                actual = len({a.slot for a in meaning.valency})
                if expected != actual:
                    out.append(
                        Violation(
                            "vl-slot-mismatch",
                            render_mng(meaning.mng),
                            f"VL {meaning.vl!r} names {expected} functions, frame has {actual} slots",
                        )
                    )
    for mng, frame in store._orphan_frames.items():
        if mng not in store._meanings:
            out.append(Violation("dangling-frame-meaning", render_mng(mng), "frame has no meaning record"))
        out.extend(frame_violations(mng, frame.arguments()))
    reported_cycles: set[frozenset] = set()
    for lemma in store.lemmas:
        if lemma.link_target is None:
            continue
        try:
            resolve_link(store, lemma)
        except UnresolvedLinkError as exc:
            out.append(Violation("dangling-link", f"lemma {lemma.id} {lemma.basic_form!r}", str(exc)))
        except LinkCycleError as exc:
            members = frozenset(id(l) for l in exc.chain)
            if members in reported_cycles:
                continue
            reported_cycles.add(members)
            out.append(Violation("link-cycle", f"lemma {lemma.id} {lemma.basic_form!r}", str(exc)))
        else:
            if lemma.id in store._senses:
                out.append(
                    Violation("linked-lemma-meanings", f"lemma {lemma.id}", "a linked lemma must not own meanings")
                )
    return sorted(out, key=lambda v: (v.kind, v.where, v.message))


def stats(store: LexStore) -> StoreStats:
    return StoreStats(
        forms=len(store.forms),
        lemmas=len(store.lemmas),
        meanings=len(store.meanings),
        frames=len(store._frames),
        valency_records=sum(len(f.arguments()) for f in store._frames.values()),
    )
