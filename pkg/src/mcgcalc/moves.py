"""Hurwitz moves, relation substitutions, and replayable scripts.

The two primitive equivalence moves on positive words are the
elementary transformation (swap adjacent letters, conjugating one by
the other) and simultaneous conjugation of the whole word.  Rotations
are a convenience compiled down to those primitives.  Substitution
replaces one side of a declared, validated relation by the other.

Every move preserves the homological relator property; replay asserts
that per step whenever the word's classes are computable, and records
the steps whose soundness rests on an assumed (opaque) relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import symplectic as sp
from .errors import (
    InvalidRelation,
    ScriptError,
    SubstMismatch,
    UnknownClass,
)
from .system import CurveSystem, RelationDecl
from .words import (
    Word,
    is_positive,
    push_forward_word,
    render_word,
    twist_conjugate_letter,
)


@dataclass(frozen=True)
class Elem:
    index: int  # 1-based position of the left letter of the pair
    direction: str  # "L" | "R"

    def __str__(self):
        return f"elem {self.index} {self.direction}"


@dataclass(frozen=True)
class Conj:
    word: Word

    def __str__(self):
        return f"conj {render_word(self.word)}"


@dataclass(frozen=True)
class Rotate:
    k: int

    def __str__(self):
        return f"rot {self.k}"


@dataclass(frozen=True)
class Subst:
    relation: str
    position: int
    direction: str  # "fwd" | "rev"

    def __str__(self):
        return f"subst {self.relation} @ {self.position} {self.direction}"


Move = Union[Elem, Conj, Rotate, Subst]


@dataclass(frozen=True)
class DerivationScript:
    name: str
    source: str
    steps: tuple[Move, ...]
    expect: Optional[str] = None


def _require_positive(w: Word) -> None:
    if not is_positive(w):
        raise ValueError("move requires a positive word")


def elementary_transformation(w: Word, i: int, direction: str) -> Word:
    """Swap letters i, i+1 (1-based), conjugating one by the other.

    right: (x, y) -> (y, [y^-1]x); left: (x, y) -> ([x]y, x).  The two
    directions are mutually inverse and both preserve the image under
    the symplectic representation.
    """
    _require_positive(w)
    if not (1 <= i < len(w.letters)):
        raise IndexError(f"elementary transformation index {i} out of range")
    letters = list(w.letters)
    (x, _), (y, _) = letters[i - 1], letters[i]
    system = w.system
    if direction == "R":
        conj = Word(system, ((y, -1),), _reduced=True)
        letters[i - 1 : i + 1] = [(y, 1), (twist_conjugate_letter(conj, x), 1)]
    elif direction == "L":
        conj = Word(system, ((x, 1),), _reduced=True)
        letters[i - 1 : i + 1] = [(twist_conjugate_letter(conj, y), 1), (x, 1)]
    else:
        raise ValueError(f"direction must be 'L' or 'R', got {direction!r}")
    return Word(system, letters, _reduced=True)


def simultaneous_conjugation(w: Word, conjugator: Word) -> Word:
    """Letterwise [W]-conjugation; preserves every fibration invariant."""
    _require_positive(w)
    return push_forward_word(conjugator, w)


def rotate(w: Word, k: int) -> Word:
    """Cyclic rotation, compiled to elementary moves plus a conjugation.

    k > 0 moves the last k letters to the front, k < 0 the first |k|
    letters to the end.  The result is the exact cyclic permutation.
    """
    _require_positive(w)
    n = len(w.letters)
    if n == 0 or k % n == 0:
        return w
    step = 1 if k > 0 else -1
    for _ in range(abs(k)):
        n = len(w.letters)
        if step == 1:
            z = w.letters[-1][0]
            for i in range(n - 1, 0, -1):
                w = elementary_transformation(w, i, "R")
            w = simultaneous_conjugation(w, Word(w.system, ((z, 1),), _reduced=True))
        else:
            z = w.letters[0][0]
            for i in range(1, n):
                w = elementary_transformation(w, i, "L")
            w = simultaneous_conjugation(w, Word(w.system, ((z, -1),), _reduced=True))
    return w


def _side(rel: RelationDecl, direction: str) -> tuple[tuple, tuple]:
    if direction == "fwd":
        return rel.left, rel.right
    if direction == "rev":
        return rel.right, rel.left
    raise ValueError(f"direction must be 'fwd' or 'rev', got {direction!r}")


def substitute(
    system: CurveSystem, w: Word, rel: RelationDecl, position: int, direction: str
) -> Word:
    """Replace the relation's source side at ``position`` by its target.

    Matching is syntactic on letter normal forms.  The relation must
    have been validated (or recorded as assumed for opaque curves).
    """
    _require_positive(w)
    if rel.status not in ("verified", "assumed"):
        raise InvalidRelation(f"relation {rel.name} is not validated")
    src, dst = _side(rel, direction)
    if not (1 <= position <= len(w.letters) - len(src) + 1):
        raise IndexError(f"substitution position {position} out of range")
    window = w.letters[position - 1 : position - 1 + len(src)]
    if tuple(l for l, _ in window) != tuple(src):
        raise SubstMismatch(
            " ".join(repr(l) for l in src),
            " ".join(repr(l) for l, _ in window),
        )
    letters = (
        w.letters[: position - 1]
        + tuple((l, 1) for l in dst)
        + w.letters[position - 1 + len(src) :]
    )
    out = Word(w.system, letters, _reduced=True)
    if rel.status == "verified":
        try:
            before = sp.rho_image(w.system, w)
            after = sp.rho_image(w.system, out)
            assert before == after, "substitution changed the homological image"
        except UnknownClass:
            pass
    return out


def find_sites(system: CurveSystem, w: Word, rel: RelationDecl) -> list[tuple[int, str]]:
    """All (position, direction) pairs where substitute would succeed."""
    sites = []
    letters = tuple(l for l, _ in w.letters)
    for direction in ("fwd", "rev"):
        src, _ = _side(rel, direction)
        m = len(src)
        for pos in range(1, len(letters) - m + 2):
            if letters[pos - 1 : pos - 1 + m] == tuple(src):
                sites.append((pos, direction))
    return sorted(sites)


@dataclass
class StepRecord:
    index: int
    move: str
    length: int
    word: str = ""
    rho_checked: Optional[bool] = None  # None: not computable (opaque)
    assumed_relation: Optional[str] = None
    sigma: Optional[int] = None
    lantern_forward: bool = False
    lantern_reverse: bool = False


@dataclass
class ReplayResult:
    script: DerivationScript
    initial: Word
    final: Word
    steps: list[StepRecord] = field(default_factory=list)
    expected_matched: Optional[bool] = None
    sigma_initial: Optional[int] = None
    sigma_final: Optional[int] = None

    @property
    def lantern_forward_count(self) -> int:
        return sum(1 for s in self.steps if s.lantern_forward)

    @property
    def lantern_reverse_count(self) -> int:
        return sum(1 for s in self.steps if s.lantern_reverse)

    @property
    def delta_length(self) -> int:
        return len(self.final.letters) - len(self.initial.letters)


def _try_sigma(system: CurveSystem, w: Word) -> Optional[int]:
    from .meyer import factorization_signature

    try:
        return factorization_signature(system, w)
    except UnknownClass:
        return None


def replay_script(
    system: CurveSystem,
    script: DerivationScript,
    *,
    track_sigma: bool = True,
) -> ReplayResult:
    """Apply a script's moves in order with per-step verification.

    After every step the word must stay positive and, whenever all
    letter classes are computable, keep its homological image.  The
    first failing step raises ScriptError with its index and move.
    """
    if script.source not in system.words:
        raise ScriptError(0, "source", f"word {script.source!r} is not declared")
    w = system.words[script.source]
    result = ReplayResult(script, w, w)
    try:
        rho_before: Optional[sp.Mat] = sp.rho_image(system, w)
    except UnknownClass:
        rho_before = None
    if track_sigma:
        result.sigma_initial = _try_sigma(system, w)

    for idx, move in enumerate(script.steps, start=1):
        try:
            if isinstance(move, Elem):
                w = elementary_transformation(w, move.index, move.direction)
            elif isinstance(move, Conj):
                w = simultaneous_conjugation(w, move.word)
            elif isinstance(move, Rotate):
                w = rotate(w, move.k)
            elif isinstance(move, Subst):
                rel = system.relations.get(move.relation)
                if rel is None:
                    raise InvalidRelation(f"relation {move.relation!r} is not declared")
                w = substitute(system, w, rel, move.position, move.direction)
            else:
                raise ValueError(f"unknown move {move!r}")
        except (IndexError, ValueError, SubstMismatch, InvalidRelation) as exc:
            raise ScriptError(idx, str(move), str(exc)) from exc
        if not is_positive(w):
            raise ScriptError(idx, str(move), "word is no longer positive")
        record = StepRecord(idx, str(move), len(w.letters), render_word(w))
        if isinstance(move, Subst):
            rel = system.relations[move.relation]
            if rel.kind == "lantern":
                record.lantern_forward = move.direction == "fwd"
                record.lantern_reverse = move.direction == "rev"
            if rel.status == "assumed":
                record.assumed_relation = rel.name
        try:
            rho_after: Optional[sp.Mat] = sp.rho_image(system, w)
        except UnknownClass:
            rho_after = None
        if rho_before is not None and rho_after is not None:
            record.rho_checked = rho_after == rho_before
            if not record.rho_checked:
                raise ScriptError(idx, str(move), "homological image changed")
        elif isinstance(move, Subst):
            rel = system.relations[move.relation]
            record.rho_checked = True if rel.status == "verified" else None
        else:
            # elementary moves and conjugations are sound identities in
            # the free group; nothing homological left to check
            record.rho_checked = True
        rho_before = rho_after if rho_after is not None else rho_before
        if track_sigma:
            record.sigma = _try_sigma(system, w)
        result.steps.append(record)

    result.final = w
    if track_sigma:
        result.sigma_final = _try_sigma(system, w)
    if script.expect is not None:
        if script.expect not in system.words:
            raise ScriptError(0, "expect", f"word {script.expect!r} is not declared")
        expected = system.words[script.expect]
        result.expected_matched = w == expected
        if not result.expected_matched:
            raise ScriptError(
                len(script.steps),
                "expect",
                f"final word {render_word(w)} does not equal "
                f"{script.expect} = {render_word(expected)}",
            )
    return result
