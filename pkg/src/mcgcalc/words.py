"""Free-group words over named curves, with twist-conjugated letters.

A Letter stands for a simple closed curve: a base curve name plus a
conjugating twist word, so ``[W]c`` denotes the image of the curve ``c``
under the mapping class of ``W`` (as a group element, W c W^-1).  The
conjugator is stored flattened, as a sequence of (name, sign) twists in
display order: the leftmost twist is applied last, matching the usual
``t_{a_r}^{e_r} ... t_{a_1}^{e_1}(c)`` notation.

Letters are kept in a normal form computed from declared facts only:

* free reduction of the conjugator;
* a rightmost twist along the base curve itself is dropped;
* a twist disjoint from the base and from every later-applied twist is
  dropped (it fixes the curve the rest of the conjugator produces);
* for a declared one-point pair, a rightmost twist rewrites via
  t_a(b) = t_b^-1(a) when the rewrite cancels into the conjugator;
* adjacent commuting twists are sorted into a fixed order.

Equality of normal forms is sound for curve equality but not complete;
the homological class is the refuting certificate (different class means
different curve).  All values are immutable and all operations pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

from .errors import SystemMismatch

Pair = Tuple[str, int]


def _free_reduce_pairs(pairs: Iterable[Pair]) -> list[Pair]:
    out: list[Pair] = []
    for name, sign in pairs:
        if out and out[-1][0] == name and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((name, sign))
    return out


def normalize_conjugator(system, pairs: Iterable[Pair], base: str) -> tuple[tuple[Pair, ...], str]:
    """Bring a flattened conjugator over ``base`` into normal form.

    Returns the reduced conjugator and the (possibly rewritten) base.
    """
    conj = list(pairs)
    for _ in range(100000):
        conj = _free_reduce_pairs(conj)
        if conj and conj[-1][0] == base:
            conj.pop()
            continue
        if (
            len(conj) >= 2
            and system.is_meet1(conj[-1][0], base)
            and conj[-2] == (base, conj[-1][1])
        ):
            # t_a^e(b) = t_b^-e(a); keep only when the new twist cancels.
            base = conj[-1][0]
            conj = conj[:-2]
            continue
        kept: list[Pair] = []
        support = {base}
        dropped = False
        for name, sign in reversed(conj):
            if all(system.is_disjoint(name, s) for s in support):
                dropped = True
            else:
                kept.append((name, sign))
                support.add(name)
        if dropped:
            conj = kept[::-1]
            continue
        swapped = False
        i = 0
        while i + 1 < len(conj):
            a, b = conj[i], conj[i + 1]
            if (
                a[0] != b[0]
                and system.is_disjoint(a[0], b[0])
                and system.decl_index(a[0]) < system.decl_index(b[0])
            ):
                conj[i], conj[i + 1] = b, a
                swapped = True
                i = max(i - 1, 0)
            else:
                i += 1
        if swapped:
            continue
        return tuple(conj), base
    raise AssertionError("letter normalization did not stabilize")


@dataclass(frozen=True)
class Letter:
    """A conjugated curve ``[conj]base`` in normal form.

    Construct through ``CurveSystem.letter``; direct construction skips
    normalization.
    """

    conj: tuple[Pair, ...]
    base: str

    def is_plain(self) -> bool:
        return not self.conj

    def flatten(self, sign: int = 1) -> tuple[Pair, ...]:
        """The letter as a twist sequence: conj + base^sign + conj^-1."""
        inv = tuple((n, -s) for n, s in reversed(self.conj))
        return tuple(_free_reduce_pairs(self.conj + ((self.base, sign),) + inv))

    def __repr__(self) -> str:
        return render_letter(self)


def render_pairs(pairs: Iterable[Pair]) -> str:
    """Render a twist sequence, folding runs into powers: ``c1^-2 c3``."""
    parts = []
    run_name = None
    run_sign = 0
    run_len = 0

    def flush():
        if run_name is None:
            return
        exp = run_sign * run_len
        parts.append(run_name if exp == 1 else f"{run_name}^{exp}")

    for name, sign in pairs:
        if name == run_name and sign == run_sign:
            run_len += 1
        else:
            flush()
            run_name, run_sign, run_len = name, sign, 1
    flush()
    return " ".join(parts)


def render_letter(letter: Letter, sign: int = 1) -> str:
    body = letter.base if letter.is_plain() else f"[{render_pairs(letter.conj)}]{letter.base}"
    return body if sign == 1 else f"{body}^-1"


class Word:
    """A freely reduced word: a sequence of signed letters over one system."""

    __slots__ = ("system", "letters")

    def __init__(self, system, letters: Iterable[tuple[Letter, int]], _reduced: bool = False):
        letters = tuple(letters)
        if not _reduced:
            out: list[tuple[Letter, int]] = []
            for letter, sign in letters:
                if out and out[-1][0] == letter and out[-1][1] == -sign:
                    out.pop()
                else:
                    out.append((letter, sign))
            letters = tuple(out)
        self.system = system
        self.letters = letters

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[tuple[Letter, int]]:
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self.system is other.system
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return hash(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return compose_words(self, other)

    def __invert__(self) -> "Word":
        return invert_word(self)

    def __repr__(self) -> str:
        return render_word(self)


def render_word(word: Word) -> str:
    if not word.letters:
        return "1"
    return " ".join(render_letter(l, s) for l, s in word.letters)


def _check_same_system(u: Word, v: Word) -> None:
    if u.system is not v.system:
        raise SystemMismatch("words belong to different curve systems")


def compose_words(u: Word, v: Word) -> Word:
    """Freely reduced concatenation u * v."""
    _check_same_system(u, v)
    return Word(u.system, u.letters + v.letters)


def invert_word(u: Word) -> Word:
    """Reverse the order and flip every sign."""
    return Word(u.system, tuple((l, -s) for l, s in reversed(u.letters)), _reduced=True)


def free_reduce(u: Word) -> Word:
    """Free reduction (idempotent; Word construction already reduces)."""
    return Word(u.system, u.letters)


def empty_word(system) -> Word:
    return Word(system, (), _reduced=True)


def flatten_word(w: Word) -> tuple[Pair, ...]:
    """The word as a freely reduced sequence of plain twists."""
    pairs: list[Pair] = []
    for letter, sign in w.letters:
        pairs.extend(letter.flatten(sign))
    return tuple(_free_reduce_pairs(pairs))


def twist_conjugate_letter(W: Word, c: Letter) -> Letter:
    """The letter ``[W]c``; satisfies [W1]([W2]c) = [W1 W2]c."""
    conj, base = normalize_conjugator(W.system, flatten_word(W) + c.conj, c.base)
    return Letter(conj, base)


def push_forward_word(W: Word, V: Word) -> Word:
    """Apply ``[W]`` to every letter of V (a free-group homomorphism)."""
    _check_same_system(W, V)
    return Word(W.system, tuple((twist_conjugate_letter(W, l), s) for l, s in V.letters))


def is_positive(w: Word) -> bool:
    """True iff every letter carries sign +1."""
    return all(s == 1 for _, s in w.letters)
