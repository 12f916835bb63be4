"""Curve systems: the declared surface data everything else runs on.

A CurveSystem records the genus, named curves with integer homology
classes (a curve may be declared opaque, with unknown class), declared
geometric facts (disjoint pairs, one-point intersection pairs), declared
relations, and named fixture words.  Homology classes live in the basis
a1,b1,...,ag,bg.

The system is assembled through the ``add_*`` methods at load time and
treated as immutable afterward; queries are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

from . import symplectic as sp
from .errors import (
    DimensionError,
    InvalidRelation,
    MalformedRelation,
    UnknownClass,
    UnknownCurve,
)
from .words import Letter, Word, normalize_conjugator

Vec = tuple[int, ...]


@dataclass(frozen=True)
class RelationDecl:
    """A declared relation with its two substitutable sides.

    kind is one of lantern, braid, commute, chain2.  The sides are
    letter tuples; either side may contain conjugated letters.  status
    is "verified" once the homological identity has been checked, or
    "assumed" when opaque curves make the check impossible.
    """

    name: str
    kind: str
    left: tuple[Letter, ...]
    right: tuple[Letter, ...]
    status: str = "unchecked"

    def with_status(self, status: str) -> "RelationDecl":
        return RelationDecl(self.name, self.kind, self.left, self.right, status)


@dataclass(frozen=True)
class Classification:
    """Separating / nonseparating verdict for a letter."""

    kind: str  # "nonseparating" | "separating" | "unknown"
    h: Optional[int] = None


class CurveSystem:
    """Registry of curves, declared facts, relations, and fixture words."""

    def __init__(self, genus: int):
        if genus < 2:
            raise ValueError("genus must be at least 2")
        self.genus = genus
        self._curves: dict[str, Optional[Vec]] = {}
        self._decl_index: dict[str, int] = {}
        self._disjoint: set[frozenset[str]] = set()
        self._meet1: set[frozenset[str]] = set()
        self.septype: dict[str, int] = {}
        self.relations: dict[str, RelationDecl] = {}
        self.words: dict[str, Word] = {}
        self.assumptions: list[str] = []

    # -- construction -------------------------------------------------

    def add_curve(self, name: str, cls: Optional[Sequence[int]]) -> None:
        if name in self._curves:
            raise ValueError(f"curve {name!r} already declared")
        if cls is not None:
            cls = tuple(int(x) for x in cls)
            if len(cls) != 2 * self.genus:
                raise DimensionError(
                    f"class of {name!r} has length {len(cls)}, expected {2 * self.genus}"
                )
        else:
            self.assumptions.append(f"curve {name}: homology class undeclared (opaque)")
        self._decl_index[name] = len(self._curves)
        self._curves[name] = cls

    def add_disjoint(self, a: str, b: str) -> None:
        self._require(a)
        self._require(b)
        if a == b:
            raise ValueError(f"disjoint pair must name two distinct curves, got {a!r}")
        self._disjoint.add(frozenset((a, b)))

    def add_meet1(self, a: str, b: str) -> None:
        self._require(a)
        self._require(b)
        if a == b:
            raise ValueError(f"meet1 pair must name two distinct curves, got {a!r}")
        self._meet1.add(frozenset((a, b)))

    def add_septype(self, name: str, h: int) -> None:
        self._require(name)
        self.septype[name] = int(h)

    def add_relation(self, decl: RelationDecl) -> None:
        if decl.name in self.relations:
            raise ValueError(f"relation {decl.name!r} already declared")
        try:
            ok = validate_relation_decl(self, decl)
        except UnknownClass:
            self.assumptions.append(
                f"relation {decl.name}: not homologically checkable (opaque curves)"
            )
            self.relations[decl.name] = decl.with_status("assumed")
            return
        if not ok:
            raise InvalidRelation(f"relation {decl.name} fails its homological identity")
        self.relations[decl.name] = decl.with_status("verified")

    def add_word(self, name: str, word: Word) -> None:
        if name in self.words:
            raise ValueError(f"word {name!r} already declared")
        self.words[name] = word

    # -- fact queries ---------------------------------------------------

    def _require(self, name: str) -> None:
        if name not in self._curves:
            raise UnknownCurve(f"curve {name!r} is not declared")

    @property
    def curve_names(self) -> tuple[str, ...]:
        return tuple(self._curves)

    def has_curve(self, name: str) -> bool:
        return name in self._curves

    def class_of(self, name: str) -> Optional[Vec]:
        self._require(name)
        return self._curves[name]

    def is_disjoint(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self._disjoint

    def is_meet1(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self._meet1

    def decl_index(self, name: str) -> int:
        try:
            return self._decl_index[name]
        except KeyError:
            raise UnknownCurve(f"curve {name!r} is not declared") from None

    # -- value factories ------------------------------------------------

    def letter(self, base: str, conj: Iterable[tuple[str, int]] = ()) -> Letter:
        """A normalized letter; conjugator entries may carry exponents."""
        self._require(base)
        pairs: list[tuple[str, int]] = []
        for name, exp in conj:
            self._require(name)
            if exp == 0:
                raise ValueError("conjugator exponent must be nonzero")
            sign = 1 if exp > 0 else -1
            pairs.extend((name, sign) for _ in range(abs(exp)))
        cpairs, cbase = normalize_conjugator(self, pairs, base)
        return Letter(cpairs, cbase)

    def word(self, letters: Iterable) -> Word:
        """A word from letters, (letter, sign) pairs, or curve names."""
        out = []
        for item in letters:
            if isinstance(item, Letter):
                out.append((item, 1))
            elif isinstance(item, str):
                out.append((self.letter(item), 1))
            else:
                letter, sign = item
                if isinstance(letter, str):
                    letter = self.letter(letter)
                out.append((letter, sign))
        return Word(self, out)

    def empty_word(self) -> Word:
        return Word(self, ())

    # -- homology -------------------------------------------------------

    def homology_class_of_letter(self, letter: Letter) -> Optional[Vec]:
        """Class of the twisted curve; None when opaque curves block it."""
        v = self.class_of(letter.base)
        if v is None:
            return None
        for name, sign in reversed(letter.conj):
            a = self.class_of(name)
            if a is None:
                return None
            v = sp.transvect(v, a, sign)
        return v

    def classify_letter(self, letter: Letter) -> Classification:
        """Separating iff the class vanishes; type h where determinable."""
        cls = self.homology_class_of_letter(letter)
        if cls is None:
            return Classification("unknown")
        if any(cls):
            return Classification("nonseparating")
        if self.genus == 2:
            return Classification("separating", 1)
        return Classification("separating", self.septype.get(letter.base))


def homology_class_of_letter(system: CurveSystem, letter: Letter) -> Optional[Vec]:
    return system.homology_class_of_letter(letter)


def classify_letter(system: CurveSystem, letter: Letter) -> Classification:
    return system.classify_letter(letter)


def _letter_matrix(system: CurveSystem, letter: Letter) -> sp.Mat:
    cls = system.homology_class_of_letter(letter)
    if cls is None:
        raise UnknownClass(f"letter {letter!r} has no computable class")
    return sp.transvection(cls)


def _letter_class(system: CurveSystem, letter: Letter) -> Vec:
    cls = system.homology_class_of_letter(letter)
    if cls is None:
        raise UnknownClass(f"letter {letter!r} has no computable class")
    return cls


def validate_relation_decl(system: CurveSystem, decl: RelationDecl) -> bool:
    """Check the relation's homological identity in Sp(2g, Z).

    Raises UnknownClass when opaque curves make the check impossible and
    MalformedRelation on arity errors.
    """
    shapes = {"lantern": (4, 3), "braid": (3, 3), "commute": (2, 2), "chain2": (12, 1)}
    if decl.kind not in shapes:
        raise MalformedRelation(f"unknown relation kind {decl.kind!r}")
    nl, nr = shapes[decl.kind]
    if len(decl.left) != nl or len(decl.right) != nr:
        raise MalformedRelation(
            f"{decl.kind} relation {decl.name} has arity "
            f"({len(decl.left)}, {len(decl.right)}), expected ({nl}, {nr})"
        )

    def side_product(side):
        m = sp.mat_identity(2 * system.genus)
        for letter in side:
            m = sp.mat_mul(m, _letter_matrix(system, letter))
        return m

    if decl.kind == "lantern":
        return side_product(decl.left) == side_product(decl.right)
    if decl.kind == "braid":
        a, b = decl.left[0], decl.left[1]
        if abs(sp.pairing(_letter_class(system, a), _letter_class(system, b))) != 1:
            return False
        return side_product(decl.left) == side_product(decl.right)
    if decl.kind == "commute":
        a, b = decl.left
        if sp.pairing(_letter_class(system, a), _letter_class(system, b)) != 0:
            return False
        return side_product(decl.left) == side_product(decl.right)
    # chain2
    a, b = decl.left[0], decl.left[1]
    c = decl.right[0]
    if abs(sp.pairing(_letter_class(system, a), _letter_class(system, b))) != 1:
        return False
    if any(_letter_class(system, c)):
        return False
    return side_product(decl.left) == sp.mat_identity(2 * system.genus)


def make_braid(system: CurveSystem, name: str, a: Letter, b: Letter) -> RelationDecl:
    return RelationDecl(name, "braid", (a, b, a), (b, a, b))


def make_commute(system: CurveSystem, name: str, a: Letter, b: Letter) -> RelationDecl:
    return RelationDecl(name, "commute", (a, b), (b, a))


def make_chain2(system: CurveSystem, name: str, a: Letter, b: Letter, c: Letter) -> RelationDecl:
    return RelationDecl(name, "chain2", (a, b) * 6, (c,))


def make_lantern(
    system: CurveSystem, name: str, d: Sequence[Letter], abc: Sequence[Letter]
) -> RelationDecl:
    return RelationDecl(name, "lantern", tuple(d), tuple(abc))


def validate_system(system: CurveSystem) -> list[str]:
    """All type-invariant violations, as human-readable strings.

    Facts involving opaque curves are not violations; they are recorded
    in ``system.assumptions`` at load time.
    """
    violations: list[str] = []
    g = system.genus
    for name in system.curve_names:
        cls = system.class_of(name)
        if cls is not None and len(cls) != 2 * g:
            violations.append(f"curve {name}: class has length {len(cls)}, expected {2 * g}")
    both = system._disjoint & system._meet1
    for pair in sorted(both, key=sorted):
        a, b = sorted(pair)
        violations.append(f"pair ({a}, {b}): declared both disjoint and meet1")
    for pair in sorted(system._disjoint, key=sorted):
        a, b = sorted(pair)
        ca, cb = system.class_of(a), system.class_of(b)
        if ca is None or cb is None:
            continue
        p = sp.pairing(ca, cb)
        if p != 0:
            violations.append(f"disjoint ({a}, {b}): symplectic pairing is {p}, not 0")
    for pair in sorted(system._meet1, key=sorted):
        a, b = sorted(pair)
        ca, cb = system.class_of(a), system.class_of(b)
        if ca is None or cb is None:
            continue
        p = sp.pairing(ca, cb)
        if abs(p) != 1:
            violations.append(f"meet1 ({a}, {b}): symplectic pairing is {p}, not +-1")
    for name, h in system.septype.items():
        cls = system.class_of(name)
        if cls is not None and any(cls):
            violations.append(f"septype {name}: curve is not null-homologous")
        if not (1 <= h <= g // 2):
            violations.append(f"septype {name}: type {h} outside 1..{g // 2}")
    for decl in system.relations.values():
        if decl.status == "verified":
            continue
        if decl.status == "assumed":
            continue
        try:
            if not validate_relation_decl(system, decl):
                violations.append(f"relation {decl.name}: homological identity fails")
        except UnknownClass:
            pass
    return violations


def _recognize_transvection(m: sp.Mat, bound: int) -> list[Vec]:
    """All vectors v with |entries| <= bound and T_v = m."""
    n = len(m)
    d = [[m[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    if all(all(x == 0 for x in row) for row in d):
        return [tuple([0] * n)]
    col = None
    for j in range(n):
        column = tuple(d[i][j] for i in range(n))
        if any(column):
            col = column
            break
    if col is None:
        return []
    g = 0
    for x in col:
        g = gcd(g, x)
    prim = tuple(x // g for x in col)
    # T_v - I maps x to <x,v> v, so every candidate is an integer multiple
    # of the primitive direction; solve lambda^2 from one nonzero entry.
    w = sp.transvection(prim)
    wd = [[w[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    lam2 = None
    for i in range(n):
        for j in range(n):
            if wd[i][j]:
                if d[i][j] % wd[i][j]:
                    return []
                lam2 = d[i][j] // wd[i][j]
                break
        if lam2 is not None:
            break
    if lam2 is None or lam2 <= 0:
        return []
    lam = isqrt(lam2)
    if lam * lam != lam2:
        return []
    out = []
    for v in (tuple(lam * x for x in prim), tuple(-lam * x for x in prim)):
        if all(abs(x) <= bound for x in v) and sp.transvection(v) == m:
            if v not in out:
                out.append(v)
    return out


def _box_vectors(n: int, bound: int):
    return product(range(-bound, bound + 1), repeat=n)


def solve_lantern_classes(
    system: CurveSystem,
    d_names: Sequence[str],
    right: Sequence[Optional[str]],
    bound: int = 2,
) -> list[tuple[Optional[Vec], Optional[Vec], Optional[Vec]]]:
    """Candidate class assignments making the lantern identity hold.

    ``right`` has three entries: a curve name where the class is known,
    or None for an unknown.  Unknown classes are searched over integer
    vectors with coefficients in [-bound, bound].  Returns the full list
    of assignments (known positions filled in), in deterministic order.
    """
    if len(d_names) != 4 or len(right) != 3:
        raise MalformedRelation("lantern needs 4 left names and 3 right entries")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    g = system.genus
    m = sp.mat_identity(2 * g)
    for name in d_names:
        cls = system.class_of(name)
        if cls is None:
            raise UnknownClass(f"curve {name!r} has no declared class")
        m = sp.mat_mul(m, sp.transvection(cls))

    known: dict[int, Vec] = {}
    unknown = []
    for i, entry in enumerate(right):
        if entry is None:
            unknown.append(i)
        else:
            cls = system.class_of(entry)
            if cls is None:
                raise UnknownClass(f"curve {entry!r} has no declared class")
            known[i] = cls
    if not unknown:
        prod = sp.mat_identity(2 * g)
        for i in range(3):
            prod = sp.mat_mul(prod, sp.transvection(known[i]))
        return [tuple(known[i] for i in range(3))] if prod == m else []
    if len(unknown) > 2:
        raise ValueError("at least one right-side class must be known")

    results = []
    if len(unknown) == 1:
        p = unknown[0]
        # T(r0) T(r1) T(r2) = M with two knowns: isolate the unknown factor.
        pre = sp.mat_identity(2 * g)
        for i in range(p):
            pre = sp.mat_mul(pre, sp.transvection(known[i]))
        post = sp.mat_identity(2 * g)
        for i in range(p + 1, 3):
            post = sp.mat_mul(post, sp.transvection(known[i]))
        target = sp.mat_mul(
            sp.mat_mul(sp.symplectic_inverse(pre), m), sp.symplectic_inverse(post)
        )
        for v in _recognize_transvection(target, bound):
            filled = [known.get(i) for i in range(3)]
            filled[p] = v
            results.append(tuple(filled))
        return sorted(results)

    p, q = unknown
    kpos = ({0, 1, 2} - {p, q}).pop()
    kmat = sp.transvection(known[kpos])
    for vec in _box_vectors(2 * g, bound):
        tp = sp.transvection(vec)
        # with T(r_p) fixed, the remaining factor is forced; recognize it.
        factors = {p: tp, kpos: kmat}
        pre = sp.mat_identity(2 * g)
        for i in range(q):
            pre = sp.mat_mul(pre, factors[i])
        post = sp.mat_identity(2 * g)
        for i in range(q + 1, 3):
            post = sp.mat_mul(post, factors[i])
        target = sp.mat_mul(
            sp.mat_mul(sp.symplectic_inverse(pre), m), sp.symplectic_inverse(post)
        )
        for w in _recognize_transvection(target, bound):
            filled = [known.get(i) for i in range(3)]
            filled[p] = tuple(vec)
            filled[q] = w
            entry = tuple(filled)
            if entry not in results:
                results.append(entry)
    return sorted(results)
