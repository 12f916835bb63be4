"""Exact symplectic linear algebra over the integers.

Vectors are tuples of ints of length 2g in the basis a1,b1,...,ag,bg;
the symplectic form pairs <a_i, b_i> = +1.  Matrices are tuples of row
tuples.  A right-handed Dehn twist along a curve of class v acts on
homology as the transvection x -> x + <x,v> v; this sign convention is
pinned by the signature calibration in the meyer module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError, NotSymplectic, UnknownClass
from .words import Letter, Word, flatten_word

Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


def zero_vector(g: int) -> Vec:
    return (0,) * (2 * g)


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    """The symplectic form <u, v> = u^T J v."""
    if len(u) != len(v) or len(u) % 2:
        raise DimensionError(f"bad vector lengths {len(u)}, {len(v)}")
    total = 0
    for i in range(0, len(u), 2):
        total += u[i] * v[i + 1] - u[i + 1] * v[i]
    return total


def standard_j(g: int) -> Mat:
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return tuple(tuple(r) for r in rows)


def mat_identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Mat, v: Sequence[int]) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def mat_neg(a: Mat) -> Mat:
    return tuple(tuple(-x for x in row) for row in a)


def is_symplectic(m: Mat) -> bool:
    n = len(m)
    if n % 2 or any(len(row) != n for row in m):
        return False
    j = standard_j(n // 2)
    return mat_mul(mat_mul(mat_transpose(m), j), m) == j


def symplectic_inverse(m: Mat) -> Mat:
    """M^-1 = J^-1 M^T J for symplectic M."""
    j = standard_j(len(m) // 2)
    return mat_mul(mat_mul(mat_neg(j), mat_transpose(m)), j)


def transvect(v: Sequence[int], a: Sequence[int], sign: int = 1) -> Vec:
    """Apply T_a^sign to v: v + sign * <v,a> a."""
    c = sign * pairing(v, a)
    return tuple(x + c * y for x, y in zip(v, a))


def transvection(a: Sequence[int], sign: int = 1) -> Mat:
    """The matrix of T_a^sign; T_0 is the identity."""
    n = len(a)
    if n % 2:
        raise DimensionError(f"odd vector length {n}")
    cols = [transvect(tuple(1 if i == j else 0 for i in range(n)), a, sign) for j in range(n)]
    m = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    assert is_symplectic(m)
    return m


def class_of_twists(system, pairs) -> Mat:
    """Product of transvections for a flattened twist sequence."""
    g = system.genus
    m = mat_identity(2 * g)
    for name, sign in pairs:
        cls = system.class_of(name)
        if cls is None:
            raise UnknownClass(f"curve {name!r} has no declared homology class")
        m = mat_mul(m, transvection(cls, sign))
    return m


def rho_letter(system, letter: Letter, sign: int = 1) -> Mat:
    """Image of a letter: rho([W]c) = rho(W) T_c rho(W)^-1."""
    return class_of_twists(system, letter.flatten(sign))


def rho_image(system, w: Word) -> Mat:
    """Multiplicative image of a word under the symplectic representation."""
    return class_of_twists(system, flatten_word(w))


def is_homological_relator(system, w: Word) -> bool:
    """True iff rho(w) = I.

    This is a necessary condition for w to be a relator of the mapping
    class group, not a sufficient one.
    """
    return rho_image(system, w) == mat_identity(2 * system.genus)


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group: Z^rank + sum of Z/t_i."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0 or any(t < 2 for t in self.torsion):
            raise ValueError("bad abelian group data")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Mat, Mat, Mat]:
    """Exact integer Smith normal form.

    Returns (U, D, V) with U A V = D, U and V unimodular, and D diagonal
    with nonnegative entries forming a divisibility chain.
    """
    d = [list(row) for row in a]
    m = len(d)
    n = len(d[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def clear_row_entry(t, i):
        # zero d[i][t] against pivot d[t][t]; leaves the pivot row alone
        # when the pivot divides, otherwise installs the gcd at (t,t)
        at, ai = d[t][t], d[i][t]
        if ai % at == 0:
            q = ai // at
            for mat in (d, u):
                rt, ri = mat[t], mat[i]
                for k in range(len(rt)):
                    ri[k] -= q * rt[k]
        else:
            g, x, y = _xgcd(at, ai)
            p, q = -(ai // g), at // g
            for mat in (d, u):
                rt, ri = mat[t], mat[i]
                for k in range(len(rt)):
                    rt[k], ri[k] = x * rt[k] + y * ri[k], p * rt[k] + q * ri[k]

    def clear_col_entry(t, j):
        at, aj = d[t][t], d[t][j]
        if aj % at == 0:
            q = aj // at
            for mat in (d, v):
                for row in mat:
                    row[j] -= q * row[t]
        else:
            g, x, y = _xgcd(at, aj)
            p, q = -(aj // g), at // g
            for mat in (d, v):
                for row in mat:
                    row[t], row[j] = x * row[t] + y * row[j], p * row[t] + q * row[j]

    t = 0
    while True:
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] and (pivot is None or abs(d[i][j]) < pivot[0]):
                    pivot = (abs(d[i][j]), i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        if pi != t:
            d[t], d[pi] = d[pi], d[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for mat in (d, v):
                for row in mat:
                    row[t], row[pj] = row[pj], row[t]
        while True:
            for i in range(t + 1, m):
                if d[i][t]:
                    clear_row_entry(t, i)
            if any(d[t][j] for j in range(t + 1, n)):
                for j in range(t + 1, n):
                    if d[t][j]:
                        clear_col_entry(t, j)
            else:
                break
            if not any(d[i][t] for i in range(t + 1, m)):
                break
        t += 1

    r = t
    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            ai, aj = d[i][i], d[i + 1][i + 1]
            if aj % ai:
                # add col i+1 to col i, then re-clear the 2x2 block
                for mat in (d, v):
                    for row in mat:
                        row[i] += row[i + 1]
                while d[i + 1][i] or d[i][i + 1]:
                    if d[i + 1][i]:
                        clear_row_entry(i, i + 1)
                    if d[i][i + 1]:
                        clear_col_entry(i, i + 1)
                changed = True
    for i in range(r):
        if d[i][i] < 0:
            for k in range(m):
                u[i][k] = -u[i][k]
            for k in range(n):
                d[i][k] = -d[i][k]
    return (
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in d),
        tuple(tuple(row) for row in v),
    )


def cokernel(a: Sequence[Sequence[int]], ambient_rank: int) -> AbelianGroup:
    """Z^ambient_rank modulo the column span of ``a``."""
    if not a or not a[0]:
        return AbelianGroup(ambient_rank)
    _, d, _ = smith_normal_form(a)
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    nonzero = [x for x in diag if x]
    return AbelianGroup(
        rank=ambient_rank - len(nonzero),
        torsion=tuple(x for x in nonzero if x > 1),
    )


def h1_total_space(system, w: Word) -> AbelianGroup:
    """H1 of the Lefschetz fibration total space for a positive relator.

    Computed as Z^2g modulo the classes of the vanishing cycles, i.e.
    the letters of the word.
    """
    g = system.genus
    cols = []
    for letter, _sign in w.letters:
        cls = system.homology_class_of_letter(letter)
        if cls is None:
            raise UnknownClass(f"letter {letter!r} has no computable class")
        cols.append(cls)
    if not cols:
        return AbelianGroup(2 * g)
    matrix = [[col[i] for col in cols] for i in range(2 * g)]
    return cokernel(matrix, 2 * g)


def require_symplectic(m: Mat) -> None:
    if not is_symplectic(m):
        raise NotSymplectic("matrix does not preserve the symplectic form")
