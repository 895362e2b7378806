"""Integer-matrix automorphisms of the Picard lattice.

Matrices act on column coefficient vectors in the basis (E_1..E_r, L) and
must preserve the intersection form and fix the canonical class.  The named
constructors return the involutions of the degree-1, degree-2 and degree-4
surfaces exactly as printed, so identities about their actions on the
exceptional classes can be checked verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cyclo import cyclotomic_polynomial, divisors
from .lattice import DivClass, enumerate_exceptional

Matrix = tuple[tuple[int, ...], ...]


class OverCap:
    """Sentinel for iteration that exceeded its cap."""

    _instance: Optional["OverCap"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OverCap"


OVER_CAP = OverCap()


def _gram(r: int) -> Matrix:
    n = r + 1
    return tuple(
        tuple((-1 if i == j else 0) if i < r else (1 if i == j else 0) for j in range(n))
        for i in range(n)
    )


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _mat_vec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def _transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


class PicAut:
    """Automorphism of Pic preserving the form and the canonical class."""

    __slots__ = ("r", "matrix")

    def __init__(self, r: int, matrix: Sequence[Sequence[int]], check: bool = True):
        self.r = r
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        n = r + 1
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError(f"matrix must be {n}x{n}")
        if check and not self.is_weyl():
            raise ValueError("matrix does not preserve the form and canonical class")

    def is_weyl(self) -> bool:
        g = _gram(self.r)
        m = self.matrix
        if _mat_mul(_mat_mul(_transpose(m), g), m) != g:
            return False
        k = self._k_vector()
        return _mat_vec(m, k) == k

    def _k_vector(self) -> tuple[int, ...]:
        # K = -3L + sum(E_i): coefficients (1,...,1,-3) in basis (E.., L).
        return tuple([1] * self.r + [-3])

    def apply(self, c: DivClass) -> DivClass:
        if c.r != self.r:
            raise ValueError("lattice rank mismatch")
        vec = tuple(-mi for mi in c.m) + (c.d,)
        out = _mat_vec(self.matrix, vec)
        return DivClass(out[-1], tuple(-x for x in out[:-1]))

    def __mul__(self, other: "PicAut") -> "PicAut":
        if self.r != other.r:
            raise ValueError("lattice rank mismatch")
        return PicAut(self.r, _mat_mul(self.matrix, other.matrix), check=False)

    def is_identity(self) -> bool:
        return self.matrix == _identity(self.r + 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PicAut) and self.r == other.r and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.r, self.matrix))

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(map(str, row)) for row in self.matrix)
        return f"PicAut(r={self.r}, [{rows}])"


def identity_aut(r: int) -> PicAut:
    return PicAut(r, _identity(r + 1), check=False)


def basis_permutation(r: int, images: Sequence[int]) -> PicAut:
    """PicAut permuting the E_i (images[i] = j means E_{i+1} -> E_{j+1})."""
    n = r + 1
    m = [[0] * n for _ in range(n)]
    for i, j in enumerate(images):
        m[j][i] = 1
    m[r][r] = 1
    return PicAut(r, m)


def quadratic_reflection(r: int, points: tuple[int, int, int] = (1, 2, 3)) -> PicAut:
    """Standard quadratic transformation based at three blown-up points."""
    if r < 3:
        raise ValueError("needs at least three exceptional classes")
    i, j, k = (p - 1 for p in points)
    n = r + 1
    m = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    # L -> 2L - Ei - Ej - Ek ; Ei -> L - Ej - Ek etc.
    for a in (i, j, k):
        col = [0] * n
        for b in (i, j, k):
            if b != a:
                col[b] = -1
        col[r] = 1
        for row in range(n):
            m[row][a] = col[row]
    lcol = [0] * n
    lcol[i] = lcol[j] = lcol[k] = -1
    lcol[r] = 2
    for row in range(n):
        m[row][r] = lcol[row]
    return PicAut(r, m)


GEISER_MATRIX = (
    (-2, -1, -1, -1, -1, -1, -1, -3),
    (-1, -2, -1, -1, -1, -1, -1, -3),
    (-1, -1, -2, -1, -1, -1, -1, -3),
    (-1, -1, -1, -2, -1, -1, -1, -3),
    (-1, -1, -1, -1, -2, -1, -1, -3),
    (-1, -1, -1, -1, -1, -2, -1, -3),
    (-1, -1, -1, -1, -1, -1, -2, -3),
    (3, 3, 3, 3, 3, 3, 3, 8),
)

BERTINI_MATRIX = (
    (-3, -2, -2, -2, -2, -2, -2, -2, -6),
    (-2, -3, -2, -2, -2, -2, -2, -2, -6),
    (-2, -2, -3, -2, -2, -2, -2, -2, -6),
    (-2, -2, -2, -3, -2, -2, -2, -2, -6),
    (-2, -2, -2, -2, -3, -2, -2, -2, -6),
    (-2, -2, -2, -2, -2, -3, -2, -2, -6),
    (-2, -2, -2, -2, -2, -2, -3, -2, -6),
    (-2, -2, -2, -2, -2, -2, -2, -3, -6),
    (6, 6, 6, 6, 6, 6, 6, 6, 17),
)

DP4_QUADRATIC_MATRIX = (
    (0, -1, -1, 0, 0, -1),
    (-1, 0, -1, 0, 0, -1),
    (-1, -1, 0, 0, 0, -1),
    (0, 0, 0, 0, 1, 0),
    (0, 0, 0, 1, 0, 0),
    (1, 1, 1, 0, 0, 2),
)

DP4_CUBIC_MATRIX = (
    (-1, -1, -1, -1, -1, -2),
    (-1, -1, 0, 0, 0, -1),
    (-1, 0, -1, 0, 0, -1),
    (-1, 0, 0, -1, 0, -1),
    (-1, 0, 0, 0, -1, -1),
    (2, 1, 1, 1, 1, 3),
)


def make_geiser() -> PicAut:
    """Degree-2 double-cover involution on the r=7 lattice."""
    return PicAut(7, GEISER_MATRIX)


def make_bertini() -> PicAut:
    """Degree-1 double-cover involution on the r=8 lattice."""
    return PicAut(8, BERTINI_MATRIX)


def make_dp4_quadratic() -> PicAut:
    """Quadratic involution of the degree-4 surface (r=5)."""
    return PicAut(5, DP4_QUADRATIC_MATRIX)


def make_dp4_cubic() -> PicAut:
    """Cubic involution of the degree-4 surface (r=5)."""
    return PicAut(5, DP4_CUBIC_MATRIX)


def order(m: PicAut, cap: int = 5040):
    """Least k >= 1 with m^k = 1, or OVER_CAP."""
    acc = m
    for k in range(1, cap + 1):
        if acc.is_identity():
            return k
        acc = acc * m
    return OVER_CAP


def charpoly(m: PicAut) -> tuple[int, ...]:
    """Characteristic polynomial of the matrix, ascending coefficients.

    Berkowitz's division-free algorithm, so everything stays in Z.
    """
    a = m.matrix
    n = len(a)
    # vector of charpoly coefficients, descending degree, starts with (1,)
    poly = [1]
    for k in range(1, n + 1):
        # principal k x k minor machinery via Toeplitz products
        sub = [row[:k] for row in a[:k]]
        # column vectors
        r_row = sub[k - 1][: k - 1]
        c_col = [sub[i][k - 1] for i in range(k - 1)]
        akk = sub[k - 1][k - 1]
        minor = [row[: k - 1] for row in sub[: k - 1]]
        # entries t_0..t_k of the Toeplitz column
        t = [1, -akk]
        vec = c_col[:]
        for _ in range(k - 1):
            t.append(-sum(x * y for x, y in zip(r_row, vec)))
            vec = [sum(minor[i][j] * vec[j] for j in range(k - 1)) for i in range(k - 1)]
        new_poly = [0] * (k + 1)
        for i in range(len(poly)):
            for j in range(len(t)):
                if i + j <= k:
                    new_poly[i + j] += poly[i] * t[j]
        poly = new_poly
    return tuple(reversed(poly))  # ascending


def _int_poly_divmod(num: Sequence[int], den: Sequence[int]):
    num = [Fraction(c) for c in num]
    dn = len(den) - 1
    if dn < 0:
        raise ZeroDivisionError
    quo = [Fraction(0)] * max(len(num) - dn, 0)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] / den[dn]
        if c:
            quo[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
        num[i] = Fraction(0)
    return quo, num


def eigenvalue_multiplicities(m: PicAut, cap: int = 5040) -> dict[int, int]:
    """Multiplicity of each cyclotomic factor Phi_d of the characteristic
    polynomial, keyed by d; requires m of finite order."""
    k = order(m, cap)
    if k is OVER_CAP:
        raise ValueError("matrix does not have finite order within the cap")
    chi = list(charpoly(m))
    out: dict[int, int] = {}
    for d in divisors(k):
        phi = cyclotomic_polynomial(d)
        while len(chi) - 1 >= len(phi) - 1:
            quo, rem = _int_poly_divmod(chi, phi)
            if any(rem):
                break
            out[d] = out.get(d, 0) + 1
            chi = [int(c) for c in quo]
            while len(chi) > 1 and chi[-1] == 0:
                chi.pop()
    if len(chi) != 1:
        raise ValueError("characteristic polynomial has a non-cyclotomic factor")
    return dict(sorted(out.items()))


def fixed_rank(gens: Sequence[PicAut]) -> int:
    """Rank of the common fixed sublattice of the generators, over Q."""
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].r + 1
    rows: list[list[Fraction]] = []
    for g in gens:
        if g.r != gens[0].r:
            raise ValueError("mixed lattice ranks")
        for i in range(n):
            rows.append(
                [Fraction(g.matrix[i][j] - (1 if i == j else 0)) for j in range(n)]
            )
    rank = 0
    col = 0
    while col < n and rank < len(rows):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return n - rank


def fixes_class(m: PicAut, c: DivClass) -> bool:
    return m.apply(c) == c


def act_on_exceptional(m: PicAut) -> tuple[int, ...]:
    """Permutation induced on the sorted exceptional classes, one-line form."""
    classes = enumerate_exceptional(m.r)
    index = {c: i for i, c in enumerate(classes)}
    images = []
    for c in classes:
        img = m.apply(c)
        if img not in index:
            raise ValueError(f"image {img} of {c} is not an exceptional class")
    for c in classes:
        images.append(index[m.apply(c)])
    if sorted(images) != list(range(len(classes))):
        raise ValueError("action on exceptional classes is not a permutation")
    return tuple(images)


def permutation_cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    cycles = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        cycles.append(tuple(cyc))
    return cycles


@dataclass
class OrbitReport:
    fixed_rank: int
    orbit_sizes: list[int]
    degree: int
    lemma_applicable: bool
    divisibility_holds: Optional[bool]


def orbit_divisibility(gens: Sequence[PicAut]) -> OrbitReport:
    """Orbit sizes of the generated group on exceptional classes; when the
    fixed rank is 1 every orbit size must be divisible by the degree 9-r."""
    if not gens:
        raise ValueError("need at least one generator")
    r = gens[0].r
    classes = enumerate_exceptional(r)
    index = {c: i for i, c in enumerate(classes)}
    perms = []
    for g in gens:
        perms.append(act_on_exceptional(g))
    n = len(classes)
    seen = [False] * n
    sizes = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        size = 0
        while stack:
            cur = stack.pop()
            size += 1
            for p in perms:
                nxt = p[cur]
                if not seen[nxt]:
                    seen[nxt] = True
                    stack.append(nxt)
        sizes.append(size)
    sizes.sort()
    fr = fixed_rank(gens)
    degree = 9 - r
    applicable = fr == 1
    holds: Optional[bool] = None
    if applicable:
        holds = all(s % degree == 0 for s in sizes)
        if not holds:
            raise ValueError(
                f"orbit sizes {sizes} not all divisible by degree {degree} despite fixed rank 1"
            )
    return OrbitReport(fr, sizes, degree, applicable, holds)
