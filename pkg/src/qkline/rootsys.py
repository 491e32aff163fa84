"""Simple root systems given by Cartan data.

Conventions used throughout the package:

* The Cartan matrix is stored with ``A[i][j] = <alpha_j, alpha_i^vee>``, so
  the j-th *column* of ``A`` gives the simple root ``alpha_j`` in
  fundamental-weight coordinates.
* Weights are integer vectors in fundamental-weight coordinates
  (``coords[i] = <lam, alpha_i^vee>``); roots additionally carry simple-root
  coordinates.
* The symmetrizer ``d`` satisfies ``d[i]*A[i][j] == d[j]*A[j][i]`` with
  ``d[i]`` proportional to the squared length of ``alpha_i``; a root is long
  when its ``d`` is maximal in its connected component.
* Named types use Bourbaki node numbering.  In particular ``C2`` has
  ``alpha_1`` short and ``alpha_2`` long.

All data is immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class CartanError(ValueError):
    """Raised for data that is not a finite-type Cartan matrix."""


@dataclass(frozen=True)
class Weight:
    """A weight-lattice point in fundamental-weight coordinates."""

    coords: tuple[int, ...]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))


@dataclass(frozen=True)
class Root:
    """A root in simple-root coordinates."""

    coords: tuple[int, ...]

    @property
    def is_positive(self) -> bool:
        return any(c > 0 for c in self.coords)

    @property
    def height(self) -> int:
        return sum(self.coords)

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coords))


@dataclass(frozen=True)
class CartanDatum:
    """A finite-type Cartan matrix plus length data.

    ``cartan[i][j] = <alpha_j, alpha_i^vee>`` (0-based storage; the public
    query functions below take 1-based node indices).
    """

    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    label: str | None = None

    def __post_init__(self):
        a = self.cartan
        n = self.rank
        if n < 1 or len(a) != n or any(len(row) != n for row in a):
            raise CartanError("Cartan matrix must be rank x rank")
        for i in range(n):
            if a[i][i] != 2:
                raise CartanError("diagonal entries must equal 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise CartanError("off-diagonal entries must be <= 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise CartanError("zero pattern must be symmetric")
        d = self.symmetrizer
        if len(d) != n or any(x <= 0 for x in d):
            raise CartanError("symmetrizer must consist of positive integers")
        for i in range(n):
            for j in range(n):
                if d[i] * a[i][j] != d[j] * a[j][i]:
                    raise CartanError("symmetrizer does not symmetrize the Cartan matrix")
        if not _is_positive_definite([[d[i] * a[i][j] for j in range(n)] for i in range(n)]):
            raise CartanError("Cartan matrix is not of finite type")

    def __str__(self):
        return self.label or f"CartanDatum(rank={self.rank})"


def _is_positive_definite(b) -> bool:
    """Leading-principal-minor test, exact over the rationals."""
    n = len(b)
    m = [[Fraction(x) for x in row] for row in b]
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


def _symmetrizer_from_matrix(a) -> tuple[int, ...]:
    """Solve d[i]*a[i][j] == d[j]*a[j][i] componentwise over each Dynkin component."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or a[i][j] == 0:
                    continue
                if a[j][i] == 0:
                    raise CartanError("zero pattern must be symmetric")
                val = d[i] * Fraction(a[i][j], a[j][i])
                if d[j] is None:
                    d[j] = val
                    stack.append(j)
                elif d[j] != val:
                    raise CartanError("no consistent symmetrizer exists")
    denom_lcm = 1
    for x in d:
        denom_lcm = _lcm(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in d]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    return tuple(x // g for x in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _lcm(a: int, b: int) -> int:
    return a * b // _gcd(a, b)


def cartan_datum(matrix, symmetrizer=None, label=None) -> CartanDatum:
    """Build a validated CartanDatum from a matrix (any nested-int sequence)."""
    a = tuple(tuple(int(x) for x in row) for row in matrix)
    if symmetrizer is None:
        symmetrizer = _symmetrizer_from_matrix(a)
    return CartanDatum(len(a), a, tuple(int(x) for x in symmetrizer), label)


def _chain_matrix(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    return a


@lru_cache(maxsize=None)
def named_datum(label: str) -> CartanDatum:
    """Cartan datum for a named type ("A2", "B3", ..., Bourbaki numbering)."""
    label = label.strip().upper()
    if len(label) < 2 or label[0] not in "ABCDEFG" or not label[1:].isdigit():
        raise CartanError(f"unknown type label {label!r}")
    family, n = label[0], int(label[1:])
    if n < 1:
        raise CartanError(f"bad rank in {label!r}")
    if family == "A":
        a = _chain_matrix(n)
    elif family == "B":
        # alpha_n is the short root
        if n < 2:
            raise CartanError("type B needs rank >= 2")
        a = _chain_matrix(n)
        a[n - 2][n - 1] = -1
        a[n - 1][n - 2] = -2
    elif family == "C":
        # alpha_n is the long root; alpha_1..alpha_{n-1} are short
        if n < 2:
            raise CartanError("type C needs rank >= 2")
        a = _chain_matrix(n)
        a[n - 2][n - 1] = -2
        a[n - 1][n - 2] = -1
    elif family == "D":
        if n < 3:
            raise CartanError("type D needs rank >= 3")
        a = _chain_matrix(n - 1)
        for row in a:
            row.append(0)
        a.append([0] * n)
        a[n - 1][n - 1] = 2
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        # reattach the chain end: nodes n-1 and n both hang off node n-2
        a[n - 3][n - 2] = a[n - 2][n - 3] = -1
    elif family == "E":
        if n not in (6, 7, 8):
            raise CartanError("type E needs rank 6, 7 or 8")
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8)]
        for i, j in edges:
            if i <= n and j <= n:
                a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    elif family == "F":
        if n != 4:
            raise CartanError("type F needs rank 4")
        a = _chain_matrix(4)
        a[1][2] = -1
        a[2][1] = -2
    elif family == "G":
        if n != 2:
            raise CartanError("type G needs rank 2")
        a = [[2, -3], [-1, 2]]
    else:  # pragma: no cover
        raise CartanError(label)
    return cartan_datum(a, label=label)


def parse_cartan_file(text: str, label=None) -> CartanDatum:
    """Read a datum from plain text: rank, then the matrix rows, then an
    optional symmetrizer line."""
    rows = [line.split() for line in text.splitlines() if line.split()]
    if not rows:
        raise CartanError("empty Cartan file")
    try:
        n = int(rows[0][0])
        nums = [[int(x) for x in row] for row in rows[1:]]
    except ValueError as exc:
        raise CartanError(f"bad integer in Cartan file: {exc}") from None
    if len(nums) == n:
        matrix, symm = nums, None
    elif len(nums) == n + 1:
        matrix, symm = nums[:n], nums[n]
    else:
        raise CartanError(f"expected {n} matrix rows, got {len(nums)}")
    return cartan_datum(matrix, symm, label)


def load_cartan_file(path, label=None) -> CartanDatum:
    with open(path, encoding="utf-8") as fh:
        return parse_cartan_file(fh.read(), label)


def resolve_group(name: str) -> CartanDatum:
    """Named type label, or a path to a Cartan-matrix file."""
    try:
        return named_datum(name)
    except CartanError:
        pass
    import os

    if os.path.exists(name):
        return load_cartan_file(name, label=name)
    raise CartanError(f"{name!r} is neither a type label nor a readable file")


# -- queries -----------------------------------------------------------------

def _check_index(datum: CartanDatum, i: int):
    if not 1 <= i <= datum.rank:
        raise IndexError(f"node index {i} out of range 1..{datum.rank}")


def adjacent(datum: CartanDatum, i: int, j: int) -> bool:
    """True iff nodes i and j are joined in the Dynkin diagram."""
    _check_index(datum, i)
    _check_index(datum, j)
    if i == j:
        raise ValueError("adjacency needs two distinct nodes")
    return datum.cartan[i - 1][j - 1] != 0


@lru_cache(maxsize=None)
def _components(datum: CartanDatum) -> tuple[frozenset[int], ...]:
    seen = set()
    comps = []
    for start in range(1, datum.rank + 1):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(1, datum.rank + 1):
                if j not in comp and j != i and datum.cartan[i - 1][j - 1] != 0:
                    comp.add(j)
                    stack.append(j)
        seen |= comp
        comps.append(frozenset(comp))
    return tuple(comps)


def is_long(datum: CartanDatum, i: int) -> bool:
    """True iff alpha_i is a long root (maximal d in its Dynkin component)."""
    _check_index(datum, i)
    for comp in _components(datum):
        if i in comp:
            return datum.symmetrizer[i - 1] == max(datum.symmetrizer[j - 1] for j in comp)
    raise AssertionError  # pragma: no cover


def simple_root(datum: CartanDatum, i: int) -> Root:
    _check_index(datum, i)
    return Root(tuple(1 if j == i - 1 else 0 for j in range(datum.rank)))


def root_to_weight(datum: CartanDatum, root: Root) -> Weight:
    return Weight(alpha_to_omega(datum, root.coords))


def alpha_to_omega(datum: CartanDatum, coords) -> tuple[int, ...]:
    """Simple-root coordinates -> fundamental-weight coordinates (A @ c)."""
    a = datum.cartan
    n = datum.rank
    return tuple(sum(a[i][j] * coords[j] for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def _inverse_cartan(datum: CartanDatum):
    n = datum.rank
    m = [[Fraction(datum.cartan[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        pivot = next(i for i in range(k, n) if m[i][k] != 0)
        m[k], m[pivot] = m[pivot], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return tuple(tuple(row[n:]) for row in m)


def omega_to_alpha(datum: CartanDatum, coords) -> tuple[int, ...] | None:
    """Fundamental-weight coordinates -> simple-root coordinates, or None when
    the weight is not in the root lattice."""
    inv = _inverse_cartan(datum)
    n = datum.rank
    out = []
    for i in range(n):
        x = sum(inv[i][j] * coords[j] for j in range(n))
        if x.denominator != 1:
            return None
        out.append(int(x))
    return tuple(out)


def weight_to_root(datum: CartanDatum, weight: Weight) -> Root | None:
    coords = omega_to_alpha(datum, weight.coords)
    if coords is None:
        return None
    root = Root(coords)
    return root if root in positive_roots(datum) or -root in positive_roots(datum) else None


def reflect(datum: CartanDatum, i: int, weight: Weight) -> Weight:
    """Simple reflection s_i acting on a weight: lam - <lam, alpha_i^vee> alpha_i."""
    _check_index(datum, i)
    c = weight.coords[i - 1]
    col = tuple(datum.cartan[j][i - 1] for j in range(datum.rank))
    return Weight(tuple(x - c * y for x, y in zip(weight.coords, col)))


def reflect_root_coords(datum: CartanDatum, i: int, coords) -> tuple[int, ...]:
    """s_i on simple-root coordinates: subtract (row i of A) . c times e_i."""
    pair = sum(datum.cartan[i - 1][j] * coords[j] for j in range(datum.rank))
    return tuple(c - pair if j == i - 1 else c for j, c in enumerate(coords))


@lru_cache(maxsize=None)
def positive_roots(datum: CartanDatum) -> tuple[Root, ...]:
    """All positive roots, sorted by height then lexicographically."""
    n = datum.rank
    found = {tuple(1 if j == i else 0 for j in range(n)) for i in range(n)}
    frontier = list(found)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(1, n + 1):
                img = reflect_root_coords(datum, i, c)
                if any(x < 0 for x in img):
                    img = tuple(-x for x in img)
                if img not in found:
                    found.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(Root(c) for c in sorted(found, key=lambda c: (sum(c), tuple(-x for x in c))))


def root_pairing(datum: CartanDatum, gamma, beta) -> int:
    """<gamma, beta^vee> = 2(gamma,beta)/(beta,beta) for simple-root coords."""
    n = datum.rank
    d = datum.symmetrizer
    a = datum.cartan
    num = sum(d[i] * a[i][j] * gamma[i] * beta[j] for i in range(n) for j in range(n))
    den = sum(d[i] * a[i][j] * beta[i] * beta[j] for i in range(n) for j in range(n))
    q, r = divmod(2 * num, den)
    if r:
        raise ValueError("pairing is not integral; beta is not a root")
    return q


def weight_coroot_pairing(datum: CartanDatum, weight_coords, beta) -> int:
    """<lam, beta^vee> for lam in fundamental-weight coords, beta a root in
    simple-root coords."""
    d = datum.symmetrizer
    n = datum.rank
    a = datum.cartan
    num = sum(d[i] * weight_coords[i] * beta[i] for i in range(n))
    den = sum(d[i] * a[i][j] * beta[i] * beta[j] for i in range(n) for j in range(n))
    q, r = divmod(2 * num, den)
    if r:
        raise ValueError("pairing is not integral; beta is not a root")
    return q
