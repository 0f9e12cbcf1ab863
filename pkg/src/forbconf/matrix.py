"""r-symbol matrices, configuration containment and the standard named matrices.

Matrices are immutable and stored column-wise in canonical (lexicographically
sorted) order, so two matrices with the same multiset of columns compare equal.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

Column = tuple[int, ...]


class MatrixFormatError(ValueError):
    """Raised for malformed matrix text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class RMatrix:
    rows: int
    alphabet: int
    columns: tuple[Column, ...]

    def __post_init__(self):
        if self.rows < 0:
            raise ValueError("row count must be non-negative")
        if self.alphabet < 2:
            raise ValueError("alphabet must have at least 2 symbols")
        cols = tuple(tuple(int(x) for x in c) for c in self.columns)
        for c in cols:
            if len(c) != self.rows:
                raise ValueError(f"column {c} does not have {self.rows} entries")
            for x in c:
                if not 0 <= x < self.alphabet:
                    raise ValueError(f"entry {x} outside alphabet 0..{self.alphabet - 1}")
        object.__setattr__(self, "columns", tuple(sorted(cols)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], alphabet: int | None = None) -> "RMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("use RMatrix.empty for 0-row matrices")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        if alphabet is None:
            alphabet = max(2, 1 + max((x for r in rows for x in r), default=1))
        cols = [tuple(r[j] for r in rows) for j in range(width)]
        return cls(len(rows), alphabet, tuple(cols))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int | None = None,
                     alphabet: int | None = None) -> "RMatrix":
        cols = [tuple(c) for c in columns]
        if rows is None:
            if not cols:
                raise ValueError("row count needed for a matrix without columns")
            rows = len(cols[0])
        if alphabet is None:
            alphabet = max(2, 1 + max((x for c in cols for x in c), default=1))
        return cls(rows, alphabet, tuple(cols))

    @classmethod
    def empty(cls, ncols: int = 0, rows: int = 0, alphabet: int = 2) -> "RMatrix":
        """``rows`` x ``ncols`` matrix with no symbols (rows must be 0) or no columns."""
        if rows and ncols:
            raise ValueError("empty() builds 0-row or 0-column matrices only")
        return cls(rows, alphabet, ((),) * ncols if rows == 0 else ())

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def __len__(self) -> int:
        return len(self.columns)

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(c[i] for c in self.columns)

    def row_list(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def with_alphabet(self, alphabet: int) -> "RMatrix":
        return RMatrix(self.rows, alphabet, self.columns)

    def restrict_rows(self, rows: Sequence[int]) -> "RMatrix":
        return RMatrix(len(rows), self.alphabet, tuple(tuple(c[i] for i in rows) for c in self.columns))

    def drop_columns(self, idx: Iterable[int]) -> "RMatrix":
        drop = set(idx)
        return RMatrix(self.rows, self.alphabet,
                       tuple(c for j, c in enumerate(self.columns) if j not in drop))

    def permute_rows(self, perm: Sequence[int]) -> "RMatrix":
        return RMatrix(self.rows, self.alphabet, tuple(tuple(c[p] for p in perm) for c in self.columns))

    def multiplicities(self) -> Counter:
        return Counter(self.columns)

    def symbols(self) -> set[int]:
        return {x for c in self.columns for x in c}

    def __str__(self) -> str:
        return to_text(self)


def canonicalize(A: RMatrix) -> RMatrix:
    # columns are sorted on construction; rebuilding is the identity
    return RMatrix(A.rows, A.alphabet, A.columns)


def is_simple(A: RMatrix) -> bool:
    return all(a != b for a, b in zip(A.columns, A.columns[1:]))


def support(F: RMatrix) -> RMatrix:
    return RMatrix(F.rows, F.alphabet, tuple(dict.fromkeys(F.columns)))


def max_multiplicity(F: RMatrix) -> int:
    return max(F.multiplicities().values(), default=0)


def complement(F: RMatrix) -> RMatrix:
    if F.alphabet != 2:
        raise ValueError("complement is defined for (0,1)-matrices")
    return RMatrix(F.rows, 2, tuple(tuple(1 - x for x in c) for c in F.columns))


def relabel(F: RMatrix, i: int, j: int, r: int | None = None) -> RMatrix:
    """Substitute 0 -> i and 1 -> j in a (0,1)-matrix; result is over ``r`` symbols."""
    if F.alphabet != 2:
        raise ValueError("relabel expects a (0,1)-matrix")
    if r is None:
        r = max(2, i + 1, j + 1)
    if i == j:
        raise ValueError("relabel needs two distinct symbols")
    if not (0 <= i < r and 0 <= j < r):
        raise ValueError(f"symbols {i}, {j} outside alphabet of size {r}")
    sub = (i, j)
    return RMatrix(F.rows, r, tuple(tuple(sub[x] for x in c) for c in F.columns))


def direct_product(A: RMatrix, B: RMatrix) -> RMatrix:
    if A.alphabet != B.alphabet:
        raise ValueError("direct product needs a common alphabet")
    return RMatrix(A.rows + B.rows, A.alphabet, tuple(a + b for a in A.columns for b in B.columns))


# ---------------------------------------------------------------------------
# configuration equivalence

def config_key(A: RMatrix) -> tuple:
    """Lexicographically least column tuple over all row permutations."""
    if A.rows <= 1:
        return (A.rows, A.alphabet, A.columns)
    best = min(tuple(sorted(tuple(c[p] for p in perm) for c in A.columns))
               for perm in permutations(range(A.rows)))
    return (A.rows, A.alphabet, best)


def config_canonical(A: RMatrix) -> RMatrix:
    rows, alphabet, cols = config_key(A)
    return RMatrix(rows, alphabet, cols)


def config_equivalent(A: RMatrix, B: RMatrix) -> bool:
    if (A.rows, A.ncols, A.alphabet) != (B.rows, B.ncols, B.alphabet):
        return False
    return config_key(A) == config_key(B)


# ---------------------------------------------------------------------------
# containment

def _row_counts(A: RMatrix, i: int) -> Counter:
    return Counter(c[i] for c in A.columns)


def contains_config(F: RMatrix, A: RMatrix) -> bool:
    """True iff F is a row and column permutation of some submatrix of A."""
    if F.ncols == 0:
        return True
    if F.rows > A.rows or F.ncols > A.ncols:
        return False
    if F.rows == 0:
        return A.ncols >= F.ncols

    # candidate A rows for each F row: symbol counts must fit
    f_counts = [_row_counts(F, i) for i in range(F.rows)]
    a_counts = [_row_counts(A, i) for i in range(A.rows)]
    cands = []
    for fc in f_counts:
        ok = [a for a, ac in enumerate(a_counts) if all(ac[s] >= n for s, n in fc.items())]
        if not ok:
            return False
        cands.append(ok)
    order = sorted(range(F.rows), key=lambda i: len(cands[i]))

    f_cols = F.columns
    a_cols = A.columns
    used: list[int] = []

    def fits(depth: int) -> bool:
        f_rows = order[:depth]
        need = Counter(tuple(c[i] for i in f_rows) for c in f_cols)
        have = Counter(tuple(c[a] for a in used) for c in a_cols)
        return all(have[p] >= n for p, n in need.items())

    def extend(depth: int) -> bool:
        if depth == F.rows:
            return True
        for a in cands[order[depth]]:
            if a in used:
                continue
            used.append(a)
            if fits(depth + 1) and extend(depth + 1):
                return True
            used.pop()
        return False

    return extend(0)


def contains_config_naive(F: RMatrix, A: RMatrix) -> bool:
    """Reference oracle: every row injection and every column injection."""
    if F.ncols == 0:
        return True
    if F.rows > A.rows or F.ncols > A.ncols:
        return False
    target = sorted(F.columns)
    for rows in permutations(range(A.rows), F.rows):
        restricted = [tuple(c[i] for i in rows) for c in A.columns]
        for cols in permutations(range(A.ncols), F.ncols):
            if sorted(restricted[j] for j in cols) == target:
                return True
    return False


# ---------------------------------------------------------------------------
# families

@dataclass(frozen=True)
class ConfigFamily:
    alphabet: int
    members: tuple[RMatrix, ...]
    normalized: bool = False

    def __post_init__(self):
        seen = {}
        for F in self.members:
            if F.alphabet > self.alphabet:
                raise ValueError("member alphabet larger than family alphabet")
            F = F.with_alphabet(self.alphabet)
            seen.setdefault(config_key(F), config_canonical(F))
        members = tuple(seen[k] for k in sorted(seen, key=repr))
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *members: RMatrix, alphabet: int | None = None) -> "ConfigFamily":
        if alphabet is None:
            alphabet = max(F.alphabet for F in members)
        return cls(alphabet, tuple(members))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def normalize(self) -> "ConfigFamily":
        """Drop members that contain another member (they are implied)."""
        keep = [F for F in self.members
                if not any(G is not F and contains_config(G, F) and not config_equivalent(G, F)
                           for G in self.members)]
        return ConfigFamily(self.alphabet, tuple(keep), normalized=True)

    def with_alphabet(self, alphabet: int) -> "ConfigFamily":
        return ConfigFamily(alphabet, self.members, self.normalized)


def family_avoided(A: RMatrix, fam: ConfigFamily | Iterable[RMatrix]) -> bool:
    return not any(contains_config(F, A) for F in fam)


def family_dominates(small: Iterable[RMatrix], large: Iterable[RMatrix]) -> bool:
    """True when every member of ``large`` contains some member of ``small``."""
    small = list(small)
    return all(any(contains_config(F, G) for F in small) for G in large)


def sym_family(F: RMatrix, r: int) -> ConfigFamily:
    if r < 2:
        raise ValueError("r must be at least 2")
    return ConfigFamily(r, tuple(relabel(F, i, j, r) for i, j in combinations(range(r), 2)))


def s_family(F: RMatrix, r: int) -> ConfigFamily:
    if r < 2:
        raise ValueError("r must be at least 2")
    return ConfigFamily(r, tuple(relabel(F, i, j, r)
                                 for i in range(r) for j in range(r) if i != j))


def sym_of_family(members: Iterable[RMatrix], r: int) -> ConfigFamily:
    return ConfigFamily(r, tuple(G for F in members for G in sym_family(F, r)))


def column_profile(column: Column, r: int) -> tuple[int, ...]:
    counts = [0] * r
    for x in column:
        counts[x] += 1
    return tuple(counts)


# ---------------------------------------------------------------------------
# named matrices

def make_K(k: int) -> RMatrix:
    return RMatrix(k, 2, tuple(product((0, 1), repeat=k)))


def make_Ks(k: int, s: int) -> RMatrix:
    cols = [c for c in product((0, 1), repeat=k) if sum(c) == s]
    return RMatrix(k, 2, tuple(cols))


def make_I(n: int) -> RMatrix:
    return RMatrix.from_rows([[int(i == j) for j in range(n)] for i in range(n)], 2)


def make_T(n: int) -> RMatrix:
    return RMatrix.from_rows([[int(j >= i) for j in range(n)] for i in range(n)], 2)


def make_const(p: int, q: int, sym: int, alphabet: int = 2) -> RMatrix:
    if p == 0:
        return RMatrix.empty(q, alphabet=alphabet)
    return RMatrix(p, max(alphabet, sym + 1), ((sym,) * p,) * q)


def make_F_abcd(a: int, b: int, c: int, d: int) -> RMatrix:
    rows = [[1, 1]] * a + [[1, 0]] * b + [[0, 1]] * c + [[0, 0]] * d
    return RMatrix.from_rows(rows, 2)


def make_block_side(p: int, q0: int, q1: int) -> RMatrix:
    """[0_{p x q0}  1_{p x q1}]"""
    return RMatrix(p, 2, ((0,) * p,) * q0 + ((1,) * p,) * q1)


def make_block_stack(p1: int, p0: int, q: int) -> RMatrix:
    """1_{p1 x q} on top of 0_{p0 x q}"""
    return RMatrix(p1 + p0, 2, ((1,) * p1 + (0,) * p0,) * q)


def stack_constant_row(F: RMatrix, sym: int = 1) -> RMatrix:
    """Put a constant row of ``sym`` on top of F."""
    return RMatrix(F.rows + 1, F.alphabet, tuple((sym,) + c for c in F.columns))


# ---------------------------------------------------------------------------
# text format

def to_text(A: RMatrix) -> str:
    head = f"{A.rows} {A.alphabet}" + (f" {A.ncols}" if A.rows == 0 else "")
    lines = [head] + [" ".join(str(x) for x in A.row(i)) for i in range(A.rows)]
    return "\n".join(lines) + "\n"


def _parse_block(lines: list[tuple[int, str]]) -> RMatrix:
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) not in (2, 3) or not all(p.isdigit() for p in parts):
        raise MatrixFormatError(f"expected header 'm r', got {head!r}", lineno)
    m, r = int(parts[0]), int(parts[1])
    if r < 2:
        raise MatrixFormatError("alphabet must be at least 2", lineno)
    body = lines[1:]
    if len(body) != m:
        raise MatrixFormatError(f"header announces {m} rows, found {len(body)}", lineno)
    if m == 0:
        return RMatrix.empty(int(parts[2]) if len(parts) == 3 else 0, alphabet=r)
    rows = []
    for ln, text in body:
        try:
            row = [int(tok) for tok in text.split()]
        except ValueError:
            raise MatrixFormatError(f"non-integer entry in {text!r}", ln) from None
        if any(not 0 <= x < r for x in row):
            raise MatrixFormatError(f"entry outside 0..{r - 1}", ln)
        if rows and len(row) != len(rows[0]):
            raise MatrixFormatError("row length differs from the first row", ln)
        rows.append(row)
    if not rows[0]:
        return RMatrix(m, r, ())
    return RMatrix.from_rows(rows, r)


def parse_matrices(text: str) -> list[RMatrix]:
    blocks: list[list[tuple[int, str]]] = [[]]
    for n, line in enumerate(text.splitlines(), 1):
        if line.strip().startswith("#"):
            continue
        if line.strip():
            blocks[-1].append((n, line.strip()))
        elif blocks[-1]:
            blocks.append([])
    return [_parse_block(b) for b in blocks if b]


def parse_matrix(text: str) -> RMatrix:
    mats = parse_matrices(text)
    if len(mats) != 1:
        raise MatrixFormatError(f"expected exactly one matrix, found {len(mats)}")
    return mats[0]


def family_to_text(members: Iterable[RMatrix]) -> str:
    return "\n".join(to_text(F) for F in members)


def read_family(path) -> ConfigFamily:
    with open(path) as fh:
        mats = parse_matrices(fh.read())
    if not mats:
        raise MatrixFormatError("family file holds no matrices")
    return ConfigFamily.of(*mats)
