"""Integer homology via Smith normal form (exact Python integers throughout)."""
from __future__ import annotations

from dataclasses import dataclass, field

from .complex import SimplicialComplex


@dataclass
class IntegerMatrix:
    """Sparse integer matrix: ``entries`` maps (row, col) to a nonzero int."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), x in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        self.entries = {k: int(x) for k, x in self.entries.items() if x}

    @classmethod
    def from_dense(cls, grid) -> "IntegerMatrix":
        grid = [list(r) for r in grid]
        cols = len(grid[0]) if grid else 0
        if any(len(r) != cols for r in grid):
            raise ValueError("ragged matrix")
        entries = {(i, j): x for i, r in enumerate(grid) for j, x in enumerate(r) if x}
        return cls(len(grid), cols, entries)

    def to_dense(self) -> list:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row = {}
        for (k, j), x in other.entries.items():
            by_row.setdefault(k, []).append((j, x))
        acc = {}
        for (i, k), x in self.entries.items():
            for j, y in by_row.get(k, ()):
                acc[i, j] = acc.get((i, j), 0) + x * y
        return IntegerMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries


def smith_normal_form(m) -> tuple:
    """Invariant factors and rank of an integer matrix.

    Returns ``(divisors, rank)`` with ``divisors`` the positive invariant
    factors d1 | d2 | ... | dr. Unit pivots are eliminated sparsely first; any
    remainder goes through a dense gcd reduction.
    """
    if not isinstance(m, IntegerMatrix):
        m = IntegerMatrix.from_dense(m)
    rows = {}
    cols = {}
    for (i, j), x in m.entries.items():
        rows.setdefault(i, {})[j] = x
        cols.setdefault(j, {})[i] = x

    ones = 0
    while True:
        pivot = _unit_pivot(rows, cols)
        if pivot is None:
            break
        pi, pj = pivot
        prow = rows.pop(pi)
        u = prow[pj]  # +-1
        for i in list(cols[pj]):
            if i == pi:
                continue
            f = rows[i][pj] * u
            target = rows[i]
            for j, x in prow.items():
                y = target.get(j, 0) - f * x
                if y:
                    target[j] = y
                    cols.setdefault(j, {})[i] = y
                else:
                    target.pop(j, None)
                    cols[j].pop(i, None)
            if not target:
                del rows[i]
        for j in prow:
            cols[j].pop(pi, None)
            if not cols[j]:
                del cols[j]
        cols.pop(pj, None)
        ones += 1

    rest = _dense_snf(rows)
    divisors = [1] * ones + rest
    return tuple(divisors), len(divisors)


def _unit_pivot(rows, cols):
    best = None
    for i, r in rows.items():
        for j, x in r.items():
            if x in (1, -1):
                cost = (len(r) - 1) * (len(cols[j]) - 1)
                if best is None or cost < best[0]:
                    best = (cost, i, j)
                    if cost == 0:
                        return i, j
    return None if best is None else (best[1], best[2])


def _dense_snf(rows) -> list:
    if not rows:
        return []
    col_ids = sorted({j for r in rows.values() for j in r})
    col_pos = {j: k for k, j in enumerate(col_ids)}
    a = []
    for i in sorted(rows):
        line = [0] * len(col_ids)
        for j, x in rows[i].items():
            line[col_pos[j]] = x
        a.append(line)
    n_rows, n_cols = len(a), len(col_ids)
    diag = []
    t = 0
    while t < min(n_rows, n_cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, n_rows) for j in range(t, n_cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            done = True
            for i in range(t + 1, n_rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, n_cols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n_cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, n_rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, n_rows) for j in range(t + 1, n_cols)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                # fold the offending row in and keep reducing
                for j in range(t, n_cols):
                    a[t][j] += a[bad[0]][j]
                continue
            # move the smallest remaining entry of row/column t into the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, n_rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, n_cols) if a[t][j]]
            _, pi, pj = min(cand)
            a[t], a[pi] = a[pi], a[t]
            for r in a:
                r[t], r[pj] = r[pj], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class HomologyProfile:
    """Per-dimension Betti numbers and torsion divisors."""

    betti: tuple
    torsion: tuple
    reduced: bool = True

    def is_trivial(self) -> bool:
        return not any(self.betti) and not any(self.torsion)

    def as_groups(self) -> list:
        out = []
        for b, tors in zip(self.betti, self.torsion):
            parts = ["Z"] * b + [f"Z/{d}" for d in tors]
            out.append(" + ".join(parts) if parts else "0")
        return out


def boundary_matrix(c: SimplicialComplex, d: int) -> IntegerMatrix:
    """Boundary map C_d -> C_{d-1}; rows index (d-1)-simplices.

    Simplices are oriented by increasing vertex order; the face dropping the
    i-th vertex has sign (-1)^i. For d = 0 this is the augmentation.
    """
    targets = c.simplices_of_dim(d - 1) if d > 0 else []
    sources = c.simplices_of_dim(d)
    if d == 0:
        return IntegerMatrix(1 if sources else 0, len(sources),
                             {(0, j): 1 for j in range(len(sources))})
    row = {s: i for i, s in enumerate(targets)}
    entries = {}
    for j, s in enumerate(sources):
        for i in range(len(s)):
            entries[row[s[:i] + s[i + 1:]], j] = (-1) ** i
    return IntegerMatrix(len(targets), len(sources), entries)


def homology(c: SimplicialComplex, reduced: bool = True) -> HomologyProfile:
    """Integer homology from boundary matrices, reduced by default."""
    top = c.dim
    ranks, divisors = {}, {}
    for d in range(0 if reduced else 1, top + 2):
        m = boundary_matrix(c, d) if d <= top else IntegerMatrix(len(c.simplices_of_dim(top)), 0)
        divs, r = smith_normal_form(m)
        ranks[d] = r
        divisors[d] = [x for x in divs if x > 1]
    betti, torsion = [], []
    for d in range(top + 1):
        n = len(c.simplices_of_dim(d))
        betti.append(n - ranks.get(d, 0) - ranks.get(d + 1, 0))
        torsion.append(tuple(divisors.get(d + 1, [])))
    return HomologyProfile(tuple(betti), tuple(torsion), reduced)
