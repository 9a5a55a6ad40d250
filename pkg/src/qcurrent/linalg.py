"""Sparse matrices and exact elimination over Q(q)."""

from .scalars import ONE, ZERO, qq


class SparseMatrix:
    """A matrix over Q(q) stored as ``{row: {col: value}}`` without zeros."""

    __slots__ = ('nrows', 'ncols', 'rows')

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = {}
        if rows:
            for i, row in rows.items():
                clean = {j: v for j, v in row.items() if v}
                if clean:
                    self.rows[i] = clean

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def zero(cls, nrows, ncols=None):
        return cls(nrows, nrows if ncols is None else ncols)

    @classmethod
    def diagonal(cls, values):
        values = [qq(v) for v in values]
        return cls(len(values), len(values), {i: {i: v} for i, v in enumerate(values)})

    @classmethod
    def from_dense(cls, data):
        data = [[qq(x) for x in row] for row in data]
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, {i: dict(enumerate(row)) for i, row in enumerate(data)})

    def to_dense(self):
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, ZERO)

    def shape(self):
        return self.nrows, self.ncols

    def is_zero(self):
        return not self.rows

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def copy(self):
        m = SparseMatrix(self.nrows, self.ncols)
        m.rows = {i: dict(r) for i, r in self.rows.items()}
        return m

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape() == other.shape() and self.rows == other.rows

    def __add__(self, other):
        self._check_same(other)
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in r.items():
                w = tgt.get(j)
                s = v if w is None else w + v
                if s:
                    tgt[j] = s
                else:
                    del tgt[j]
            if not tgt:
                del rows[i]
        m = SparseMatrix(self.nrows, self.ncols)
        m.rows = rows
        return m

    def __neg__(self):
        m = SparseMatrix(self.nrows, self.ncols)
        m.rows = {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()}
        return m

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = qq(c)
        if not c:
            return SparseMatrix(self.nrows, self.ncols)
        m = SparseMatrix(self.nrows, self.ncols)
        m.rows = {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()}
        return m

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f'shape mismatch {self.shape()} @ {other.shape()}')
        orows = other.rows
        out = {}
        for i, r in self.rows.items():
            acc = {}
            for k, a in r.items():
                ok = orows.get(k)
                if not ok:
                    continue
                for j, b in ok.items():
                    w = acc.get(j)
                    acc[j] = a * b if w is None else w + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        m = SparseMatrix(self.nrows, other.ncols)
        m.rows = out
        return m

    def apply(self, vec):
        """Multiply by a sparse column vector ``{index: value}``."""
        out = {}
        for i, r in self.rows.items():
            acc = ZERO
            for j, v in r.items():
                x = vec.get(j)
                if x is not None:
                    acc = acc + v * x
            if acc:
                out[i] = acc
        return out

    def transpose(self):
        out = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                out.setdefault(j, {})[i] = v
        m = SparseMatrix(self.ncols, self.nrows)
        m.rows = out
        return m

    def kron(self, other):
        out = {}
        d = other.ncols
        for i, r in self.rows.items():
            for k, ro in other.rows.items():
                row = {}
                for j, a in r.items():
                    for l, b in ro.items():
                        row[j * d + l] = a * b
                out[i * other.nrows + k] = row
        m = SparseMatrix(self.nrows * other.nrows, self.ncols * other.ncols)
        m.rows = out
        return m

    def restrict(self, row_idx, col_idx):
        """Submatrix on the given row and column index lists."""
        cpos = {c: k for k, c in enumerate(col_idx)}
        out = {}
        for a, i in enumerate(row_idx):
            r = self.rows.get(i)
            if not r:
                continue
            row = {cpos[j]: v for j, v in r.items() if j in cpos}
            if row:
                out[a] = row
        m = SparseMatrix(len(row_idx), len(col_idx))
        m.rows = out
        return m

    def column(self, j):
        return {i: r[j] for i, r in self.rows.items() if j in r}

    def _check_same(self, other):
        if self.shape() != other.shape():
            raise ValueError(f'shape mismatch {self.shape()} vs {other.shape()}')

    def __repr__(self):
        return f'SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})'


def commutator(a, b, v=ONE):
    """The q-bracket ab - v*ba of two matrices."""
    ab = a @ b
    ba = b @ a
    if v == ONE:
        return ab - ba
    return ab - ba.scale(v)


# -- elimination ----------------------------------------------------------------

class Echelon:
    """Incremental row echelon form over Q(q).

    Rows are sparse dicts ``{col: value}``.  Each stored pivot row has a
    unit entry at its pivot column, and pivot columns are eliminated from
    later rows on insertion.
    """

    def __init__(self):
        self.pivots = {}   # pivot column -> row
        self.order = []

    def reduce(self, row):
        row = {j: v for j, v in row.items() if v}
        # eliminate pivots in increasing column order until none remain
        while True:
            hit = [j for j in row if j in self.pivots]
            if not hit:
                return row
            j = min(hit)
            c = row[j]
            for k, v in self.pivots[j].items():
                w = row.get(k)
                s = -c * v if w is None else w - c * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)

    def add(self, row):
        """Insert a row; return True when it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        j = min(row)
        inv = row[j].inverse()
        row = {k: v * inv for k, v in row.items()}
        self.pivots[j] = row
        self.order.append(j)
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def reduced_rows(self):
        """Fully reduced pivot rows keyed by pivot column."""
        cols = sorted(self.pivots)
        rows = {j: dict(self.pivots[j]) for j in cols}
        for j in reversed(cols):
            rj = rows[j]
            for i in cols:
                if i == j:
                    continue
                ri = rows[i]
                c = ri.get(j)
                if c:
                    for k, v in rj.items():
                        w = ri.get(k)
                        s = -c * v if w is None else w - c * v
                        if s:
                            ri[k] = s
                        else:
                            ri.pop(k, None)
        return rows


def rank(rows):
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank


def nullspace(rows, ncols):
    """Basis of {x : r.x = 0 for every row r}, as sparse dicts."""
    e = Echelon()
    for r in rows:
        e.add(r)
    red = e.reduced_rows()
    free = [j for j in range(ncols) if j not in red]
    basis = []
    for f in free:
        vec = {f: ONE}
        for p, r in red.items():
            c = r.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


class InconsistentSystem(ValueError):
    """The linear system has no solution."""


def solve(rows, rhs, ncols):
    """Solve ``A x = b`` exactly.

    Returns ``(particular, kernel_basis)``; raises InconsistentSystem when
    there is no solution.
    """
    aug = ncols
    e = Echelon()
    for r, b in zip(rows, rhs):
        row = dict(r)
        b = qq(b)
        if b:
            row[aug] = b
        e.add(row)
    if aug in e.pivots:
        raise InconsistentSystem('linear system is inconsistent')
    red = e.reduced_rows()
    x = {}
    for p, r in red.items():
        b = r.get(aug)
        if b:
            x[p] = b
    kernel = nullspace([{k: v for k, v in r.items() if k != aug} for r in red.values()], ncols)
    return x, kernel


def span_basis(vectors):
    """Reduced basis (list of sparse dicts) for the span of the vectors."""
    e = Echelon()
    for v in vectors:
        e.add(v)
    return list(e.reduced_rows().values())


def vec_is_zero(v):
    return not any(x for x in v.values())


def vec_add(a, b, c=ONE):
    """a + c*b for sparse vectors."""
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        s = c * v if w is None else w + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def as_qrational_dict(vec):
    return {k: qq(v) for k, v in vec.items() if qq(v)}

