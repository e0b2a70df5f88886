"""Smith normal form and integer kernels over Python integers.

Matrices are lists of lists of ints.  Nothing here uses floating point.
"""


def _copy(A):
    return [list(map(int, row)) for row in A]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(A, transforms=True):
    """Return (U, D, V) with U A V = D diagonal, U and V unimodular.

    The diagonal entries are nonnegative and each divides the next.  With
    ``transforms=False`` U and V are returned as None.
    """
    D = _copy(A)
    m = len(D)
    n = len(D[0]) if m else 0
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        rs, rd = D[src], D[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += c * rs[k]
        if U is not None:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += c * us[k]

    def add_col(src, dst, c):
        for row in D:
            if row[src]:
                row[dst] += c * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if done:
                # enforce divisibility of the remaining block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
                continue
            # move the smallest entry of row/column t to the pivot
            best = (abs(D[t][t]), t, t)
            for i in range(t + 1, m):
                if D[i][t] and abs(D[i][t]) < best[0]:
                    best = (abs(D[i][t]), i, t)
            for j in range(t + 1, n):
                if D[t][j] and abs(D[t][j]) < best[0]:
                    best = (abs(D[t][j]), t, j)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]
        t += 1
    return U, D, V


def elementary_divisors(A):
    """Nonzero diagonal entries of the Smith form of A."""
    if not A or not A[0]:
        return []
    _, D, _ = smith_normal_form(A, transforms=False)
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]


def rank(A):
    return len(elementary_divisors(A))


def integer_kernel(A, ncols=None):
    """Basis (list of vectors) of the right kernel {v : A v = 0} over Z.

    The basis spans a saturated sublattice; ``ncols`` is needed when A has no
    rows.
    """
    if not A:
        n = ncols if ncols is not None else 0
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    n = len(A[0])
    _, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def solve_integer(A, b):
    """An integer x with A x = b, or None when no integral solution exists."""
    m = len(A)
    if m == 0:
        return None if any(b) else []
    n = len(A[0])
    U, D, V = smith_normal_form(A)
    ub = [sum(U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d == 0:
            if ub[i]:
                return None
            continue
        if ub[i] % d:
            return None
        y[i] = ub[i] // d
    return [sum(V[i][k] * y[k] for k in range(n)) for i in range(n)]
