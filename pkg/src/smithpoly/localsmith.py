"""Local Smith forms A*V = E*diag(p**alpha_1, ..., p**alpha_n) at one
monic irreducible factor p of det(A).

Three routes with identical contracts:

* ``local_smith`` -- the production algorithm: a breadth-first Jordan
  chain construction driven by nullspaces over the residue field R/pR.
  Each round appends the next residuals of the active chains to a growing
  tableau, row-reduces it, accepts the chains whose residuals are
  independent, and extends the rest.
* ``local_smith_over_K`` -- the same construction with all arithmetic in
  the base field: residue elements become s x s blocks (s = deg p), the
  tableau becomes a block matrix over K, and chain columns come in
  supercolumns of s, of which the first is kept.
* ``local_smith_reference`` -- the simple column-rotation version, kept
  only as a slow cross-checking oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    MultiplicityMismatch,
    NotRegular,
    NotSquare,
    PrimeDoesNotDivideDet,
    PrimeMismatch,
)
from .matpoly import MatPoly, expand_in_p, lambda_iso
from .poly import Poly
from .residue import (
    Companion,
    ResidueElt,
    companion_of,
    encode,
    residue_one,
    residue_zero,
)


@dataclass(frozen=True)
class LocalSmithResult:
    p: Poly
    V: MatPoly
    E: MatPoly
    alphas: tuple
    ranks: tuple
    beta: int
    method: str = "rpr"

    @property
    def mu(self) -> int:
        return sum(self.alphas)

    def diagonal(self) -> MatPoly:
        return MatPoly.diag([self.p**a for a in self.alphas])


# -- generic reduced row echelon form --------------------------------------


def _rref(rows, zero, one):
    """Gauss-Jordan over any exact field.

    Returns (rref rows, pivot column indices, null-space basis columns).
    Pivoting is leftmost column, topmost usable row, pivot scaled to 1,
    so the output is the canonical reduced echelon form.  Each null
    basis column carries a 1 in its free position and the negated
    reduced coefficients in the pivot positions.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv_src = m[r][c]
        m[r] = [e / inv_src for e in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    pivot_row = {c: i for i, c in enumerate(pivots)}
    null_basis = []
    pivot_set = set(pivots)
    for c in range(ncols):
        if c in pivot_set:
            continue
        vec = [zero] * ncols
        vec[c] = one
        for pc, pr in pivot_row.items():
            if m[pr][c]:
                vec[pc] = -m[pr][c]
        null_basis.append(vec)
    return m, pivots, null_basis


def rref_over_residue(matrix):
    """Reduced row echelon form over R/pR for a matrix of ResidueElt."""
    if not matrix or not matrix[0]:
        return [], [], []
    S = matrix[0][0].companion
    for row in matrix:
        for e in row:
            if not isinstance(e, ResidueElt):
                raise PrimeMismatch("entries must be ResidueElt")
            if not e.companion.same_prime(S):
                raise PrimeMismatch("entries over different primes")
            if len(e.coeffs) != S.s:
                raise DimensionMismatch("residue entry of wrong length")
    return _rref(matrix, residue_zero(S), residue_one(S))


# -- shared assembly ---------------------------------------------------------


def _finish_local(A, p, accepted, ranks, beta_loop, mu, method):
    alphas = tuple(a for a, _ in accepted)
    if any(alphas[i] > alphas[i + 1] for i in range(len(alphas) - 1)):
        raise MultiplicityMismatch("exponents not nondecreasing")
    if sum(alphas) != mu:
        raise MultiplicityMismatch(
            f"accepted exponents sum to {sum(alphas)}, expected {mu}"
        )
    beta = max(alphas) if alphas else 0
    if beta != beta_loop:
        raise MultiplicityMismatch(
            f"chain-length bookkeeping disagrees: {beta} vs loop {beta_loop}"
        )
    ranks = tuple(ranks)
    derived = tuple(
        sum(1 for a in alphas if a >= k + 1) for k in range(beta)
    )
    if ranks != derived:
        raise MultiplicityMismatch("rank ladder disagrees with exponents")
    V = MatPoly.from_columns([col for _, col in accepted])
    AV = A @ V
    e_cols = []
    for i, a in enumerate(alphas):
        pk = p**a
        col = []
        for r in range(A.rows):
            q, rem = AV[r, i].divmod(pk)
            if not rem.is_zero():
                raise MultiplicityMismatch(
                    "A*V column not divisible by its diagonal power"
                )
            col.append(q)
        e_cols.append(col)
    E = MatPoly.from_columns(e_cols)
    return LocalSmithResult(
        p=p, V=V, E=E, alphas=alphas, ranks=ranks, beta=beta, method=method
    )


def _check_local_args(A: MatPoly, p: Poly, mu: int):
    # a non-monic or constant p is rejected by companion_of
    if not A.is_square():
        raise NotSquare("local Smith form needs a square matrix")
    if mu < 1:
        raise PrimeDoesNotDivideDet("algebraic multiplicity must be >= 1")


# -- Algorithm over R/pR ------------------------------------------------------


def local_smith(A: MatPoly, p: Poly, mu: int) -> LocalSmithResult:
    """Unimodular local Smith form at p with algebraic multiplicity mu."""
    _check_local_args(A, p, mu)
    S = companion_of(p)
    n = A.rows
    digits = expand_in_p(A, p).blocks

    def digit(j):
        return digits[j] if j < len(digits) else None

    # stage 0: tableau is the leading digit of A
    tableau = [[encode(e, S) for e in row] for row in digits[0].entries]
    _, pivots, null_basis = rref_over_residue(tableau)
    r0 = len(null_basis)
    if r0 == 0:
        raise PrimeDoesNotDivideDet("leading digit of A is invertible mod p")
    accepted = [(0, _unit_column(n, c)) for c in pivots]
    ranks = [r0]
    R = r0
    # chain columns, digit-major: rows j*n..j*n+n-1 hold digit j
    chains = [[v.to_poly() for v in vec] for vec in null_basis]
    stacked = [list(c) for c in chains]  # all kernel chains, zero-padded
    null_count = r0
    k = 0
    while R < mu:
        k += 1
        prev_cols = len(tableau[0])
        new_cols = [_next_residual(c, digit, p, k, n, S) for c in chains]
        if not new_cols:
            raise MultiplicityMismatch("active chains exhausted before mu")
        for i in range(n):
            row = tableau[i]
            for col in new_cols:
                row.append(col[i])
        _, pivots, null_basis = rref_over_residue(tableau)
        new_null = null_basis[null_count:]
        rk = len(new_null)
        if rk == 0:
            raise MultiplicityMismatch(
                "claimed multiplicity exceeds what the chains support"
            )
        null_count = len(null_basis)
        R += rk
        ranks.append(rk)
        for c in pivots:
            if c >= prev_cols:
                accepted.append((k, lambda_iso(_blocks(chains[c - prev_cols], n), p)))
        next_chains = []
        for vec in new_null:
            y = vec[:n]
            u = vec[n:]
            w = _chain_combination(stacked, u, n * k)
            col = _extend_chain(w, y, p, n, k)
            next_chains.append(col)
        stacked = [[Poly.zero()] * n + c for c in stacked]
        stacked.extend(list(c) for c in next_chains)
        chains = next_chains
    beta_loop = k + 1 if mu > 0 else 0
    for c in chains:
        accepted.append((k + 1, lambda_iso(_blocks(c, n), p)))
    return _finish_local(A, p, accepted, ranks, beta_loop, mu, "rpr")


def _unit_column(n, c):
    col = [Poly.zero()] * n
    col[c] = Poly.one()
    return col


def _blocks(chain, n):
    return [chain[j * n : (j + 1) * n] for j in range(len(chain) // n)]


def _next_residual(chain, digit, p, k, n, S):
    """Images of a length-k chain under the next two digit diagonals:
    rem of the high part plus quo of the low part, entries back in R_s."""
    hi = [Poly.zero()] * n
    lo = [Poly.zero()] * n
    for j in range(k):
        block = chain[j * n : (j + 1) * n]
        dh = digit(k - j)
        dl = digit(k - 1 - j)
        for i in range(n):
            if dh is not None:
                row = dh.entries[i]
                acc = hi[i]
                for a, b in zip(row, block):
                    if a and b:
                        acc = acc + a * b
                hi[i] = acc
            if dl is not None:
                row = dl.entries[i]
                acc = lo[i]
                for a, b in zip(row, block):
                    if a and b:
                        acc = acc + a * b
                lo[i] = acc
    out = []
    for i in range(n):
        val = hi[i] % p + lo[i] // p
        out.append(encode(val, S))
    return out


def _chain_combination(stacked, u, rows):
    """stacked (rows x len(u), polys) times the kernel coefficients u."""
    out = [Poly.zero()] * rows
    for m, coeff in enumerate(u):
        cp = coeff.to_poly()
        if cp.is_zero():
            continue
        col = stacked[m]
        for r in range(rows):
            e = col[r]
            if not e.is_zero():
                out[r] = out[r] + e * cp
    return out


def _extend_chain(w, y, p, n, k):
    """[rem(w, p); y] + quo(shift-down(w), p), giving a length-(k+1) chain."""
    total = n * (k + 1)
    out = []
    for r in range(total):
        if r < n * k:
            e = w[r] % p
        else:
            e = y[r - n * k].to_poly()
        if r >= n:
            e = e + w[r - n] // p
        out.append(e)
    return out


# -- variant over K -----------------------------------------------------------


def local_smith_over_K(A: MatPoly, p: Poly, mu: int) -> LocalSmithResult:
    """Same contract as local_smith, arithmetic entirely in the base field."""
    _check_local_args(A, p, mu)
    S = companion_of(p)
    s = S.s
    n = A.rows
    blocks = _field_operator_blocks(A, p, S)

    def op_block(j):
        return blocks[j] if j < len(blocks) else None

    sn = s * n
    tableau = [list(blocks[0][i]) for i in range(sn)]
    _, pivots, null_basis = _rref_scalar(tableau)
    free_super, pivot_super = _group_supercolumns(pivots, len(tableau[0]), s, 0)
    r0 = len(free_super)
    if r0 == 0:
        raise PrimeDoesNotDivideDet("leading block of A is invertible")
    if len(null_basis) != r0 * s:
        raise MultiplicityMismatch("kernel is not a module over R/pR")
    accepted = [(0, _unit_column(n, g)) for g in pivot_super]
    ranks = [r0]
    R = r0
    chains = [list(vec) for vec in null_basis]  # length sn*k vectors over K
    stacked = [list(c) for c in chains]
    null_count = len(null_basis)
    k = 0
    while R < mu:
        k += 1
        prev_cols = len(tableau[0])
        new_cols = []
        for chain in chains:
            col = [Fraction(0)] * sn
            for j in range(k):
                blk = op_block(k - j)
                if blk is None:
                    continue
                seg = chain[j * sn : (j + 1) * sn]
                for r in range(sn):
                    row = blk[r]
                    acc = col[r]
                    for a, b in zip(row, seg):
                        if a and b:
                            acc = acc + a * b
                    col[r] = acc
            new_cols.append(col)
        for i in range(sn):
            row = tableau[i]
            for col in new_cols:
                row.append(col[i])
        _, pivots, null_basis = _rref_scalar(tableau)
        new_null = null_basis[null_count:]
        if len(new_null) % s != 0:
            raise MultiplicityMismatch("kernel growth is not a whole supercolumn")
        rk = len(new_null) // s
        if rk == 0:
            raise MultiplicityMismatch(
                "claimed multiplicity exceeds what the chains support"
            )
        null_count = len(null_basis)
        R += rk
        ranks.append(rk)
        _, pivot_super = _group_supercolumns(
            pivots, len(tableau[0]), s, prev_cols
        )
        for g in pivot_super:
            accepted.append((k, _field_chain_to_poly(chains[g * s], p, s, n)))
        next_chains = []
        for vec in new_null:
            y = vec[:sn]
            u = vec[sn:]
            col = [Fraction(0)] * (sn * k)
            for m, coeff in enumerate(u):
                if not coeff:
                    continue
                src = stacked[m]
                for r in range(sn * k):
                    if src[r]:
                        col[r] = col[r] + coeff * src[r]
            next_chains.append(col + list(y))
        stacked = [[Fraction(0)] * sn + c for c in stacked]
        stacked.extend(list(c) for c in next_chains)
        chains = next_chains
    beta_loop = k + 1
    for g in range(len(chains) // s):
        accepted.append((k + 1, _field_chain_to_poly(chains[g * s], p, s, n)))
    return _finish_local(A, p, accepted, ranks, beta_loop, mu, "k")


def _rref_scalar(rows):
    return _rref(rows, Fraction(0), Fraction(1))


def _group_supercolumns(pivots, ncols, s, base):
    """Split the columns appended at/after `base` into supercolumns of s;
    each must be wholly pivot or wholly free."""
    pivot_set = set(c for c in pivots if c >= base)
    count = (ncols - base) // s
    free, full = [], []
    for g in range(count):
        cols = range(base + g * s, base + (g + 1) * s)
        hits = sum(1 for c in cols if c in pivot_set)
        if hits == s:
            full.append(g)
        elif hits == 0:
            free.append(g)
        else:
            raise MultiplicityMismatch("supercolumn split between pivot and free")
    return free, full


def _field_operator_blocks(A: MatPoly, p: Poly, S: Companion):
    """Block matrices over K representing multiplication by A on the digit
    expansion: the j-th block combines digit j (via powers of the companion
    matrix) with the carry of digit j-1."""
    s = S.s
    n = A.rows
    digits = expand_in_p(A, p).blocks
    q = len(digits)
    smat = [[Fraction(c) if isinstance(c, int) else c for c in row] for row in S.matrix]
    spow = [_eye_scalar(s)]
    for _ in range(s - 1):
        spow.append(_matmul_scalar(smat, spow[-1]))
    zmat = [[Fraction(0)] * s for _ in range(s)]
    zmat[0][s - 1] = Fraction(1)
    zpow = [None] * s
    zpow[0] = [[Fraction(0)] * s for _ in range(s)]
    for m in range(1, s):
        acc = [[Fraction(0)] * s for _ in range(s)]
        for l in range(m):
            term = _matmul_scalar(spow[l], _matmul_scalar(zmat, spow[m - 1 - l]))
            for i in range(s):
                for j in range(s):
                    acc[i][j] = acc[i][j] + term[i][j]
        zpow[m] = acc

    def coeff(j, m, i, jj):
        if j >= q:
            return Fraction(0)
        e = digits[j][i, jj]
        return e.coeffs[m] if m <= e.degree else Fraction(0)

    blocks = []
    zero_tail = []
    for j in range(q + 2):
        big = [[Fraction(0)] * (s * n) for _ in range(s * n)]
        nonzero = False
        for i in range(n):
            for jj in range(n):
                blk = None
                for m in range(s):
                    c1 = coeff(j, m, i, jj)
                    c2 = coeff(j - 1, m, i, jj) if j >= 1 else Fraction(0)
                    if not c1 and not c2:
                        continue
                    if blk is None:
                        blk = [[Fraction(0)] * s for _ in range(s)]
                    for a in range(s):
                        for b in range(s):
                            v = blk[a][b]
                            if c1:
                                v = v + c1 * spow[m][a][b]
                            if c2:
                                v = v + c2 * zpow[m][a][b]
                            blk[a][b] = v
                if blk is not None:
                    nonzero = True
                    for a in range(s):
                        for b in range(s):
                            if blk[a][b]:
                                big[i * s + a][jj * s + b] = blk[a][b]
        blocks.append(big)
        zero_tail.append(not nonzero)
    while blocks and zero_tail[-1]:
        blocks.pop()
        zero_tail.pop()
    return blocks


def _eye_scalar(s):
    return [
        [Fraction(1) if i == j else Fraction(0) for j in range(s)] for i in range(s)
    ]


def _matmul_scalar(a, b):
    bt = list(zip(*b))
    return [
        [sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt]
        for row in a
    ]


def _field_chain_to_poly(vec, p: Poly, s: int, n: int):
    """Decode a stacked coefficient vector over K into the polynomial
    column sum_j p**j * digit_j."""
    sn = s * n
    k = len(vec) // sn
    blocks = []
    for j in range(k):
        block = []
        for l in range(n):
            base = j * sn + l * s
            block.append(Poly(vec[base : base + s]))
        blocks.append(block)
    return lambda_iso(blocks, p)


# -- preliminary column-rotation version (test oracle) -----------------------


def local_smith_reference(A: MatPoly, p: Poly) -> LocalSmithResult:
    """Column-rotation construction; derives mu internally.  Slow, used as
    an independent oracle for the nullspace-based routes."""
    if not A.is_square():
        raise NotSquare("local Smith form needs a square matrix")
    S = companion_of(p)
    n = A.rows
    cols = [_unit_column(n, i) for i in range(n)]
    alphas = [0] * n
    accepted_res = []  # residue rows of accepted leading residuals
    k = 0
    cap = n * max(A.max_degree(), 1) + 1
    done = 0
    pk = Poly.one()
    while done < n:
        if k > cap:
            raise NotRegular("column residuals never became independent")
        active = n - done
        for _ in range(active):
            x = cols[done]
            ax = _matvec_poly(A, x)
            y = []
            for e in ax:
                q, rem = e.divmod(pk)
                if not rem.is_zero():
                    raise MultiplicityMismatch("divisibility invariant broken")
                y.append(encode(q, S))
            coeffs = _dependence(accepted_res, y, S)
            if coeffs is None:
                alphas[done] = k
                accepted_res.append(y)
                done += 1
            else:
                newx = list(x)
                for m, a in enumerate(coeffs):
                    ap = a.to_poly()
                    if ap.is_zero():
                        continue
                    shift = p ** (k - alphas[m])
                    fct = ap * shift
                    for r in range(n):
                        if not cols[m][r].is_zero():
                            newx[r] = newx[r] - fct * cols[m][r]
                cols = cols[:done] + cols[done + 1 :] + [newx]
        k += 1
        pk = pk * p
    beta_loop = k - 1
    mu = sum(alphas)
    ranks = [sum(1 for a in alphas if a >= j + 1) for j in range(max(alphas))] if mu else []
    accepted = list(zip(alphas, cols))
    return _finish_local(A, p, accepted, ranks, beta_loop, mu, "reference")


def _matvec_poly(A: MatPoly, x):
    out = []
    for row in A.entries:
        acc = Poly.zero()
        for a, b in zip(row, x):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def _dependence(accepted, y, S):
    """None if y is independent of the accepted residuals over R/pR, else
    the coefficients expressing y as their combination."""
    if all(e.is_zero() for e in y):
        return [residue_zero(S)] * len(accepted)
    n = len(y)
    rows = [
        [accepted[m][i] for m in range(len(accepted))] + [y[i]] for i in range(n)
    ]
    _, pivots, null_basis = rref_over_residue(rows)
    last = len(accepted)
    if last in pivots:
        return None
    for vec in null_basis:
        if vec[last]:
            inv = vec[last]
            return [-(vec[m] / inv) for m in range(len(accepted))]
    raise MultiplicityMismatch("dependent column without a kernel vector")
