"""Sparse Gaussian elimination over F_p and multiplication maps on R/M.

``M`` is always a monomial ideal containing a power of every variable, so
R/M has the finite monomial basis of standard monomials and multiplication
by ``g`` is a sparse matrix whose column for ``x^b`` holds the surviving
terms of ``g * x^b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import TooLarge

DEFAULT_CAP = 3_000_000


@dataclass(frozen=True)
class QuotientBasis:
    """Standard monomials of a monomial m-primary ideal, in increasing term order."""

    generators: tuple  # minimal monomial generators (exponent tuples)
    monomials: tuple
    index: dict

    def __len__(self):
        return len(self.monomials)

    def is_standard(self, m):
        return not any(all(x >= y for x, y in zip(m, g)) for g in self.generators)


def minimal_monomials(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(all(x <= y for x, y in zip(g, m)) for g in out):
            out.append(m)
    return out


def pure_powers(generators, nvars):
    """Per-variable exponent of the pure power in ``generators``, or None if missing."""
    bounds = [None] * nvars
    for g in generators:
        support = [i for i, e in enumerate(g) if e]
        if not support:
            return [0] * nvars
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or g[i] < bounds[i]:
                bounds[i] = g[i]
    return bounds


def staircase_size(generators, nvars):
    """Number of standard monomials, counted without listing them when M is a box."""
    gens = minimal_monomials(generators)
    bounds = pure_powers(gens, nvars)
    if any(b is None for b in bounds):
        return None
    if all(sum(1 for e in g if e) == 1 for g in gens):
        return prod(bounds)
    return len(_enumerate(gens, bounds, nvars))


def _enumerate(gens, bounds, nvars):
    out = []

    def rec(i, prefix):
        if i == nvars:
            m = tuple(prefix)
            if not any(all(x >= y for x, y in zip(m, g)) for g in gens):
                out.append(m)
            return
        for e in range(bounds[i]):
            prefix.append(e)
            # prune: a prefix already divisible by a generator in its own variables
            if not any(all(g[k] <= prefix[k] for k in range(i + 1)) and not any(g[i + 1:])
                       for g in gens):
                rec(i + 1, prefix)
            prefix.pop()

    rec(0, [])
    return out


def quotient_basis(generators, nvars, key, cap=DEFAULT_CAP) -> QuotientBasis:
    gens = tuple(minimal_monomials(generators))
    bounds = pure_powers(gens, nvars)
    if any(b is None for b in bounds):
        raise ValueError("monomial ideal is not m-primary")
    size = staircase_size(gens, nvars)
    if size > cap:
        raise TooLarge(f"quotient has dimension {size}, above the cap {cap}")
    monos = sorted(_enumerate(gens, bounds, nvars), key=key)
    return QuotientBasis(gens, tuple(monos), {m: i for i, m in enumerate(monos)})


def mult_columns(qb: QuotientBasis, g_terms: dict, p: int):
    """Column ``j`` is ``g * monomials[j]`` reduced mod M, as ``{row: coeff}``."""
    index = qb.index
    cols = []
    for b in qb.monomials:
        col = {}
        for a, c in g_terms.items():
            m = tuple(x + y for x, y in zip(a, b))
            r = index.get(m)
            if r is not None:
                col[r] = (col.get(r, 0) + c) % p
        cols.append({r: c for r, c in col.items() if c})
    return cols


def _reduce(vec, pivots, p, combo=None):
    """Eliminate against stored pivots; returns the pivot row chosen or None."""
    while vec:
        r = min(vec)
        piv = pivots.get(r)
        if piv is None:
            return r
        pvec, pcombo = piv
        c = vec[r]
        for k, v in pvec.items():
            w = (vec.get(k, 0) - c * v) % p
            if w:
                vec[k] = w
            else:
                vec.pop(k, None)
        if combo is not None:
            for k, v in pcombo.items():
                w = (combo.get(k, 0) - c * v) % p
                if w:
                    combo[k] = w
                else:
                    combo.pop(k, None)
    return None


def rank_mod_p(columns, p: int, stop: int = None) -> int:
    """Rank of sparse columns over F_p.

    With ``stop`` the columns may be any iterable, taken in order, and the
    count ends as soon as it reaches ``stop``.
    """
    pivots = {}
    rank = 0
    # sparse columns first keeps fill-in down
    for col in (columns if stop is not None else sorted(columns, key=len)):
        vec = dict(col)
        r = _reduce(vec, pivots, p)
        if r is not None:
            inv = pow(vec[r], p - 2, p)
            pivots[r] = ({k: (v * inv) % p for k, v in vec.items()}, None)
            rank += 1
            if stop is not None and rank >= stop:
                break
    return rank


def box_columns(bounds, g_terms: dict, p: int):
    """Lazily yield the nonzero columns of multiplication by g on R/(x_i^b_i)."""
    terms = [(a, c % p) for a, c in g_terms.items() if c % p]
    radix = [1]
    for b in bounds[:-1]:
        radix.append(radix[-1] * b)

    def rec(i, prefix):
        if i == len(bounds):
            col = {}
            for a, c in terms:
                m = [x + y for x, y in zip(a, prefix)]
                if all(x < b for x, b in zip(m, bounds)):
                    code = sum(x * r for x, r in zip(m, radix))
                    col[code] = (col.get(code, 0) + c) % p
            col = {k: v for k, v in col.items() if v}
            if col:
                yield col
            return
        for x in range(bounds[i]):
            prefix.append(x)
            yield from rec(i + 1, prefix)
            prefix.pop()

    yield from rec(0, [])


def kernel_mod_p(columns, p: int):
    """Independent column indices and a kernel basis of the column map.

    Columns are processed in the given order. A column that depends on the
    earlier ones yields the kernel vector ``e_j - sum(c_i e_i)`` supported on
    ``j`` and earlier independent columns only, so when the columns are
    listed in increasing monomial order the kernel vectors are already in
    reduced echelon form with leading entry ``j``.
    """
    pivots = {}
    independent = []
    kernel = []
    for j, col in enumerate(columns):
        vec = dict(col)
        combo = {j: 1}
        r = _reduce(vec, pivots, p, combo)
        if r is None:
            kernel.append((j, combo))
        else:
            inv = pow(vec[r], p - 2, p)
            pivots[r] = ({k: (v * inv) % p for k, v in vec.items()},
                         {k: (v * inv) % p for k, v in combo.items()})
            independent.append(j)
    return independent, kernel


# block fast path for box moduli M = (x_1^b_1, ..., x_n^b_n)

BLOCK_DENSE_MAX = 2500


def lattice_echelon(vectors):
    """Integer row echelon basis (positive pivots) of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    n = len(rows[0]) if rows else 0
    basis = []
    for c in range(n):
        live = [r for r in rows if r[c]]
        rest = [r for r in rows if not r[c]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                k = r[c] // piv[c]
                r = [x - k * y for x, y in zip(r, piv)]
                (nxt if r[c] else rest).append(r)
            live = nxt
        if live:
            piv = live[0]
            if piv[c] < 0:
                piv = [-x for x in piv]
            basis.append((c, piv))
        rows = [r for r in rest if any(r)]
    return basis


def coset_keys(points, basis):
    """Canonical representatives of ``points`` (an int array) modulo the lattice."""
    out = points.copy()
    for c, row in basis:
        h = row[c]
        k = np.floor_divide(out[:, c], h)
        out -= k[:, None] * np.asarray(row, dtype=out.dtype)[None, :]
    return out


def dense_rank_mod_p(A, p: int) -> int:
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(A[rank:, c])
        if not len(nz):
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        A[rank] = (A[rank] * pow(int(A[rank, c]), p - 2, p)) % p
        below = rank + 1 + np.flatnonzero(A[rank + 1:, c])
        if len(below):
            A[below] = (A[below] - np.outer(A[below, c], A[rank])) % p
        rank += 1
    return rank


def box_rank(bounds, g_terms: dict, p: int, cap=DEFAULT_CAP):
    """Rank of multiplication by g on R/(x_i^b_i), split into lattice-coset blocks.

    Column x^b only reaches rows x^(b+a) for exponents a of g, so columns in
    different cosets of the lattice spanned by differences of those exponents
    never share a row. Returns None when some block is too big for the dense
    path, leaving the caller to fall back to sparse elimination.
    """
    n = len(bounds)
    size = prod(bounds)
    if size > cap:
        raise TooLarge(f"quotient has dimension {size}, above the cap {cap}")
    exps = [a for a, c in g_terms.items() if c % p]
    if not exps:
        return 0
    A = np.array(exps, dtype=np.int64)
    coef = np.array([g_terms[a] % p for a in exps], dtype=np.int64)
    bnd = np.array(bounds, dtype=np.int64)
    grid = np.indices(bounds).reshape(n, -1).T.astype(np.int64)
    if len(exps) == 1:
        return int(np.all(grid + A[0] < bnd, axis=1).sum())
    basis = lattice_echelon([tuple(a - exps[0][i] for i, a in enumerate(e)) for e in exps[1:]])
    keys = coset_keys(grid, basis)
    # drop columns killed outright (every product leaves the box)
    alive = np.zeros(len(grid), dtype=bool)
    for a in A:
        alive |= np.all(grid + a < bnd, axis=1)
    grid, keys = grid[alive], keys[alive]
    if not len(grid):
        return 0
    _, block_of, sizes = np.unique(keys, axis=0, return_inverse=True, return_counts=True)
    if sizes.max() > BLOCK_DENSE_MAX:
        return None
    block_of = block_of.ravel()
    order = np.argsort(block_of, kind="stable")
    cuts = np.flatnonzero(np.diff(block_of[order])) + 1
    radix = np.cumprod(np.concatenate(([1], bnd[:-1])))
    total = 0
    for idx in np.split(order, cuts):
        cols = grid[idx]
        prods = cols[:, None, :] + A[None, :, :]
        ci, ti = np.nonzero(np.all(prods < bnd, axis=2))
        codes = (prods[ci, ti] * radix).sum(axis=1)
        urow, rix = np.unique(codes, return_inverse=True)
        s, r = len(cols), len(urow)
        if s == 1 or r == 1:
            total += 1
            continue
        M = np.zeros((r, s), dtype=np.int64)
        np.add.at(M, (rix.ravel(), ci), coef[ti])
        total += dense_rank_mod_p(M if s <= r else M.T, p)
    return total
