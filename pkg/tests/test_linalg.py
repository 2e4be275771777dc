"""Sparse elimination over F_p and the block-decomposed box rank."""

import random

import numpy as np
import pytest

from frobtool.linalg import (box_columns, box_rank, coset_keys, dense_rank_mod_p, kernel_mod_p,
                             lattice_echelon, mult_columns, quotient_basis, rank_mod_p, staircase_size)
from frobtool.ring import order_key

from test_ideal_engine import _dense_rank


def _random_columns(rng, nrows, ncols, p, density=0.3):
    return [{r: rng.randrange(1, p) for r in range(nrows) if rng.random() < density}
            for _ in range(ncols)]


def _to_rows(cols, nrows):
    return [[c.get(r, 0) for c in cols] for r in range(nrows)]


def test_rank_matches_dense(rng):
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7, 65521])
        nr, nc = rng.randint(1, 12), rng.randint(1, 12)
        cols = _random_columns(rng, nr, nc, p)
        expected = _dense_rank(_to_rows(cols, nr), p)
        assert rank_mod_p(cols, p) == expected
        assert dense_rank_mod_p(np.array(_to_rows(cols, nr)), p) == expected
        assert rank_mod_p(iter(cols), p, stop=2) == min(expected, 2)


def test_kernel_vectors_are_in_kernel(rng):
    for _ in range(100):
        p = rng.choice([2, 3, 7])
        nr, nc = rng.randint(1, 8), rng.randint(1, 10)
        cols = _random_columns(rng, nr, nc, p, 0.4)
        independent, kernel = kernel_mod_p(cols, p)
        assert len(independent) + len(kernel) == nc
        for lead, combo in kernel:
            assert combo[lead] == 1 and max(combo) == lead
            total = {}
            for j, c in combo.items():
                for r, v in cols[j].items():
                    total[r] = (total.get(r, 0) + c * v) % p
            assert not any(total.values())


def test_box_rank_matches_sparse(rng):
    for _ in range(300):
        n = rng.randint(1, 3)
        p = rng.choice([2, 3, 5, 7])
        bounds = [rng.randint(1, 9) for _ in range(n)]
        g = {tuple(rng.randint(0, 5) for _ in range(n)): rng.randrange(1, p)
             for _ in range(rng.randint(1, 6))}
        gens = [tuple(b if j == i else 0 for j in range(n)) for i, b in enumerate(bounds)]
        qb = quotient_basis(gens, n, order_key("grevlex"))
        expected = rank_mod_p(mult_columns(qb, g, p), p)
        fast = box_rank(bounds, g, p)
        assert fast is None or fast == expected
        assert rank_mod_p(box_columns(bounds, g, p), p) == expected


def test_coset_keys_are_lattice_invariant(rng):
    for _ in range(50):
        n = rng.randint(1, 4)
        vecs = [tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(rng.randint(1, 3))]
        basis = lattice_echelon(vecs)
        pts = np.array([[rng.randint(-10, 10) for _ in range(n)] for _ in range(20)], dtype=np.int64)
        shift = sum(rng.randint(-3, 3) * np.array(v, dtype=np.int64) for v in vecs)
        assert (coset_keys(pts, basis) == coset_keys(pts + shift, basis)).all()


def test_staircase_size_box():
    assert staircase_size([(7, 0, 0), (0, 7, 0), (0, 0, 7)], 3) == 343
    assert staircase_size([(2, 0), (0, 2), (1, 1)], 2) == 3
    assert staircase_size([(2, 0)], 2) is None
