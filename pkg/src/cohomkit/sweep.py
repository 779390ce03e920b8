"""Batched elimination for invariant factors of large sparse matrices mod M.

The journaled eliminator in linalg keeps every intermediate row in python
dicts, which is fine up to a few tens of thousands of rows but melts down on
the degree-4 matrices of order-12 groups.  This engine computes invariant
factors only (no transform journal) by batching independent unit pivots:

  pick a set P of entries (r_p, c_p) with unit value mod M such that rows
  and columns are distinct and no pivot row meets another pivot's column;
  then all |P| eliminations commute and amount to the single update

      A  <-  A + C @ A[rows_P, :]        (then drop rows_P and cols_P)

  where column p of C holds -A[:, c_p] / u_p with the pivot rows zeroed.

The update is one sparse matrix product, so the fill work runs inside
scipy instead of a python loop.  Unit pivots only contribute 1s to the
Smith chain; whatever residue has no units left is handed to the exact
dict-based eliminator, which is small by then and returns the nontrivial
chain.

All arithmetic is mod M.  Callers chasing torsion that divides m should
pass M = m*m so torsion factors stay distinguishable from free summands
(see linalg for the argument).
"""

from __future__ import annotations

from math import gcd

import numpy as np
from scipy import sparse

from .linalg import SparseElimination

# keep candidate scans per sweep bounded; selection quality degrades
# gracefully because rejected units come back next sweep
_MAX_CANDIDATES = 200_000


class SweepElimination:
    """Factors-only elimination mod M > 1 of a matrix given by sparse rows."""

    def __init__(self, nrows: int, ncols: int, modulus: int):
        if modulus <= 1:
            raise ValueError("sweep elimination needs a modulus > 1")
        self.nrows = nrows
        self.ncols = ncols
        self.modulus = modulus
        self._coo_r: list[int] = []
        self._coo_c: list[int] = []
        self._coo_v: list[int] = []
        self.initial_nnz = 0
        self.unit_pivot_count = 0
        self._core: SparseElimination | None = None
        self._done = False
        self.sweeps = 0

    def add_row(self, i: int, entries: dict[int, int]) -> None:
        m = self.modulus
        for j, v in entries.items():
            v %= m
            if v:
                self._coo_r.append(i)
                self._coo_c.append(j)
                self._coo_v.append(v)
        self.initial_nnz = len(self._coo_v)

    # -- main loop --

    def run(self) -> "SweepElimination":
        if self._done:
            return self
        m = self.modulus
        units = np.zeros(m, dtype=bool)
        inv_table = np.zeros(m, dtype=np.int32)
        for v in range(1, m):
            if gcd(v, m) == 1:
                units[v] = True
                inv_table[v] = pow(v, -1, m)

        a = sparse.coo_matrix(
            (np.array(self._coo_v, dtype=np.int32),
             (np.array(self._coo_r, dtype=np.int32),
              np.array(self._coo_c, dtype=np.int32))),
            shape=(self.nrows, self.ncols)).tocsr()
        del self._coo_r, self._coo_c, self._coo_v
        a.sum_duplicates()
        a.data %= m
        a.eliminate_zeros()
        row_ids = np.arange(self.nrows, dtype=np.int32)
        col_ids = np.arange(self.ncols, dtype=np.int32)

        while a.nnz:
            unit_mask = units[a.data]
            if not unit_mask.any():
                break
            self.sweeps += 1
            nr, nc = a.shape
            row_len = np.diff(a.indptr)
            col_cnt = np.bincount(a.indices, minlength=nc)
            entry_rows = np.repeat(np.arange(nr, dtype=np.int32), row_len)
            cand_idx = np.flatnonzero(unit_mask)
            cand_rows = entry_rows[cand_idx]
            cand_cols = a.indices[cand_idx]
            scores = (row_len[cand_rows] - 1) * (col_cnt[cand_cols] - 1)
            order = np.argsort(scores, kind="stable")
            if order.size > _MAX_CANDIDATES:
                order = order[:_MAX_CANDIDATES]

            # greedy independent set: distinct rows and columns, and no
            # pivot row may meet another pivot's column
            row_taken = np.zeros(nr, dtype=bool)
            col_taken = np.zeros(nc, dtype=bool)
            col_in_pivot_row = np.zeros(nc, dtype=bool)
            sel_rows: list[int] = []
            sel_cols: list[int] = []
            indptr, indices = a.indptr, a.indices
            for t in order:
                r = cand_rows[t]
                c = cand_cols[t]
                if row_taken[r] or col_taken[c] or col_in_pivot_row[c]:
                    continue
                support = indices[indptr[r]:indptr[r + 1]]
                if col_taken[support].any():
                    continue
                row_taken[r] = True
                col_taken[c] = True
                col_in_pivot_row[support] = True
                sel_rows.append(r)
                sel_cols.append(c)
            k = len(sel_rows)
            self.unit_pivot_count += k
            rows_p = np.array(sel_rows, dtype=np.int32)
            cols_p = np.array(sel_cols, dtype=np.int32)

            p = a[rows_p, :].tocsr()
            acsc = a.tocsc()
            csub = acsc[:, cols_p].tocsc()
            # coefficient matrix: column p is -A[:, c_p] / u_p, pivot rows 0
            pivot_units = np.zeros(k, dtype=np.int32)
            for t in range(k):
                seg = csub.data[csub.indptr[t]:csub.indptr[t + 1]]
                segr = csub.indices[csub.indptr[t]:csub.indptr[t + 1]]
                u = seg[segr == rows_p[t]]
                pivot_units[t] = u[0]
            col_of_entry = np.repeat(np.arange(k), np.diff(csub.indptr))
            # int64 so the matmul accumulates without wraparound; sums of
            # products of residues can pass 2**31 on long fill rows
            coeff = (-(csub.data.astype(np.int64)
                       * inv_table[pivot_units[col_of_entry]])) % m
            keep = ~row_taken[csub.indices]
            c_mat = sparse.csc_matrix(
                (coeff[keep], csub.indices[keep],
                 np.concatenate(([0], np.cumsum(np.bincount(
                     col_of_entry[keep], minlength=k))))),
                shape=(nr, k))
            delta = (c_mat @ p).tocsr()
            a = (a + delta).tocsr()
            a.data %= m
            a.eliminate_zeros()

            keep_r = ~row_taken
            keep_c = ~col_taken
            a = a[keep_r][:, keep_c].astype(np.int32).tocsr()
            row_ids = row_ids[keep_r]
            col_ids = col_ids[keep_c]

        # hand the unit-free residue to the exact eliminator
        core = SparseElimination(self.nrows, self.ncols, self.modulus)
        if a.nnz:
            acsr = a.tocsr()
            for i in range(a.shape[0]):
                lo, hi = acsr.indptr[i], acsr.indptr[i + 1]
                if lo == hi:
                    continue
                core.add_row(int(row_ids[i]), {
                    int(col_ids[j]): int(acsr.data[t])
                    for t, j in zip(range(lo, hi), acsr.indices[lo:hi])})
        core.run()
        self._core = core
        self._done = True
        return self

    # -- results, mirroring the journaled engine --

    def pivot_factor(self, value: int) -> int:
        return gcd(value, self.modulus)

    def nontrivial_factors(self) -> list[int]:
        assert self._core is not None
        return self._core.nontrivial_factors()

    def invariant_factors(self) -> list[int]:
        assert self._core is not None
        ones = self.unit_pivot_count
        core = self._core.invariant_factors()
        return [1] * ones + core
