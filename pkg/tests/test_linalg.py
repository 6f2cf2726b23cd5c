from hypothesis import given, settings, strategies as st

import oracles
from ripsbetti.linalg import Reducer, column_entries, is_prime, make_column, rank_of_columns


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_tracked_combination_reduces_to_zero():
    p = 5
    cols = [[(0, 1), (1, 2)], [(1, 1), (2, 4)], [(0, 1), (1, 4), (2, 3)]]
    red = Reducer(p, track=True)
    results = [red.add(make_column(c, p), tag=i) for i, c in enumerate(cols)]
    assert [r[0] for r in results] == [True, True, False]
    comb = dict(column_entries(results[2][1], p))
    total = [0, 0, 0]
    for i, coef in comb.items():
        for row, val in cols[i]:
            total[row] = (total[row] + coef * val) % p
    assert total == [0, 0, 0]


matrices = st.integers(1, 6).flatmap(lambda r: st.lists(
    st.lists(st.integers(0, 6), min_size=r, max_size=r), min_size=1, max_size=7))


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([2, 3, 7]))
def test_rank_matches_dense(cols, p):
    sparse = [make_column([(i, v) for i, v in enumerate(c) if v % p], p) for c in cols]
    rows = [[c[i] for c in cols] for i in range(len(cols[0]))]
    assert rank_of_columns(sparse, p) == oracles.dense_rank(rows, p)
