import numpy as np
import pytest

import support
from rlbwt2lz._kernel import HAVE_SPEEDUPS
from rlbwt2lz.rlbwt import build_occ_index, shrink_alphabet
from rlbwt2lz.rmtq import (
    build_psa_layout,
    classify_interval,
    decrement_threshold,
    initial_open_close,
    rmtq_case_a,
    rmtq_case_b,
)
from rlbwt2lz.textkit import build_rlbwt, build_suffix_array, oracle_rmtq, text_from_bytes


def make_layout(data: bytes, kernel="python"):
    t = text_from_bytes(data)
    rb = build_rlbwt(t)
    shrunk, _ = shrink_alphabet(rb)
    idx = build_occ_index(shrunk)
    layout = build_psa_layout(idx, shrunk, kernel=kernel)
    return t, rb, idx, layout


def admit_down_to(layout, sa, k: int):
    """State after admitting suffix-array values n, n-1, ..., k."""
    state = initial_open_close(layout.r, layout.n)
    for v in range(layout.n, k - 1, -1):
        decrement_threshold(state, layout, int(sa.isa[v]), v)
    return state


def test_layout_mississippi():
    _, _, _, layout = make_layout(b"mississippi")
    assert layout.Z[1:].tolist() == [1, 2, 3, 4, 6, 7, 8, 9, 11, 13]
    assert layout.X[1:].tolist() == [5, 1, 7, 9, 4, 2, 6, 3, 8]
    assert layout.M[1:].tolist() == [12, 11, 8, 5, 1, 10, 9, 7, 6]
    assert layout.subarray_of(10) == 8
    assert (layout.sub_start(8), layout.sub_end(8)) == (9, 10)


def test_layout_unary():
    _, _, _, layout = make_layout(b"aaa")
    assert layout.Z[1:].tolist() == [1, 2, 5]
    assert layout.X[1:].tolist() == [2, 1]
    assert layout.M[1:].tolist() == [4, 3]


def test_subarrays_are_lf_images_of_runs(rng):
    for _ in range(20):
        data = support.random_bytes_text(rng, 80)
        _, rb, idx, layout = make_layout(data)
        shrunk, _ = shrink_alphabet(rb)
        starts = idx.B[1:].tolist() + [idx.n + 1]
        for i in range(1, layout.r + 1):
            run = int(layout.X[i])
            image = sorted(
                idx.lf(p) for p in range(starts[run - 1], starts[run])
            )
            assert image == list(range(layout.sub_start(i), layout.sub_end(i) + 1))


def test_maxima_match_suffix_array(rng):
    for _ in range(20):
        data = support.random_bytes_text(rng, 80)
        t, _, _, layout = make_layout(data)
        sa = build_suffix_array(t)
        for i in range(1, layout.r + 1):
            lo, hi = layout.sub_start(i), layout.sub_end(i)
            assert layout.M[i] == int(sa.sa[lo : hi + 1].max())


@pytest.mark.skipif(not HAVE_SPEEDUPS, reason="compiled kernel not built")
def test_compiled_maxima_walk_agrees(rng):
    for data in [b"mississippi", b"aaa", b""] + [
        support.random_bytes_text(rng, 150) for _ in range(10)
    ]:
        _, _, _, py = make_layout(data, kernel="python")
        _, _, _, cy = make_layout(data, kernel="compiled")
        assert py.M.tolist() == cy.M.tolist()
        assert py.Z.tolist() == cy.Z.tolist()
        assert py.X.tolist() == cy.X.tolist()


def test_initial_state_is_empty():
    state = initial_open_close(9, 12)
    assert state.k == 13
    assert state.open_val[1:].tolist() == [-1] * 9
    assert state.open_pos[1:].tolist() == [13] * 9
    assert state.close_val[1:].tolist() == [-1] * 9
    assert state.close_pos[1:].tolist() == [0] * 9
    assert state.element_count() == 36


def test_decrement_fixture():
    t, _, _, layout = make_layout(b"mississippi")
    sa = build_suffix_array(t)
    state = admit_down_to(layout, sa, 7)
    assert state.k == 7
    # values 12..7 sit at rows 1, 2, 3, 7, 8, 9
    assert state.open_pos[1:4].tolist() == [1, 2, 3]
    assert (state.open_val[8], state.open_pos[8]) == (7, 9)
    assert (state.close_val[9], state.close_pos[9]) == (-1, 0)

    decrement_threshold(state, layout, int(sa.isa[6]), 6)   # value 6 at row 11
    assert (state.open_val[9], state.open_pos[9]) == (6, 11)
    assert (state.close_val[9], state.close_pos[9]) == (6, 11)

    decrement_threshold(state, layout, int(sa.isa[5]), 5)   # value 5 at row 4
    assert (state.open_val[4], state.open_pos[4]) == (5, 4)
    assert (state.close_val[4], state.close_pos[4]) == (5, 4)
    assert (state.open_val[9], state.open_pos[9]) == (6, 11)
    assert state.k == 5


def test_decrement_rejects_bad_steps():
    _, _, _, layout = make_layout(b"mississippi")
    state = initial_open_close(layout.r, layout.n)
    with pytest.raises(ValueError):
        decrement_threshold(state, layout, 1, 11)   # skips value 12
    with pytest.raises(ValueError):
        decrement_threshold(state, layout, 0, 12)
    with pytest.raises(ValueError):
        decrement_threshold(state, layout, 13, 12)


def test_state_matches_brute_force_arrays(rng):
    for _ in range(25):
        data = support.random_bytes_text(rng, 60)
        t, _, _, layout = make_layout(data)
        sa = build_suffix_array(t)
        state = initial_open_close(layout.r, layout.n)
        for k in range(t.n + 1, 0, -1):
            if k <= t.n:
                decrement_threshold(state, layout, int(sa.isa[k]), k)
            ov, op, cv, cp = support.brute_open_close(
                sa.sa, layout.Z, layout.r, t.n, k
            )
            assert state.open_val[1:].tolist() == ov[1:].tolist()
            assert state.open_pos[1:].tolist() == op[1:].tolist()
            assert state.close_val[1:].tolist() == cv[1:].tolist()
            assert state.close_pos[1:].tolist() == cp[1:].tolist()


def test_classify_fixtures():
    _, _, _, layout = make_layout(b"mississippi")
    assert classify_interval(layout, 9, 10) == (False, 8, 8)
    assert classify_interval(layout, 2, 5) == (False, 2, 4)
    assert classify_interval(layout, 4, 4) == (False, 4, 4)   # touches its start
    with pytest.raises(IndexError):
        classify_interval(layout, 0, 3)
    with pytest.raises(IndexError):
        classify_interval(layout, 3, 2)

    _, _, _, unary = make_layout(b"aaa")
    assert classify_interval(unary, 3, 3) == (True, 2, 2)
    assert classify_interval(unary, 2, 3) == (False, 2, 2)


def test_case_a_reuses_previous_answer():
    assert rmtq_case_a(3) == 2
    assert rmtq_case_a(1) == 0
    with pytest.raises(ValueError):
        rmtq_case_a(None)
    with pytest.raises(ValueError):
        rmtq_case_a(0)


def test_case_b_fixtures():
    t, _, _, layout = make_layout(b"mississippi")
    sa = build_suffix_array(t)

    state = admit_down_to(layout, sa, 5)
    assert rmtq_case_b(state, layout, 9, 10) == 7

    state = admit_down_to(layout, sa, 9)
    assert rmtq_case_b(state, layout, 2, 5) == 11

    state = admit_down_to(layout, sa, 12)
    assert rmtq_case_b(state, layout, 2, 10) is None

    state = admit_down_to(layout, sa, 10)   # middle-range hit
    assert rmtq_case_b(state, layout, 3, 12) == 10


def test_case_b_matches_oracle_on_small_texts(rng):
    for _ in range(12):
        data = support.random_bytes_text(rng, 24, sigma=rng.choice((2, 4)))
        t, _, _, layout = make_layout(data)
        sa = build_suffix_array(t)
        state = initial_open_close(layout.r, layout.n)
        for k in range(t.n, 0, -1):
            decrement_threshold(state, layout, int(sa.isa[k]), k)
            for b in range(1, t.n + 1):
                for e in range(b, t.n + 1):
                    if classify_interval(layout, b, e).case_a:
                        # strict containment is answered from the previous
                        # conversion step, not from the pair state
                        continue
                    want = oracle_rmtq(sa, b, e, k)
                    got = rmtq_case_b(state, layout, b, e)
                    if want is None:
                        assert got is None
                    else:
                        assert got is not None and got >= k
                        assert got in sa.sa[b : e + 1]
