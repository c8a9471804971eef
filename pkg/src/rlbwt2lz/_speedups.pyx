# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the two O(n)-iteration loops.

Same arrays, same 1-based padded conventions, same answers as the pure
Python paths in rmtq.build_psa_layout and converter._drive_python.
"""

ctypedef long long i64


cdef inline i64 _pred(const i64[::1] a, i64 lo, i64 hi, i64 x) noexcept:
    # count of elements <= x in a[lo..hi), a sorted ascending
    cdef i64 l = lo, r = hi, m
    while l < r:
        m = (l + r) >> 1
        if a[m] <= x:
            l = m + 1
        else:
            r = m
    return l - lo


cdef inline i64 _rank(const i64[::1] bc_off, const i64[::1] bc_flat,
                      const i64[::1] vc_flat, i64 c, i64 i) noexcept:
    cdef i64 bo, cnt, vo, t, start, v_t, v_next
    if i <= 0:
        return 0
    bo = bc_off[c]
    cnt = bc_off[c + 1] - bo
    vo = bo + c - 1
    t = _pred(bc_flat, bo, bo + cnt, i)
    if t == 0:
        return 0
    start = bc_flat[bo + t - 1]
    v_t = vc_flat[vo + t - 1]
    v_next = vc_flat[vo + t]
    if i - start + 1 <= v_next - v_t:
        return v_t + i - start
    return v_next - 1


cdef inline i64 _select(const i64[::1] bc_off, const i64[::1] bc_flat,
                        const i64[::1] vc_flat, i64 c, i64 j) noexcept:
    cdef i64 bo, cnt, vo, t
    bo = bc_off[c]
    cnt = bc_off[c + 1] - bo
    vo = bo + c - 1
    t = _pred(vc_flat, vo, vo + cnt + 1, j)
    return bc_flat[bo + t - 1] + j - vc_flat[vo + t - 1]


cdef inline i64 _access(const i64[::1] B, const i64[::1] E, i64 r, i64 i) noexcept:
    return E[_pred(B, 1, r + 1, i)]


cdef inline i64 _lf(const i64[::1] C, const i64[::1] B, const i64[::1] E,
                    const i64[::1] bc_off, const i64[::1] bc_flat,
                    const i64[::1] vc_flat, i64 r, i64 i) noexcept:
    cdef i64 c = _access(B, E, r, i)
    return C[c] + _rank(bc_off, bc_flat, vc_flat, c, i)


cdef inline i64 _rmq(const i64[:, ::1] sp, const i64[::1] flog, i64 i, i64 j) noexcept:
    cdef i64 k = flog[j - i + 1]
    cdef i64 a = sp[k, i]
    cdef i64 b = sp[k, j - (1 << k) + 1]
    return a if a > b else b


def psa_max_walk(i64 n, i64 y0,
                 const i64[::1] C, const i64[::1] B, const i64[::1] E,
                 const i64[::1] bc_off, const i64[::1] bc_flat,
                 const i64[::1] vc_flat,
                 const i64[::1] Z, i64[::1] M):
    """Fill M[i] = max suffix-array value in subarray i by LF-walking all rows."""
    cdef i64 r = B.shape[0] - 1
    cdef i64 row = y0
    cdef i64 t, value, sub
    for t in range(1, n + 1):
        row = _lf(C, B, E, bc_off, bc_flat, vc_flat, r, row)
        value = n - t + 1
        sub = _pred(Z, 1, r + 1, row)
        if value > M[sub]:
            M[sub] = value


def convert_loop(i64 n, i64 r, i64 y0,
                 const i64[::1] C, const i64[::1] B, const i64[::1] E,
                 const i64[::1] bc_off, const i64[::1] bc_flat,
                 const i64[::1] vc_flat,
                 const i64[::1] Z, const i64[:, ::1] sp, const i64[::1] flog,
                 i64[::1] open_val, i64[::1] open_pos,
                 i64[::1] close_val, i64[::1] close_pos,
                 i64[::1] out_tag, i64[::1] out_a, i64[::1] out_b):
    """Run the conversion driver; returns the number of phrases written.

    out_tag[i] = 0 marks a literal (code in out_a), 1 a copy (position in
    out_a, length in out_b).  Literal codes are pre-shrink-map.
    """
    cdef i64 b = 1, e = n, p = -1, length = 1, x = n, y = y0, k = n + 1
    cdef i64 z = 0
    cdef i64 c, xr, yr, b2, e2, hb, he, answer, cp, op, mx, y_next, sub
    while x >= 1:
        c = _access(B, E, r, y)
        xr = _rank(bc_off, bc_flat, vc_flat, c, b - 1)
        yr = _rank(bc_off, bc_flat, vc_flat, c, e)
        if xr == yr:
            answer = -1
        else:
            b2 = _lf(C, B, E, bc_off, bc_flat, vc_flat, r,
                     _select(bc_off, bc_flat, vc_flat, c, xr + 1))
            e2 = _lf(C, B, E, bc_off, bc_flat, vc_flat, r,
                     _select(bc_off, bc_flat, vc_flat, c, yr))
            hb = _pred(Z, 1, r + 1, b2)
            he = _pred(Z, 1, r + 1, e2)
            if hb == he and b2 > Z[hb] and e2 < Z[hb + 1] - 1:
                answer = p - 1
            else:
                answer = -1
                cp = close_pos[hb]
                if b2 <= cp <= e2:
                    answer = close_val[hb]
                else:
                    op = open_pos[he]
                    if b2 <= op <= e2:
                        answer = open_val[he]
                    elif hb + 1 <= he - 1:
                        mx = _rmq(sp, flog, hb + 1, he - 1)
                        if mx >= k:
                            answer = mx
        if answer < 0:
            if length > 1:
                out_tag[z] = 1
                out_a[z] = p
                out_b[z] = length - 1
                z += 1
            else:
                out_tag[z] = 0
                out_a[z] = c
                z += 1
                y_next = _lf(C, B, E, bc_off, bc_flat, vc_flat, r, y)
                sub = _pred(Z, 1, r + 1, y_next)
                if y_next < open_pos[sub]:
                    open_pos[sub] = y_next
                    open_val[sub] = x
                if y_next > close_pos[sub]:
                    close_pos[sub] = y_next
                    close_val[sub] = x
                k = x
                x -= 1
                y = y_next
            b = 1
            e = n
            p = -1
            length = 1
        else:
            y_next = _lf(C, B, E, bc_off, bc_flat, vc_flat, r, y)
            sub = _pred(Z, 1, r + 1, y_next)
            if y_next < open_pos[sub]:
                open_pos[sub] = y_next
                open_val[sub] = x
            if y_next > close_pos[sub]:
                close_pos[sub] = y_next
                close_val[sub] = x
            k = x
            b = b2
            e = e2
            p = answer
            length += 1
            x -= 1
            y = y_next
    if length > 1:
        out_tag[z] = 1
        out_a[z] = p
        out_b[z] = length - 1
        z += 1
    return z
