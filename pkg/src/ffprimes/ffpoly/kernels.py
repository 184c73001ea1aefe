"""Compiled loops for exhaustive enumeration over polynomial boxes.

Polynomials are int64 code arrays (constant first).  A monic polynomial of
degree d is addressed by its *low index*, the base-q integer formed by its
d lower coefficients.  Every kernel walks an affine F_p-span of
coefficient vectors in a fixed order, so results are reproducible.

For q = 2 the span is walked in Gray-code order with one XOR per step.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _trim(a, la):
    while la > 0 and a[la - 1] == 0:
        la -= 1
    return la


@njit(cache=True)
def _mul_into(a, la, b, lb, out, add, mul):
    if la == 0 or lb == 0:
        return 0
    n = la + lb - 1
    for i in range(n):
        out[i] = 0
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(lb):
            out[i + j] = add[out[i + j], mul[ai, b[j]]]
    return _trim(out, n)


@njit(cache=True)
def _rem_monic(a, la, b, lb, quo, sub, mul):
    """Reduce a (in place) modulo monic b; quotient written to quo."""
    db = lb - 1
    for i in range(la - db):
        quo[i] = 0
    for i in range(la - 1, db - 1, -1):
        c = a[i]
        k = i - db
        quo[k] = c
        if c != 0:
            for j in range(lb):
                a[k + j] = sub[a[k + j], mul[c, b[j]]]
    return _trim(a, min(la, db))


@njit(cache=True)
def _walk_xor(idx, vecs, m, out, val):
    out[idx] += val
    for s in range(1, 1 << m):
        j = 0
        while (s >> j) & 1 == 0:
            j += 1
        idx ^= vecs[j]
        out[idx] += val


@njit(cache=True)
def _walk_generic(cur, idx, vecs, lo, hi, p, add, pw, out, val):
    K = vecs.shape[0]
    digit = np.zeros(K, dtype=np.int64)
    out[idx] += val
    while True:
        k = 0
        while k < K:
            for i in range(lo[k], hi[k]):
                v = vecs[k, i]
                if v != 0:
                    old = cur[i]
                    new = add[old, v]
                    cur[i] = new
                    idx += (new - old) * pw[i]
            digit[k] += 1
            if digit[k] < p:
                break
            digit[k] = 0
            k += 1
        if k == K:
            return
        out[idx] += val


@njit(cache=True)
def _span_accumulate(base, n, gen, lg, m, p, q, e, add, mul, pw, out, val):
    """out[x] += val for every x = base + gen * h with deg h < m.

    ``base`` holds n codes; every gen * t^j (j < m) must fit in n codes.
    """
    if q == 2:
        idx = 0
        for i in range(n):
            if base[i] != 0:
                idx |= 1 << i
        gidx = 0
        for i in range(lg):
            if gen[i] != 0:
                gidx |= 1 << i
        vecs = np.empty(max(m, 1), dtype=np.int64)
        for j in range(m):
            vecs[j] = gidx << j
        _walk_xor(idx, vecs, m, out, val)
        return
    K = m * e
    vecs = np.zeros((max(K, 1), n), dtype=np.int64)
    lo = np.zeros(max(K, 1), dtype=np.int64)
    hi = np.zeros(max(K, 1), dtype=np.int64)
    k = 0
    for j in range(m):
        scal = 1
        for i in range(e):
            for c in range(lg):
                vecs[k, c + j] = mul[scal, gen[c]]
            lo[k] = j
            hi[k] = j + lg
            k += 1
            scal *= p  # theta**(i+1) has code p**(i+1)
    cur = base.copy()
    idx = 0
    for i in range(n):
        idx += cur[i] * pw[i]
    _walk_generic(cur, idx, vecs[:K], lo[:K], hi[:K], p, add, pw, out, val)


@njit(cache=True)
def mark_multiples(P, d, p, q, e, add, mul, out, val):
    """out[low(P*h)] += val for every monic h with deg(P*h) = d."""
    a = P.shape[0] - 1
    m = d - a
    base = np.zeros(d, dtype=np.int64)
    for i in range(a):
        base[i + m] = P[i]
    pw = np.empty(d + 1, dtype=np.int64)
    pw[0] = 1
    for i in range(1, d + 1):
        pw[i] = pw[i - 1] * q
    gen = P.astype(np.int64)
    _span_accumulate(base, d, gen, a + 1, m, p, q, e, add, mul, pw, out, val)


@njit(cache=True)
def mark_many(rows, d, p, q, e, add, mul, out, val):
    for r in range(rows.shape[0]):
        mark_multiples(rows[r], d, p, q, e, add, mul, out, val)


@njit(cache=True)
def lambda_degree(mu_d, d, n, p, q, e, add, sub, mul, W, alpha, u0_table, weight, lam):
    """Add weight * mu(M) to lam[x] whenever M | W*x + alpha.

    M runs over monic degree-d polynomials with mu_d[low(M)] != 0 and
    gcd(M, W) = 1; x runs over all polynomials of degree < n.  For such M
    the solutions x form one residue class x0 + M*F_q[t] with
    x0 = (M*u0 - alpha)/W mod M and u0 = alpha/M mod W.
    """
    lw = W.shape[0]
    dw = lw - 1
    la = _trim(alpha.copy(), alpha.shape[0])
    size = d + dw + la + 2
    Mc = np.zeros(d + 1, dtype=np.int64)
    res = np.zeros(size, dtype=np.int64)
    u0 = np.zeros(max(dw, 1), dtype=np.int64)
    num = np.zeros(size, dtype=np.int64)
    quo = np.zeros(size, dtype=np.int64)
    quo2 = np.zeros(size, dtype=np.int64)
    pw = np.empty(n + 1, dtype=np.int64)
    pw[0] = 1
    for i in range(1, n + 1):
        pw[i] = pw[i - 1] * q
    base = np.zeros(n, dtype=np.int64)
    for k in range(mu_d.shape[0]):
        mu = mu_d[k]
        if mu == 0:
            continue
        rest = k
        for i in range(d):
            Mc[i] = rest % q
            rest //= q
        Mc[d] = 1
        # residue of M modulo W
        for i in range(d + 1):
            res[i] = Mc[i]
        lr = _rem_monic(res, d + 1, W, lw, quo, sub, mul)
        ridx = 0
        mult = 1
        for i in range(lr):
            ridx += res[i] * mult
            mult *= q
        u = u0_table[ridx]
        if u < 0:
            continue
        lu = 0
        for i in range(dw):
            u0[i] = u % q
            u //= q
            if u0[i] != 0:
                lu = i + 1
        ln = _mul_into(Mc, d + 1, u0, lu, num, add, mul)
        for i in range(ln, size):
            num[i] = 0
        ln = max(ln, la)
        for i in range(la):
            num[i] = sub[num[i], alpha[i]]
        ln = _trim(num, ln)
        # exact division by W, then reduction modulo M
        _rem_monic(num, ln, W, lw, quo, sub, mul)
        lq = _trim(quo, max(ln - dw, 0))
        lx = _rem_monic(quo, lq, Mc, d + 1, quo2, sub, mul)
        w = weight * mu
        if d >= n:
            if lx <= n:
                idx = 0
                for i in range(lx):
                    idx += quo[i] * pw[i]
                lam[idx] += w
            continue
        for i in range(n):
            base[i] = quo[i] if i < lx else 0
        _span_accumulate(base, n, Mc, d + 1, n - d, p, q, e, add, mul, pw, lam, w)
