# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled lattice-sum kernel.

Tetrahedron indices are tabulated exactly as 128-bit integers, in q-units
relative to their valuation, using the triality representative whose first
argument is nonpositive (all terms then have nonnegative exponents and no
cancellation occurs). Products over tetrahedra are accumulated modulo a few
primes below 2^60 together with a floating-point bound on the absolute
values; the caller recovers exact integers by CRT once the bound certifies
that the primes suffice.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t, int8_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset, memcpy
from libc.math cimport fabs

cnp.import_array()

cdef extern from *:
    """
    typedef __int128 desc_i128;
    typedef unsigned __int128 desc_u128;
    static inline int desc_add_ovf(desc_i128 a, desc_i128 b, desc_i128 *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline uint64_t desc_mod(desc_i128 x, uint64_t p) {
        desc_i128 r = x % (desc_i128)p;
        if (r < 0) r += p;
        return (uint64_t)r;
    }
    static inline double desc_absd(desc_i128 x) {
        return x < 0 ? -(double)x : (double)x;
    }
    static inline int64_t desc_hi(desc_i128 x) { return (int64_t)(x >> 64); }
    static inline uint64_t desc_lo(desc_i128 x) { return (uint64_t)x; }
    """
    ctypedef long long i128 "desc_i128"
    ctypedef unsigned long long u128 "desc_u128"
    int add_ovf "desc_add_ovf"(i128 a, i128 b, i128 *r) nogil
    uint64_t mod128 "desc_mod"(i128 x, uint64_t p) nogil
    double absd "desc_absd"(i128 x) nogil
    int64_t hi64 "desc_hi"(i128 x) nogil
    uint64_t lo64 "desc_lo"(i128 x) nogil


cdef inline int64_t tdeg(int64_t m, int64_t e) noexcept nogil:
    cdef int64_t mp = m if m > 0 else 0
    cdef int64_t mm = -m if m < 0 else 0
    cdef int64_t ep = e if e > 0 else 0
    cdef int64_t en = -e if e < 0 else 0
    cdef int64_t s = m + e
    cdef int64_t sp = s if s > 0 else 0
    cdef int64_t sn = -s if s < 0 else 0
    cdef int64_t mx = 0
    if m > mx:
        mx = m
    if -e > mx:
        mx = -e
    return mp * sp + mm * ep + en * sn + mx


def tet_degree(int64_t m, int64_t e):
    return tdeg(m, e)


cdef int tet_rel(int64_t m, int64_t e, int64_t lq, i128 *out) noexcept nogil:
    """q-unit coefficients of I(m,e) / u^(2 delta), ``lq`` of them. Returns -1 on overflow."""
    cdef int64_t mr, er, flip
    if m <= 0:
        mr = m
        er = e
        flip = 0
    elif -e - m <= 0:
        mr = -e - m
        er = m
        flip = m & 1
    else:
        mr = e
        er = -e - m
        flip = e & 1
    cdef int64_t n0 = -er if er < 0 else 0
    cdef int64_t v0 = n0 * (n0 + 1) - (2 * n0 + er) * mr
    cdef i128 *y = <i128*>calloc(lq if lq > 0 else 1, sizeof(i128))
    if y == NULL:
        return -2
    memset(out, 0, lq * sizeof(i128))
    cdef int64_t a, t, n, x, top, i, nxt
    cdef i128 tmp
    cdef int status = 0
    y[0] = 1
    for a in range(1, n0 + 1):
        for t in range(a, lq):
            if add_ovf(y[t], y[t - a], &y[t]):
                status = -1
    for a in range(1, n0 + er + 1):
        for t in range(a, lq):
            if add_ovf(y[t], y[t - a], &y[t]):
                status = -1
    n = n0
    while status == 0:
        # relative exponent in q-units (always even in u-units)
        x = (n * (n + 1) - (2 * n + er) * mr - v0) // 2
        if x >= lq:
            break
        top = lq - x
        if (n & 1) == 0:
            for i in range(top):
                if add_ovf(out[x + i], y[i], &out[x + i]):
                    status = -1
        else:
            for i in range(top):
                if add_ovf(out[x + i], -y[i], &out[x + i]):
                    status = -1
        n += 1
        nxt = (n * (n + 1) - (2 * n + er) * mr - v0) // 2
        if nxt >= lq:
            break
        top = lq - nxt
        for t in range(n, top):
            if add_ovf(y[t], y[t - n], &y[t]):
                status = -1
        if n + er > 0:
            a = n + er
            for t in range(a, top):
                if add_ovf(y[t], y[t - a], &y[t]):
                    status = -1
    free(y)
    if flip:
        for i in range(lq):
            out[i] = -out[i]
    return status


cdef class TetTable:
    """Lazily grown dense table of exact tetrahedron indices."""
    cdef int64_t radius
    cdef int64_t side
    cdef i128 **data
    cdef int64_t *length

    def __cinit__(self, int64_t radius=16):
        self.radius = 0
        self.side = 0
        self.data = NULL
        self.length = NULL
        self._grow(radius)

    def __dealloc__(self):
        cdef int64_t i
        if self.data != NULL:
            for i in range(self.side * self.side):
                if self.data[i] != NULL:
                    free(self.data[i])
            free(self.data)
        if self.length != NULL:
            free(self.length)

    cdef int _grow(self, int64_t radius) except -1:
        cdef int64_t side = 2 * radius + 1
        cdef i128 **nd = <i128**>calloc(side * side, sizeof(i128*))
        cdef int64_t *nl = <int64_t*>calloc(side * side, sizeof(int64_t))
        if nd == NULL or nl == NULL:
            raise MemoryError()
        cdef int64_t i, j, old, new
        for i in range(self.side):
            for j in range(self.side):
                old = i * self.side + j
                new = (i - self.radius + radius) * side + (j - self.radius + radius)
                nd[new] = self.data[old]
                nl[new] = self.length[old]
        if self.data != NULL:
            free(self.data)
            free(self.length)
        self.data = nd
        self.length = nl
        self.radius = radius
        self.side = side
        return 0

    cdef int ensure(self, int64_t m, int64_t e, int64_t lq) except -1:
        cdef int64_t r = m if m > 0 else -m
        if e > r:
            r = e
        if -e > r:
            r = -e
        if r > self.radius:
            self._grow(max(r, self.radius + self.radius // 2 + 4))
        cdef int64_t idx = (m + self.radius) * self.side + (e + self.radius)
        if self.length[idx] >= lq:
            return 0
        cdef int64_t want = lq
        if self.length[idx] > 0 and want < self.length[idx] + self.length[idx] // 2:
            want = self.length[idx] + self.length[idx] // 2
        cdef i128 *buf = <i128*>malloc(want * sizeof(i128))
        if buf == NULL:
            raise MemoryError()
        cdef int st = tet_rel(m, e, want, buf)
        if st != 0:
            free(buf)
            if st == -1:
                raise OverflowError(f"tetrahedron index ({m},{e}) exceeds 128-bit range")
            raise MemoryError()
        if self.data[idx] != NULL:
            free(self.data[idx])
        self.data[idx] = buf
        self.length[idx] = want
        return 0

    cdef inline i128* get(self, int64_t m, int64_t e) noexcept nogil:
        return self.data[(m + self.radius) * self.side + (e + self.radius)]

    def coeffs(self, int64_t m, int64_t e, int64_t lq):
        """Python list of the first ``lq`` relative q-unit coefficients (for tests)."""
        self.ensure(m, e, lq)
        cdef i128 *p = self.get(m, e)
        cdef int64_t i
        out = []
        for i in range(lq):
            hi = int(hi64(p[i]))
            lo = int(lo64(p[i]))
            out.append((hi << 64) + lo)
        return out


cdef inline void conv_mod(const uint64_t *a, const uint64_t *b, uint64_t *out,
                          int64_t n, uint64_t p) noexcept nogil:
    cdef int64_t t, i, lim, k
    cdef u128 acc, part
    for t in range(n):
        acc = 0
        i = 0
        while i <= t:
            lim = i + 240
            if lim > t + 1:
                lim = t + 1
            part = 0
            for k in range(i, lim):
                part += <u128>a[k] * b[t - k]
            acc = (acc + part % p) % p
            i = lim
        out[t] = <uint64_t>acc


cdef inline void conv_f64(const double *a, const double *b, double *out, int64_t n) noexcept nogil:
    cdef int64_t t, k
    cdef double acc
    for t in range(n):
        acc = 0.0
        for k in range(t + 1):
            acc += a[k] * b[t - k]
        out[t] = acc


def lattice_sum(TetTable tab, const int64_t[:, ::1] M, const int64_t[:, ::1] E,
                const int64_t[::1] shift, const int8_t[::1] sign, int64_t trunc,
                const uint64_t[::1] primes):
    """Accumulate ``sum_p sign_p u^shift_p prod_j I(M_pj, E_pj)`` modulo ``O(u^trunc)``.

    Returns ``(base, residues, bound)`` where coefficient ``i`` refers to
    ``u^(base+i)``, ``residues`` has shape ``(len(primes), trunc-base)`` and
    ``bound`` bounds the absolute value of each exact coefficient.
    """
    cdef Py_ssize_t P = M.shape[0]
    cdef Py_ssize_t N = M.shape[1]
    cdef Py_ssize_t kp = primes.shape[0]
    cdef int64_t[::1] vals = np.empty(P, dtype=np.int64)
    cdef int64_t p_, j, v, base, L, lq, maxlq, i, off, t
    cdef Py_ssize_t k
    if P == 0:
        return trunc, np.zeros((kp, 0), dtype=np.uint64), np.zeros(0)
    base = trunc
    maxlq = 0
    for p_ in range(P):
        v = shift[p_]
        for j in range(N):
            v += tdeg(M[p_, j], E[p_, j])
        vals[p_] = v
        if v < base:
            base = v
        if v < trunc:
            lq = (trunc - v + 1) // 2
            if lq > maxlq:
                maxlq = lq
            for j in range(N):
                tab.ensure(M[p_, j], E[p_, j], lq)
    L = trunc - base
    if L <= 0:
        return trunc, np.zeros((kp, 0), dtype=np.uint64), np.zeros(0)
    res_arr = np.zeros((kp, L), dtype=np.uint64)
    bound_arr = np.zeros(L, dtype=np.float64)
    cdef uint64_t[:, ::1] res = res_arr
    cdef double[::1] bound = bound_arr
    cdef uint64_t *cur = <uint64_t*>malloc(maxlq * sizeof(uint64_t))
    cdef uint64_t *nxt = <uint64_t*>malloc(maxlq * sizeof(uint64_t))
    cdef uint64_t *fac = <uint64_t*>malloc(maxlq * sizeof(uint64_t))
    cdef double *dcur = <double*>malloc(maxlq * sizeof(double))
    cdef double *dnxt = <double*>malloc(maxlq * sizeof(double))
    cdef double *dfac = <double*>malloc(maxlq * sizeof(double))
    cdef uint64_t *swp
    cdef double *dswp
    cdef uint64_t pr, c
    cdef i128 *src
    if cur == NULL or nxt == NULL or fac == NULL or dcur == NULL or dnxt == NULL or dfac == NULL:
        free(cur); free(nxt); free(fac); free(dcur); free(dnxt); free(dfac)
        raise MemoryError()
    with nogil:
        for p_ in range(P):
            v = vals[p_]
            if v >= trunc:
                continue
            lq = (trunc - v + 1) // 2
            off = v - base
            for k in range(kp):
                pr = primes[k]
                src = tab.get(M[p_, 0], E[p_, 0])
                for i in range(lq):
                    cur[i] = mod128(src[i], pr)
                for j in range(1, N):
                    src = tab.get(M[p_, j], E[p_, j])
                    for i in range(lq):
                        fac[i] = mod128(src[i], pr)
                    conv_mod(cur, fac, nxt, lq, pr)
                    swp = cur
                    cur = nxt
                    nxt = swp
                for i in range(lq):
                    t = off + 2 * i
                    if t >= L:
                        break
                    c = cur[i]
                    if sign[p_] < 0 and c != 0:
                        c = pr - c
                    c = res[k, t] + c
                    if c >= pr:
                        c -= pr
                    res[k, t] = c
            src = tab.get(M[p_, 0], E[p_, 0])
            for i in range(lq):
                dcur[i] = absd(src[i])
            for j in range(1, N):
                src = tab.get(M[p_, j], E[p_, j])
                for i in range(lq):
                    dfac[i] = absd(src[i])
                conv_f64(dcur, dfac, dnxt, lq)
                dswp = dcur
                dcur = dnxt
                dnxt = dswp
            for i in range(lq):
                t = off + 2 * i
                if t >= L:
                    break
                bound[t] += dcur[i]
    free(cur); free(nxt); free(fac); free(dcur); free(dnxt); free(dfac)
    return base, res_arr, bound_arr
