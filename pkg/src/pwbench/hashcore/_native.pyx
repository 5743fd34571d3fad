# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hash kernels; mirrors ``pwbench.hashcore._pure`` function for function."""

from libc.stdint cimport uint8_t, uint32_t, uint64_t, int64_t
from libc.string cimport memcpy, memset, memcmp
from libc.stdlib cimport malloc, free, realloc

from pwbench.hashcore._pi_tables import P_INIT, S0_INIT, S1_INIT, S2_INIT, S3_INIT
from pwbench.hashcore._pure import MD5_T as _PY_MD5_T, SHA256_K as _PY_SHA256_K

DEF ALG_MD5 = 0
DEF ALG_SHA256 = 1
DEF MAX_CAND = 55

cdef uint32_t MD5_T[64]
cdef uint32_t SHA_K[64]
cdef uint32_t P0[18]
cdef uint32_t S0[1024]

cdef int _i
for _i in range(64):
    MD5_T[_i] = _PY_MD5_T[_i]
    SHA_K[_i] = _PY_SHA256_K[_i]
for _i in range(18):
    P0[_i] = P_INIT[_i]
for _i in range(256):
    S0[_i] = S0_INIT[_i]
    S0[256 + _i] = S1_INIT[_i]
    S0[512 + _i] = S2_INIT[_i]
    S0[768 + _i] = S3_INIT[_i]

cdef uint8_t[64] MD5_R = [
    7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22,
    5, 9, 14, 20, 5, 9, 14, 20, 5, 9, 14, 20, 5, 9, 14, 20,
    4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23,
    6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21,
]


cdef inline uint32_t rotl(uint32_t x, int n) noexcept nogil:
    return (x << n) | (x >> (32 - n))


cdef inline uint32_t rotr(uint32_t x, int n) noexcept nogil:
    return (x >> n) | (x << (32 - n))


# -- MD5 --------------------------------------------------------------------

cdef void md5_compress(uint32_t* st, const uint8_t* blk) noexcept nogil:
    cdef uint32_t m[16]
    cdef uint32_t a = st[0], b = st[1], c = st[2], d = st[3], f, tmp
    cdef int i, k
    for i in range(16):
        m[i] = (<uint32_t>blk[4 * i]) | (<uint32_t>blk[4 * i + 1] << 8) \
            | (<uint32_t>blk[4 * i + 2] << 16) | (<uint32_t>blk[4 * i + 3] << 24)
    for i in range(64):
        if i < 16:
            f = (b & c) | (~b & d)
            k = i
        elif i < 32:
            f = (d & b) | (~d & c)
            k = (5 * i + 1) & 15
        elif i < 48:
            f = b ^ c ^ d
            k = (3 * i + 5) & 15
        else:
            f = c ^ (b | ~d)
            k = (7 * i) & 15
        tmp = d
        d = c
        c = b
        b = b + rotl(a + f + m[k] + MD5_T[i], MD5_R[i])
        a = tmp
    st[0] += a
    st[1] += b
    st[2] += c
    st[3] += d


cdef void md5_c(const uint8_t* data, size_t n, uint8_t* out) noexcept nogil:
    cdef uint32_t st[4]
    cdef uint8_t blk[64]
    cdef size_t off = 0, rem
    cdef uint64_t bits = (<uint64_t>n) * 8
    cdef int i
    st[0] = 0x67452301
    st[1] = 0xEFCDAB89
    st[2] = 0x98BADCFE
    st[3] = 0x10325476
    while n - off >= 64:
        md5_compress(st, data + off)
        off += 64
    rem = n - off
    memset(blk, 0, 64)
    memcpy(blk, data + off, rem)
    blk[rem] = 0x80
    if rem >= 56:
        md5_compress(st, blk)
        memset(blk, 0, 64)
    for i in range(8):
        blk[56 + i] = <uint8_t>(bits >> (8 * i))
    md5_compress(st, blk)
    for i in range(4):
        out[4 * i] = <uint8_t>st[i]
        out[4 * i + 1] = <uint8_t>(st[i] >> 8)
        out[4 * i + 2] = <uint8_t>(st[i] >> 16)
        out[4 * i + 3] = <uint8_t>(st[i] >> 24)


# -- SHA-256 ----------------------------------------------------------------

cdef void sha256_compress(uint32_t* h, const uint8_t* blk) noexcept nogil:
    cdef uint32_t w[64]
    cdef uint32_t a, b, c, d, e, f, g, hh, t1, t2, s0, s1
    cdef int t
    for t in range(16):
        w[t] = (<uint32_t>blk[4 * t] << 24) | (<uint32_t>blk[4 * t + 1] << 16) \
            | (<uint32_t>blk[4 * t + 2] << 8) | (<uint32_t>blk[4 * t + 3])
    for t in range(16, 64):
        s0 = rotr(w[t - 15], 7) ^ rotr(w[t - 15], 18) ^ (w[t - 15] >> 3)
        s1 = rotr(w[t - 2], 17) ^ rotr(w[t - 2], 19) ^ (w[t - 2] >> 10)
        w[t] = w[t - 16] + s0 + w[t - 7] + s1
    a = h[0]; b = h[1]; c = h[2]; d = h[3]
    e = h[4]; f = h[5]; g = h[6]; hh = h[7]
    for t in range(64):
        t1 = hh + (rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25)) + ((e & f) ^ (~e & g)) + SHA_K[t] + w[t]
        t2 = (rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22)) + ((a & b) ^ (a & c) ^ (b & c))
        hh = g
        g = f
        f = e
        e = d + t1
        d = c
        c = b
        b = a
        a = t1 + t2
    h[0] += a; h[1] += b; h[2] += c; h[3] += d
    h[4] += e; h[5] += f; h[6] += g; h[7] += hh


cdef void sha256_c(const uint8_t* data, size_t n, uint8_t* out) noexcept nogil:
    cdef uint32_t h[8]
    cdef uint8_t blk[64]
    cdef size_t off = 0, rem
    cdef uint64_t bits = (<uint64_t>n) * 8
    cdef int i
    h[0] = 0x6A09E667; h[1] = 0xBB67AE85; h[2] = 0x3C6EF372; h[3] = 0xA54FF53A
    h[4] = 0x510E527F; h[5] = 0x9B05688C; h[6] = 0x1F83D9AB; h[7] = 0x5BE0CD19
    while n - off >= 64:
        sha256_compress(h, data + off)
        off += 64
    rem = n - off
    memset(blk, 0, 64)
    memcpy(blk, data + off, rem)
    blk[rem] = 0x80
    if rem >= 56:
        sha256_compress(h, blk)
        memset(blk, 0, 64)
    for i in range(8):
        blk[63 - i] = <uint8_t>(bits >> (8 * i))
    sha256_compress(h, blk)
    for i in range(8):
        out[4 * i] = <uint8_t>(h[i] >> 24)
        out[4 * i + 1] = <uint8_t>(h[i] >> 16)
        out[4 * i + 2] = <uint8_t>(h[i] >> 8)
        out[4 * i + 3] = <uint8_t>h[i]


cdef inline int digest_c(int alg, const uint8_t* data, size_t n, uint8_t* out) noexcept nogil:
    if alg == ALG_MD5:
        md5_c(data, n, out)
        return 16
    sha256_c(data, n, out)
    return 32


def md5(const uint8_t[::1] data not None):
    cdef uint8_t out[16]
    with nogil:
        md5_c(&data[0] if data.shape[0] else <uint8_t*>b"", data.shape[0], out)
    return (<char*>out)[:16]


def sha256(const uint8_t[::1] data not None):
    cdef uint8_t out[32]
    with nogil:
        sha256_c(&data[0] if data.shape[0] else <uint8_t*>b"", data.shape[0], out)
    return (<char*>out)[:32]


def digest(int alg, data):
    return md5(data) if alg == ALG_MD5 else sha256(data)


def hash_many(int alg, items):
    cdef uint8_t out[32]
    cdef int width = 16 if alg == ALG_MD5 else 32
    cdef bytes item
    cdef list result = []
    for item in items:
        digest_c(alg, <const uint8_t*><char*>item, len(item), out)
        result.append((<char*>out)[:width])
    return result


# -- Blowfish / bcrypt ------------------------------------------------------

cdef struct BfState:
    uint32_t P[18]
    uint32_t S[1024]


cdef inline void encipher(BfState* st, uint32_t* lp, uint32_t* rp) noexcept nogil:
    cdef uint32_t l = lp[0], r = rp[0], t
    cdef const uint32_t* S = st.S
    cdef int i
    for i in range(16):
        l ^= st.P[i]
        r ^= ((S[l >> 24] + S[256 + ((l >> 16) & 0xFF)]) ^ S[512 + ((l >> 8) & 0xFF)]) + S[768 + (l & 0xFF)]
        t = l
        l = r
        r = t
    lp[0] = r ^ st.P[17]
    rp[0] = l ^ st.P[16]


cdef void stream_words(const uint8_t* data, int n, uint32_t* out, int count) noexcept nogil:
    cdef int i, b, j = 0
    cdef uint32_t w
    for i in range(count):
        w = 0
        for b in range(4):
            w = (w << 8) | data[j]
            j += 1
            if j == n:
                j = 0
        out[i] = w


cdef void expand_key(BfState* st, const uint32_t* key_words, const uint32_t* salt_words) noexcept nogil:
    cdef uint32_t l = 0, r = 0
    cdef int i, j = 0
    for i in range(18):
        st.P[i] ^= key_words[i]
    for i in range(0, 18, 2):
        if salt_words != NULL:
            l ^= salt_words[j]
            r ^= salt_words[j + 1]
            j ^= 2
        encipher(st, &l, &r)
        st.P[i] = l
        st.P[i + 1] = r
    for i in range(0, 1024, 2):
        if salt_words != NULL:
            l ^= salt_words[j]
            r ^= salt_words[j + 1]
            j ^= 2
        encipher(st, &l, &r)
        st.S[i] = l
        st.S[i + 1] = r


cdef void eks_setup_c(BfState* st, const uint8_t* key, int key_len,
                      const uint8_t* salt, int cost) noexcept nogil:
    cdef uint32_t key_words[18]
    cdef uint32_t salt_words[4]
    cdef uint32_t salt_key[18]
    cdef uint64_t rounds = (<uint64_t>1) << cost
    cdef uint64_t i
    memcpy(st.P, P0, sizeof(P0))
    memcpy(st.S, S0, sizeof(S0))
    stream_words(key, key_len, key_words, 18)
    stream_words(salt, 16, salt_words, 4)
    stream_words(salt, 16, salt_key, 18)
    expand_key(st, key_words, salt_words)
    for i in range(rounds):
        expand_key(st, key_words, NULL)
        expand_key(st, salt_key, NULL)


cdef void bcrypt_c(const uint8_t* key, int key_len, const uint8_t* salt,
                   int cost, uint8_t* out) noexcept nogil:
    cdef BfState st
    cdef uint32_t words[6]
    cdef int i, k
    eks_setup_c(&st, key, key_len, salt, cost)
    stream_words(<const uint8_t*>b"OrpheanBeholderScryDoubt", 24, words, 6)
    for i in range(0, 6, 2):
        for k in range(64):
            encipher(&st, &words[i], &words[i + 1])
    for i in range(6):
        out[4 * i] = <uint8_t>(words[i] >> 24)
        out[4 * i + 1] = <uint8_t>(words[i] >> 16)
        out[4 * i + 2] = <uint8_t>(words[i] >> 8)
        out[4 * i + 3] = <uint8_t>words[i]


def bcrypt_raw(bytes key not None, bytes salt not None, int cost):
    cdef uint8_t out[24]
    cdef const uint8_t* kp = <const uint8_t*><char*>key
    cdef const uint8_t* sp = <const uint8_t*><char*>salt
    cdef int klen = len(key)
    if klen == 0 or len(salt) != 16:
        raise ValueError("key must be non-empty and salt 16 bytes")
    with nogil:
        bcrypt_c(kp, klen, sp, cost, out)
    return (<char*>out)[:24]


def eks_setup(bytes key not None, bytes salt not None, int cost):
    cdef BfState* st = <BfState*>malloc(sizeof(BfState))
    cdef const uint8_t* kp = <const uint8_t*><char*>key
    cdef const uint8_t* sp = <const uint8_t*><char*>salt
    cdef int klen = len(key)
    if st == NULL:
        raise MemoryError()
    try:
        with nogil:
            eks_setup_c(st, kp, klen, sp, cost)
        p = [st.P[i] for i in range(18)]
        s = [[st.S[256 * b + i] for i in range(256)] for b in range(4)]
    finally:
        free(st)
    return p, s


def eks_first_p(bytes key not None, bytes salt not None, int cost):
    return eks_setup(key, salt, cost)[0]


# -- candidate-space kernels ------------------------------------------------

cdef inline uint64_t mix64(uint64_t x) noexcept nogil:
    x = (x ^ (x >> 30)) * <uint64_t>0xBF58476D1CE4E5B9ULL
    x = (x ^ (x >> 27)) * <uint64_t>0x94D049BB133111EBULL
    return x ^ (x >> 31)


cdef inline void reduce_c(const uint8_t* dg, uint64_t position, const uint8_t* charset, uint64_t n,
                          int length, uint64_t table_index, uint8_t* out) noexcept nogil:
    cdef uint64_t x = 0
    cdef int j
    for j in range(8):
        x |= (<uint64_t>dg[j]) << (8 * j)
    x ^= position + table_index * <uint64_t>0x9E3779B97F4A7C15ULL
    for j in range(length):
        x = mix64(x + <uint64_t>0x9E3779B97F4A7C15ULL)
        out[j] = charset[x % n]


def reduce_digest(bytes dg not None, uint64_t position, bytes charset not None, int length, uint64_t table_index):
    cdef bytearray out = bytearray(length)
    reduce_c(<const uint8_t*><char*>dg, position, <const uint8_t*><char*>charset, len(charset),
             length, table_index, <uint8_t*><char*>out)
    return bytes(out)


def unrank_fixed(bytes charset, int length, index):
    n = len(charset)
    out = bytearray(length)
    for j in range(length - 1, -1, -1):
        index, r = divmod(index, n)
        out[j] = charset[r]
    return bytes(out)


cdef inline bint in_sorted(const uint8_t* blob, Py_ssize_t count, int width, const uint8_t* dg) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = count, mid
    cdef int c
    while lo < hi:
        mid = (lo + hi) >> 1
        c = memcmp(blob + mid * width, dg, width)
        if c == 0:
            return True
        if c < 0:
            lo = mid + 1
        else:
            hi = mid
    return False


def crack_block(int alg, bytes charset not None, int length, start, int64_t count, bytes targets not None):
    """Hash ``count`` consecutive fixed-length candidates beginning at offset ``start``.

    ``targets`` is the sorted concatenation of target digests. Returns
    ``(offset, digest)`` for every hit.
    """
    cdef int width = 16 if alg == ALG_MD5 else 32
    cdef Py_ssize_t ntargets = len(targets) // width
    cdef int n = len(charset)
    cdef int digits[MAX_CAND]
    cdef uint8_t buf[MAX_CAND]
    cdef uint8_t dg[32]
    cdef const uint8_t* cs = <const uint8_t*><char*>charset
    cdef const uint8_t* tb = <const uint8_t*><char*>targets
    cdef int64_t i, nhits = 0, cap = 64
    cdef int64_t* hits
    cdef int64_t* grown
    cdef bint oom = False
    cdef int j
    if length < 1 or length > MAX_CAND:
        raise ValueError("candidate length out of range for the compiled kernel")
    idx = start
    for j in range(length - 1, -1, -1):
        idx, r = divmod(idx, n)
        digits[j] = r
        buf[j] = cs[r]
    hits = <int64_t*>malloc(cap * sizeof(int64_t))
    if hits == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(count):
                digest_c(alg, buf, length, dg)
                if ntargets and in_sorted(tb, ntargets, width, dg):
                    if nhits == cap:
                        cap *= 2
                        grown = <int64_t*>realloc(hits, cap * sizeof(int64_t))
                        if grown == NULL:
                            oom = True
                            break
                        hits = grown
                    hits[nhits] = i
                    nhits += 1
                j = length - 1
                while j >= 0:
                    digits[j] += 1
                    if digits[j] < n:
                        buf[j] = cs[digits[j]]
                        break
                    digits[j] = 0
                    buf[j] = cs[0]
                    j -= 1
        if oom:
            raise MemoryError()
        out = []
        for i in range(nhits):
            offset = start + hits[i]
            out.append((offset, digest(alg, unrank_fixed(charset, length, offset))))
        return out
    finally:
        free(hits)


def walk_chain(int alg, bytes charset not None, bytes plain not None, uint64_t first, uint64_t last,
               uint64_t table_index):
    cdef int length = len(plain)
    cdef uint8_t buf[MAX_CAND]
    cdef uint8_t dg[32]
    cdef const uint8_t* cs = <const uint8_t*><char*>charset
    cdef uint64_t n = len(charset), pos
    if length < 1 or length > MAX_CAND:
        raise ValueError("candidate length out of range for the compiled kernel")
    memcpy(buf, <const uint8_t*><char*>plain, length)
    with nogil:
        for pos in range(first, last):
            digest_c(alg, buf, length, dg)
            reduce_c(dg, pos, cs, n, length, table_index, buf)
    return (<char*>buf)[:length]


def walk_many(int alg, bytes charset not None, list plains not None, uint64_t first, uint64_t last,
              uint64_t table_index):
    return [walk_chain(alg, charset, p, first, last, table_index) for p in plains]
