# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arena reducer.

Same zipper as the pure engine: descend through congruence positions to
the redex, contract, resume from the contraction site, and rebuild the
path only when the current subterm is normal or the budget runs out.
Works on the flat arrays produced by pcfkit.arena; every node created
here is an application and is appended to the caller's lists before
returning, so the extended encoding can be decoded.
"""

from libc.stdlib cimport free, malloc, realloc

ctypedef long long i64

# Tag codes, matching arena.TAG_CODES.
cdef enum:
    T_ZERO = 0
    T_SUCC = 1
    T_PRED = 2
    T_IFZ = 3
    T_K = 4
    T_S = 5
    T_FIX = 6
    T_APP = 7

# Rule codes, matching arena.RULE_CODES. The congruence rules are
# exactly the codes >= R_APP_LEFT; the contraction dispatch and the
# descent loop both rely on that.
cdef enum:
    R_PRED_ZERO = 0
    R_PRED_SUCC = 1
    R_IFZ_ZERO = 2
    R_IFZ_SUCC = 3
    R_K = 4
    R_S = 5
    R_FIX = 6
    R_APP_LEFT = 7
    R_SUCC_ARG = 8
    R_PRED_ARG = 9
    R_IFZ_SCRUT = 10


cdef struct Arena:
    Py_ssize_t n
    Py_ssize_t cap
    int* tags
    Py_ssize_t* fun
    Py_ssize_t* arg
    i64* numv
    int* rule


cdef int _grow(Arena* A, Py_ssize_t cap) except -1:
    cdef int* tags = <int*> realloc(A.tags, cap * sizeof(int))
    if tags == NULL:
        raise MemoryError()
    A.tags = tags
    cdef Py_ssize_t* fun = <Py_ssize_t*> realloc(A.fun, cap * sizeof(Py_ssize_t))
    if fun == NULL:
        raise MemoryError()
    A.fun = fun
    cdef Py_ssize_t* arg = <Py_ssize_t*> realloc(A.arg, cap * sizeof(Py_ssize_t))
    if arg == NULL:
        raise MemoryError()
    A.arg = arg
    cdef i64* numv = <i64*> realloc(A.numv, cap * sizeof(i64))
    if numv == NULL:
        raise MemoryError()
    A.numv = numv
    cdef int* rule = <int*> realloc(A.rule, cap * sizeof(int))
    if rule == NULL:
        raise MemoryError()
    A.rule = rule
    A.cap = cap
    return 0


cdef inline int _classify(Arena* A, Py_ssize_t f, Py_ssize_t a) noexcept:
    # Mirrors the per-node rule computed at interning time.
    cdef int tf = A.tags[f]
    cdef Py_ssize_t g, h
    if tf == T_PRED:
        if A.numv[a] >= 0:
            return R_PRED_ZERO if A.numv[a] == 0 else R_PRED_SUCC
        return R_PRED_ARG if A.rule[a] >= 0 else -1
    if tf == T_SUCC:
        return R_SUCC_ARG if A.rule[a] >= 0 else -1
    if tf == T_FIX:
        return R_FIX
    if tf == T_APP:
        g = A.fun[f]
        if A.tags[g] == T_K:
            return R_K
        if A.tags[g] == T_APP:
            h = A.fun[g]
            if A.tags[h] == T_S:
                return R_S
            if A.tags[h] == T_IFZ:
                if A.numv[a] >= 0:
                    return R_IFZ_ZERO if A.numv[a] == 0 else R_IFZ_SUCC
                return R_IFZ_SCRUT if A.rule[a] >= 0 else -1
    return R_APP_LEFT if A.rule[f] >= 0 else -1


cdef inline Py_ssize_t _new_app(Arena* A, Py_ssize_t f, Py_ssize_t a) except -1:
    cdef Py_ssize_t i = A.n
    if i == A.cap:
        _grow(A, A.cap * 2)
    A.tags[i] = T_APP
    A.fun[i] = f
    A.arg[i] = a
    A.numv[i] = A.numv[a] + 1 if A.tags[f] == T_SUCC and A.numv[a] >= 0 else -1
    A.rule[i] = _classify(A, f, a)
    A.n = i + 1
    return i


cdef Py_ssize_t _contract(Arena* A, Py_ssize_t i, int r) except -1:
    cdef Py_ssize_t f = A.fun[i]
    cdef Py_ssize_t a = A.arg[i]
    cdef Py_ssize_t x, y
    if r == R_PRED_ZERO:
        return a
    if r == R_PRED_SUCC:
        return A.arg[a]
    if r == R_IFZ_ZERO:
        return A.arg[A.fun[f]]
    if r == R_IFZ_SUCC:
        return A.arg[f]
    if r == R_K:
        return A.arg[f]
    if r == R_S:
        x = _new_app(A, A.arg[A.fun[f]], a)
        y = _new_app(A, A.arg[f], a)
        return _new_app(A, x, y)
    # r == R_FIX; the unrolled fix shares node i itself
    return _new_app(A, a, i)


def run(list tags, list fun, list arg, list numv, list rule,
        Py_ssize_t root, Py_ssize_t max_steps):
    """Reduce node root for at most max_steps; returns (root', steps).

    Appends the nodes created along the way to the five lists so the
    returned root is a valid index into the extended encoding.
    """
    cdef Py_ssize_t n0 = len(tags)
    cdef Arena A
    A.n = 0
    A.cap = n0 + 64
    A.tags = NULL
    A.fun = NULL
    A.arg = NULL
    A.numv = NULL
    A.rule = NULL

    cdef Py_ssize_t* f_other = NULL
    cdef char* f_isfun = NULL
    cdef Py_ssize_t f_n = 0
    cdef Py_ssize_t f_cap = 64

    cdef Py_ssize_t i, cur, other, steps
    cdef Py_ssize_t* new_other
    cdef char* new_isfun
    cdef int r
    try:
        _grow(&A, A.cap)
        for i in range(n0):
            A.tags[i] = tags[i]
            A.fun[i] = fun[i]
            A.arg[i] = arg[i]
            A.numv[i] = numv[i]
            A.rule[i] = rule[i]
        A.n = n0

        f_other = <Py_ssize_t*> malloc(f_cap * sizeof(Py_ssize_t))
        f_isfun = <char*> malloc(f_cap)
        if f_other == NULL or f_isfun == NULL:
            raise MemoryError()

        cur = root
        steps = 0
        while steps < max_steps:
            r = A.rule[cur]
            if r < 0:
                if f_n == 0:
                    break
                f_n -= 1
                other = f_other[f_n]
                if f_isfun[f_n]:
                    cur = _new_app(&A, cur, other)
                else:
                    cur = _new_app(&A, other, cur)
                continue
            while r >= R_APP_LEFT:
                if f_n == f_cap:
                    f_cap *= 2
                    new_other = <Py_ssize_t*> realloc(
                        f_other, f_cap * sizeof(Py_ssize_t))
                    if new_other == NULL:
                        raise MemoryError()
                    f_other = new_other
                    new_isfun = <char*> realloc(f_isfun, f_cap)
                    if new_isfun == NULL:
                        raise MemoryError()
                    f_isfun = new_isfun
                if r == R_APP_LEFT:
                    f_other[f_n] = A.arg[cur]
                    f_isfun[f_n] = 1
                    cur = A.fun[cur]
                else:
                    f_other[f_n] = A.fun[cur]
                    f_isfun[f_n] = 0
                    cur = A.arg[cur]
                f_n += 1
                r = A.rule[cur]
            cur = _contract(&A, cur, r)
            steps += 1
        while f_n:
            f_n -= 1
            other = f_other[f_n]
            if f_isfun[f_n]:
                cur = _new_app(&A, cur, other)
            else:
                cur = _new_app(&A, other, cur)

        for i in range(n0, A.n):
            tags.append(A.tags[i])
            fun.append(A.fun[i])
            arg.append(A.arg[i])
            numv.append(A.numv[i])
            rule.append(A.rule[i])
        return cur, steps
    finally:
        free(A.tags)
        free(A.fun)
        free(A.arg)
        free(A.numv)
        free(A.rule)
        free(f_other)
        free(f_isfun)
