# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled finite-model kernels; see ``_pykernels`` for the reference semantics."""

from libc.stdlib cimport malloc, free

cdef enum:
    CONFLICT = -2
    DONE = -1


cdef struct Prog:
    int *code
    int length


cdef inline long _eval(Prog p, int *assign, int *tables, int *offsets, int *arities,
                       int size, long *stack) nogil:
    cdef int sp = 0
    cdef int i, k, n, s, code
    cdef long cell, v
    for i in range(p.length):
        code = p.code[i]
        if code >= 0:
            v = assign[code]
        else:
            s = -code - 1
            n = arities[s]
            cell = 0
            for k in range(sp - n, sp):
                cell = cell * size + stack[k]
            sp -= n
            cell += offsets[s]
            v = tables[cell]
            if v < 0:
                return -1 - cell
        stack[sp] = v
        sp += 1
    return stack[0]


cdef inline long _check(Prog lhs, Prog rhs, int *assign, int *tables, int *offsets,
                        int *arities, int size, long *stack) nogil:
    cdef long a = _eval(lhs, assign, tables, offsets, arities, size, stack)
    if a < 0:
        return -1 - a
    cdef long b = _eval(rhs, assign, tables, offsets, arities, size, stack)
    if b < 0:
        return -1 - b
    return DONE if a == b else CONFLICT


cdef class _Programs:
    """Owns C copies of the compiled equation programs."""
    cdef Prog *lhs
    cdef Prog *rhs
    cdef int neq
    cdef int depth

    def __cinit__(self, lhs_progs, rhs_progs):
        cdef int e, i
        self.neq = len(lhs_progs)
        self.lhs = <Prog *> malloc(max(self.neq, 1) * sizeof(Prog))
        self.rhs = <Prog *> malloc(max(self.neq, 1) * sizeof(Prog))
        for e in range(self.neq):
            self.lhs[e].code = NULL
            self.rhs[e].code = NULL
        self.depth = 1
        for e in range(self.neq):
            for progs, dest in ((lhs_progs, 0), (rhs_progs, 1)):
                p = progs[e]
                arr = <int *> malloc(max(len(p), 1) * sizeof(int))
                for i in range(len(p)):
                    arr[i] = p[i]
                if dest == 0:
                    self.lhs[e].code = arr
                    self.lhs[e].length = len(p)
                else:
                    self.rhs[e].code = arr
                    self.rhs[e].length = len(p)
                self.depth = max(self.depth, len(p))

    def __dealloc__(self):
        cdef int e
        if self.lhs != NULL:
            for e in range(self.neq):
                free(self.lhs[e].code)
                free(self.rhs[e].code)
            free(self.lhs)
            free(self.rhs)


cdef int *_ints(values, int minlen=1) except NULL:
    cdef int n = len(values)
    cdef int *arr = <int *> malloc(max(n, minlen) * sizeof(int))
    cdef int i
    for i in range(n):
        arr[i] = values[i]
    return arr


def first_failure(int size, tables, offsets, arities, lhs_progs, rhs_progs, nvars):
    cdef _Programs progs = _Programs(lhs_progs, rhs_progs)
    cdef int *ctab = _ints(tables)
    cdef int *coff = _ints(offsets)
    cdef int *car = _ints(arities)
    cdef long *stack = <long *> malloc(progs.depth * sizeof(long))
    cdef int *assign = <int *> malloc((max(nvars) if nvars else 1) * sizeof(int) + sizeof(int))
    cdef int e, k, nv
    cdef bint found = False
    try:
        for e in range(progs.neq):
            nv = nvars[e]
            for k in range(max(nv, 1)):
                assign[k] = 0
            while True:
                if (_eval(progs.lhs[e], assign, ctab, coff, car, size, stack)
                        != _eval(progs.rhs[e], assign, ctab, coff, car, size, stack)):
                    found = True
                    break
                k = nv - 1
                while k >= 0 and assign[k] == size - 1:
                    assign[k] = 0
                    k -= 1
                if k < 0:
                    break
                assign[k] += 1
            if found:
                return e, tuple([assign[k] for k in range(nv)])
        return None
    finally:
        free(ctab)
        free(coff)
        free(car)
        free(stack)
        free(assign)


def search(int size, offsets, arities, lhs_progs, rhs_progs, nvars, int ncells,
           cell_argmax, fixed, int limit, bint lnh, stats):
    if ncells == 0:
        return [[]]
    cdef _Programs progs = _Programs(lhs_progs, rhs_progs)
    cdef int *coff = _ints(offsets)
    cdef int *car = _ints(arities)
    cdef int *cargmax = _ints(cell_argmax)
    cdef int *cfixed = _ints(fixed)
    cdef long *stack = <long *> malloc(progs.depth * sizeof(long))
    cdef int *tables = <int *> malloc(ncells * sizeof(int))
    cdef int maxnv = max(list(nvars) + [1])
    cdef long ninst = 0, nmoves = 0, count
    cdef int e, k, nv, level, v, top
    cdef long i, r, w, tried = 0
    cdef bint ok
    for e in range(len(nvars)):
        count = size ** nvars[e]
        ninst += count
        # an instance moves at most once per application node it can get stuck on
        nmoves += count * (sum(1 for c in lhs_progs[e] if c < 0)
                           + sum(1 for c in rhs_progs[e] if c < 0))
    cdef int *inst_eq = <int *> malloc(max(ninst, 1) * sizeof(int))
    cdef int *inst_assign = <int *> malloc(max(ninst, 1) * maxnv * sizeof(int))
    cdef int *cur = <int *> malloc(maxnv * sizeof(int))
    # watch lists are singly linked, newest first, so undo is a pop of the head
    cdef long *head = <long *> malloc(ncells * sizeof(long))
    cdef long *nxt = <long *> malloc((ninst + nmoves + 1) * sizeof(long))
    cdef int *node_inst = <int *> malloc((ninst + nmoves + 1) * sizeof(int))
    cdef long nnodes = 0
    cdef long *trail = <long *> malloc((nmoves + 1) * sizeof(long))
    cdef long ntrail = 0
    cdef long *mark = <long *> malloc((ncells + 1) * sizeof(long))
    cdef int *used = <int *> malloc((ncells + 1) * sizeof(int))
    solutions = []
    try:
        for k in range(ncells):
            tables[k] = -1
            head[k] = -1
        i = 0
        for e in range(len(nvars)):
            nv = nvars[e]
            for k in range(maxnv):
                cur[k] = 0
            while True:
                inst_eq[i] = e
                for k in range(maxnv):
                    inst_assign[i * maxnv + k] = cur[k]
                i += 1
                k = nv - 1
                while k >= 0 and cur[k] == size - 1:
                    cur[k] = 0
                    k -= 1
                if k < 0:
                    break
                cur[k] += 1
        for i in range(ninst):
            e = inst_eq[i]
            r = _check(progs.lhs[e], progs.rhs[e], inst_assign + i * maxnv, tables, coff, car,
                       size, stack)
            if r == CONFLICT:
                return []
            if r >= 0:
                node_inst[nnodes] = i
                nxt[nnodes] = head[r]
                head[r] = nnodes
                nnodes += 1
        level = 0
        mark[0] = 0
        used[0] = cargmax[0]
        while level >= 0:
            while ntrail > mark[level]:
                ntrail -= 1
                w = trail[ntrail]
                head[w] = nxt[head[w]]
                nnodes -= 1
            if cfixed[level] >= 0:
                v = cfixed[level] if tables[level] < 0 else size
            else:
                v = tables[level] + 1
            top = size - 1
            if lnh and used[level] + 1 < top:
                top = used[level] + 1
            if v > top:
                tables[level] = -1
                level -= 1
                continue
            tables[level] = v
            tried += 1
            ok = True
            w = head[level]
            while w >= 0:
                i = node_inst[w]
                e = inst_eq[i]
                r = _check(progs.lhs[e], progs.rhs[e], inst_assign + i * maxnv, tables, coff,
                           car, size, stack)
                if r == CONFLICT:
                    ok = False
                    break
                if r >= 0:
                    node_inst[nnodes] = i
                    nxt[nnodes] = head[r]
                    head[r] = nnodes
                    nnodes += 1
                    trail[ntrail] = r
                    ntrail += 1
                w = nxt[w]
            if not ok:
                continue
            if level + 1 == ncells:
                solutions.append([tables[k] for k in range(ncells)])
                if limit and len(solutions) >= limit:
                    return solutions
                continue
            level += 1
            mark[level] = ntrail
            used[level] = max(used[level - 1], v, cargmax[level])
            tables[level] = -1
        return solutions
    finally:
        stats[0] += tried
        free(coff)
        free(car)
        free(cargmax)
        free(cfixed)
        free(stack)
        free(tables)
        free(inst_eq)
        free(inst_assign)
        free(cur)
        free(head)
        free(nxt)
        free(node_inst)
        free(trail)
        free(mark)
        free(used)
