"""Pure-Python finite-model kernels.

Same entry points and semantics as the compiled ``_kernels`` module.  Terms
are compiled to postfix programs: a code ``c >= 0`` pushes variable ``c``
(0-based) and ``c < 0`` applies symbol ``-c - 1``.  Tables of all symbols are
concatenated in one flat list; ``offsets[s]`` is where symbol ``s`` starts and
a table is row-major with the last argument varying fastest.  ``-1`` marks an
undefined cell during search.
"""

CONFLICT = -2
DONE = -1


def _eval(prog, assign, tables, offsets, arities, size, stack):
    """Value of ``prog``, or ``-1 - cell`` if an undefined cell is hit."""
    sp = 0
    for code in prog:
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


def first_failure(size, tables, offsets, arities, lhs_progs, rhs_progs, nvars):
    """First ``(equation, assignment)`` in lexicographic order where the sides differ."""
    depth = max([len(p) for p in lhs_progs] + [len(p) for p in rhs_progs] + [1])
    stack = [0] * depth
    for e in range(len(lhs_progs)):
        lhs, rhs, nv = lhs_progs[e], rhs_progs[e], nvars[e]
        assign = [0] * max(nv, 1)
        while True:
            if (_eval(lhs, assign, tables, offsets, arities, size, stack)
                    != _eval(rhs, assign, tables, offsets, arities, size, stack)):
                return e, tuple(assign[:nv])
            k = nv - 1
            while k >= 0 and assign[k] == size - 1:
                assign[k] = 0
                k -= 1
            if k < 0:
                break
            assign[k] += 1
    return None


def _check(lhs, rhs, assign, tables, offsets, arities, size, stack):
    a = _eval(lhs, assign, tables, offsets, arities, size, stack)
    if a < 0:
        return -1 - a
    b = _eval(rhs, assign, tables, offsets, arities, size, stack)
    if b < 0:
        return -1 - b
    return DONE if a == b else CONFLICT


def search(size, offsets, arities, lhs_progs, rhs_progs, nvars, ncells,
           cell_argmax, fixed, limit, lnh, stats):
    """Depth-first search over table cells in index order, values ascending.

    Returns up to ``limit`` complete tables (all of them if ``limit`` is 0) in
    lexicographic order of the concatenated tables.  ``fixed[c] >= 0`` pins a
    cell.  Each equation instance watches the first undefined cell its
    evaluation reaches and is re-evaluated only when that cell is assigned.
    With ``lnh`` set, a cell may only take values up to one more than the
    largest element mentioned so far (least number heuristic).
    ``stats[0]`` counts assignments tried.
    """
    depth = max([len(p) for p in lhs_progs] + [len(p) for p in rhs_progs] + [1])
    stack = [0] * depth
    tables = [-1] * ncells
    watch = [[] for _ in range(ncells)]
    inst_eq = []
    inst_assign = []
    for e in range(len(lhs_progs)):
        nv = nvars[e]
        assign = [0] * max(nv, 1)
        while True:
            inst_eq.append(e)
            inst_assign.append(tuple(assign))
            k = nv - 1
            while k >= 0 and assign[k] == size - 1:
                assign[k] = 0
                k -= 1
            if k < 0:
                break
            assign[k] += 1
    for i in range(len(inst_eq)):
        e = inst_eq[i]
        r = _check(lhs_progs[e], rhs_progs[e], inst_assign[i], tables, offsets, arities,
                   size, stack)
        if r == CONFLICT:
            return []
        if r >= 0:
            watch[r].append(i)

    solutions = []
    trail = []
    mark = [0] * (ncells + 1)
    used = [-1] * (ncells + 1)
    level = 0
    if ncells == 0:
        return [[]]
    used[0] = cell_argmax[0]
    while level >= 0:
        while len(trail) > mark[level]:
            watch[trail.pop()].pop()
        if fixed[level] >= 0:
            v = fixed[level] if tables[level] < 0 else size
        else:
            v = tables[level] + 1
        top = size - 1
        if lnh:
            top = min(top, used[level] + 1)
        if v > top:
            tables[level] = -1
            level -= 1
            continue
        tables[level] = v
        stats[0] += 1
        ok = True
        for i in watch[level]:
            e = inst_eq[i]
            r = _check(lhs_progs[e], rhs_progs[e], inst_assign[i], tables, offsets, arities,
                       size, stack)
            if r == CONFLICT:
                ok = False
                break
            if r >= 0:
                watch[r].append(i)
                trail.append(r)
        if not ok:
            continue
        if level + 1 == ncells:
            solutions.append(list(tables))
            if limit and len(solutions) >= limit:
                return solutions
            continue
        level += 1
        mark[level] = len(trail)
        used[level] = max(used[level - 1], v, cell_argmax[level])
        tables[level] = -1
    return solutions
