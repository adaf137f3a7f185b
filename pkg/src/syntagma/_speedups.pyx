# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled record tokenizers; same contract as ``syntagma._pure``."""


def split_fields(str line):
    cdef Py_ssize_t i = 0, n = len(line), start = 0, qstart = 0
    cdef bint in_quote = False
    cdef Py_UCS4 c
    out = []
    while i < n:
        c = line[i]
        if in_quote:
            if c == u'\\':
                i += 1
            elif c == u'"':
                in_quote = False
        elif c == u'"':
            in_quote = True
            qstart = i
        elif c == u';':
            out.append(line[start:i].strip())
            start = i + 1
        i += 1
    if in_quote:
        raise ValueError(f"unterminated quoted string at column {qstart + 1}")
    tail = line[start:].strip()
    if tail:
        out.append(tail)
    return out


def split_pairs(str body):
    cdef Py_ssize_t i = 0, n = len(body), start = 0, qstart = 0, depth = 0
    cdef bint in_quote = False
    cdef Py_UCS4 c
    segments = []
    while i < n:
        c = body[i]
        if in_quote:
            if c == u'\\':
                i += 1
            elif c == u'"':
                in_quote = False
        elif c == u'"':
            in_quote = True
            qstart = i
        elif c == u'(':
            depth += 1
        elif c == u')':
            if depth == 0:
                raise ValueError(f"unbalanced ')' at column {i + 1}")
            depth -= 1
        elif c == u';' and depth == 0:
            segments.append(body[start:i])
            start = i + 1
        i += 1
    if in_quote:
        raise ValueError(f"unterminated quoted string at column {qstart + 1}")
    if depth:
        raise ValueError("unbalanced '(' at end of record")
    segments.append(body[start:])
    out = []
    for seg in segments:
        seg = seg.strip()
        if not seg:
            continue
        parts = seg.split(None, 1)
        out.append((parts[0], parts[1].strip() if len(parts) > 1 else ""))
    return out


cdef inline Py_ssize_t _skip_blank(str s, Py_ssize_t i, Py_ssize_t n):
    while i < n and (s[i] == u' ' or s[i] == u'\t'):
        i += 1
    return i


def form_fields(str line):
    cdef Py_ssize_t i = 0, n = len(line), a, k
    cdef Py_UCS4 c
    ints = []
    for k in range(6):
        i = _skip_blank(line, i, n)
        a = i
        while i < n and u'0' <= line[i] <= u'9':
            i += 1
        if i == a:
            return None
        ints.append(int(line[a:i]))
        i = _skip_blank(line, i, n)
        if i >= n or line[i] != u';':
            return None
        i += 1
    texts = []
    for k in range(2):
        i = _skip_blank(line, i, n)
        if i >= n or line[i] != u'"':
            return None
        i += 1
        a = i
        while i < n:
            c = line[i]
            if c == u'"' or c == u'\\':
                break
            i += 1
        if i >= n or line[i] != u'"':
            return None
        if k == 0 and i == a:
            return None
        texts.append(line[a:i])
        i += 1
        i = _skip_blank(line, i, n)
        if k == 0:
            if i >= n or line[i] != u';':
                return None
            i += 1
    if i < n and line[i] == u';':
        i += 1
    i = _skip_blank(line, i, n)
    if i != n:
        return None
    return (ints[0], ints[1], ints[2], ints[3], ints[4], ints[5], texts[0], texts[1])
