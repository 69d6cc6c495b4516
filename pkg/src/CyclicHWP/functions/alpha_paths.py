"""Bipartite interval paths with prescribed end vertices.

A path of P([a,b],[c,d]) runs over [a,b] u [c,d], every edge joins the two
intervals and its differences are +-[c-b, d-a], each once. Paths are built
on the zero-based instance ([0,g1],[g1+1,g1+g2+1]) and moved into place
with an affine map that preserves both properties.
"""

import logging

from CyclicHWP.classes.classes import IntervalPath, IntervalPathSpec
from CyclicHWP.errors import SpecViolation, TooLarge

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 10


def _case2_canonical(g, i):
    """Lower [0,g], upper [g+1,2g+1], from lower i to upper g+1+i"""
    path = []
    # global = s * local + o, one map per side
    sL, oL, sU, oU = 1, 0, 1, 0
    while True:
        if 2 * i > g:
            oL, sL = sL * g + oL, -sL
            oU, sU = sU * (3 * g + 2) + oU, -sU
            i = g - i
        N = 2 * g + 1

        def lower(j):
            return sL * j + oL

        def upper(x):
            return sU * x + oU

        if i == 0:
            for j in range(g + 1):
                path += [lower(j), upper(N - j)]
            return path

        if 2 * i == g:
            for j in range(i, 0, -1):
                path += [lower(j), upper(N - j + 1)]
            path.append(lower(0))
            for m in range(i):
                path += [upper(2 * i + 1 + m), lower(2 * i - m)]
            path.append(upper(3 * i + 1))
            return path

        # outer block: differences [N-2i, N]
        for j in range(i, -1, -1):
            path += [lower(j), upper(N - j)]
        oL += sL * (i + 1)
        oU += sU * (i + 1)
        g -= i + 1


def _case1_canonical(g1, i):
    """Lower [0,g1], upper [g1+1,2g1], from lower i to lower g1-i"""
    if 2 * i > g1:
        return _case1_canonical(g1, g1 - i)[::-1]
    N = 2 * g1
    head = []
    for j in range(i, 0, -1):
        head += [j, N - j + 1]
    head.append(0)
    g = g1 - 1 - i
    tail = _case2_canonical(g, g - i)[::-1]
    return head + [x + i + 1 for x in tail]


def _check_spec(spec):
    a, b, c, d = spec.a, spec.b, spec.c, spec.d
    if not a <= b < c <= d:
        raise SpecViolation(f"intervals must satisfy a <= b < c <= d: {spec}")
    g1, g2, i = spec.gamma1, spec.gamma2, spec.i
    if spec.endpoint_case == 1:
        if g1 != g2 + 1:
            raise SpecViolation(f"case 1 needs b-a = d-c+1: {spec}")
        if not 0 <= i <= g1 or 2 * i == g1:
            raise SpecViolation(f"case 1 needs i in [0,{g1}] without {g1}/2: {spec}")
    elif spec.endpoint_case == 2:
        if g1 != g2:
            raise SpecViolation(f"case 2 needs b-a = d-c: {spec}")
        if not 0 <= i <= g1:
            raise SpecViolation(f"case 2 needs i in [0,{g1}]: {spec}")
    elif spec.endpoint_case == 3:
        if g1 != g2 - 1:
            raise SpecViolation(f"case 3 needs b-a = d-c-1: {spec}")
        if not 0 <= i <= g2 or 2 * i == g2:
            raise SpecViolation(f"case 3 needs i in [0,{g2}] without {g2}/2: {spec}")
    else:
        raise SpecViolation(f"unknown endpoint case {spec.endpoint_case}")


def relocate(vertices, a, b, c):
    """Move a path of the zero-based instance onto [a,b] u [c,d]"""
    g1 = b - a
    return [x + a if x <= g1 else x + c - g1 - 1 for x in vertices]


def build_interval_path(spec):
    """Path of P([a,b],[c,d]) starting at the first end vertex of its case"""
    _check_spec(spec)
    g1, g2, i = spec.gamma1, spec.gamma2, spec.i

    if spec.endpoint_case == 1:
        vertices = _case1_canonical(g1, i)
    elif spec.endpoint_case == 2:
        vertices = _case2_canonical(g1, i)
    else:
        N = g1 + g2 + 1
        # swap the sides with x -> N - x, then start from c + i
        vertices = [N - x for x in _case1_canonical(g2, i)][::-1]

    path = IntervalPath(relocate(vertices, spec.a, spec.b, spec.c))
    if __debug__ and not validate_interval_path(path, spec):
        raise AssertionError(f"constructed path fails validation for {spec}")
    return path


def validate_interval_path(path, spec):
    """Linear-time check of the vertex set, the bipartition, the differences and the end vertices"""
    a, b, c, d = spec.a, spec.b, spec.c, spec.d
    vertices = list(path)
    expected = set(range(a, b + 1)) | set(range(c, d + 1))
    if len(vertices) != len(expected) or set(vertices) != expected:
        return False

    seen = set()
    for u, w in zip(vertices, vertices[1:]):
        low, high = min(u, w), max(u, w)
        if not (a <= low <= b and c <= high <= d):
            return False
        seen.add(high - low)
    if seen != set(range(c - b, d - a + 1)) or len(seen) != len(vertices) - 1:
        return False

    if spec.endpoint_case is not None:
        if set(path.endpoints) != set(spec.endpoints()):
            return False
    return True


def enumerate_interval_paths(a, b, c, d):
    """Every path of P([a,b],[c,d]) in canonical orientation, by exhaustive search"""
    if (b - a) + (d - c) > ENUMERATION_LIMIT:
        raise TooLarge(
            f"exhaustive enumeration is limited to (b-a)+(d-c) <= {ENUMERATION_LIMIT}"
        )
    lower = list(range(a, b + 1))
    upper = list(range(c, d + 1))
    allowed = set(range(c - b, d - a + 1))
    total = len(lower) + len(upper)
    found = set()

    def extend(path, used, diffs):
        if len(path) == total:
            found.add(IntervalPath(path).canonical())
            return
        last = path[-1]
        candidates = upper if last <= b else lower
        for w in candidates:
            diff = abs(w - last)
            if w in used or diff in diffs or diff not in allowed:
                continue
            used.add(w)
            diffs.add(diff)
            path.append(w)
            extend(path, used, diffs)
            path.pop()
            diffs.discard(diff)
            used.discard(w)

    if abs((b - a) - (d - c)) <= 1:
        for start in lower + upper:
            extend([start], {start}, set())
    return sorted(found, key=lambda path: path.vertices)
