# Copyright 2024 CyclicHWP contributors

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.


import logging

import numpy as np

from CyclicHWP.classes.classes import AlternatingGon, DSet, LiftedCycle, SignMap, ZCycle
from CyclicHWP.errors import (
    ConstructionError,
    IndexOutOfRange,
    NoMuFound,
    NotPairable,
    ShapeMismatch,
    SkolemMismatch,
    TooFewWitnesses,
)
from CyclicHWP.functions.core import residue_differences
from CyclicHWP.functions.helper import parity_sign, span, symmetric
from CyclicHWP.functions.skolem import flavor_of, generate_skolem, validate_skolem

logger = logging.getLogger(__name__)


def is_hooked(params):
    return (params.n - 2 * params.k) % 4 in (2, 3)


def build_D(params):
    """The excluded differences D, paired as (d_i1, d_i2), and D-bar = [2, ell*n-1] minus D"""
    k, n = params.k, params.n
    pairs = [(4 * i - 2 if n % 2 else 4 * i, 4 * i + 1) for i in span(1, k - 1)]
    if is_hooked(params):
        t = params.ln
        pairs[-1] = (t - 2 * k - 1, t - 2 * k + 3)
    return DSet(pairs, params.ln)


def _is_alternating(b, params):
    """Check of the alternating conditions on the integer vertices b_0 = 0, ..., b_{4k-1}"""
    k, ln = params.k, params.ln
    deltas = [parity_sign(i) * (b[i] - b[i - 1]) for i in span(1, 4 * k - 1)]
    deltas.append(b[0] - b[4 * k - 1])
    for i, delta in enumerate(deltas, 1):
        if not 1 <= delta <= ln:
            return deltas, False
        expected = (i + 1) % 2 if i <= 2 * k else i % 2
        if delta % 2 != expected:
            return deltas, False
    return deltas, True


def cycle_from_pairs(U, params):
    """4k-cycle with differences +-U, U a union of 2k pairs of consecutive integers"""
    k = params.k
    U = list(U)
    u = sorted(set(U))
    if len(u) != params.ell - 1 or len(u) != len(U):
        raise NotPairable(f"expected {params.ell - 1} distinct integers, got {len(U)}")
    if u[0] < 1 or u[-1] > params.ln:
        raise NotPairable(f"differences must lie in [1, {params.ln}]")
    for p in range(0, len(u), 2):
        if u[p] + 1 != u[p + 1]:
            raise NotPairable(f"{u[p]} has no consecutive partner in {u}")

    # the middle element closes the cycle
    deltas = u[:2 * k] + u[2 * k + 1:]
    b = [0]
    for h, delta in enumerate(deltas, 1):
        b.append(b[-1] + parity_sign(h) * delta)

    cycle = ZCycle(b, params.M)
    deltas, alternating = _is_alternating(b, params)
    return AlternatingGon(cycle, deltas, alternating, b)


def a_cycle(params, i, skolem):
    """ell-cycle A_i, i in [1, n-2k]"""
    k, n = params.k, params.n
    a = []
    for j in span(0, 4 * k):
        if j % 2 and j <= 4 * k - 3:
            a.append((4 * k - 2 - j) * n)
        elif j % 2 == 0 and j <= 2 * k - 2:
            a.append(j * n + i - 2 * k)
        elif j % 2 == 0 and j <= 4 * k - 2:
            a.append(j * n + i - 1 + 2 * k)
        elif j == 4 * k - 1:
            a.append(-2 * k)
        else:
            a.append(skolem.s(i) + i + (4 * k - 1) * n - 1)
    return ZCycle(a, params.M)


def first_gon_differences(params, dset):
    """Positive differences of B_1: J_0 and J_2k without D"""
    k, t = params.k, params.ln
    j0 = [x for x in span(2, 4 * k - 1) if x not in dset]
    if is_hooked(params):
        j2k = span(t - 2 * k + 1, t - 2 * k + 2) + span(t - 2 * k + 4, t - 1)
    else:
        j2k = span(t - 2 * k, t - 1)
    return j0 + [x for x in j2k if x not in dset]


def check_gon_coverage(params, dset, A, B):
    """True iff +-D and the differences of A and B cover Z_M minus {0, +-1, +-ell*n} exactly once"""
    M = params.M
    counts = np.zeros(M, dtype=np.int64)
    for cycle in list(A) + list(B):
        counts += residue_differences(list(cycle), M)
    for d in dset:
        counts[d % M] += 1
        counts[-d % M] += 1
    expected = np.ones(M, dtype=np.int64)
    expected[[0, 1, M - 1, params.ln, M - params.ln]] = 0
    return np.array_equal(counts, expected)


def build_base_gons(params, skolem=None, dset=None):
    """Sets A (n-2k ell-cycles) and B (2k gons of length ell-1) over Z_M

    Returns (A, B, gons), gons holding the alternating data of every B_i.
    """
    order = params.n - 2 * params.k
    dset = dset if dset is not None else build_D(params)
    if order == 0:
        skolem = None
    else:
        skolem = skolem if skolem is not None else generate_skolem(order)
        if skolem.order != order or not validate_skolem(skolem):
            raise SkolemMismatch(f"need a valid Skolem sequence of order {order}, got {skolem}")
        if skolem.flavor != flavor_of(order):
            raise SkolemMismatch(f"order {order} needs a {flavor_of(order)} sequence")

    A = [a_cycle(params, i, skolem) for i in span(1, order)]

    gons = [cycle_from_pairs(first_gon_differences(params, dset), params)]
    for beta in span(1, 2 * params.k - 1):
        u = 2 * params.n * beta
        gon = cycle_from_pairs(span(u, u + 4 * params.k - 1), params)
        if not gon.alternating:
            raise ConstructionError(f"B_{beta + 1} over [{u}, {u + 4 * params.k - 1}] is not alternating")
        gons.append(gon)
    B = [gon.cycle for gon in gons]

    if not check_gon_coverage(params, dset, A, B):
        raise ConstructionError(f"A and B do not cover Z_{params.M}^- minus +-D exactly once")
    logger.debug("built %d A cycles and %d B gons", len(A), len(B))
    return A, B, gons


def q_cycle(params, i):
    """Q_i on Z_ell: q_j = j up to 4k-i, q_4k = -i, other differences +-1 or +-2"""
    k = params.k
    if not 1 <= i <= 2 * k - 1:
        raise IndexOutOfRange(f"Q_i needs i in [1, {2 * k - 1}], got {i}")
    q = span(0, 4 * k - i)
    if i % 2 == 0:
        q += span(4 * k - i + 2, 4 * k, 2) + span(4 * k - 1, 4 * k - i + 1, -2)
    else:
        q += span(4 * k - i + 2, 4 * k - 1, 2) + span(4 * k, 4 * k - i + 1, -2)
    return ZCycle(q, params.ell)


def p_cycle(params, mu):
    """P_mu on Z_ell: for mu != +-2k, p_4k = 2k and p_4k - 2 p_2k = mu"""
    k, ell = params.k, params.ell
    mu %= ell
    if mu == 2 * k:
        p = [0] + span(2, 2 * k + 1) + span(2 * k + 3, 4 * k - 1, 2) + span(4 * k, 2 * k + 2, -2) + [1]
        return ZCycle(p, ell)
    if mu == (-2 * k) % ell:
        return ZCycle([-x for x in p_cycle(params, 2 * k)], ell)

    # x = (2k - mu) / 2
    x = ((2 * k - mu) * (2 * k + 1)) % ell
    if x == 2 * k + 1:
        p = [0] + span(4 * k, 2 * k + 1, -1) + span(2 * k - 1, 1, -2) + span(2, 2 * k, 2)
    elif x < 2 * k and x % 2:
        p = (
            [0]
            + span(4 * k - 1, 2 * k + x + 2, -2)
            + span(2 * k + x + 1, 4 * k, 2)
            + span(1, 2 * k - 1)
            + span(2 * k + 1, 2 * k + x, 2)
            + span(2 * k + x - 1, 2 * k, -2)
        )
    elif x < 2 * k:
        p = (
            [0]
            + span(4 * k - 1, 2 * k + x + 1, -2)
            + span(2 * k + x + 2, 4 * k, 2)
            + span(1, 2 * k - 1)
            + span(2 * k + 1, 2 * k + x - 1, 2)
            + span(2 * k + x, 2 * k, -2)
        )
    else:
        xp = x - 2 * k
        if xp % 2 == 0:
            p = (
                span(0, xp - 2, 2)
                + span(xp - 1, 1, -2)
                + span(4 * k, 2 * k + 1, -1)
                + span(2 * k - 1, xp + 1, -2)
                + span(xp, 2 * k, 2)
            )
        else:
            p = (
                span(0, xp - 1, 2)
                + span(xp - 2, 1, -2)
                + span(4 * k, 2 * k + 1, -1)
                + span(2 * k - 1, xp, -2)
                + span(xp + 1, 2 * k, 2)
            )
    return ZCycle(p, ell)


def lift_gon(gon_cycle, labels, params, repeat_last=False):
    """Lift of a (4k)-gon: one extra vertex closes at 0, or repeats b_{4k-1} when repeat_last"""
    b = list(gon_cycle)
    last = b[-1] if repeat_last else 0
    return LiftedCycle(list(zip(b + [last], labels)), params.M, params.ell)


def lift_a(cycle, params):
    return LiftedCycle(((a, j) for j, a in enumerate(cycle)), params.M, params.ell)


def sign_map_of(cycles, params, name="phi"):
    """Second components read off the edges, keyed by first differences in [1, ell*n]"""
    sign_map = SignMap(params.M, name=name)
    for cycle in cycles:
        vertices = list(cycle)
        for u, w in zip(vertices, vertices[1:] + vertices[:1]):
            d = symmetric(w.a - u.a, params.M)
            e = symmetric(w.b - u.b, params.ell)
            if d == 0:
                continue
            if d < 0:
                d, e = -d, -e
            if d in sign_map:
                raise ConstructionError(f"first difference {d} occurs twice")
            sign_map[d] = e
    return sign_map


def lift_b(params, B, mu):
    """B'_1..B'_{2k-1} labelled by Q_i and B'_{2k} labelled by P_mu"""
    k = params.k
    lifted = [lift_gon(B[i - 1], list(q_cycle(params, i)), params) for i in span(1, 2 * k - 1)]
    repeat = mu % params.ell in (2 * k, (-2 * k) % params.ell)
    lifted.append(lift_gon(B[2 * k - 1], list(p_cycle(params, mu)), params, repeat_last=repeat))
    return lifted


def alternating_sum(phi, indices, ell):
    return sum(parity_sign(i) * phi[i] for i in indices) % ell


def alternating_partial_sum(lifted, interval):
    """Sum of (-1)^i phi(i) over [u, u'] for a lifted alternating gon, mod ell"""
    u, u_end = interval
    vertices = list(lifted)
    if len(vertices) < 3 or vertices[0].a != 0:
        raise ShapeMismatch("lifted gon must start at a vertex with first component 0")
    if vertices[-1].a not in (0, vertices[-2].a):
        raise ShapeMismatch("last vertex must have first component 0 or repeat the previous one")

    M, ell = lifted.M, lifted.ell
    phi = {}
    for x, w in zip(vertices, vertices[1:] + vertices[:1]):
        d = symmetric(w.a - x.a, M)
        if d == 0:
            continue
        e = (w.b - x.b) % ell
        if d < 0:
            d, e = -d, -e % ell
        phi[d] = e
    if set(phi) != set(span(u, u_end)):
        raise ShapeMismatch(f"differences {sorted(phi)} do not form [{u}, {u_end}]")
    return alternating_sum(phi, span(u, u_end), ell)


def partial_sum_closed_form(lifted):
    """p_4k - 2 p_2k when the gon closes at 0, p_{4k-1} - p_4k - 2 p_2k when it repeats b_{4k-1}"""
    vertices = list(lifted)
    four_k = len(vertices) - 1
    p = [v.b for v in vertices]
    if vertices[-1].a == 0:
        value = p[four_k] - 2 * p[four_k // 2]
    else:
        value = p[four_k - 1] - p[four_k] - 2 * p[four_k // 2]
    return value % lifted.ell


def _short_set(params, A, B, mu):
    return [lift_a(cycle, params) for cycle in A] + lift_b(params, B, mu)


def sigma_table(params, A, B, dset=None):
    """Alternating sums over D-bar for every mu, and the constant Sigma_mu - mu"""
    dset = dset if dset is not None else build_D(params)
    table = {}
    for mu in range(params.ell):
        phi = sign_map_of(_short_set(params, A, B, mu), params)
        table[mu] = alternating_sum(phi, dset.dbar, params.ell)
    offsets = {(sigma - mu) % params.ell for mu, sigma in table.items()}
    if len(offsets) != 1:
        raise ConstructionError(f"Sigma_mu - mu is not constant: {table}")
    return table, offsets.pop()


def flip_witnesses(phi, dset):
    """Elements i of D-bar with phi(i) = (-1)^(i+1)"""
    return [i for i in dset.dbar if phi[i] == -parity_sign(i)]


def witness_bound(params):
    """Least number of flip witnesses the completion stage may need"""
    return (params.ell - 5) * (params.ell - 1) // 4


def lift_all(params, A, B, s_target, dset=None):
    """n transversal short cycles whose alternating sum over D-bar is s_target

    Returns (S, phi, mu).
    """
    dset = dset if dset is not None else build_D(params)
    ell = params.ell
    s_target %= ell

    for mu in range(ell):
        S = _short_set(params, A, B, mu)
        phi = sign_map_of(S, params)
        if alternating_sum(phi, dset.dbar, ell) == s_target:
            break
    else:
        raise NoMuFound(f"no mu in Z_{ell} reaches alternating sum {s_target}")

    bad = [x for x, value in phi.items() if abs(value) not in (1, 2)]
    if bad:
        raise ConstructionError(f"phi takes values outside +-1, +-2 at {bad[:5]}")
    domain = set(phi.domain())
    expected = {x % params.M for x in dset.dbar} | {-x % params.M for x in dset.dbar}
    if domain != expected:
        raise ConstructionError("phi is not defined exactly on Z_M^- minus +-D")

    witnesses = flip_witnesses(phi, dset)
    bound = witness_bound(params)
    if len(witnesses) < bound:
        raise TooFewWitnesses(
            f"only {len(witnesses)} elements of D-bar have phi(i) = (-1)^(i+1), need {bound}"
        )
    logger.info("mu = %d reaches alternating sum %d", mu, s_target)
    logger.debug("%d elements of D-bar with phi(i) = (-1)^(i+1), bound %d", len(witnesses), bound)
    return S, phi, mu
