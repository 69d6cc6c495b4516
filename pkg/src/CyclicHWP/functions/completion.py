"""Completion of the base set: the sign maps F and G, the two cycles C and C',
and the assembly of every base cycle of an instance.
"""

import logging

from CyclicHWP.classes.classes import BaseCycleSet, DiffMultiset, LiftedCycle, SignMap
from CyclicHWP.errors import AnchorViolation, DomainGap, DomainOverlap, InsufficientFlipSet
from CyclicHWP.functions.helper import parity_sign, span
from CyclicHWP.functions.long_cycles import build_long_set
from CyclicHWP.functions.short_cycles import build_base_gons, build_D, lift_all
from CyclicHWP.functions.skolem import generate_skolem

logger = logging.getLogger(__name__)

# target of the alternating sum of G, C and C' are built for this value only
RHO = -1


def z_minus(params):
    """Residues of Z_M other than 0, +-1 and +-ell*n"""
    ln = params.ln
    return [x for x in range(params.M) if x not in (0, 1, params.M - 1, ln, params.M - ln)]


def alternating_total(sign_map, params):
    """Sum of (-1)^i sigma(i) over i in [2, ell*n - 1], as an integer"""
    return sum(parity_sign(i) * sign_map[i] for i in span(2, params.ln - 1))


def glue_F(f, phi, params):
    """F = f on D u -D and phi elsewhere on Z_M^-"""
    overlap = sorted(set(f.domain()) & set(phi.domain()))
    if overlap:
        raise DomainOverlap(f"f and phi are both defined at {overlap[:10]}")
    expected = set(z_minus(params))
    covered = set(f.domain()) | set(phi.domain())
    if covered != expected:
        gap = sorted(expected - covered) + sorted(covered - expected)
        raise DomainGap(f"f and phi do not partition Z_{params.M}^-: {gap[:10]}")

    F = SignMap(params.M, name="F")
    F.values.update(f.values)
    F.values.update(phi.values)
    return F


def halve_or_double(F):
    """g = 2F where |F| = 1 and F/2 where |F| = 2"""
    g = SignMap(F.M, name="g")
    g.values = {x: 2 * value if abs(value) == 1 else value // 2 for x, value in F.values.items()}
    return g


def flip_set(F, rho, params, dset=None):
    """Number t of flips and the flip set X for the given target rho

    X takes the t smallest eligible elements of D-bar from 2n upwards and
    falls back on the smaller ones only when those run out.
    """
    dset = dset if dset is not None else build_D(params)
    ell = params.ell
    g = halve_or_double(F)
    t = ((alternating_total(g, params) - rho) * params.k) % ell

    eligible = [x for x in dset.dbar if F[x] == -parity_sign(x)]
    upper = [x for x in eligible if x >= 2 * params.n]
    lower = [x for x in eligible if x < 2 * params.n]
    pool = upper + lower
    if len(pool) < t:
        raise InsufficientFlipSet(f"need {t} elements with F(x) = (-1)^(x+1), found {len(pool)}")
    return t, sorted(pool[:t]), g


def build_G(F, rho, params, dset=None):
    """Odd map with |G| = 3 - |F| whose alternating sum is rho mod ell"""
    t, X, g = flip_set(F, rho, params, dset)
    G = g.copy(name="G")
    for x in X:
        G[x] = -g[x]
    logger.info("G: t = %d, X = %s", t, X)
    return G


def completion_seconds(params, F, G):
    """Second components y_0 .. y_{2 ell n} of C, reduced mod ell"""
    ell, ln = params.ell, params.ln
    y = [0] * (2 * ln + 1)
    y[0], y[1] = 0, 1
    for i in span(2, ln - 1):
        y[i] = y[i - 1] + parity_sign(i) * F[i] if i > 2 else 1 + F[2]
    y[ln], y[ln + 1] = 2, 1
    for i in span(ln + 2, 2 * ln - 1):
        previous = y[i - 1] if i > ln + 2 else 1
        y[i] = previous + parity_sign(i) * G[i]
    y[2 * ln] = -2
    y = [value % ell for value in y]

    if y[ln - 1] != 1:
        raise AnchorViolation(f"y_{ln - 1} = {y[ln - 1]}, expected 1")
    if y[2 * ln - 1] != 0:
        raise AnchorViolation(f"y_{2 * ln - 1} = {y[2 * ln - 1]}, expected 0")
    return y


def build_completion_cycles(params, F, G):
    """The transversal long cycles C and C'"""
    ln = params.ln
    x = [parity_sign(i + 1) * ((i + 1) // 2) for i in span(0, 2 * ln)]
    y = completion_seconds(params, F, G)
    C = LiftedCycle(zip(x, y), params.M, params.ell)

    # the first components change direction after the middle
    middle = ln if params.n % 2 == 0 else ln - 1
    x_prime = [value if i <= middle else -value for i, value in enumerate(x)]
    y_prime = [0 if i <= middle else value for i, value in enumerate(y)]
    if params.n % 2:
        y_prime[ln] = 1
    Cprime = LiftedCycle(zip(x_prime, y_prime), params.M, params.ell)
    return C, Cprime


def path_differences(vertices, params):
    multiset = DiffMultiset(params.M, params.ell)
    for u, w in zip(vertices, vertices[1:]):
        multiset.add([w.a - u.a, u.a - w.a], [w.b - u.b, u.b - w.b])
    return multiset


def subpath_differences(C, Cprime, params):
    """Differences of the four subpaths of C and of C' the two cycles split into"""
    ln = params.ln
    c, cp = list(C), list(Cprime)
    return {
        "P1": path_differences(c[1:ln], params),
        "P2": path_differences(c[ln - 1:ln + 2], params),
        "P3": path_differences(c[ln + 1:2 * ln], params),
        "P4": path_differences([c[2 * ln - 1], c[2 * ln], c[0], c[1]], params),
        "P1'": path_differences(cp[0:ln + 1], params),
        "P2'": path_differences(cp[ln:ln + 2], params),
        "P3'": path_differences(cp[ln + 1:2 * ln], params),
        "P4'": path_differences([cp[2 * ln - 1], cp[2 * ln], cp[0]], params),
    }


def expected_subpath_differences(F, G, params):
    """Closed forms of the subpath differences in terms of F and G"""
    ln, M = params.ln, params.M
    inner = span(2, ln - 1)

    def signed(pairs):
        multiset = DiffMultiset(M, params.ell)
        for a, b in pairs:
            multiset.add([a, -a], [b, -b])
        return multiset

    if params.n % 2 == 0:
        p1_prime = signed((a, 0) for a in span(1, (M - 1) // 2))
        p2_prime = signed([(1, -1)])
    else:
        p1_prime = signed([(a, 0) for a in span(1, (M - 1) // 2) if a != ln] + [(1, -1)])
        p2_prime = signed([(ln, 0)])
    return {
        "P1": signed((i, -F[i]) for i in inner),
        "P2": signed([(ln, -1), (ln, 1)]),
        "P3": signed((i, -G[i]) for i in inner),
        "P4": signed([(1, -2), (ln, 2), (1, 1)]),
        "P1'": p1_prime,
        "P2'": p2_prime,
        "P3'": signed((i, G[i]) for i in inner),
        "P4'": signed([(1, 2), (ln, -2)]),
    }


def assemble(params):
    """Every base cycle of the cyclic solution for params, with provenance"""
    dset = build_D(params)
    longs, f = build_long_set(params, dset)

    s = -sum(parity_sign(d) * f[d] for d in dset) % params.ell
    logger.info("long set ready for %s, s = %d", params, s)

    order = params.n - 2 * params.k
    skolem = generate_skolem(order) if order else None
    A, B, _ = build_base_gons(params, skolem, dset)
    shorts, phi, mu = lift_all(params, A, B, s, dset)

    F = glue_F(f, phi, params)
    t, X, _ = flip_set(F, RHO, params, dset)
    G = build_G(F, RHO, params, dset)
    C, Cprime = build_completion_cycles(params, F, G)

    provenance = {
        "f": f,
        "phi": phi,
        "F": F,
        "G": G,
        "mu": mu,
        "s": s,
        "t": t,
        "X": X,
        "skolem": skolem,
        "D": dset,
    }
    base = BaseCycleSet(params, shorts, longs + [C, Cprime], provenance)
    logger.info("assembled %s", base)
    return base
