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

from CyclicHWP.classes.classes import IntervalPathSpec, LiftedCycle, LongPairSpec, SignMap
from CyclicHWP.errors import ConstructionError, SpecViolation
from CyclicHWP.functions.alpha_paths import build_interval_path
from CyclicHWP.functions.core import differences_of
from CyclicHWP.functions.short_cycles import build_D

logger = logging.getLogger(__name__)


def _check_d(d, t):
    if t < 2:
        raise SpecViolation(f"t must be at least 2, got {t}")
    if d % 2 != t % 2:
        raise SpecViolation(f"d = {d} and t = {t} must have the same parity")
    if not 1 <= d <= t - 1 or d == (t + 1) // 2:
        raise SpecViolation(f"d = {d} must lie in [1, {t - 1}] and differ from {(t + 1) // 2}")


def _paths(d, t):
    """End-to-end U and W paths of C(d), U from its join with W to its join with w_0"""
    if t % 2:
        m, i = (t + 1) // 2, (d - 1) // 2
        u = build_interval_path(IntervalPathSpec(m, 2 * m - 2, 2 * m - 1, 3 * m - 2, 3, i))
        w = build_interval_path(IntervalPathSpec(0, m - 1, 3 * m - 1, 4 * m - 2, 2, i))
    else:
        m, i = t // 2, d // 2
        u = build_interval_path(IntervalPathSpec(m, 2 * m - 1, 2 * m, 3 * m, 3, i))
        w = build_interval_path(IntervalPathSpec(0, m - 1, 3 * m + 1, 4 * m, 2, i - 1))
    # U is built from c+i, the cycle enters it at d-i
    return list(u.reversed()), list(w)


def build_cd_cycle(d, t, x, y):
    """(2t+1)-cycle on [0,2t] x Z with differences +-(I x {y}), +-(J x {x}) and +-(d, x-y)

    The W path on the outer intervals carries label x at its odd positions, the
    U path on the inner intervals carries y, every other vertex has label 0.
    Returned as integer pairs, not reduced.
    """
    _check_d(d, t)
    u, w = _paths(d, t)
    cycle = [(a, x if j % 2 else 0) for j, a in enumerate(w)]
    cycle += [(a, 0 if j % 2 else y) for j, a in enumerate(u)]
    return cycle


def build_pair(spec):
    """Two (2t+1)-cycles whose differences are +-([1,2t] x {x,y}) with +-(d1, x-y) and +-(d2, y-x)"""
    return (
        build_cd_cycle(spec.d1, spec.t, spec.x, spec.y),
        build_cd_cycle(spec.d2, spec.t, spec.y, spec.x),
    )


def d_prime(d, t):
    return d if d % 4 in (0, 2) else 2 * t + 1 - d


def long_pair_specs(params, dset=None):
    dset = dset if dset is not None else build_D(params)
    t = params.ln
    specs = []
    for i, (d1, d2) in enumerate(dset.pairs, 1):
        specs.append(
            LongPairSpec(d_prime(d1, t) // 2, d_prime(d2, t) // 2, t, 2 * i + 1, 2 * i + 2)
        )
    return specs


def double_first(cycle, params):
    """Image under (a, b) -> (2a, b), reduced into Z_M x Z_ell"""
    return LiftedCycle(((2 * a, b) for a, b in cycle), params.M, params.ell)


def extract_f(cycles, dset, params):
    """Sign map on D u -D read off the differences with second component +-1"""
    multiset = differences_of(cycles, params)
    f = SignMap(params.M, name="f")
    for d in dset:
        plus, minus = multiset.count(d, 1), multiset.count(d, -1)
        if (plus, minus) == (1, 0):
            f[d] = 1
        elif (plus, minus) == (0, 1):
            f[d] = -1
        else:
            raise ConstructionError(
                f"difference {d} appears {plus} times with +1 and {minus} times with -1"
            )
    return f


def build_long_set(params, dset=None):
    """The (ell-5)/2 transversal long cycles and the sign map f on D u -D"""
    dset = dset if dset is not None else build_D(params)
    cycles = []
    for spec in long_pair_specs(params, dset):
        logger.debug("long pair %s", spec)
        for skeleton in build_pair(spec):
            cycles.append(double_first(skeleton, params))
    f = extract_f(cycles, dset, params)
    logger.info("built %d long cycles for %s", len(cycles), params)
    return cycles, f
