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
from functools import lru_cache

from CyclicHWP.classes.classes import SkolemSeq
from CyclicHWP.errors import SearchBudgetExceeded
from CyclicHWP.functions.helper import span

logger = logging.getLogger(__name__)

# orders up to this bound are found by search
SEARCH_LIMIT = 10
# nodes the search may visit before giving up
SEARCH_BUDGET = 5_000_000


def flavor_of(order):
    return "ordinary" if order % 4 in (0, 1) else "hooked"


def positions_of(order):
    """Positions a Skolem sequence of the given order has to fill"""
    if flavor_of(order) == "ordinary":
        return set(range(1, 2 * order + 1))
    return set(range(1, 2 * order + 2)) - {2 * order}


def search_skolem(order, budget=SEARCH_BUDGET):
    """Depth-first Skolem search, None when no sequence exists

    Raises SearchBudgetExceeded after visiting more than budget nodes.
    """
    free = positions_of(order)
    entries = [0] * order
    visited = 0

    def place(i):
        nonlocal visited
        if i > order:
            return True
        visited += 1
        if visited > budget:
            raise SearchBudgetExceeded(f"Skolem search for order {order} exceeded {budget} nodes")
        for s in sorted(free):
            if s + i in free:
                free.difference_update((s, s + i))
                entries[i - 1] = s
                if place(i + 1):
                    return True
                free.update((s, s + i))
        return False

    if not place(1):
        return None
    return entries


def _pairs_ordinary_0(s):
    """Pairs (a, b) with b - a distinct, order 4s, s >= 2"""
    pairs = [(4 * s + r - 1, 8 * s - r + 1) for r in span(1, 2 * s)]
    pairs += [(r, 4 * s - r - 1) for r in span(1, s - 1)]
    pairs += [(s + r + 1, 3 * s - r) for r in span(1, s - 2)]
    pairs += [(s, s + 1), (2 * s, 4 * s - 1), (2 * s + 1, 6 * s)]
    return pairs


def _pairs_ordinary_1(s):
    """Order 4s + 1, s >= 2"""
    pairs = [(4 * s + r + 1, 8 * s - r + 3) for r in span(1, 2 * s)]
    pairs += [(r, 4 * s + 1 - r) for r in span(1, s)]
    pairs += [(s + r + 2, 3 * s - r + 1) for r in span(1, s - 2)]
    pairs += [(s + 1, s + 2), (2 * s + 1, 6 * s + 2), (2 * s + 2, 4 * s + 1)]
    return pairs


def _pairs_hooked_2(s):
    """Order 4s + 2, s >= 3"""
    pairs = [(2 * s + 2 - j, 2 * s + 2 + j) for j in span(1, 2 * s + 1)]
    pairs += [(2 * s + 2, 6 * s + 3), (4 * s + 4, 8 * s + 3), (6 * s + 2, 8 * s + 5)]
    pairs += [(r + 4 * s + 3, 8 * s + 4 - r) for r in span(2, s - 2)]
    pairs += [(r + 4 * s + 3, 8 * s + 2 - r) for r in span(s - 1, 2 * s - 2)]
    pairs += [(7 * s + 4, 7 * s + 5)]
    return pairs


def _pairs_hooked_3(s):
    """Order 4s + 3, s >= 1"""
    pairs = [(2 * s + 2 - j, 2 * s + 2 + j) for j in span(1, 2 * s + 1)]
    pairs += [(2 * s + 2, 6 * s + 5), (4 * s + 4, 8 * s + 5), (6 * s + 6, 8 * s + 7)]
    pairs += [(r + 4 * s + 3, 8 * s + 6 - r) for r in span(2, s)]
    pairs += [(r + 4 * s + 3, 8 * s + 8 - r) for r in span(s + 3, 2 * s + 1)]
    pairs += [(5 * s + 4, 5 * s + 5)]
    return pairs


def _closed_form(order):
    s, residue = divmod(order, 4)
    builder = {
        0: _pairs_ordinary_0,
        1: _pairs_ordinary_1,
        2: _pairs_hooked_2,
        3: _pairs_hooked_3,
    }[residue]
    entries = [0] * order
    for a, b in builder(s):
        d = b - a
        if not 1 <= d <= order or entries[d - 1]:
            return None
        entries[d - 1] = a
    return entries


def validate_skolem(seq):
    if seq.order < 1 or len(seq.entries) != seq.order:
        return False
    if seq.flavor != flavor_of(seq.order):
        return False
    covered = []
    for i, s in enumerate(seq.entries, 1):
        if not isinstance(s, int) or s < 1:
            return False
        covered += [s, s + i]
    return len(set(covered)) == len(covered) and set(covered) == positions_of(seq.order)


@lru_cache(maxsize=None)
def generate_skolem(order):
    """Deterministic Skolem sequence of the given order, hooked when order = 2, 3 (mod 4)"""
    if order < 1:
        raise ValueError(f"Skolem order must be positive, got {order}")
    flavor = flavor_of(order)

    if order > SEARCH_LIMIT:
        entries = _closed_form(order)
        if entries is not None:
            seq = SkolemSeq(order, entries, flavor)
            if validate_skolem(seq):
                logger.debug("Skolem order %d from closed form", order)
                return seq
        logger.warning("closed form failed for Skolem order %d, searching", order)

    entries = search_skolem(order)
    logger.debug("Skolem order %d from search", order)
    return SkolemSeq(order, entries, flavor)
