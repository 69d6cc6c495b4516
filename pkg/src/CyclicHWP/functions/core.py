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


import numpy as np

from CyclicHWP.classes.classes import DiffMultiset, Params, Vertex
from CyclicHWP.errors import EllNotSupported, LengthMismatch, NTooSmall


def make_params(ell, n):
    """Validate (ell, n) and derive the instance constants"""
    if ell == 5:
        raise EllNotSupported(
            "ell = 5 is not constructed here: the case k = 1 is settled by earlier "
            "results on cyclic Hamilton-Waterloo solutions"
        )
    if ell % 4 != 1 or ell < 9:
        raise EllNotSupported(f"ell must satisfy ell = 1 (mod 4) and ell >= 9, got {ell}")
    k = (ell - 1) // 4
    if n < 2 * k:
        raise NTooSmall(f"n must be at least (ell-1)/2 = {2 * k}, got {n}")

    params = Params(ell, n)

    # counting identity of the base cycle criterion
    assert 2 * ell * params.x + 2 * params.M * params.y == params.v - 1
    assert params.M % ell == 1
    return params


def pack(vertex, params):
    """CRT image of (a, b) in Z_v"""
    a, b = vertex
    M, ell = params.M, params.ell
    a %= M
    # M = 1 (mod ell), so a + M*c = a + c (mod ell)
    c = (b - a) % ell
    return a + M * c


def unpack(z, params):
    return Vertex(z % params.M, z % params.ell)


def differences(cycle, params):
    """List of differences of a lifted cycle as a dense multiset"""
    a = cycle.firsts()
    b = cycle.seconds()
    da = np.roll(a, -1) - a
    db = np.roll(b, -1) - b
    multiset = DiffMultiset(params.M, params.ell)
    multiset.add(np.concatenate([da, -da]), np.concatenate([db, -db]))
    return multiset


def differences_of(cycles, params):
    multiset = DiffMultiset(params.M, params.ell)
    for cycle in cycles:
        multiset = multiset + differences(cycle, params)
    return multiset


def residue_differences(vertices, modulus):
    """Counts of +-(u' - u) mod modulus over the cyclic edges of a residue cycle"""
    x = np.asarray(vertices, dtype=np.int64)
    d = np.roll(x, -1) - x
    return np.bincount(np.concatenate([d, -d]) % modulus, minlength=modulus)


def is_transversal(cycle, kind, params):
    if kind == "short":
        if len(cycle) != params.ell:
            raise LengthMismatch(f"short cycle must have length {params.ell}, got {len(cycle)}")
        components = cycle.seconds()
    elif kind == "long":
        if len(cycle) != params.M:
            raise LengthMismatch(f"long cycle must have length {params.M}, got {len(cycle)}")
        components = cycle.firsts()
    else:
        raise ValueError(f"unknown cycle kind {kind!r}")
    return len(np.unique(components)) == len(components)


def canonical(cycle):
    """Rotation starting at the smallest vertex, oriented so the second vertex is the smaller neighbour"""
    vertices = list(cycle)
    start = vertices.index(min(vertices))
    forward = vertices[start:] + vertices[:start]
    backward = [forward[0]] + forward[:0:-1]
    return tuple(min(forward, backward, key=lambda seq: seq[1]))

