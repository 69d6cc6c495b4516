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


from collections import namedtuple

import numpy as np

from CyclicHWP.errors import EllNotSupported, NTooSmall, SchemaError, SpecViolation
from CyclicHWP.functions.helper import symmetric

SCHEMA_VERSION = "1"

# element of Z_M x Z_ell, the CRT image of a vertex of K_v
Vertex = namedtuple("Vertex", ["a", "b"])


class Params:
    """Instance constants of HWP(ell*M; [ell^M], [M^ell]; r, r')"""

    def __init__(self, ell, n):
        self.ell = ell
        self.n = n
        self.k = (ell - 1) // 4
        self.M = 2 * ell * n + 1
        self.v = ell * self.M

        # number of factors of each type
        self.r = ell * n
        self.r_prime = (ell - 1) * self.M // 2

        # number of short and long base cycles
        self.x = n
        self.y = (ell - 1) // 2

    @property
    def ln(self):
        return self.ell * self.n

    def __str__(self):
        return f"ell={self.ell} n={self.n}"

    def __repr__(self):
        return (
            f"Params(ell={self.ell}, n={self.n}, k={self.k}, M={self.M}, "
            f"v={self.v}, r={self.r}, r_prime={self.r_prime})"
        )

    def __eq__(self, other):
        return isinstance(other, Params) and (self.ell, self.n) == (other.ell, other.n)

    def __hash__(self):
        return hash((self.ell, self.n))

    def to_dict(self):
        return {
            "ell": self.ell,
            "n": self.n,
            "M": self.M,
            "v": self.v,
            "r": self.r,
            "r_prime": self.r_prime,
        }

    @classmethod
    def from_dict(cls, d):
        from CyclicHWP.functions.core import make_params

        ell, n = d["ell"], d["n"]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (ell, n)):
            raise SchemaError(f"params.ell and params.n must be integers, got {ell!r} and {n!r}")
        try:
            params = make_params(ell, n)
        except (EllNotSupported, NTooSmall) as e:
            raise SchemaError(f"unsupported params: {e}")
        for key in ("M", "v", "r", "r_prime"):
            if key in d and d[key] != getattr(params, key):
                raise SchemaError(
                    f"params.{key} = {d[key]} disagrees with ell={params.ell}, n={params.n}"
                )
        return params


class ZCycle:
    """Cycle on residues modulo M, read cyclically"""

    def __init__(self, vertices, modulus):
        self.modulus = modulus
        self.vertices = tuple(int(x) % modulus for x in vertices)
        if len(self.vertices) < 3:
            raise SpecViolation(f"a cycle needs at least 3 vertices, got {len(self.vertices)}")
        if len(set(self.vertices)) != len(self.vertices):
            raise SpecViolation(f"repeated vertex in cycle {self.symmetric()}")

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, index):
        return self.vertices[index]

    def __eq__(self, other):
        return (
            isinstance(other, ZCycle)
            and self.modulus == other.modulus
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.modulus, self.vertices))

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.symmetric()) + ")"

    def symmetric(self):
        return tuple(symmetric(x, self.modulus) for x in self.vertices)


class LiftedCycle:
    """Cycle on Z_M x Z_ell, read cyclically"""

    def __init__(self, vertices, M, ell, strict=True):
        self.M = M
        self.ell = ell
        self.vertices = tuple(Vertex(int(a) % M, int(b) % ell) for a, b in vertices)
        # loaded certificates are checked by the verifier instead
        if not strict:
            return
        if len(self.vertices) < 3:
            raise SpecViolation(f"a cycle needs at least 3 vertices, got {len(self.vertices)}")
        if len(set(self.vertices)) != len(self.vertices):
            raise SpecViolation("repeated vertex in lifted cycle")

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, index):
        return self.vertices[index]

    def __eq__(self, other):
        return (
            isinstance(other, LiftedCycle)
            and (self.M, self.ell) == (other.M, other.ell)
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.M, self.ell, self.vertices))

    def __str__(self):
        return "(" + ",".join(f"({a},{b})" for a, b in self.symmetric()) + ")"

    def symmetric(self):
        return tuple(
            (symmetric(a, self.M), symmetric(b, self.ell)) for a, b in self.vertices
        )

    def firsts(self):
        return np.array([u.a for u in self.vertices], dtype=np.int64)

    def seconds(self):
        return np.array([u.b for u in self.vertices], dtype=np.int64)


class DiffMultiset:
    """Dense multiplicity table over Z_M x Z_ell, cell a*ell + b"""

    def __init__(self, M, ell, counts=None):
        self.M = M
        self.ell = ell
        if counts is None:
            counts = np.zeros(M * ell, dtype=np.int64)
        self.counts = counts

    def index(self, a, b):
        return (a % self.M) * self.ell + (b % self.ell)

    def count(self, a, b):
        return int(self.counts[self.index(a, b)])

    def add(self, a, b):
        """Add differences given as two integer arrays (or scalars)"""
        a = np.asarray(a, dtype=np.int64) % self.M
        b = np.asarray(b, dtype=np.int64) % self.ell
        self.counts += np.bincount(
            (a * self.ell + b).ravel(), minlength=self.M * self.ell
        )

    def __add__(self, other):
        return DiffMultiset(self.M, self.ell, self.counts + other.counts)

    def __eq__(self, other):
        return (
            isinstance(other, DiffMultiset)
            and (self.M, self.ell) == (other.M, other.ell)
            and np.array_equal(self.counts, other.counts)
        )

    def total(self):
        return int(self.counts.sum())

    def _pairs(self, cells):
        return [(int(c) // self.ell, int(c) % self.ell) for c in cells]

    def support(self):
        return self._pairs(np.flatnonzero(self.counts))

    def support_set(self):
        return set(self.support())

    def missing(self):
        """Nonzero elements with multiplicity 0"""
        cells = np.flatnonzero(self.counts == 0)
        return self._pairs(cells[cells != 0])

    def duplicated(self):
        return self._pairs(np.flatnonzero(self.counts >= 2))

    def negated(self):
        a, b = np.divmod(np.arange(self.M * self.ell), self.ell)
        neg = ((-a) % self.M) * self.ell + ((-b) % self.ell)
        return DiffMultiset(self.M, self.ell, self.counts[neg])

    def is_symmetric(self):
        return np.array_equal(self.counts, self.negated().counts)


class SignMap:
    """Odd partial map Z_M -> {+-1, +-2}, stored on residues"""

    def __init__(self, M, values=None, name=""):
        self.M = M
        self.name = name
        self.values = {}
        for x, value in (values or {}).items():
            self[x] = value

    def __setitem__(self, x, value):
        x %= self.M
        self.values[x] = value
        self.values[(-x) % self.M] = -value

    def __getitem__(self, x):
        return self.values[x % self.M]

    def get(self, x, default=None):
        return self.values.get(x % self.M, default)

    def __contains__(self, x):
        return (x % self.M) in self.values

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return isinstance(other, SignMap) and self.M == other.M and self.values == other.values

    def __str__(self):
        return self.name or "SignMap"

    def domain(self):
        return sorted(self.values)

    def items(self):
        return sorted(self.values.items())

    def is_odd(self):
        return all(self.values.get((-x) % self.M) == -v for x, v in self.values.items())

    def copy(self, name=None):
        clone = SignMap(self.M, name=self.name if name is None else name)
        clone.values = dict(self.values)
        return clone

    def to_dict(self):
        return {str(x): v for x, v in self.items()}

    @classmethod
    def from_dict(cls, M, d, name=""):
        sign_map = cls(M, name=name)
        for key, value in d.items():
            sign_map.values[int(key) % M] = int(value)
        return sign_map


class SkolemSeq:
    """Skolem sequence (s_1, ..., s_n), 1-indexed as s_i"""

    def __init__(self, order, entries, flavor):
        self.order = order
        self.entries = tuple(entries)
        self.flavor = flavor

    def __str__(self):
        return f"{self.flavor} Skolem sequence of order {self.order}: {self.entries}"

    def s(self, i):
        return self.entries[i - 1]

    def pairs(self):
        return [(s, s + i) for i, s in enumerate(self.entries, 1)]


class IntervalPathSpec:
    """Request for a path of P([a,b],[c,d]) with end vertices fixed by case and i"""

    def __init__(self, a, b, c, d, endpoint_case, i):
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.endpoint_case = endpoint_case
        self.i = i

    @property
    def gamma1(self):
        return self.b - self.a

    @property
    def gamma2(self):
        return self.d - self.c

    def endpoints(self):
        if self.endpoint_case == 1:
            return self.a + self.i, self.b - self.i
        if self.endpoint_case == 2:
            return self.a + self.i, self.c + self.i
        return self.c + self.i, self.d - self.i

    def __str__(self):
        return (
            f"P([{self.a},{self.b}],[{self.c},{self.d}]) "
            f"case {self.endpoint_case}, i={self.i}"
        )


class IntervalPath:
    """Path on [a,b] u [c,d], not closed"""

    def __init__(self, vertices):
        self.vertices = tuple(vertices)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other):
        return isinstance(other, IntervalPath) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.vertices) + ")"

    @property
    def endpoints(self):
        return self.vertices[0], self.vertices[-1]

    def reversed(self):
        return IntervalPath(self.vertices[::-1])

    def canonical(self):
        """Orientation whose vertex tuple is lexicographically smaller"""
        return min(self, self.reversed(), key=lambda path: path.vertices)

    def differences(self):
        return [abs(v - u) for u, v in zip(self.vertices, self.vertices[1:])]


class LongPairSpec:
    """Input of a pair of long cycles: d1, d2, t of one parity and labels x, y"""

    def __init__(self, d1, d2, t, x, y):
        self.d1 = d1
        self.d2 = d2
        self.t = t
        self.x = x
        self.y = y

    def __str__(self):
        return f"(d1,d2,t)=({self.d1},{self.d2},{self.t}) (x,y)=({self.x},{self.y})"


class DSet:
    """The 2k-2 excluded differences D and the complement D-bar of [2, ell*n-1]"""

    def __init__(self, pairs, ln):
        self.pairs = tuple(tuple(p) for p in pairs)
        self.d_values = tuple(sorted(d for pair in self.pairs for d in pair))
        members = set(self.d_values)
        self.dbar = tuple(i for i in range(2, ln) if i not in members)

    def __contains__(self, x):
        return x in self.d_values

    def __iter__(self):
        return iter(self.d_values)

    def __len__(self):
        return len(self.d_values)

    def __str__(self):
        return "{" + ",".join(str(d) for d in self.d_values) + "}"


class AlternatingGon:
    """4k-gon built from consecutive pairs, with its delta sequence"""

    def __init__(self, cycle, deltas, alternating, partial_sums):
        self.cycle = cycle
        self.deltas = tuple(deltas)
        self.alternating = alternating
        # b_0 .. b_{4k-1} as integers in [-ell*n, ell*n]
        self.partial_sums = tuple(partial_sums)

    def __str__(self):
        return str(self.cycle)


class BaseCycleSet:
    """Short and long base cycles of a cyclic solution, with construction provenance"""

    def __init__(self, params, shorts, longs, provenance=None):
        self.params = params
        self.shorts = list(shorts)
        self.longs = list(longs)
        self.provenance = provenance if provenance is not None else {}
        # set by the verifier once the base criterion has been checked
        self.report = None

    def __str__(self):
        return (
            f"base set for {self.params}: {len(self.shorts)} short, "
            f"{len(self.longs)} long cycles"
        )

    def cycles(self):
        return self.shorts + self.longs


class CoverageReport:
    """Outcome of a verification; ok iff every failure list is empty"""

    def __init__(self, missing=None, duplicated=None, transversality_failures=None,
                 structure_failures=None):
        self.missing = list(missing or [])
        self.duplicated = list(duplicated or [])
        self.transversality_failures = list(transversality_failures or [])
        self.structure_failures = list(structure_failures or [])

    @property
    def ok(self):
        return not (
            self.missing
            or self.duplicated
            or self.transversality_failures
            or self.structure_failures
        )

    def __str__(self):
        if self.ok:
            return "ok"
        return (
            f"FAILED: {len(self.missing)} missing, {len(self.duplicated)} duplicated, "
            f"{len(self.transversality_failures)} non-transversal, "
            f"{len(self.structure_failures)} structural"
        )

    def summary(self):
        return {
            "ok": self.ok,
            "missing": len(self.missing),
            "duplicated": len(self.duplicated),
            "transversality_failures": len(self.transversality_failures),
            "structure_failures": len(self.structure_failures),
        }

    def to_dict(self, limit=50):
        def head(items):
            return [list(x) if isinstance(x, tuple) else x for x in items[:limit]]

        return {
            "ok": self.ok,
            "missing": head(self.missing),
            "duplicated": head(self.duplicated),
            "transversality_failures": head(self.transversality_failures),
            "structure_failures": head(self.structure_failures),
        }


class Factor:
    """One 2-factor of the development, stored as vertex ids a*ell + b"""

    def __init__(self, kind, ids, params, origin=None):
        self.kind = kind
        # shape (number of cycles, cycle length)
        self.ids = ids
        self.params = params
        self.origin = origin

    @property
    def type_label(self):
        p = self.params
        if self.kind == "short":
            return f"[{p.ell}^{p.M}]"
        return f"[{p.M}^{p.ell}]"

    def __str__(self):
        return f"{self.type_label} factor {self.origin}"

    def cycles(self):
        ell = self.params.ell
        return [
            LiftedCycle(zip(row // ell, row % ell), self.params.M, ell)
            for row in self.ids
        ]


class Factorization:
    """Lazy orbit development of a checked base set"""

    def __init__(self, base, factor_source):
        self.base = base
        self.params = base.params
        self._factor_source = factor_source

    def __len__(self):
        return self.params.r + self.params.r_prime

    def __iter__(self):
        for index in range(len(self)):
            yield self._factor_source(self.base, index)

    def __getitem__(self, index):
        return self._factor_source(self.base, index)

    def counts(self):
        return {"short": self.params.r, "long": self.params.r_prime}


class Certificate:
    """Serializable record of a base cycle set"""

    FIELDS = ("schema_version", "params", "short_base_cycles", "long_base_cycles",
              "maps", "verification")

    def __init__(self, params, short_base_cycles, long_base_cycles, maps=None,
                 verification=None, schema_version=SCHEMA_VERSION):
        self.schema_version = schema_version
        self.params = params
        self.short_base_cycles = [[tuple(u) for u in cycle] for cycle in short_base_cycles]
        self.long_base_cycles = [[tuple(u) for u in cycle] for cycle in long_base_cycles]
        self.maps = maps
        self.verification = verification

    def __eq__(self, other):
        return isinstance(other, Certificate) and self.to_dict() == other.to_dict()

    def __str__(self):
        return f"certificate v{self.schema_version} for {self.params}"

    def to_dict(self):
        d = {
            "schema_version": self.schema_version,
            "params": self.params.to_dict(),
            "short_base_cycles": [[list(u) for u in c] for c in self.short_base_cycles],
            "long_base_cycles": [[list(u) for u in c] for c in self.long_base_cycles],
        }
        if self.maps is not None:
            d["maps"] = self.maps
        if self.verification is not None:
            d["verification"] = self.verification
        return d

    @classmethod
    def from_dict(cls, d, strict=True):
        if not isinstance(d, dict):
            raise SchemaError("certificate must be an object")
        if strict:
            unknown = sorted(set(d) - set(cls.FIELDS))
            if unknown:
                raise SchemaError(f"unknown certificate fields: {', '.join(unknown)}")
            if isinstance(d.get("params"), dict):
                unknown = sorted(set(d["params"]) - {"ell", "n", "M", "v", "r", "r_prime"})
                if unknown:
                    raise SchemaError(f"unknown params fields: {', '.join(unknown)}")
        for key in ("schema_version", "params", "short_base_cycles", "long_base_cycles"):
            if key not in d:
                raise SchemaError(f"missing certificate field: {key}")
        if str(d["schema_version"]) != SCHEMA_VERSION:
            raise SchemaError(
                f"schema version {d['schema_version']} is not supported (expected {SCHEMA_VERSION})"
            )
        try:
            params = Params.from_dict(d["params"])
        except (KeyError, TypeError) as e:
            raise SchemaError(f"malformed params: {e}")

        def cycles(key):
            out = []
            for c, cycle in enumerate(d[key]):
                vertices = []
                for vertex in cycle:
                    if (
                        not isinstance(vertex, (list, tuple))
                        or len(vertex) != 2
                        or not all(isinstance(x, int) and not isinstance(x, bool) for x in vertex)
                    ):
                        raise SchemaError(f"{key}[{c}]: vertex {vertex!r} is not an integer pair")
                    a, b = vertex
                    if not (0 <= a < params.M and 0 <= b < params.ell):
                        raise SchemaError(
                            f"{key}[{c}]: vertex ({a},{b}) is outside Z_{params.M} x Z_{params.ell}"
                        )
                    vertices.append((a, b))
                out.append(vertices)
            return out

        return cls(
            params,
            cycles("short_base_cycles"),
            cycles("long_base_cycles"),
            maps=d.get("maps"),
            verification=d.get("verification"),
            schema_version=str(d["schema_version"]),
        )
