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


import os
import sys


def span(start, stop, step=1):
    """Inclusive arithmetic progression from start towards stop, empty if stop is behind start"""
    if step > 0:
        return list(range(start, stop + 1, step))
    return list(range(start, stop - 1, step))


def symmetric(x, modulus):
    """Representative of x in [-(modulus-1)/2, (modulus-1)/2]"""
    r = x % modulus
    if r > modulus // 2:
        r -= modulus
    return r


def parity_sign(i):
    """(-1)^i"""
    return -1 if i % 2 else 1


def progress_disabled():
    """True when tqdm bars should be hidden"""
    if os.environ.get("CYCLICHWP_NO_PROGRESS"):
        return True
    # frozen or detached processes may have no console streams
    return (not sys.stdout) or (not sys.stderr)

