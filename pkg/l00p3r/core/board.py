"""
Decorated game board for growing canonical polygons step by step.

Cells are numbered w * y + x from the bottom-left corner. The border and
the base-row cells west of the base cell are forbidden (infinite distance).
"""
import math
import sys

from l00p3r.core.errors import DomainError, FormatLimitError
from l00p3r.core.polygon import STEPS, STEP_CODES

MAX_LENGTH = 64

NEVER = sys.maxsize
NO_CELL = -1

# children are pushed in reverse so that they pop in alphabet order
PUSH_ORDER = tuple(reversed(range(len(STEPS))))


def check_length(length, minimum=2):
    if length % 2:
        raise DomainError(f"There are no polygons of odd length, got {length}")
    if length < minimum:
        raise DomainError(f"Expected an even length >= {minimum}, got {length}")
    if length > MAX_LENGTH:
        raise FormatLimitError(f"Lengths above {MAX_LENGTH} are not supported, got {length}")


class GameBoard:
    """
    Board state for the depth-first construction of canonical ell-polygons.

    t[c] is the last step index at which cell c was the current vertex and
    kappa[k] the cell occupied at step k. A cell is on the current path iff
    t[c] <= k and kappa[t[c]] == c; stale t entries are never cleared.
    """

    def __init__(self, length):
        check_length(length, minimum=4)
        self._length = length
        self.reach_east = length // 2 - 1
        self.reach_west = max(length // 2 - 3, 0)
        self.width = self.reach_east + self.reach_west + 3
        self.height = self.reach_east + 3
        self.base = self.cell_index(self.reach_west + 1, 1)

        self.offsets = (-self.width, -1, 1, self.width)
        self.distance = [self._distance(_c) for _c in range(self.width * self.height)]
        self.t = [NEVER] * (self.width * self.height)
        self.kappa = [NO_CELL] * (length + 1)
        self.word = [0] * length

    @property
    def length(self):
        return self._length

    def cell_index(self, x, y):
        return self.width * y + x

    def cell_coordinates(self, cell):
        return cell % self.width, cell // self.width

    def is_forbidden(self, cell):
        x, y = self.cell_coordinates(cell)
        if x in (0, self.width - 1) or y in (0, self.height - 1):
            return True
        base_x, base_y = self.cell_coordinates(self.base)
        return y == base_y and x < base_x

    def _distance(self, cell):
        if self.is_forbidden(cell):
            return math.inf
        x, y = self.cell_coordinates(cell)
        base_x, base_y = self.cell_coordinates(self.base)
        return abs(x - base_x) + abs(y - base_y)

    def can_add(self, cell, k, s):
        """
        Whether step s may be taken from `cell` as the k-th step.
        """
        target = cell + self.offsets[s]
        if k + 1 + self.distance[target] > self._length:
            return False
        visited_at = self.t[target]
        if visited_at <= k and self.kappa[visited_at] == target:
            return target == self.base and k + 1 == self._length
        return True

    def apply_step(self, cell, k, s):
        self.t[cell] = k
        self.word[k] = s
        self.kappa[k] = cell
        self.kappa[k + 1] = NO_CELL

    def current_word(self, size=None):
        size = self._length if size is None else size
        return "".join(STEPS[_s] for _s in self.word[:size])

    def explore(self, visitor=None, prefix="R", depth=None):
        """
        Depth-first walk of the subtree rooted at an admissible prefix.

        Leaves are words of length `depth` (default: the full length) and are
        reported to `visitor` in increasing alphabet order. Returns the leaf
        count; an inadmissible prefix has no leaves.
        """
        depth = self._length if depth is None else depth
        assert 1 <= len(prefix) <= depth <= self._length, (
            f"Expected 1 <= len(prefix) <= depth <= {self._length}, "
            f"got prefix {prefix!r} and depth {depth}"
        )
        if prefix[0] != "R":
            return 0

        cell, k = self.base, 0
        for _letter in prefix[:-1]:
            s = STEP_CODES[_letter]
            if not self.can_add(cell, k, s):
                return 0
            self.apply_step(cell, k, s)
            cell, k = cell + self.offsets[s], k + 1
        last = STEP_CODES[prefix[-1]]
        if not self.can_add(cell, k, last):
            return 0

        can_add, apply_step, offsets = self.can_add, self.apply_step, self.offsets
        count = 0
        stack = [(cell, k, last)]
        while stack:
            cell, k, s = stack.pop()
            apply_step(cell, k, s)
            if k + 1 == depth:
                count += 1
                if visitor is not None:
                    visitor(self.current_word(depth))
                continue
            target = cell + offsets[s]
            for _s in PUSH_ORDER:
                if can_add(target, k + 1, _s):
                    stack.append((target, k + 1, _s))
        return count


def board_init(length):
    return GameBoard(length)
