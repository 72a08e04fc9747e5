"""
Enumeration of canonical polygons, whole or split into prefix subtrees.
"""
from l00p3r.core.board import GameBoard, check_length
from l00p3r.core.errors import DomainError

DOUBLED_EDGE = "RL"


def default_depth(length):
    """
    Prefix depth giving a few dozen subtrees at desk-scale lengths.
    """
    return max(1, min(length - 1, length // 3))


def enumerate_prefix(length, prefix, visitor=None):
    """
    Completions of one admissible prefix, in increasing order.
    """
    check_length(length)
    if length == 2:
        if not DOUBLED_EDGE.startswith(prefix):
            return 0
        if visitor is not None:
            visitor(DOUBLED_EDGE)
        return 1
    return GameBoard(length).explore(visitor, prefix=prefix)


def enumerate_polygons(length, visitor=None):
    """
    Visit every canonical polygon of the given length; returns the count.
    """
    return enumerate_prefix(length, "R", visitor)


def partition(length, depth):
    """
    All admissible prefixes of the given depth, in increasing order.
    """
    check_length(length)
    if not 1 <= depth < length:
        raise DomainError(f"Expected 1 <= depth < {length}, got {depth}")
    if length == 2:
        return [DOUBLED_EDGE[:depth]]
    prefixes = []
    GameBoard(length).explore(prefixes.append, prefix="R", depth=depth)
    return prefixes


def collect_polygons(length):
    words = []
    enumerate_polygons(length, words.append)
    return words


def count_prefix(task):
    """
    Worker: (length, prefix) -> number of completions.
    """
    length, prefix = task
    return enumerate_prefix(length, prefix)


def collect_prefix(task):
    """
    Worker: (length, prefix) -> list of completions.
    """
    length, prefix = task
    words = []
    enumerate_prefix(length, prefix, words.append)
    return words


def count_polygons(length, runner, depth=None):
    """
    Count via independent prefix subtrees; the total does not depend on the runner.
    """
    depth = default_depth(length) if depth is None else depth
    tasks = [(length, _prefix) for _prefix in partition(length, depth)]
    return sum(runner.map(count_prefix, tasks, desc=f"Counting ell={length}"))


def collect_by_prefix(length, runner, depth=None):
    """
    {prefix: completions} with prefixes in increasing order.
    """
    depth = default_depth(length) if depth is None else depth
    prefixes = partition(length, depth)
    tasks = [(length, _prefix) for _prefix in prefixes]
    results = runner.map(collect_prefix, tasks, desc=f"Enumerating ell={length}")
    return dict(zip(prefixes, results))
