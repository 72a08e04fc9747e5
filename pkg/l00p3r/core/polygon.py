"""
Words over the step alphabet D < L < R < U and their lattice geometry.
"""
from l00p3r.core.errors import InvalidWordError, InvalidPolygonError

STEPS = "DLRU"
STEP_CODES = {_letter: _code for _code, _letter in enumerate(STEPS)}
STEP_OFFSETS = {"D": (0, -1), "L": (-1, 0), "R": (1, 0), "U": (0, 1)}
REVERSED_STEP = {"D": "U", "L": "R", "R": "L", "U": "D"}

# axis and diagonal symmetries of the square, as letter maps
DIHEDRAL_MAPS = (
    {"R": "R", "U": "U", "L": "L", "D": "D"},
    {"R": "U", "U": "L", "L": "D", "D": "R"},
    {"R": "L", "U": "D", "L": "R", "D": "U"},
    {"R": "D", "U": "R", "L": "U", "D": "L"},
    {"R": "L", "U": "U", "L": "R", "D": "D"},
    {"R": "R", "U": "D", "L": "L", "D": "U"},
    {"R": "U", "U": "R", "L": "D", "D": "L"},
    {"R": "D", "U": "L", "L": "U", "D": "R"},
)


def parse_word(text):
    """
    Validate a word string; returns it unchanged.
    """
    if not isinstance(text, str):
        raise InvalidWordError(f"Expected a string over {', '.join(STEPS)}, got {type(text)}")
    bad = sorted({_c for _c in text if _c not in STEP_CODES})
    if bad:
        raise InvalidWordError(
            f"Invalid letters {bad} in {text!r}; the alphabet is {', '.join(STEPS)}"
        )
    return text


def word_vertices(word):
    """
    Points reached after each step, starting from (0, 0).
    """
    x, y = 0, 0
    vertices = []
    for _letter in word:
        dx, dy = STEP_OFFSETS[_letter]
        x, y = x + dx, y + dy
        vertices.append((x, y))
    return vertices


def is_polygon(word):
    """
    Closed and self-avoiding (the doubled edge RL-type words included).
    """
    vertices = word_vertices(word)
    if len(vertices) < 2 or vertices[-1] != (0, 0):
        return False
    return len(set(vertices)) == len(vertices)


def check_polygon(word):
    parse_word(word)
    if not is_polygon(word):
        raise InvalidPolygonError(f"{word!r} is not a closed self-avoiding word")
    return word


def is_canonical(word):
    """
    Geometric check of the canonical form, independent of the game board.
    """
    length = len(word)
    if length < 2 or length % 2 or any(_c not in STEP_CODES for _c in word):
        return False
    if length == 2:
        return word == "RL"
    if word[0] != "R" or word[-1] != "D":
        return False
    if not is_polygon(word):
        return False
    for _x, _y in word_vertices(word):
        if _y < 0 or (_y == 0 and _x < 0):
            return False
    return True


def reverse_word(word):
    return "".join(REVERSED_STEP[_c] for _c in reversed(word))


def rerootings(word):
    """
    The 2*ell words tracing the same polygon: every start vertex, both orientations.
    """
    rotations = [word[_i:] + word[:_i] for _i in range(len(word))]
    backwards = reverse_word(word)
    return rotations + [backwards[_i:] + backwards[:_i] for _i in range(len(word))]


def dihedral_images(word):
    return ["".join(_map[_c] for _c in word) for _map in DIHEDRAL_MAPS]


def canonicalize(word):
    """
    The canonical word of the polygon traced by a closed self-avoiding word.
    """
    check_polygon(word)
    for _candidate in rerootings(word):
        if is_canonical(_candidate):
            return _candidate
    raise InvalidPolygonError(f"{word!r} has no canonical rerooting")


def square_word(side):
    assert side >= 1, f"Expected side >= 1, got {side}"
    return "R" * side + "U" * side + "L" * side + "D" * side
