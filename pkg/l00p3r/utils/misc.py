from datetime import datetime, timezone

DATETIME_FORMAT = "%Y%m%d %H:%M:%S.%f %z"


def utcnow():
    return datetime.now().astimezone(timezone.utc)


def datetime_to_string(dt):
    assert isinstance(dt, datetime), f"Expected datetime, got {type(dt)} {dt}"
    dt_utc = dt.astimezone(timezone.utc)
    dt_str = dt_utc.strftime(DATETIME_FORMAT)
    return dt_str


def common_prefix_length(left, right):
    size = min(len(left), len(right))
    for _i in range(size):
        if left[_i] != right[_i]:
            return _i
    return size


class CompensatedSum:
    """
    Neumaier summation: a running total plus the rounding error it dropped.
    """

    def __init__(self, total=0.0, compensation=0.0):
        self._total = float(total)
        self._compensation = float(compensation)

    @property
    def value(self):
        return self._total + self._compensation

    def to_tuple(self):
        return (self._total, self._compensation)

    def add(self, value):
        total = self._total + value
        if abs(self._total) >= abs(value):
            self._compensation += (self._total - total) + value
        else:
            self._compensation += (value - total) + self._total
        self._total = total
        return self

    def merge(self, other):
        """
        Fold another partial sum in; merge order fixes the result bits.
        """
        total, compensation = other.to_tuple()
        self.add(total)
        self._compensation += compensation
        return self
