"""
Bit-packed container for sorted polygon words.

Layout: 16-byte header "<4sBBBBQ" (magic, version, length, codec flag,
reserved, count), a 4-byte codec tag when the flag is non-zero, then the
payload. The payload holds the first word as 2-bit step codes and every
later word as a 6-bit shared-prefix length followed by its suffix codes,
packed MSB-first with zero padding in the last byte.
"""
import lzma
import struct
from pathlib import Path

from l00p3r.core import Loggable
from l00p3r.core.board import MAX_LENGTH, check_length
from l00p3r.core.errors import (
    OrderError,
    StoreFormatError,
    StreamMismatchError,
)
from l00p3r.core.polygon import STEPS, STEP_CODES
from l00p3r.utils.misc import common_prefix_length

MAGIC = b"SAPS"
VERSION = 1
HEADER_FORMAT = "<4sBBBBQ"
HEADER_SIZE = struct.calcsize(HEADER_FORMAT)
TAG_SIZE = 4
PREFIX_BITS = 6
STEP_BITS = 2

CODECS = {1: b"LZMA"}
FLAG_RAW = 0
FLAG_LZMA = 1

SHARD_SUFFIX = ".saps"


class PackedBitsWriter:
    """
    MSB-first bit accumulator.
    """

    def __init__(self):
        self._buffer = bytearray()
        self._pending = 0
        self._pending_bits = 0
        self._total_bits = 0

    @property
    def total_bits(self):
        return self._total_bits

    def write(self, value, width):
        assert 0 <= value < (1 << width), f"{value} does not fit in {width} bits"
        self._pending = (self._pending << width) | value
        self._pending_bits += width
        self._total_bits += width
        while self._pending_bits >= 8:
            self._pending_bits -= 8
            self._buffer.append((self._pending >> self._pending_bits) & 0xFF)
        self._pending &= (1 << self._pending_bits) - 1

    def getvalue(self):
        tail = bytearray()
        if self._pending_bits:
            tail.append((self._pending << (8 - self._pending_bits)) & 0xFF)
        return bytes(self._buffer + tail)


class PackedBitsReader:
    def __init__(self, buffer, base_offset=0):
        self._buffer = buffer
        self._position = 0
        self._base_offset = base_offset

    @property
    def byte_offset(self):
        return self._base_offset + self._position // 8

    def read(self, width):
        if self._position + width > 8 * len(self._buffer):
            raise StoreFormatError("truncated payload", self.byte_offset)
        value = 0
        while width:
            byte = self._buffer[self._position >> 3]
            offset = self._position & 7
            take = min(8 - offset, width)
            chunk = (byte >> (8 - offset - take)) & ((1 << take) - 1)
            value = (value << take) | chunk
            self._position += take
            width -= take
        return value


class StoreHeader:
    def __init__(self, length, count, flag=FLAG_RAW, version=VERSION):
        self.length = length
        self.count = count
        self.flag = flag
        self.version = version

    @property
    def codec(self):
        return CODECS.get(self.flag)

    @property
    def payload_offset(self):
        return HEADER_SIZE + (TAG_SIZE if self.flag else 0)

    def pack(self):
        data = struct.pack(HEADER_FORMAT, MAGIC, self.version, self.length, self.flag, 0, self.count)
        if self.flag:
            data += CODECS[self.flag]
        return data

    @classmethod
    def unpack(cls, data):
        if len(data) < HEADER_SIZE:
            raise StoreFormatError("truncated header", len(data))
        magic, version, length, flag, reserved, count = struct.unpack_from(HEADER_FORMAT, data)
        if magic != MAGIC:
            raise StoreFormatError(f"bad magic {magic!r}", 0)
        if version != VERSION:
            raise StoreFormatError(f"unsupported version {version}", 4)
        if length % 2 or not 2 <= length <= MAX_LENGTH:
            raise StoreFormatError(f"invalid length {length}", 5)
        if reserved != 0:
            raise StoreFormatError(f"reserved byte is {reserved}", 7)
        if flag != FLAG_RAW:
            if flag not in CODECS:
                raise StoreFormatError(f"unknown codec flag {flag}", 6)
            tag = data[HEADER_SIZE : HEADER_SIZE + TAG_SIZE]
            if tag != CODECS[flag]:
                raise StoreFormatError(f"codec tag {tag!r} does not match flag {flag}", HEADER_SIZE)
        return cls(length, count, flag=flag, version=version)

    def __repr__(self):
        return f"StoreHeader(length={self.length}, count={self.count}, flag={self.flag})"


def encode_words(words, length):
    """
    Pack a sorted, duplicate-free word sequence. Returns (payload, count).
    """
    check_length(length)
    writer = PackedBitsWriter()
    previous = None
    count = 0
    for _index, _word in enumerate(words):
        if len(_word) != length:
            raise StreamMismatchError(
                f"word #{_index} {_word!r} has length {len(_word)}, expected {length}"
            )
        if previous is None:
            shared = 0
        else:
            if _word <= previous:
                raise OrderError(f"{_word!r} does not follow {previous!r}", _index)
            shared = common_prefix_length(previous, _word)
            assert shared < length, f"Distinct words share a full prefix: {_word!r}"
            writer.write(shared, PREFIX_BITS)
        for _letter in _word[shared:]:
            writer.write(STEP_CODES[_letter], STEP_BITS)
        previous = _word
        count += 1
    return writer.getvalue(), count


def decode_words(payload, length, count, base_offset=0):
    reader = PackedBitsReader(payload, base_offset)
    previous = None
    for _index in range(count):
        if previous is None:
            shared = 0
        else:
            record_offset = reader.byte_offset
            shared = reader.read(PREFIX_BITS)
            if shared >= length:
                raise StoreFormatError(
                    f"prefix length {shared} >= word length {length}", record_offset
                )
        suffix = "".join(STEPS[reader.read(STEP_BITS)] for _ in range(length - shared))
        word = (previous[:shared] if previous else "") + suffix
        yield word
        previous = word


def write_stream(words, sink, length, compress=False):
    """
    Write header and payload to a binary sink; returns the StoreHeader.
    """
    payload, count = encode_words(words, length)
    header = StoreHeader(length, count, flag=FLAG_LZMA if compress else FLAG_RAW)
    if compress:
        payload = lzma.compress(payload)
    sink.write(header.pack())
    sink.write(payload)
    return header


def _split_payload(data):
    header = StoreHeader.unpack(data)
    payload = data[header.payload_offset :]
    if header.flag == FLAG_LZMA:
        try:
            payload = lzma.decompress(payload)
        except lzma.LZMAError as e:
            raise StoreFormatError(f"corrupt compressed payload: {e}", header.payload_offset) from e
    return header, payload


def _read_payload(source):
    return _split_payload(source.read())


def read_stream(source):
    """
    (header, word iterator). Decoding errors surface while iterating.
    """
    header, payload = _read_payload(source)
    # offsets inside a compressed payload refer to the decompressed bytes
    base_offset = header.payload_offset if header.flag == FLAG_RAW else 0
    return header, decode_words(payload, header.length, header.count, base_offset)


def store_stats(source):
    """
    Sizes of the basic 2-bit encoding, the prefix encoding and the stored file.
    """
    data = source.read()
    header, payload = _split_payload(data)
    prefix_bytes = len(payload)
    basic_bits = header.count * STEP_BITS * header.length
    basic_bytes = (basic_bits + 7) // 8
    return {
        "length": header.length,
        "count": header.count,
        "codec": (header.codec or b"RAW").decode(),
        "basic_bytes": basic_bytes,
        "prefix_bytes": prefix_bytes,
        "stored_bytes": len(data),
        "compression_ratio": len(data) / basic_bytes if basic_bytes else float("nan"),
    }


def shard_path(directory, length, prefix):
    return Path(directory) / f"ell{length}" / f"{prefix}{SHARD_SUFFIX}"


class ShardSet(Loggable):
    """
    One store file per partition prefix under <directory>/ell<length>/.
    """

    def __init__(self, directory, length):
        self.directory = Path(directory)
        self.length = length

    @property
    def folder(self):
        return self.directory / f"ell{self.length}"

    def prefixes(self):
        # prefixes share one length, so name order is alphabet order
        return sorted(_path.name[: -len(SHARD_SUFFIX)] for _path in self.folder.glob(f"*{SHARD_SUFFIX}"))

    def write(self, prefix, words, compress=False):
        path = shard_path(self.directory, self.length, prefix)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as f:
            header = write_stream(words, f, self.length, compress=compress)
        return header

    def read(self, prefix):
        with open(shard_path(self.directory, self.length, prefix), "rb") as f:
            _, words = read_stream(f)
            return list(words)

    def words(self):
        for _prefix in self.prefixes():
            yield from self.read(_prefix)

    def exists(self):
        return self.folder.is_dir() and bool(self.prefixes())
