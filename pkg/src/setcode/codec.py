"""Common interface of the set codecs."""
from __future__ import annotations

import math

from .core import SequenceSet


class DecodeError(ValueError):
    """Received set is not decodable (outside the channel the code was built for)."""


def log2_binom(n: int, k: int) -> float:
    return math.log2(math.comb(n, k))


class SetCodec:
    """A code whose codewords are M-sets of length-L words over Z_q.

    Subclasses provide ``size`` (exact, from the closed-form count), a
    message type, ``encode``/``decode``, and a bijection between messages
    and ``range(size)`` via ``message_from_index``/``message_index``.
    """

    q: int = 2
    L: int
    M: int
    family: str = "codec"

    def size(self) -> int:
        raise NotImplementedError

    def encode(self, msg) -> SequenceSet:
        raise NotImplementedError

    def decode(self, received):
        raise NotImplementedError

    def message_from_index(self, index: int):
        raise NotImplementedError

    def message_index(self, msg) -> int:
        raise NotImplementedError

    def encode_index(self, index: int) -> SequenceSet:
        return self.encode(self.message_from_index(index))

    def decode_index(self, received) -> int:
        return self.message_index(self.decode(received))

    def total_sets(self) -> int:
        return math.comb(self.q ** self.L, self.M)

    def redundancy(self) -> float:
        """log_q C(q^L, M) - log_q |code|, in q-ary symbols."""
        return (math.log2(self.total_sets()) - math.log2(self.size())) / math.log2(self.q)

    def redundancy_bits(self) -> float:
        return math.log2(self.total_sets()) - math.log2(self.size())

    def check_index(self, index: int) -> None:
        if not 0 <= index < self.size():
            raise ValueError(f"message index {index} out of range [0, {self.size()})")
