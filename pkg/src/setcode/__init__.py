"""Error-correcting codes whose codewords are sets of sequences."""
from .channel import ChannelSpec, Kind, corrupt, error_ball, verify_correcting
from .codec import DecodeError, SetCodec
from .core import CharacteristicVector, Order, SequenceSet, char_vector, seq_rank, sort_set

__all__ = [
    "ChannelSpec", "CharacteristicVector", "DecodeError", "Kind", "Order", "SequenceSet",
    "SetCodec", "char_vector", "corrupt", "error_ball", "seq_rank", "sort_set",
    "verify_correcting",
]
