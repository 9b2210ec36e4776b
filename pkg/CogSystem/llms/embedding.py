import numpy as np
from CogSystem.llms.basellm import DEFAULT_EMBEDDING_DIM, EmbeddingVector

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_MASK = (1 << 64) - 1


def fnv1a_64(data: bytes, state: int = FNV_OFFSET) -> int:
    """64-bit FNV-1a over `data`, continuing from `state`."""
    for byte in data:
        state ^= byte
        state = (state * FNV_PRIME) & _MASK
    return state


def pseudo_embed(text: str, dim: int = DEFAULT_EMBEDDING_DIM, seed: int = 0) -> EmbeddingVector:
    """
    Deterministic stand-in for an embedding endpoint.

    The base state is FNV-1a-64 over the seed (8 bytes, little-endian, two's complement) followed by the UTF-8
    bytes of `text`. Component `i` continues that state over `i` as 8 little-endian bytes; the 64-bit result
    `h` maps to `2 * h / (2**64 - 1) - 1` in [-1, 1]. The vector is then L2-normalized.

    Args:
        `text` (`str`): The text to embed.
        `dim` (`int`, optional): Vector dimension, at least 1. Defaults to `1536`.
        `seed` (`int`, optional): Hash seed. Defaults to `0`.
    Returns:
        `EmbeddingVector`: A unit-norm vector; equal inputs give equal vectors.
    """
    if dim < 1:
        raise ValueError("dim must be at least 1")
    base = fnv1a_64((seed & _MASK).to_bytes(8, "little") + text.encode("utf-8"))
    states = np.full(dim, base, dtype=np.uint64)
    index = np.arange(dim, dtype=np.uint64)
    prime = np.uint64(FNV_PRIME)
    for k in range(8):
        states ^= (index >> np.uint64(8 * k)) & np.uint64(0xFF)
        states *= prime
    values = states.astype(np.float64) / float(_MASK) * 2.0 - 1.0
    norm = np.linalg.norm(values)
    if norm == 0.0:
        values = np.zeros(dim)
        values[0] = 1.0
    else:
        values = values / norm
    return EmbeddingVector(values, dim)
