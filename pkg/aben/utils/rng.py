"""Randomness streams for key material and benchmark workloads.

Every operation that samples takes an explicit stream. ``ChaChaRandom`` is
seeded and reproducible; ``system_random`` is for unseeded CLI use.
"""

from __future__ import annotations

import hashlib
import random
from typing import Union

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms

Seed = Union[int, str, bytes]

_BLOCK = 4096


class ChaChaRandom(random.Random):
    """``random.Random`` drawing its bits from a ChaCha20 keystream.

    The key is the SHA-256 digest of the seed; the keystream is consumed
    sequentially, so a stream must not be shared between threads.
    """

    def __init__(self, seed: Seed = 0) -> None:
        self._buffer = b""
        self._encryptor = None
        super().__init__(seed)

    def seed(self, a: Seed = 0, version: int = 2) -> None:
        key = hashlib.sha256(_seed_bytes(a)).digest()
        cipher = Cipher(algorithms.ChaCha20(key, b"\x00" * 16), mode=None)
        self._encryptor = cipher.encryptor()
        self._buffer = b""

    def _take(self, count: int) -> bytes:
        while len(self._buffer) < count:
            self._buffer += self._encryptor.update(b"\x00" * _BLOCK)
        chunk, self._buffer = self._buffer[:count], self._buffer[count:]
        return chunk

    def getrandbits(self, k: int) -> int:
        if k < 0:
            raise ValueError("number of bits must be non-negative")
        if k == 0:
            return 0
        value = int.from_bytes(self._take((k + 7) // 8), "big")
        return value >> ((8 - k % 8) % 8)

    def random(self) -> float:
        return self.getrandbits(53) * (2.0 ** -53)

    def randbytes(self, n: int) -> bytes:
        return self._take(n)

    def getstate(self):
        raise NotImplementedError("ChaChaRandom state cannot be exported")

    def setstate(self, state) -> None:
        raise NotImplementedError("ChaChaRandom state cannot be imported")


def system_random() -> random.Random:
    return random.SystemRandom()


def random_scalar(rng: random.Random, r: int, *, nonzero: bool = False) -> int:
    if nonzero:
        return 1 + rng.randrange(r - 1)
    return rng.randrange(r)


def _seed_bytes(seed: Seed) -> bytes:
    if isinstance(seed, bytes):
        return seed
    if isinstance(seed, int):
        return seed.to_bytes((seed.bit_length() + 8) // 8, "big", signed=True)
    return str(seed).encode("utf-8")
