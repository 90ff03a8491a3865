"""Deterministic, splittable random streams.

Every randomized operation in satlab takes an RngHandle instead of a live
generator, so a run is a pure function of the handle. The underlying
algorithm is fixed: PCG64 seeded through numpy's SeedSequence with
(master_seed, stream_index, *path) as the spawn key, which gives
platform-independent, scheduling-independent draws.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RngHandle:
    """Name of one reproducible random stream.

    `stream(i)` addresses sibling top-level streams (one per trial);
    `child(i)` derives nested sub-streams (one per randomized stage inside
    an operation). Equal handles always produce identical sequences.
    """

    master_seed: int
    stream_index: int = 0
    path: tuple[int, ...] = ()

    def _sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(
            entropy=self.master_seed,
            spawn_key=(self.stream_index, *self.path),
        )

    def generator(self) -> np.random.Generator:
        """Fresh PCG64 generator for this stream id."""
        return np.random.Generator(np.random.PCG64(self._sequence()))

    def stream(self, index: int) -> "RngHandle":
        return RngHandle(self.master_seed, index)

    def child(self, index: int) -> "RngHandle":
        return RngHandle(self.master_seed, self.stream_index, self.path + (index,))

    def fingerprint(self) -> int:
        """Stable 64-bit digest of this stream id, recorded in outputs."""
        return int(self._sequence().generate_state(1, np.uint64)[0])
