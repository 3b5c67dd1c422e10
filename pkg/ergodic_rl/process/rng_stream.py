from dataclasses import dataclass
from typing import Union

from numpy.random import Generator, SeedSequence, default_rng

MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class RngStream(object):
    """
    A reproducible random stream identified by a 64-bit seed and a stream id.

    The generator is numpy's default PCG64 seeded from
    SeedSequence(entropy=seed, spawn_key=(stream_id,)), so distinct stream ids
    under one seed never share state and identical (seed, stream_id) pairs
    reproduce identical draws.
    """
    seed: int
    stream_id: int = 0

    def __post_init__(self):

        if not 0 <= self.seed < MAX_SEED:
            raise ValueError(f'seed must be in [0, 2**64), got {self.seed}')
        if self.stream_id < 0:
            raise ValueError(
                f'stream_id must be non-negative, got {self.stream_id}'
            )

    def generator(self) -> Generator:
        """
        Return a fresh Generator positioned at the start of the stream.
        """
        return default_rng(
            SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        )

    def child(self, stream_id: int) -> 'RngStream':

        return RngStream(seed=self.seed, stream_id=stream_id)


RandomSource = Union[RngStream, Generator]


def as_generator(source: RandomSource) -> Generator:
    """
    Return a Generator for an RngStream, or the Generator itself.
    """
    if isinstance(source, RngStream):
        return source.generator()
    if isinstance(source, Generator):
        return source
    raise TypeError(
        f'rng must be an RngStream or numpy Generator, got {type(source)}'
    )
