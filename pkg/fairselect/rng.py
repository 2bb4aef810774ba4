import zlib

import numpy as np

from fairselect.exceptions import ParameterError


class RngStream:
    """
    A reproducible source of randomness keyed by ``(seed, replication, purpose)``.

    The key is hashed into a ``SeedSequence`` driving a counter based Philox
    generator, so a stream only depends on its key and never on how many other
    streams were created before it, or on which thread uses it.

    A stream must not be shared between concurrent tasks.
    """

    def __init__(self, seed, replication=0, purpose="default"):
        seed, replication = int(seed), int(replication)
        if seed < 0 or replication < 0:
            raise ParameterError(
                "seed and replication must be nonnegative, got %d and %d"
                % (seed, replication)
            )
        self.key = (seed, replication, purpose)
        entropy = [seed, replication, zlib.crc32(purpose.encode("utf-8"))]
        self.generator = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy))
        )

    def __repr__(self):
        return "<RngStream seed=%d replication=%d purpose=%r>" % self.key


def derive_stream(seed, replication=0, purpose="default"):
    return RngStream(seed, replication, purpose)
