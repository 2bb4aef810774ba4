"""
The ``K0/K`` quantile of ``R1 - R0``, the best of ``K1`` group one scores minus
the best of ``K0`` group zero scores, when each best is taken over uniform
draws with replacement from the historical scores.

The support of the difference is the implicit matrix ``B[i, j] = s1[i] - s0[j]``
with ``s1`` descending and ``s0`` ascending, so ``B`` decreases along both
indices and the quantile is its smallest entry whose cumulative probability
reaches ``K0/K``. ``B`` is never materialized.
"""
from dataclasses import dataclass

import numpy as np
from django.core.exceptions import ImproperlyConfigured

from fairselect.conf import get_setting
from fairselect.estimation import check_group_sizes
from fairselect.exceptions import ParameterError

NEAR_TIE = 1e-9


class DifferenceLaw:
    """
    The exact law of ``R1 - R0`` for two finite score multisets.

    The ``m``-th smallest group zero atom is the best of ``K0`` draws with
    probability ``(m/n0)^K0 - ((m-1)/n0)^K0``, and given that atom the
    difference is ``<= t`` with probability ``(c/n1)^K1`` where ``c`` counts the
    group one atoms ``s1`` with ``s1 - s0 <= t``.
    """

    def __init__(self, scores1, scores0, K0, K1):
        self.K0, self.K1 = check_group_sizes(K0, K1)
        self.s1 = np.sort(np.asarray(scores1, dtype=float))
        self.s0 = np.sort(np.asarray(scores0, dtype=float))
        if self.s1.shape[0] < 1 or self.s0.shape[0] < 1:
            raise ParameterError("both score multisets must be nonempty")
        self.n1, self.n0 = self.s1.shape[0], self.s0.shape[0]
        levels = (np.arange(self.n0 + 1) / self.n0) ** self.K0
        self.mass0 = np.diff(levels)
        self.target = self.K0 / (self.K0 + self.K1)

    def counts(self, t):
        """For every group zero atom, how many ``s1`` satisfy ``s1 - s0 <= t``."""

        counts = np.searchsorted(self.s1, self.s0 + t, side="right")
        # rounding in s0 + t can put the split one atom off from the
        # float differences s1 - s0 that make up the support
        while True:
            low = counts > 0
            low[low] = self.s1[counts[low] - 1] - self.s0[low] > t
            if not low.any():
                break
            counts[low] -= 1
        while True:
            high = counts < self.n1
            high[high] = self.s1[counts[high]] - self.s0[high] <= t
            if not high.any():
                break
            counts[high] += 1
        return counts

    def _mass(self, counts):
        return float(np.dot(self.mass0, (counts / self.n1) ** self.K1))

    def cdf(self, t):
        return self._mass(self.counts(t))

    def excess(self, counts):
        """``P(R1 - R0 <= t) - K0/K`` for the ``counts`` of some ``t``."""

        return self._mass(counts) - self.target

    def reaches(self, t, counts=None):
        """Whether ``P(R1 - R0 <= t) >= K0/K``."""

        counts = self.counts(t) if counts is None else counts
        excess = self.excess(counts)
        if abs(excess) > NEAR_TIE:
            return excess > 0
        return self._reaches_exactly(counts)

    def _reaches_exactly(self, counts):
        K0, K1, n0, n1 = self.K0, self.K1, self.n0, self.n1
        total = sum(
            (m ** K0 - (m - 1) ** K0) * int(count) ** K1
            for m, count in enumerate(counts, start=1)
        )
        return (K0 + K1) * total >= K0 * n0 ** K0 * n1 ** K1

    def smallest_atom(self):
        return float(self.s1[0] - self.s0[-1])

    def largest_atom(self):
        return float(self.s1[-1] - self.s0[0])

    def next_atom(self, t, counts=None):
        """The smallest support point strictly above ``t``."""

        counts = self.counts(t) if counts is None else counts
        open_ = counts < self.n1
        return float(np.min(self.s1[counts[open_]] - self.s0[open_]))

    def atom_at_or_below(self, t, counts=None):
        """The largest support point ``<= t``."""

        counts = self.counts(t) if counts is None else counts
        closed = counts > 0
        return float(np.max(self.s1[counts[closed] - 1] - self.s0[closed]))

    def atoms(self):
        """Every support point, ascending with repeats. Only meant for small laws."""

        return np.sort(np.subtract.outer(self.s1, self.s0).ravel())


def _interpolate(lo, lo_excess, hi, hi_excess):
    """The zero of the line through ``(lo, lo_excess)`` and ``(hi, hi_excess)``."""

    spread = hi_excess - lo_excess
    fraction = -lo_excess / spread if spread > 0 else 0.5
    return lo + (hi - lo) * min(max(fraction, 0.0), 1.0)


def search_quantile(law):
    """
    Interpolating search over the implicit support.

    ``hi`` is always a support point reaching the target and ``lo`` a value
    that does not; each round either proves the next support point above
    ``lo`` is the answer or moves one end of the bracket to the point where
    the cdf, interpolated linearly, crosses the target. An end kept twice in
    a row has its weight halved (Illinois rule) so both ends keep moving.
    """

    lo = law.smallest_atom()
    lo_counts = law.counts(lo)
    if law.reaches(lo, lo_counts):
        return lo
    hi = law.largest_atom()
    hi_excess = 1.0 - law.target
    lo_weight = hi_weight = 1.0
    last_moved = None
    while True:
        candidate = law.next_atom(lo, lo_counts)
        if candidate >= hi:
            return hi
        candidate_counts = law.counts(candidate)
        if law.reaches(candidate, candidate_counts):
            return candidate
        lo, lo_counts = candidate, candidate_counts
        lo_excess = law.excess(lo_counts)
        mid = _interpolate(lo, lo_weight * lo_excess, hi, hi_weight * hi_excess)
        if not lo < mid < hi:
            continue
        mid_counts = law.counts(mid)
        if law.reaches(mid, mid_counts):
            hi = law.atom_at_or_below(mid, mid_counts)
            hi_excess = law.excess(mid_counts)
            hi_weight = 1.0
            if last_moved == "hi":
                lo_weight /= 2.0
            last_moved = "hi"
        else:
            lo, lo_counts = mid, mid_counts
            lo_weight = 1.0
            if last_moved == "lo":
                hi_weight /= 2.0
            last_moved = "lo"


def frontier_quantile(law):
    """
    The staircase walk over ``B``.

    Walking the group zero atoms upward, the deepest group one row still
    reaching the target can only move up, so each column resumes where the
    previous one stopped.
    """

    s1_desc = law.s1[::-1]
    row = law.n1 - 1
    best = None
    for column in range(law.n0):
        while row >= 0 and not law.reaches(s1_desc[row] - law.s0[column]):
            row -= 1
        if row < 0:
            break
        value = float(s1_desc[row] - law.s0[column])
        if best is None or value < best:
            best = value
    return best


QUANTILE_SEARCHES = {
    "search": search_quantile,
    "frontier": frontier_quantile,
}


def difference_quantile(scores1, scores0, K0, K1, method=None):
    """The exact ``K0/K`` quantile of ``R1 - R0`` for two score multisets."""

    method = method or get_setting("EXACT_QUANTILE_METHOD")
    try:
        search = QUANTILE_SEARCHES[method]
    except KeyError:
        raise ImproperlyConfigured(
            "Unknown exact quantile method '%s', choose from %s"
            % (method, ", ".join(sorted(QUANTILE_SEARCHES)))
        )
    return search(DifferenceLaw(scores1, scores0, K0, K1))


def exact_quantile(selector, K0, K1, method=None):
    return difference_quantile(
        selector.scores_z1_desc, selector.scores_z0_asc, K0, K1, method=method
    )


def bootstrap_quantile(selector, K0, K1, reps, rng_stream):
    """
    Estimates the quantile from ``reps`` simulated differences.

    Each simulated best is the score at the best of ``K_z`` uniform index
    picks, and the result is the smallest simulated value whose cumulative
    fraction reaches ``K0/K``.
    """

    K0, K1 = check_group_sizes(K0, K1)
    if isinstance(reps, bool) or int(reps) != reps or reps < 1:
        raise ParameterError("reps must be a positive integer, got %r" % (reps,))
    reps = int(reps)
    generator = rng_stream.generator
    picks1 = generator.integers(0, selector.n1, size=(reps, K1))
    picks0 = generator.integers(0, selector.n0, size=(reps, K0))
    best1 = selector.scores_z1_desc[picks1.min(axis=1)]
    best0 = selector.scores_z0_asc[picks0.max(axis=1)]
    differences = np.sort(best1 - best0)
    return float(differences[quantile_rank(reps, K0, K0 + K1) - 1])


@dataclass(frozen=True)
class QuantileMode:
    """How the fair policy estimates its threshold: ``exact`` or ``bootstrap:REPS``."""

    kind: str = "exact"
    reps: int = 0

    def __post_init__(self):
        if self.kind not in ("exact", "bootstrap"):
            raise ParameterError("unknown quantile mode '%s'" % self.kind)
        if self.kind == "bootstrap" and self.reps < 1:
            raise ParameterError("bootstrap quantiles need a positive number of reps")

    def __str__(self):
        if self.kind == "bootstrap":
            return "bootstrap:%d" % self.reps
        return "exact"

    @classmethod
    def parse(cls, text):
        text = str(text).strip().lower()
        if text == "exact":
            return cls()
        kind, _, reps = text.partition(":")
        if kind == "bootstrap" and reps.strip().isdigit():
            return cls("bootstrap", int(reps))
        raise ParameterError(
            "quantile mode must be 'exact' or 'bootstrap:REPS', got '%s'" % text
        )

    @property
    def needs_stream(self):
        return self.kind == "bootstrap"

    def estimate(self, selector, K0, K1, rng_stream=None):
        if self.kind == "exact":
            return exact_quantile(selector, K0, K1)
        if rng_stream is None:
            raise ParameterError("bootstrap quantiles need a random stream")
        return bootstrap_quantile(selector, K0, K1, self.reps, rng_stream)


def quantile_rank(count, K0, K):
    """1 based rank of the ``K0/K`` quantile among ``count`` sorted values."""

    return max(1, -(-count * K0 // K))
