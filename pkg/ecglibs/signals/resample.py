# EpyECG/ecglibs/signals/resample.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import ArgumentError


def linear_resample(segment, target_len):
    """Resample a segment to a new length by linear interpolation.

    Output sample k sits at input index k * (n - 1) / (target_len - 1), so both
    endpoints are preserved exactly.

    :param segment: Input samples, at least two.
    :type segment: list[float] or :class:`numpy.ndarray`

    :param target_len: Output length, at least two.
    :type target_len: int

    :raises ArgumentError: If target_len < 2 or segment has fewer than two samples.

    :return: Resampled segment.
    :rtype: :class:`numpy.ndarray`
    """
    segment = np.asarray(segment, dtype=float)

    if segment.ndim != 1 or len(segment) < 2:
        raise ArgumentError('segment must hold at least 2 samples')

    if int(target_len) != target_len or target_len < 2:
        raise ArgumentError('target_len must be an integer >= 2, got %s' % target_len)

    n = len(segment)
    target_len = int(target_len)

    if target_len == n:
        return segment.copy()

    # Uniformly rescaled index grid, exact at integer products
    grid = (np.arange(target_len) * float(n - 1)) / float(target_len - 1)

    resampled = np.interp(grid, np.arange(n), segment)

    return resampled


def stretch_segment(segment, anchor_in, anchor_out, out_len=None):
    """Stretch a segment in time about its first sample.

    The time axis is scaled by ``anchor_out / anchor_in`` so that input index
    `anchor_in` lands exactly on output index `anchor_out`. Output sample j
    takes the input value at index ``j * anchor_in / anchor_out``, linearly
    interpolated. Content stretched past the end is truncated; a compressed
    segment is padded with its final value.

    :param segment: Input samples, at least two.
    :type segment: list[float] or :class:`numpy.ndarray`

    :param anchor_in: Input index of the anchor, > 0.
    :type anchor_in: int

    :param anchor_out: Output index of the anchor, > 0.
    :type anchor_out: int

    :param out_len: Output length, defaults to `None` which keeps input length.
    :type out_len: int or NoneType, optional

    :raises ArgumentError: If anchors are not positive or segment too short.

    :return: Stretched segment.
    :rtype: :class:`numpy.ndarray`
    """
    segment = np.asarray(segment, dtype=float)

    if segment.ndim != 1 or len(segment) < 2:
        raise ArgumentError('segment must hold at least 2 samples')

    if not (anchor_in > 0 and anchor_out > 0):
        raise ArgumentError('anchors must be positive, got %s -> %s' % (anchor_in, anchor_out))

    n = len(segment)
    out_len = n if out_len is None else int(out_len)

    # Input positions of output samples, exact at integer products
    grid = (np.arange(out_len) * float(anchor_in)) / float(anchor_out)

    # np.interp holds the final value beyond the last index
    stretched = np.interp(grid, np.arange(n), segment)

    return stretched
