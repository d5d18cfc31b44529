# EpyECG/ecglibs/augment/ranges.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.augment.models import (
    AugmentationConstants,
    AugmentationRange,
    T_MAX_LIMIT,
)
from ecglibs.commons.errors import ConfigurationError
from ecglibs.commons.logs import warning_logs
from ecglibs.settings import se_augment


def select_range(fits,
                 consts=None,
                 standing_tpeaks=(),
                 all_tpeaks=(),
                 t_max_source=se_augment['t_max_source'],
                 subject_id=None):
    """Augmentation range of one subject.

    The lower bound is the balanced or unbalanced fit extrapolated to
    `hr_limit`, whichever lies closer to `t_g_min` (balanced on ties), and not
    below `t_p_min`. Degenerate fits fall back to `t_g_min`. The upper bound is
    the median T-peak location of standing beats, or of all beats.

    :param fits: Balanced and unbalanced fits of the subject.
    :type fits: dict[str, :class:`ecglibs.augment.models.SubjectFit`]

    :param consts: Range constants, defaults to `None` for defaults.
    :type consts: :class:`ecglibs.augment.models.AugmentationConstants` or NoneType, optional

    :param standing_tpeaks: T-peak locations of the subject's standing training beats.
    :type standing_tpeaks: list[int], optional

    :param all_tpeaks: T-peak locations of all the subject's training beats.
    :type all_tpeaks: list[int], optional

    :param t_max_source: One of `standing`, `all`, defaults to `standing`.
    :type t_max_source: str, optional

    :param subject_id: Subject identifier, defaults to `None` which takes it from fits.
    :type subject_id: str or NoneType, optional

    :return: Range satisfying t_p_min <= t_min <= t_max <= 73.
    :rtype: :class:`ecglibs.augment.models.AugmentationRange`
    """
    consts = consts or AugmentationConstants()

    if t_max_source not in ('standing', 'all'):
        raise ConfigurationError('must be standing or all, got %r' % t_max_source,
                                 key='augment.t_max_source')

    balanced, unbalanced = fits['balanced'], fits['unbalanced']

    subject_id = subject_id or balanced.subject_id

    # (1) T-peak locations at heart rate limit
    if balanced.degenerate or unbalanced.degenerate:
        t_b = t_ub = consts.t_g_min
    else:
        t_b = balanced.at(consts.hr_limit)
        t_ub = unbalanced.at(consts.hr_limit)

    # (2) Closest to global fit, balanced on ties
    if (t_b - consts.t_g_min) ** 2 <= (t_ub - consts.t_g_min) ** 2:
        t_min = t_b
    else:
        t_min = t_ub

    t_min = max(int(np.rint(t_min)), consts.t_p_min)
    t_min = min(t_min, T_MAX_LIMIT)

    # (3) Upper bound from median T-peak location
    source = list(standing_tpeaks) if t_max_source == 'standing' else list(all_tpeaks)

    if not source and t_max_source == 'standing':
        warning_logs('subject %s has no standing beats, t_max from all beats' % subject_id)
        source = list(all_tpeaks)

    if source:
        t_max = int(np.rint(np.median(source)))
    else:
        warning_logs('subject %s has no training beats, range reduced to t_min' % subject_id)
        t_max = t_min

    t_max = min(t_max, T_MAX_LIMIT)
    t_max = max(t_max, t_min)

    return AugmentationRange(subject_id, t_min, t_max)


def select_ranges(fits, beats, consts=None, t_max_source=se_augment['t_max_source']):
    """Augmentation ranges of every fitted subject.

    :param fits: Fits by subject, see :func:`ecglibs.augment.fitting.fit_subjects`.
    :type fits: dict[str, dict[str, :class:`ecglibs.augment.models.SubjectFit`]]

    :param beats: Training beats of all subjects.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param consts: Range constants, defaults to `None` for defaults.
    :type consts: :class:`ecglibs.augment.models.AugmentationConstants` or NoneType, optional

    :param t_max_source: One of `standing`, `all`, defaults to `standing`.
    :type t_max_source: str, optional

    :return: Ranges by subject.
    :rtype: dict[str, :class:`ecglibs.augment.models.AugmentationRange`]
    """
    ranges = {}

    for subject_id, subject_fits in fits.items():

        subject_beats = [beat for beat in beats if beat.subject_id == subject_id]

        standing = [beat.t_peak_rel_r for beat in subject_beats if beat.condition == 'stand']
        every = [beat.t_peak_rel_r for beat in subject_beats]

        ranges[subject_id] = select_range(subject_fits, consts, standing, every,
                                          t_max_source, subject_id)

    return ranges


def uniform_range(subject_id, bounds=se_augment['uniform_range']):
    """Range shared by all subjects for the augmented CNN reference.

    :param subject_id: Subject identifier.
    :type subject_id: str

    :param bounds: Lowest and highest T-peak locations, defaults to [25, 73].
    :type bounds: list[int], optional

    :return: Range with upper bound clamped to 73.
    :rtype: :class:`ecglibs.augment.models.AugmentationRange`
    """
    t_min, t_max = int(bounds[0]), int(bounds[1])

    if t_max > T_MAX_LIMIT:
        warning_logs('uniform range upper bound %s clamped to %s' % (t_max, T_MAX_LIMIT))
        t_max = T_MAX_LIMIT

    return AugmentationRange(subject_id, t_min, t_max)
