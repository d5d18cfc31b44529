# EpyECG/ecglibs/augment/resampling.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.beats.models import beat_geometry
from ecglibs.commons.errors import ArgumentError
from ecglibs.commons.logs import warning_logs
from ecglibs.settings import se_beats
from ecglibs.signals.resample import stretch_segment


# Plausible time scale of the ST part
SCALE_MIN = 0.3
SCALE_MAX = 3.0


def augment_beat(beat, t_new, sample_rate_hz=se_beats['sample_rate_hz'], warn=True):
    """Synthesize a beat whose T-peak lies at t_new.

    The beat is split at 250 ms. The PQRS part is kept unchanged. The ST part
    is stretched in time about its first sample so that the T-peak moves from
    `t_peak_rel_r` to `t_new`, then truncated or padded with its final value
    to its original length.

    :param beat: Beat with T-peak set strictly inside the ST part.
    :type beat: :class:`ecglibs.beats.models.BeatTemplate`

    :param t_new: Target T-peak location relative to R-peak.
    :type t_new: int

    :param sample_rate_hz: Sampling rate, defaults to 200.
    :type sample_rate_hz: float, optional

    :param warn: Warn on skipped beats, defaults to `True`.
    :type warn: bool, optional

    :raises ArgumentError: If the T-peak does not lie after the ST part origin.

    :return: Augmented beat, `None` when the time scale is outside [0.3, 3].
    :rtype: :class:`ecglibs.beats.models.BeatTemplate` or NoneType
    """
    geometry = beat_geometry(sample_rate_hz)

    split = geometry['split']
    origin = split - beat.r_index    # ST part origin relative to R-peak, 15 at 200 Hz

    t_old = beat.t_peak_rel_r

    if t_old is None or t_old <= origin or t_new <= origin:
        raise ArgumentError('T-peak locations must exceed %s, got %s -> %s' % (origin, t_old, t_new))

    scale = (t_new - origin) / (t_old - origin)

    if not SCALE_MIN <= scale <= SCALE_MAX:
        if warn:
            warning_logs('beat of %s at %.2f s: ST scale %.3f outside [%s, %s], skipped'
                         % (beat.subject_id, beat.source_time_s, scale, SCALE_MIN, SCALE_MAX))
        return None

    pqrs = beat.samples[:split]
    st = beat.samples[split:]

    st_res = stretch_segment(st, t_old - origin, t_new - origin, out_len=len(st))

    samples = np.concatenate([pqrs, st_res])

    augmented = beat.replace(samples=samples, t_peak_rel_r=t_new, augmented=True)

    return augmented


def thin_evenly(beats, cap):
    """Deterministic subsample of at most cap evenly spaced beats.
    """
    if cap is None or len(beats) <= cap:
        return beats

    idx = np.unique(np.linspace(0, len(beats) - 1, int(cap)).round().astype(int))

    return [beats[i] for i in idx]


def augment_subject(beats, rng_range, max_per_subject=None, sample_rate_hz=se_beats['sample_rate_hz']):
    """Augment every beat of a subject over its T-peak range.

    :param beats: Subject's genuine beats.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param rng_range: Subject's augmentation range.
    :type rng_range: :class:`ecglibs.augment.models.AugmentationRange`

    :param max_per_subject: Cap on augmented beats, defaults to `None` for no cap.
    :type max_per_subject: int or NoneType, optional

    :param sample_rate_hz: Sampling rate, defaults to 200.
    :type sample_rate_hz: float, optional

    :return: Genuine beats followed by one augmented beat per beat and per integer T-peak location in range.
    :rtype: list[:class:`ecglibs.beats.models.BeatTemplate`]
    """
    geometry = beat_geometry(sample_rate_hz)
    origin = geometry['split'] - geometry['r_index']

    augmented = []

    skipped = 0

    for beat in beats:

        if beat.t_peak_rel_r is None or beat.t_peak_rel_r <= origin:
            skipped += len(rng_range)
            continue

        for t_new in rng_range:

            new = augment_beat(beat, t_new, sample_rate_hz, warn=False)

            if new is None:
                skipped += 1
                continue

            augmented.append(new)

    if skipped:
        warning_logs('subject %s: %s augmented beats skipped (implausible ST scale or T-peak at window start)'
                     % (rng_range.subject_id, skipped))

    augmented = thin_evenly(augmented, max_per_subject)

    return list(beats) + augmented


def normalize_st_duration(beats, fit, mean_train_hr, sample_rate_hz=se_beats['sample_rate_hz']):
    """Resample the ST part of every beat to the subject's T-peak at mean training heart rate.

    :param beats: One subject's beats.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param fit: Subject's fit, not degenerate.
    :type fit: :class:`ecglibs.augment.models.SubjectFit`

    :param mean_train_hr: Mean heart rate of the subject's training beats.
    :type mean_train_hr: float

    :param sample_rate_hz: Sampling rate, defaults to 200.
    :type sample_rate_hz: float, optional

    :raises ArgumentError: If fit is degenerate.

    :return: Normalized beats. Beats with an implausible ST scale or a T-peak at the ST part origin are skipped, all of them when the target is not after the origin.
    :rtype: list[:class:`ecglibs.beats.models.BeatTemplate`]
    """
    if fit.degenerate:
        raise ArgumentError('can not normalize subject %s with a degenerate fit' % fit.subject_id)

    geometry = beat_geometry(sample_rate_hz)
    origin = geometry['split'] - geometry['r_index']

    target = int(np.rint(fit.at(mean_train_hr)))

    if target <= origin:
        warning_logs('subject %s: normalized T-peak %s not after ST part origin %s, %s beats skipped'
                     % (fit.subject_id, target, origin, len(beats)))
        return []

    normalized = []

    skipped = 0

    for beat in beats:

        if beat.t_peak_rel_r is None or beat.t_peak_rel_r <= origin:
            skipped += 1
            continue

        new = augment_beat(beat, target, sample_rate_hz, warn=False)

        if new is None:
            skipped += 1
            continue

        normalized.append(new.replace(augmented=beat.augmented))

    if skipped:
        warning_logs('subject %s: %s beats skipped (implausible ST scale or T-peak at window start)'
                     % (fit.subject_id, skipped))

    return normalized
