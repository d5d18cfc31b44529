# EpyECG/ecglibs/augment/fitting.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.augment.models import SubjectFit
from ecglibs.commons.errors import ArgumentError


# Positions contributing to the fits
POSITIONS = ('sit', 'stand')


def fit_weights(beats, weighting):
    """Per-beat weights of the least-squares fit.

    Balanced weighting gives each position the same total weight: a beat of a
    position with N beats weighs 1/N.

    :param beats: Beats to fit.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param weighting: One of `balanced`, `unbalanced`.
    :type weighting: str

    :return: Weights.
    :rtype: :class:`numpy.ndarray`
    """
    if weighting == 'unbalanced':
        return np.ones(len(beats))

    if weighting != 'balanced':
        raise ArgumentError('unknown weighting %r' % weighting)

    conditions = np.array([beat.condition for beat in beats])

    counts = {c: np.count_nonzero(conditions == c) for c in set(conditions)}

    weights = np.array([1. / counts[c] for c in conditions])

    return weights


def fit_tpeak_vs_hr(beats, weighting='balanced', subject_id=None, kind=None):
    """Weighted least-squares line of T-peak location against heart rate.

    :param beats: Subject's sit and stand training beats with T-peak set.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param weighting: One of `balanced`, `unbalanced`, defaults to `balanced`.
    :type weighting: str, optional

    :param subject_id: Identifier of the fit, defaults to `None` which takes the first beat's subject.
    :type subject_id: str or NoneType, optional

    :param kind: Kind of the fit, defaults to `None` which equals weighting.
    :type kind: str or NoneType, optional

    :return: Fit, marked degenerate with fewer than two distinct heart rates.
    :rtype: :class:`ecglibs.augment.models.SubjectFit`
    """
    kind = kind or weighting

    if subject_id is None:
        subject_id = beats[0].subject_id if beats else '?'

    hr = np.array([beat.heart_rate_bpm for beat in beats], dtype=float)
    t = np.array([beat.t_peak_rel_r for beat in beats], dtype=float)

    if len(np.unique(hr)) < 2:
        intercept = float(np.mean(t)) if len(t) else 0.
        return SubjectFit(subject_id, 0., intercept, kind, degenerate=True)

    w = fit_weights(beats, weighting)

    # np.polyfit weights unsquared residuals
    slope, intercept = np.polyfit(hr, t, 1, w=np.sqrt(w))

    return SubjectFit(subject_id, slope, intercept, kind)


def fit_subjects(beats):
    """Balanced and unbalanced fits of every subject.

    :param beats: Training beats of all subjects, only sit and stand beats are used.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :return: Fits by subject identifier and kind.
    :rtype: dict[str, dict[str, :class:`ecglibs.augment.models.SubjectFit`]]
    """
    by_subject = {}

    for beat in beats:
        if beat.condition in POSITIONS:
            by_subject.setdefault(beat.subject_id, []).append(beat)

    fits = {}

    for subject_id in sorted(by_subject):

        subject_beats = by_subject[subject_id]

        fits[subject_id] = {
            weighting: fit_tpeak_vs_hr(subject_beats, weighting, subject_id)
            for weighting in ('balanced', 'unbalanced')
        }

    return fits


def fit_global(beats):
    """Balanced fit over pooled training beats of all subjects.

    :param beats: Training beats of all Target subjects.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :return: Global fit.
    :rtype: :class:`ecglibs.augment.models.SubjectFit`
    """
    beats = [beat for beat in beats if beat.condition in POSITIONS]

    fit = fit_tpeak_vs_hr(beats, 'balanced', subject_id='*', kind='global')

    return fit
