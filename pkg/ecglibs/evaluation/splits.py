# EpyECG/ecglibs/evaluation/splits.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import ArgumentError
from ecglibs.commons.logs import warning_logs
from ecglibs.evaluation.models import SplitPlan


def stratified_split(labels, val_fraction, rng):
    """Split sample indices into training and validation partitions, per label.

    Each label contributes ``round(val_fraction * n)`` samples to validation,
    at least one and at most ``n - 1``, so that every label appears in both
    partitions. Labels with a single sample stay in training.

    :param labels: Sample labels.
    :type labels: list or :class:`numpy.ndarray`

    :param val_fraction: Fraction of samples held out for validation, in (0, 1).
    :type val_fraction: float

    :param rng: Pseudo-random number generator.
    :type rng: :class:`numpy.random.Generator`

    :raises ArgumentError: If val_fraction is not in (0, 1).

    :return: Sorted training and validation indices.
    :rtype: tuple[:class:`numpy.ndarray`]
    """
    if not 0 < val_fraction < 1:
        raise ArgumentError('val_fraction must be in (0, 1), got %s' % val_fraction)

    labels = np.asarray(labels)

    train_idx, val_idx = [], []

    for label in np.unique(labels):

        idx = rng.permutation(np.flatnonzero(labels == label))

        if len(idx) < 2:
            warning_logs('label %s has %s sample, none held out for validation' % (label, len(idx)))
            train_idx.append(idx)
            continue

        n_val = int(np.rint(val_fraction * len(idx)))
        n_val = min(max(n_val, 1), len(idx) - 1)

        val_idx.append(idx[:n_val])
        train_idx.append(idx[n_val:])

    train_idx = np.sort(np.concatenate(train_idx)) if train_idx else np.array([], dtype=int)
    val_idx = np.sort(np.concatenate(val_idx)) if val_idx else np.array([], dtype=int)

    return train_idx, val_idx


def split_recordings(beats, plan=None):
    """Partition beats into training and test recordings by session and condition.

    Beats of recordings in neither partition are left out.

    :param beats: Beats of all recordings.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param plan: Split plan, defaults to `None` for defaults.
    :type plan: :class:`ecglibs.evaluation.models.SplitPlan` or NoneType, optional

    :return: Training beats and test beats, in input order.
    :rtype: tuple[list[:class:`ecglibs.beats.models.BeatTemplate`]]
    """
    plan = plan or SplitPlan()

    train = [beat for beat in beats if plan.is_train(beat.session, beat.condition)]
    test = [beat for beat in beats if plan.is_test(beat.session, beat.condition)]

    return train, test
