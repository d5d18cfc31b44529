# EpyECG/ecglibs/evaluation/features.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.augment.resampling import normalize_st_duration
from ecglibs.beats.models import beat_geometry
from ecglibs.commons.errors import ArgumentError
from ecglibs.experts.models import dual_slices
from ecglibs.network.evaluate import model_infer
from ecglibs.settings import se_beats


def backbone_slice(backbone, sample_rate_hz=se_beats['sample_rate_hz']):
    """In-beat slice read by a backbone, from its input length.

    :raises ArgumentError: If input length matches no slice.
    """
    length = beat_geometry(sample_rate_hz)['length']

    for sl in (slice(0, length),) + dual_slices(sample_rate_hz):
        if backbone.input_len == sl.stop - sl.start:
            return sl

    raise ArgumentError('no in-beat slice of length %s' % backbone.input_len)


def pca_project(features, n_components=2):
    """Project features on their first principal components.

    Components are signed so that their largest loading is positive.

    :param features: Feature rows.
    :type features: :class:`numpy.ndarray`

    :param n_components: Number of components, defaults to 2.
    :type n_components: int, optional

    :raises ArgumentError: If there are fewer rows or columns than components.

    :return: Projections, shaped (n, n_components).
    :rtype: :class:`numpy.ndarray`
    """
    F = np.asarray(features, dtype=float)

    if F.ndim != 2 or min(F.shape) < n_components:
        raise ArgumentError('need at least %s rows and columns, got %s' % (n_components, F.shape))

    centered = F - F.mean(axis=0)

    _, _, Vt = np.linalg.svd(centered, full_matrices=False)

    components = Vt[:n_components]

    # Deterministic signs
    signs = np.sign(components[np.arange(n_components), np.argmax(np.abs(components), axis=1)])
    signs[signs == 0] = 1

    projected = centered @ (components * signs[:, np.newaxis]).T

    return projected


def export_features(backbone, beats, normalized=False, fits=None, mean_train_hr=None, n_components=0,
                    sample_rate_hz=se_beats['sample_rate_hz']):
    """Flattened backbone features of beats.

    :param backbone: Trained backbone.
    :type backbone: :class:`ecglibs.network.models.ModelGraph`

    :param beats: Beats to embed.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param normalized: Normalize ST duration of beats first, defaults to `False`.
    :type normalized: bool, optional

    :param fits: Balanced fit by subject, required when normalized.
    :type fits: dict[str, :class:`ecglibs.augment.models.SubjectFit`] or NoneType, optional

    :param mean_train_hr: Mean training heart rate by subject, required when normalized.
    :type mean_train_hr: dict[str, float] or NoneType, optional

    :param n_components: Number of principal components to append, defaults to 0.
    :type n_components: int, optional

    :raises ArgumentError: If normalization data is missing for a subject.

    :return: Header and rows of subject_id, condition and features.
    :rtype: tuple[list[str], list[list]]
    """
    if normalized:
        normalized_beats = []

        for sid in sorted({beat.subject_id for beat in beats}):

            if not fits or sid not in fits or not mean_train_hr or sid not in mean_train_hr:
                raise ArgumentError('no fit or training heart rate for subject %s' % sid)

            subject_beats = [beat for beat in beats if beat.subject_id == sid]

            normalized_beats.extend(normalize_st_duration(subject_beats, fits[sid], mean_train_hr[sid], sample_rate_hz))

        beats = normalized_beats

    sl = backbone_slice(backbone, sample_rate_hz)

    X = np.stack([beat.samples[sl] for beat in beats]) if beats else np.zeros((0, sl.stop - sl.start))

    F = model_infer(backbone, X) if len(X) else np.zeros((0, backbone.layers[-1].d['n']))

    header = ['subject_id', 'condition'] + ['f%s' % i for i in range(F.shape[1])]

    if n_components:
        P = pca_project(F, n_components)
        F = np.concatenate([F, P], axis=1)

        header += ['pc%s' % (i + 1) for i in range(n_components)]

    rows = [[beat.subject_id, beat.condition] + list(f) for beat, f in zip(beats, F)]

    return header, rows
