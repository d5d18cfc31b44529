# EpyECG/ecglibs/beats/segmentation.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.beats.models import BeatTemplate, beat_geometry
from ecglibs.commons.errors import ArgumentError
from ecglibs.commons.logs import warning_logs


def segment_beats(rec, peaks, heart_rates, report=None):
    """Cut fixed-length heartbeats around R-peaks.

    Beats lacking 175 ms of signal before or 375 ms after their R-peak are
    dropped and counted in report.

    :param rec: Band-passed recording.
    :type rec: :class:`ecglibs.signals.models.RawRecording`

    :param peaks: R-peak indices.
    :type peaks: :class:`numpy.ndarray`

    :param heart_rates: Heart rate of each peak.
    :type heart_rates: :class:`numpy.ndarray`

    :param report: Counts to update, defaults to `None`.
    :type report: :class:`ecglibs.beats.models.SegmentationReport` or NoneType, optional

    :return: Beats with T-peak unset.
    :rtype: list[:class:`ecglibs.beats.models.BeatTemplate`]
    """
    if len(peaks) != len(heart_rates):
        raise ArgumentError('%s peaks for %s heart rates' % (len(peaks), len(heart_rates)))

    fs = rec.sample_rate_hz
    geometry = beat_geometry(fs)

    x = rec.samples

    beats = []

    for p, hr in zip(peaks, heart_rates):

        start = int(p) - geometry['r_index']
        end = start + geometry['length']

        # Boundary beats are dropped, not padded
        if start < 0 or end > len(x):
            if report is not None:
                report.dropped_boundary += 1
            continue

        beat = BeatTemplate(samples=x[start:end],
                            r_index=geometry['r_index'],
                            heart_rate_bpm=hr,
                            subject_id=rec.subject_id,
                            session=rec.session,
                            condition=rec.condition,
                            source_time_s=start / fs)

        beats.append(beat)

    if report is not None:
        report.segmented += len(beats)

    return beats


def average_beats(beats, W):
    """Sliding average of consecutive beats with stride one.

    Averaging W beats improves SNR by about sqrt(W) for uncorrelated noise.
    Averaged beats keep the metadata and onset of their first constituent.

    :param beats: Time-ordered beats of one recording.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param W: Window size.
    :type W: int

    :raises ArgumentError: If W < 1.

    :return: max(0, n - W + 1) averaged beats.
    :rtype: list[:class:`ecglibs.beats.models.BeatTemplate`]
    """
    if int(W) != W or W < 1:
        raise ArgumentError('averaging window must be an integer >= 1, got %s' % W)

    W = int(W)

    if len(beats) < W:
        where = '%s/%s/%s' % (beats[0].subject_id, beats[0].session, beats[0].condition) if beats else 'recording'
        warning_logs('%s has %s beats, fewer than averaging window %s' % (where, len(beats), W))
        return []

    X = np.stack([beat.samples for beat in beats])                  # (n, L)
    hr = np.array([beat.heart_rate_bpm for beat in beats])          # (n,)

    # Windows along beats axis
    Xw = np.lib.stride_tricks.sliding_window_view(X, W, axis=0)     # (n-W+1, L, W)
    hrw = np.lib.stride_tricks.sliding_window_view(hr, W)           # (n-W+1, W)

    X_mean = Xw.mean(axis=-1)
    hr_mean = hrw.mean(axis=-1)

    averaged = [beats[i].replace(samples=X_mean[i], heart_rate_bpm=hr_mean[i])
                for i in range(len(X_mean))]

    return averaged
