# EpyECG/ecglibs/beats/models.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import ArgumentError, ConfigurationError
from ecglibs.settings import se_beats


def beat_geometry(sample_rate_hz=se_beats['sample_rate_hz']):
    """Sample offsets of the heartbeat window at a given sampling rate.

    A beat spans 175 ms before and 375 ms after its R-peak. The T-peak is
    searched within the last 300 ms and augmentation splits the beat at 250 ms.

    :param sample_rate_hz: Sampling rate, defaults to 200.
    :type sample_rate_hz: float, optional

    :return: Beat length, R-peak index, T-peak search start and split index.
    :rtype: dict[str, int]
    """
    fs = sample_rate_hz

    geometry = {
        'length': int(round(0.550 * fs)),    # 110 at 200 Hz
        'r_index': int(round(0.175 * fs)),   # 35
        'split': int(round(0.250 * fs)),     # 50
    }

    geometry['t_start'] = geometry['length'] - int(round(0.300 * fs))    # 50

    return geometry


class BeatTemplate:
    """
    Definition of a fixed-length heartbeat prototype.

    :param samples: Beat amplitudes, 550 ms of signal.
    :type samples: list[float] or :class:`numpy.ndarray`

    :param r_index: Offset of R-peak within the beat.
    :type r_index: int

    :param heart_rate_bpm: Heart rate of the beat.
    :type heart_rate_bpm: float

    :param subject_id: Subject identifier.
    :type subject_id: str

    :param session: Recording session.
    :type session: str

    :param condition: Recording condition.
    :type condition: str

    :param source_time_s: Onset time of the first constituent beat in the recording.
    :type source_time_s: float

    :param t_peak_rel_r: T-peak location relative to R-peak, defaults to `None` when not yet detected.
    :type t_peak_rel_r: int or NoneType, optional

    :param augmented: Whether the beat was synthesized by augmentation, defaults to `False`.
    :type augmented: bool, optional
    """

    def __init__(self,
                 samples,
                 r_index,
                 heart_rate_bpm,
                 subject_id,
                 session,
                 condition,
                 source_time_s,
                 t_peak_rel_r=None,
                 augmented=False):
        """Initialize instance variable attributes.
        """
        self.samples = np.array(samples, dtype=float)
        self.r_index = int(r_index)
        self.heart_rate_bpm = float(heart_rate_bpm)
        self.subject_id = str(subject_id)
        self.session = session
        self.condition = condition
        self.source_time_s = float(source_time_s)
        self.t_peak_rel_r = None if t_peak_rel_r is None else int(t_peak_rel_r)
        self.augmented = bool(augmented)

        return None

    def replace(self, **changes):
        """Copy of beat with some attributes changed.

        :return: New beat.
        :rtype: :class:`ecglibs.beats.models.BeatTemplate`
        """
        attributes = {
            'samples': self.samples,
            'r_index': self.r_index,
            'heart_rate_bpm': self.heart_rate_bpm,
            'subject_id': self.subject_id,
            'session': self.session,
            'condition': self.condition,
            'source_time_s': self.source_time_s,
            't_peak_rel_r': self.t_peak_rel_r,
            'augmented': self.augmented,
        }

        attributes.update(changes)

        return BeatTemplate(**attributes)

    def check(self, sample_rate_hz=se_beats['sample_rate_hz']):
        """Check beat invariants.

        :param sample_rate_hz: Sampling rate of the source recording.
        :type sample_rate_hz: float, optional

        :raises ArgumentError: If any invariant is violated.
        """
        geometry = beat_geometry(sample_rate_hz)

        if len(self.samples) != geometry['length']:
            raise ArgumentError('beat length %s != %s' % (len(self.samples), geometry['length']))

        if self.r_index != geometry['r_index']:
            raise ArgumentError('beat r_index %s != %s' % (self.r_index, geometry['r_index']))

        if not self.heart_rate_bpm > 0:
            raise ArgumentError('heart rate must be positive, got %s' % self.heart_rate_bpm)

        if self.t_peak_rel_r is not None:
            lo = geometry['t_start'] - geometry['r_index']
            hi = geometry['length'] - geometry['r_index']

            if not lo <= self.t_peak_rel_r < hi:
                raise ArgumentError('t_peak_rel_r %s outside [%s, %s)' % (self.t_peak_rel_r, lo, hi))

        return None


class DetectionConfig:
    """
    Definition of heartbeat extraction settings.

    :param averaging_window_W: Sliding average window, defaults to 10.
    :type averaging_window_W: int, optional

    :param zscore_threshold: T-peak z-score gate, defaults to 3.
    :type zscore_threshold: float, optional

    :param iqr_factor: R-peak amplitude gate factor, defaults to 1.5.
    :type iqr_factor: float, optional

    :param zscore_per_subject: Rest-state statistics per subject instead of pooled, defaults to `False`.
    :type zscore_per_subject: bool, optional

    :raises ConfigurationError: If a value is not positive.
    """

    def __init__(self,
                 averaging_window_W=se_beats['averaging_window_W'],
                 zscore_threshold=se_beats['zscore_threshold'],
                 iqr_factor=se_beats['iqr_factor'],
                 zscore_per_subject=se_beats['zscore_per_subject']):
        """Initialize instance variable attributes.
        """
        if int(averaging_window_W) != averaging_window_W or averaging_window_W < 1:
            raise ConfigurationError('must be an integer >= 1, got %s' % averaging_window_W,
                                     key='beats.averaging_window_W')

        if not zscore_threshold > 0:
            raise ConfigurationError('must be positive, got %s' % zscore_threshold,
                                     key='beats.zscore_threshold')

        if not iqr_factor > 0:
            raise ConfigurationError('must be positive, got %s' % iqr_factor,
                                     key='beats.iqr_factor')

        self.averaging_window_W = int(averaging_window_W)
        self.zscore_threshold = float(zscore_threshold)
        self.iqr_factor = float(iqr_factor)
        self.zscore_per_subject = bool(zscore_per_subject)

        return None


class SegmentationReport:
    """
    Counts of beats along the extraction of one recording.
    """

    def __init__(self):
        """Initialize instance variable attributes.

        :ivar detected: R-peaks found by the detector.
        :vartype detected: int

        :ivar gated: R-peaks removed by the amplitude gate.
        :vartype gated: int

        :ivar dropped_boundary: Beats dropped for lack of context at recording edges.
        :vartype dropped_boundary: int

        :ivar segmented: Beats segmented.
        :vartype segmented: int

        :ivar averaged: Beats output by the sliding average.
        :vartype averaged: int
        """
        self.detected = 0
        self.gated = 0
        self.dropped_boundary = 0
        self.segmented = 0
        self.averaged = 0

        return None

    def as_dict(self):
        """Counts as dictionary.
        """
        return dict(vars(self))
