# EpyECG/ecglibs/signals/models.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import ArgumentError, ConfigurationError
from ecglibs.settings import se_filter


SESSIONS = ('S1', 'S2', 'S3', 'S4', 'S5', 'S6')

CONDITIONS = ('sit', 'stand', 'exercise', 'supine', 'tripod')


class RawRecording:
    """
    Definition of a single-channel ECG recording prototype.

    :param subject_id: Subject identifier.
    :type subject_id: str

    :param session: Session in :data:`SESSIONS`.
    :type session: str

    :param condition: Condition in :data:`CONDITIONS`.
    :type condition: str

    :param samples: Amplitudes in device units.
    :type samples: list[float] or :class:`numpy.ndarray`

    :param sample_rate_hz: Sampling rate, defaults to 200.
    :type sample_rate_hz: float, optional

    :raises ArgumentError: If samples are empty, sampling rate is not positive, or session/condition is unknown.
    """

    def __init__(self,
                 subject_id,
                 session,
                 condition,
                 samples,
                 sample_rate_hz=200.0):
        """Initialize instance variable attributes.
        """
        samples = np.array(samples, dtype=float)

        if samples.ndim != 1 or samples.size == 0:
            raise ArgumentError('recording samples must be a non-empty 1-D sequence')

        if not sample_rate_hz > 0:
            raise ArgumentError('sample_rate_hz must be positive, got %s' % sample_rate_hz)

        if session not in SESSIONS:
            raise ArgumentError('unknown session %r, expected one of %s' % (session, SESSIONS))

        if condition not in CONDITIONS:
            raise ArgumentError('unknown condition %r, expected one of %s' % (condition, CONDITIONS))

        samples.setflags(write=False)

        self.subject_id = str(subject_id)
        self.session = session
        self.condition = condition
        self.sample_rate_hz = float(sample_rate_hz)
        self.samples = samples

        return None

    @property
    def duration_s(self):
        """Recording duration in seconds.
        """
        return len(self.samples) / self.sample_rate_hz

    def replace(self, samples):
        """New recording with same metadata and other samples.

        :param samples: Amplitudes.
        :type samples: :class:`numpy.ndarray`

        :return: Recording.
        :rtype: :class:`ecglibs.signals.models.RawRecording`
        """
        recording = RawRecording(self.subject_id,
                                 self.session,
                                 self.condition,
                                 samples,
                                 self.sample_rate_hz)

        return recording


class FilterSpec:
    """
    Definition of a Butterworth band-pass filter specification.

    :param order: Order of the low-pass prototype, defaults to 4.
    :type order: int, optional

    :param low_cut_hz: High-pass edge, defaults to 0.5 Hz.
    :type low_cut_hz: float, optional

    :param high_cut_hz: Low-pass edge, defaults to 40 Hz.
    :type high_cut_hz: float, optional

    :param zero_phase: Forward-backward filtering, defaults to `True`.
    :type zero_phase: bool, optional
    """

    def __init__(self,
                 order=se_filter['order'],
                 low_cut_hz=se_filter['low_cut_hz'],
                 high_cut_hz=se_filter['high_cut_hz'],
                 zero_phase=se_filter['zero_phase']):
        """Initialize instance variable attributes.
        """
        if int(order) != order or order < 1:
            raise ConfigurationError('order must be a positive integer, got %s' % order,
                                     key='filter.order')

        self.order = int(order)
        self.low_cut_hz = float(low_cut_hz)
        self.high_cut_hz = float(high_cut_hz)
        self.zero_phase = bool(zero_phase)

        return None

    def check(self, sample_rate_hz):
        """Check cutoffs against sampling rate.

        :param sample_rate_hz: Sampling rate of the signal to filter.
        :type sample_rate_hz: float

        :raises ConfigurationError: Unless 0 < low_cut_hz < high_cut_hz < sample_rate_hz / 2.
        """
        nyquist = sample_rate_hz / 2

        if not 0 < self.low_cut_hz < self.high_cut_hz < nyquist:
            raise ConfigurationError('cutoffs must satisfy 0 < %s < %s < %s (Nyquist)'
                                     % (self.low_cut_hz, self.high_cut_hz, nyquist),
                                     key='filter.low_cut_hz/high_cut_hz')

        return None
