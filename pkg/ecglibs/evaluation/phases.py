# EpyECG/ecglibs/evaluation/phases.py
# Local application/library specific imports
from ecglibs.beats.models import beat_geometry
from ecglibs.beats.pipeline import preprocess_recording
from ecglibs.commons.logs import warning_logs
from ecglibs.settings import se_beats
from ecglibs.signals.models import RawRecording


# Initial recovery lasts one minute
PHASE_BOUNDARY_S = 60.0

# Shortest recording with two phases
MIN_DURATION_S = 61.0


def phase_boundary(sample_rate_hz=se_beats['sample_rate_hz']):
    """Sample index where the second recovery phase starts.

    :param sample_rate_hz: Sampling rate, defaults to 200.
    :type sample_rate_hz: float, optional

    :return: 12000 at 200 Hz.
    :rtype: int
    """
    return int(round(PHASE_BOUNDARY_S * sample_rate_hz))


def split_exercise_phases(recording, duration_s=None, sample_rate_hz=se_beats['sample_rate_hz']):
    """Partition beats of one post-exercise recording into recovery phases.

    Beats with onset before 60 s belong to the initial phase, the others to
    the late phase. A recording shorter than 61 s puts every beat in the
    initial phase.

    :param recording: Post-exercise recording, or its beats.
    :type recording: :class:`ecglibs.signals.models.RawRecording` or list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param duration_s: Recording duration for beats input, defaults to `None` which estimates it from the last beat.
    :type duration_s: float or NoneType, optional

    :param sample_rate_hz: Sampling rate for beats input, defaults to 200.
    :type sample_rate_hz: float, optional

    :return: Initial and late phase beats.
    :rtype: tuple[list[:class:`ecglibs.beats.models.BeatTemplate`]]
    """
    if isinstance(recording, RawRecording):
        beats, _ = preprocess_recording(recording)
        duration_s = recording.duration_s
        sample_rate_hz = recording.sample_rate_hz

    else:
        beats = list(recording)

    if duration_s is None:
        length_s = beat_geometry(sample_rate_hz)['length'] / sample_rate_hz
        duration_s = max((beat.source_time_s for beat in beats), default=0.) + length_s

    if duration_s < MIN_DURATION_S:
        warning_logs('exercise recording of %.1f s shorter than %.0f s, all beats in initial phase'
                     % (duration_s, MIN_DURATION_S))
        return beats, []

    # Half-open boundary
    phase_1 = [beat for beat in beats if beat.source_time_s < PHASE_BOUNDARY_S]
    phase_2 = [beat for beat in beats if beat.source_time_s >= PHASE_BOUNDARY_S]

    return phase_1, phase_2
