# EpyECG/ecglibs/beats/fiducials.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.beats.models import beat_geometry
from ecglibs.commons.logs import warning_logs
from ecglibs.settings import se_beats


# Group size below which statistics are unreliable
MIN_GROUP_SIZE = 10


def detect_t_peak(beat, sample_rate_hz=se_beats['sample_rate_hz']):
    """T-peak as maximum amplitude within the last 300 ms of the beat.

    :param beat: Heartbeat.
    :type beat: :class:`ecglibs.beats.models.BeatTemplate`

    :param sample_rate_hz: Sampling rate, defaults to 200.
    :type sample_rate_hz: float, optional

    :return: T-peak location relative to R-peak, ties broken toward the earlier index.
    :rtype: int
    """
    geometry = beat_geometry(sample_rate_hz)

    window = beat.samples[geometry['t_start']:]

    # np.argmax returns the first occurrence
    index = geometry['t_start'] + int(np.argmax(window))

    t_peak_rel_r = index - beat.r_index

    return t_peak_rel_r


def annotate_t_peaks(beats, sample_rate_hz=se_beats['sample_rate_hz']):
    """New beats with T-peak set.
    """
    annotated = [beat.replace(t_peak_rel_r=detect_t_peak(beat, sample_rate_hz)) for beat in beats]

    return annotated


def zscore_stats(t_peaks, name):
    """Mean and standard deviation of T-peak locations.

    :param t_peaks: T-peak locations of the statistics group.
    :type t_peaks: :class:`numpy.ndarray`

    :param name: Group name for logs.
    :type name: str

    :return: Mean and standard deviation, `None` when the gate is disabled.
    :rtype: tuple[float] or NoneType
    """
    if len(t_peaks) < MIN_GROUP_SIZE:
        warning_logs('z-score group %s has %s beats, fewer than %s: no gating'
                     % (name, len(t_peaks), MIN_GROUP_SIZE))
        return None

    mu = float(np.mean(t_peaks))
    sigma = float(np.std(t_peaks))

    # Degenerate spread disables the gate
    if sigma == 0:
        return None

    return mu, sigma


def zscore_gate_t_peaks(groups, threshold=se_beats['zscore_threshold'], reference=None):
    """Remove beats whose T-peak location is an outlier within its group.

    Statistics are computed once per group before removal. A group may draw
    its statistics from another set of beats through reference, as exercise
    beats do from the auxiliary subjects.

    :param groups: Beats to gate by group name.
    :type groups: dict[str, list[:class:`ecglibs.beats.models.BeatTemplate`]]

    :param threshold: Absolute z-score above which beats are removed, defaults to 3.
    :type threshold: float, optional

    :param reference: Beats providing the statistics of some groups, defaults to `None` which uses the groups themselves.
    :type reference: dict[str, list[:class:`ecglibs.beats.models.BeatTemplate`]] or NoneType, optional

    :return: Gated beats by group name.
    :rtype: dict[str, list[:class:`ecglibs.beats.models.BeatTemplate`]]
    """
    reference = reference or {}

    gated = {}

    for name, beats in groups.items():

        stats_beats = reference.get(name, beats)

        t_peaks = np.array([beat.t_peak_rel_r for beat in stats_beats], dtype=float)

        stats = zscore_stats(t_peaks, name)

        if stats is None:
            gated[name] = list(beats)
            continue

        mu, sigma = stats

        gated[name] = [beat for beat in beats
                       if abs((beat.t_peak_rel_r - mu) / sigma) <= threshold]

    return gated
