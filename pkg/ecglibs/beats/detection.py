# EpyECG/ecglibs/beats/detection.py
"""R-peak detection, amplitude gate and heart rate.

The detector follows the Pan-Tompkins core on an already band-passed signal:
five-point derivative, squaring, 150 ms moving-window integration and an
adaptive threshold with searchback. Candidates are then moved to the local
maximum of the signal within 50 ms and de-duplicated with a 200 ms refractory
period.
"""
# Related third party imports
import numpy as np
from scipy import signal

# Local application/library specific imports
from ecglibs.commons.errors import ArgumentError
from ecglibs.commons.logs import warning_logs


# Durations in seconds
REFRACTORY_S = 0.200
INTEGRATION_S = 0.150
REFINE_S = 0.050

# Missed-beat interval relative to mean RR
SEARCHBACK_RR = 1.66


def integrated_energy(x, sample_rate_hz):
    """Moving-window integration of the squared signal derivative.

    :param x: Band-passed signal.
    :type x: :class:`numpy.ndarray`

    :param sample_rate_hz: Sampling rate.
    :type sample_rate_hz: float

    :return: Integrated energy, same length as input.
    :rtype: :class:`numpy.ndarray`
    """
    # Five-point derivative in units per second
    derivative = np.convolve(x, np.array([1, 2, 0, -2, -1]) / 8., mode='same') * sample_rate_hz

    squared = derivative ** 2

    # Centered window so that energy peaks line up with QRS complexes
    window = max(1, int(round(INTEGRATION_S * sample_rate_hz)))

    mwi = np.convolve(squared, np.ones(window) / window, mode='same')

    return mwi


def adaptive_threshold(mwi, candidates, distance, sample_rate_hz):
    """Classify energy peaks as QRS or noise with running estimates.

    The signal estimate is initialized with the median of the energy maxima of
    consecutive 2 s chunks, the noise estimate with the median energy.

    :param mwi: Integrated energy.
    :type mwi: :class:`numpy.ndarray`

    :param candidates: Indices of energy peaks.
    :type candidates: :class:`numpy.ndarray`

    :param distance: Refractory period in samples.
    :type distance: int

    :param sample_rate_hz: Sampling rate.
    :type sample_rate_hz: float

    :return: Indices of QRS energy peaks.
    :rtype: list[int]
    """
    heights = mwi[candidates]

    # Learning phase
    chunk = int(2 * sample_rate_hz)
    spki = np.median([mwi[i:i + chunk].max() for i in range(0, len(mwi), chunk)])
    npki = np.median(mwi)

    peaks = []

    for c, h in zip(candidates, heights):

        thr1 = npki + 0.25 * (spki - npki)

        if h > thr1:

            # Searchback for a beat missed since last detection
            if len(peaks) > 1:
                rr_mean = np.mean(np.diff(peaks[-9:]))

                if c - peaks[-1] > SEARCHBACK_RR * rr_mean:
                    missed = [(hk, k) for k, hk in zip(candidates, heights)
                              if peaks[-1] + distance <= k <= c - distance
                              and hk > 0.5 * thr1]

                    if missed:
                        hk, k = max(missed)
                        peaks.append(k)
                        spki = 0.25 * hk + 0.75 * spki

            peaks.append(c)
            # Bounded update, isolated artifacts must not mask following beats
            spki = 0.125 * min(h, 2 * spki) + 0.875 * spki

        else:
            npki = 0.125 * h + 0.875 * npki

    return peaks


def refine_peak(x, p, half):
    """Move index uphill until it is the maximum of its own window.

    :param x: Signal.
    :type x: :class:`numpy.ndarray`

    :param p: Initial index.
    :type p: int

    :param half: Half window in samples.
    :type half: int

    :return: Index of local maximum within +/- half.
    :rtype: int
    """
    for _ in range(len(x)):

        lo = max(p - half, 0)
        hi = min(p + half + 1, len(x))

        q = lo + int(np.argmax(x[lo:hi]))

        if q == p:
            break

        p = q

    return p


def detect_r_peaks(rec):
    """Detect R-peaks in a band-passed recording.

    :param rec: Band-passed recording.
    :type rec: :class:`ecglibs.signals.models.RawRecording`

    :return: Strictly increasing indices, at least 200 ms apart, each the signal maximum within 50 ms.
    :rtype: :class:`numpy.ndarray`
    """
    fs = rec.sample_rate_hz
    x = np.asarray(rec.samples, dtype=float)

    empty = np.array([], dtype=int)

    if len(x) < fs:
        warning_logs('recording %s/%s/%s shorter than 1 s, no R-peak detected'
                     % (rec.subject_id, rec.session, rec.condition))
        return empty

    distance = max(1, int(round(REFRACTORY_S * fs)))
    half = max(1, int(round(REFINE_S * fs)))

    # (1) Derivative, squaring, integration
    mwi = integrated_energy(x, fs)

    if not np.any(mwi > 0):
        return empty

    # (2) Energy peaks
    candidates, _ = signal.find_peaks(mwi, distance=distance)

    if candidates.size == 0:
        return empty

    # (3) Adaptive threshold with searchback
    qrs = adaptive_threshold(mwi, candidates, distance, fs)

    # (4) Signal local maximum within +/- 50 ms
    refined = sorted({refine_peak(x, int(p), half) for p in qrs})

    # (5) Refractory period, larger amplitude wins
    peaks = []

    for p in refined:

        if peaks and p - peaks[-1] < distance:

            if x[p] > x[peaks[-1]]:
                peaks[-1] = p

            continue

        peaks.append(p)

    return np.array(peaks, dtype=int)


def remove_amplitude_outliers(peaks, rec, iqr_factor=1.5):
    """Remove R-peaks whose amplitude lies outside interquartile bounds.

    Quartiles are computed with linear interpolation between order statistics.

    :param peaks: R-peak indices.
    :type peaks: :class:`numpy.ndarray`

    :param rec: Recording the peaks were detected in.
    :type rec: :class:`ecglibs.signals.models.RawRecording`

    :param iqr_factor: Factor applied to the interquartile range, defaults to 1.5.
    :type iqr_factor: float, optional

    :return: Retained peaks.
    :rtype: :class:`numpy.ndarray`
    """
    peaks = np.asarray(peaks, dtype=int)

    # Quartiles unreliable
    if len(peaks) < 4:
        return peaks

    amplitudes = np.asarray(rec.samples)[peaks]

    q1, q3 = np.percentile(amplitudes, [25, 75])

    iqr = q3 - q1

    lower = q1 - iqr_factor * iqr
    upper = q3 + iqr_factor * iqr

    keep = (amplitudes >= lower) & (amplitudes <= upper)

    return peaks[keep]


def compute_heart_rates(peaks, sample_rate_hz):
    """Heart rate of each beat from the preceding RR interval.

    :param peaks: R-peak indices, at least two.
    :type peaks: :class:`numpy.ndarray`

    :param sample_rate_hz: Sampling rate.
    :type sample_rate_hz: float

    :raises ArgumentError: If fewer than two peaks.

    :return: Heart rates in bpm, the first peak carries the value of the second.
    :rtype: :class:`numpy.ndarray`
    """
    peaks = np.asarray(peaks)

    if len(peaks) < 2:
        raise ArgumentError('at least 2 peaks are needed to compute heart rates, got %s' % len(peaks))

    rr = np.diff(peaks).astype(float)

    heart_rates = 60. * sample_rate_hz / rr

    heart_rates = np.concatenate([heart_rates[:1], heart_rates])

    return heart_rates
