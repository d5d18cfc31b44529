# EpyECG/ecglibs/synthetic/generator.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.beats.models import beat_geometry
from ecglibs.commons.errors import (
    ArgumentError,
    ConfigurationError,
)
from ecglibs.evaluation.models import SplitPlan
from ecglibs.settings import se_corpus
from ecglibs.signals.models import RawRecording
from ecglibs.synthetic.models import (
    SubjectParams,
    WAVES,
)


# Time constant of heart rate recovery after exercise
EXERCISE_TAU_S = 50.0

# Bounds of subject parameters drawn by the corpus generator
PARAM_BOUNDS = {
    'P': [(0.10, 0.16), (-165., -145.), (18., 24.)],
    'Q': [(-0.14, -0.08), (-34., -28.), (7., 10.)],
    'R': [(0.95, 1.20), (0., 0.), (9., 12.)],
    'S': [(-0.26, -0.14), (30., 40.), (8., 12.)],
    'T': [(0.25, 0.55), (0., 0.), (16., 30.)],
    't_slope': (-1.8, -1.0),
    't_offset': (300., 345.),
    'hr_rest_low': (58., 70.),
    'hr_rest_span': (12., 20.),
    'hr_active_low': (135., 145.),
    'hr_active_span': (5., 10.),
}

# Part of resting heart rate range used by each rest condition
REST_PROFILES = {
    'supine': (0.0, 0.3),
    'sit': (0.0, 0.4),
    'tripod': (0.3, 0.7),
    'stand': (0.6, 1.0),
}

# Train and test recordings of Auxiliary subjects
AUXILIARY_PLAN = {
    'S1': ['sit'],
    'S2': ['stand'],
    'S3': ['exercise'],
}

# Highest template correlation between two subjects
MAX_CORRELATION = 0.98

MAX_ATTEMPTS = 10000


def heart_rate_profile(params, condition, rng):
    """Heart rate trajectory of a recording.

    :param params: Subject parameters.
    :type params: :class:`ecglibs.synthetic.models.SubjectParams`

    :param condition: One of sit, stand, supine, tripod, exercise.
    :type condition: str

    :param rng: Pseudo-random number generator.
    :type rng: :class:`numpy.random.Generator`

    :return: Heart rate as a function of time in seconds.
    :rtype: function
    """
    lo, hi = params.hr_rest

    if condition == 'exercise':
        hr_0 = rng.uniform(*params.hr_active)

        # Exponential recovery toward top of resting range
        return lambda t: hi + (hr_0 - hi) * np.exp(-t / EXERCISE_TAU_S)

    a, b = REST_PROFILES[condition]

    hr = rng.uniform(lo + a * (hi - lo), lo + b * (hi - lo))

    return lambda t: hr


def beat_waveform(params, t, heart_rate_bpm):
    """Sum of Gaussian bumps of one beat.

    :param params: Subject parameters.
    :type params: :class:`ecglibs.synthetic.models.SubjectParams`

    :param t: Time relative to R-peak, in ms.
    :type t: :class:`numpy.ndarray`

    :param heart_rate_bpm: Heart rate of beat.
    :type heart_rate_bpm: float

    :return: Amplitudes.
    :rtype: :class:`numpy.ndarray`
    """
    x = np.zeros_like(t, dtype=float)

    for w in WAVES:
        amplitude, center, width = params.waves[w]

        if w == 'T':
            center = params.t_center_ms(heart_rate_bpm)
            width = params.t_width_ms(heart_rate_bpm)

        x += amplitude * np.exp(-0.5 * ((t - center) / width) ** 2)

    return x


def generate_recording(params, condition, duration_s, snr_db=se_corpus['snr_db'], session='S1',
                       sample_rate_hz=se_corpus['sample_rate_hz'], rng=None, subject_id='synthetic'):
    """Synthesize a recording with ground truth.

    :param params: Subject parameters.
    :type params: :class:`ecglibs.synthetic.models.SubjectParams`

    :param condition: One of sit, stand, supine, tripod, exercise.
    :type condition: str

    :param duration_s: Recording duration, at least 5 s.
    :type duration_s: float

    :param snr_db: Signal to noise ratio of additive Gaussian noise, `inf` for none, defaults to 20.
    :type snr_db: float, optional

    :param session: Session identifier, defaults to 'S1'.
    :type session: str, optional

    :param sample_rate_hz: Sampling rate, defaults to 200.
    :type sample_rate_hz: float, optional

    :param rng: Pseudo-random number generator, defaults to `None` which seeds from subject parameters.
    :type rng: :class:`numpy.random.Generator` or NoneType, optional

    :param subject_id: Subject identifier, defaults to 'synthetic'.
    :type subject_id: str, optional

    :raises ArgumentError: If duration is shorter than 5 s or condition is unknown.

    :return: Recording and ground truth (R-peak and T center samples, heart rate per beat, clean signal).
    :rtype: tuple[:class:`ecglibs.signals.models.RawRecording`, dict[str, :class:`numpy.ndarray`]]
    """
    if not duration_s >= 5:
        raise ArgumentError('duration_s must be at least 5, got %s' % duration_s)

    if condition not in REST_PROFILES and condition != 'exercise':
        raise ArgumentError('unknown condition %r' % condition)

    params.check()

    rng = rng if rng is not None else np.random.default_rng(params.rng_seed)

    fs = sample_rate_hz
    n = int(round(duration_s * fs))

    hr_at = heart_rate_profile(params, condition, rng)

    # (1) R-peak times from integrated heart rate, first beat after a partial cycle
    r_times, heart_rates = [], []

    t = rng.uniform(0.2, 0.2 + 60. / hr_at(0.))

    while t < duration_s:
        hr = float(hr_at(t))

        r_times.append(t)
        heart_rates.append(hr)

        t += 60. / hr

    # (2) Gaussian bumps within +-600 ms of each R-peak
    clean = np.zeros(n)
    half = int(round(0.6 * fs))

    for t_r, hr in zip(r_times, heart_rates):

        center = int(round(t_r * fs))

        lo, hi = max(center - half, 0), min(center + half + 1, n)

        t_ms = (np.arange(lo, hi) / fs - t_r) * 1000.

        clean[lo:hi] += beat_waveform(params, t_ms, hr)

    # (3) Additive white noise at requested SNR
    if np.isfinite(snr_db):
        noise_std = np.sqrt(np.mean(clean ** 2) / 10 ** (snr_db / 10.))
        noise = rng.normal(0., noise_std, n)
    else:
        noise = np.zeros(n)

    rec = RawRecording(subject_id, session, condition, clean + noise, fs)

    r_samples = np.rint(np.array(r_times) * fs).astype(int)

    t_centers = np.array([params.t_center_ms(hr) for hr in heart_rates])

    ground_truth = {
        'r_samples': r_samples,
        't_samples': r_samples + np.rint(t_centers * fs / 1000.).astype(int),
        'heart_rate_bpm': np.array(heart_rates),
        'clean': clean,
        'noise': noise,
    }

    return rec, ground_truth


def draw_params(rng, rng_seed):
    """Draw subject parameters within :data:`PARAM_BOUNDS`.
    """
    waves = {w: tuple(rng.uniform(lo, hi) if hi > lo else lo for lo, hi in PARAM_BOUNDS[w]) for w in WAVES}

    hr_lo = rng.uniform(*PARAM_BOUNDS['hr_rest_low'])
    hr_active_lo = rng.uniform(*PARAM_BOUNDS['hr_active_low'])

    params = SubjectParams(
        waves=waves,
        t_slope=rng.uniform(*PARAM_BOUNDS['t_slope']),
        t_offset=rng.uniform(*PARAM_BOUNDS['t_offset']),
        hr_rest=(hr_lo, hr_lo + rng.uniform(*PARAM_BOUNDS['hr_rest_span'])),
        hr_active=(hr_active_lo, hr_active_lo + rng.uniform(*PARAM_BOUNDS['hr_active_span'])),
        rng_seed=rng_seed,
    )

    return params


def rest_template(params, sample_rate_hz=se_corpus['sample_rate_hz']):
    """Noise-free beat at mid resting heart rate, sampled on the beat window.
    """
    geometry = beat_geometry(sample_rate_hz)

    t_ms = (np.arange(geometry['length']) - geometry['r_index']) * 1000. / sample_rate_hz

    return beat_waveform(params, t_ms, np.mean(params.hr_rest))


def normalized_vector(params):
    """Subject parameters scaled to [0, 1] by their bounds.
    """
    bounds = [b for w in WAVES for b in PARAM_BOUNDS[w]] + [PARAM_BOUNDS['t_slope'], PARAM_BOUNDS['t_offset']]

    vector = [(v - lo) / (hi - lo) if hi > lo else 0. for v, (lo, hi) in zip(params.as_vector(), bounds)]

    return np.array(vector)


def draw_subjects(n, seed, min_distance=0.5, sample_rate_hz=se_corpus['sample_rate_hz']):
    """Draw separated subjects by rejection sampling.

    A candidate is rejected if its scaled parameters lie closer than
    min_distance to an accepted subject, or if its resting template
    correlates above 0.98 with one.

    :raises ConfigurationError: If separation can not be reached.

    :return: Subject parameters.
    :rtype: list[:class:`ecglibs.synthetic.models.SubjectParams`]
    """
    rng = np.random.default_rng(seed)

    subjects, vectors, templates = [], [], []

    attempts = 0

    while len(subjects) < n:

        attempts += 1

        if attempts > MAX_ATTEMPTS:
            raise ConfigurationError('can not separate %s subjects' % n, key='corpus.n_subjects')

        params = draw_params(rng, rng_seed=int(rng.integers(2**31)))

        vector = normalized_vector(params)
        template = rest_template(params, sample_rate_hz)

        if any(np.linalg.norm(vector - v) < min_distance for v in vectors):
            continue

        if any(np.corrcoef(template, other)[0, 1] > MAX_CORRELATION for other in templates):
            continue

        subjects.append(params)
        vectors.append(vector)
        templates.append(template)

    return subjects


def generate_corpus(n_subjects=se_corpus['n_subjects'],
                    n_auxiliary=se_corpus['n_auxiliary'],
                    seed=0,
                    plan=None,
                    se_corpus=se_corpus):
    """Synthesize Target and Auxiliary recordings.

    Target subjects get every recording of the split plan. Auxiliary subjects
    get a sitting, a standing and a post-exercise recording.

    :param n_subjects: Number of Target subjects, at least 2.
    :type n_subjects: int, optional

    :param n_auxiliary: Number of Auxiliary subjects, defaults to 6.
    :type n_auxiliary: int, optional

    :param seed: Seed of the corpus, defaults to 0.
    :type seed: int, optional

    :param plan: Split plan, defaults to `None` for defaults.
    :type plan: :class:`ecglibs.evaluation.models.SplitPlan` or NoneType, optional

    :raises ArgumentError: If n_subjects < 2 or n_auxiliary < 0.

    :return: Recordings with their ground truth, roster and subject parameters.
    :rtype: tuple[list[tuple], dict[str, str], dict[str, :class:`ecglibs.synthetic.models.SubjectParams`]]
    """
    if not int(n_subjects) >= 2:
        raise ArgumentError('n_subjects must be at least 2, got %s' % n_subjects)

    if not int(n_auxiliary) >= 0:
        raise ArgumentError('n_auxiliary must be non-negative, got %s' % n_auxiliary)

    plan = plan or SplitPlan()

    fs = se_corpus['sample_rate_hz']

    subjects = draw_subjects(int(n_subjects) + int(n_auxiliary), seed, sample_rate_hz=fs)

    ids = ['T%02d' % (i + 1) for i in range(int(n_subjects))]
    ids += ['A%02d' % (i + 1) for i in range(int(n_auxiliary))]

    roster = {sid: ('target' if sid.startswith('T') else 'auxiliary') for sid in ids}

    target_plan = {}

    for sessions in [plan.train, plan.test]:
        for session, conditions in sessions.items():
            target_plan[session] = list(conditions)

    recordings = []
    params_by_id = {}

    for sid, params in zip(ids, subjects):

        params_by_id[sid] = params

        subject_plan = target_plan if roster[sid] == 'target' else AUXILIARY_PLAN

        k = 0

        for session in sorted(subject_plan):
            for condition in subject_plan[session]:

                duration_s = se_corpus['exercise_duration_s'] if condition == 'exercise' else se_corpus['rest_duration_s']

                rng = np.random.default_rng([params.rng_seed, k])
                k += 1

                rec, ground_truth = generate_recording(params, condition, duration_s, se_corpus['snr_db'],
                                                       session, fs, rng, sid)

                recordings.append((rec, ground_truth))

    return recordings, roster, params_by_id
