# EpyECG/ecglibs/synthetic/models.py
# Local application/library specific imports
from ecglibs.commons.errors import ConfigurationError


WAVES = ('P', 'Q', 'R', 'S', 'T')

# T-peak search window relative to R-peak
T_WINDOW_MS = (75.0, 375.0)

# Heart rate of reference for T center offset
HR_REFERENCE = 60.0

# Lowest time scale of the T-wave width
T_WIDTH_SCALE_MIN = 0.3


class SubjectParams:
    """
    Definition of a synthetic subject prototype. Each wave is a Gaussian bump.

    The T-wave center moves linearly with heart rate:
    ``t_offset + t_slope * (HR - 60)`` milliseconds after the R-peak. The
    T-wave width follows the time scale of the interval between 75 ms and
    the T center, so a faster beat has an earlier and narrower T-wave.

    :param waves: Amplitude, center relative to R-peak (ms) and width (ms) for each of P, Q, R, S, T. The T center is unused, the T width applies at 60 bpm.
    :type waves: dict[str, tuple[float]]

    :param t_slope: T center change per bpm, in ms, negative.
    :type t_slope: float

    :param t_offset: T center at 60 bpm, in ms.
    :type t_offset: float

    :param hr_rest: Lowest and highest resting heart rate.
    :type hr_rest: tuple[float]

    :param hr_active: Lowest and highest heart rate right after exercise.
    :type hr_active: tuple[float]

    :param rng_seed: Seed of subject's recordings.
    :type rng_seed: int

    :raises ConfigurationError: If R is not the dominant wave, t_slope is not negative, heart rate ranges are invalid or the resting T center leaves the T-peak window.
    """

    def __init__(self,
                 waves,
                 t_slope,
                 t_offset,
                 hr_rest,
                 hr_active,
                 rng_seed=0):
        """Initialize instance variable attributes.
        """
        missing = set(WAVES) - set(waves)

        if missing:
            raise ConfigurationError('missing waves %s' % sorted(missing), key='corpus.waves')

        self.waves = {w: tuple(float(v) for v in waves[w]) for w in WAVES}
        self.t_slope = float(t_slope)
        self.t_offset = float(t_offset)
        self.hr_rest = tuple(float(v) for v in hr_rest)
        self.hr_active = tuple(float(v) for v in hr_active)
        self.rng_seed = int(rng_seed)

        self.check()

        return None

    def check(self):
        """Check subject invariants.

        :raises ConfigurationError: If any invariant is violated.
        """
        r_amplitude = abs(self.waves['R'][0])

        for w in WAVES:
            amplitude, _, width = self.waves[w]

            if w != 'R' and not abs(amplitude) < r_amplitude:
                raise ConfigurationError('%s amplitude %s not below R amplitude %s'
                                         % (w, amplitude, r_amplitude), key='corpus.waves')

            if not width > 0:
                raise ConfigurationError('%s width must be positive' % w, key='corpus.waves')

        if not self.t_slope < 0:
            raise ConfigurationError('must be negative, got %s' % self.t_slope, key='corpus.t_slope')

        for key, (lo, hi) in [('corpus.hr_rest', self.hr_rest), ('corpus.hr_active', self.hr_active)]:
            if not 0 < lo <= hi:
                raise ConfigurationError('invalid range [%s, %s]' % (lo, hi), key=key)

        for hr in self.hr_rest:
            center = self.t_center_ms(hr)

            if not T_WINDOW_MS[0] <= center <= T_WINDOW_MS[1]:
                raise ConfigurationError('T center %.1f ms at %s bpm outside %s'
                                         % (center, hr, T_WINDOW_MS), key='corpus.t_offset')

        return None

    def t_center_ms(self, heart_rate_bpm):
        """T-wave center relative to R-peak, in ms.
        """
        return self.t_offset + self.t_slope * (heart_rate_bpm - HR_REFERENCE)

    def t_width_ms(self, heart_rate_bpm):
        """T-wave width, in ms.
        """
        width = self.waves['T'][2]

        reference = self.t_offset - T_WINDOW_MS[0]

        if reference <= 0:
            return width

        scale = (self.t_center_ms(heart_rate_bpm) - T_WINDOW_MS[0]) / reference

        return width * max(scale, T_WIDTH_SCALE_MIN)

    def as_vector(self):
        """Flat parameter vector used for inter-subject separation.
        """
        vector = [v for w in WAVES for v in self.waves[w]]
        vector += [self.t_slope, self.t_offset]

        return vector
