# EpyECG/ecglibs/augment/models.py
# Local application/library specific imports
from ecglibs.commons.errors import ArgumentError, ConfigurationError
from ecglibs.settings import se_augment


FIT_KINDS = ('balanced', 'unbalanced', 'global')

# Last T-peak location keeping two trailing samples in the beat at 200 Hz
T_MAX_LIMIT = 73


class SubjectFit:
    """
    Definition of a linear T-peak location against heart rate fit.

    :param subject_id: Subject identifier, or `'*'` for a global fit.
    :type subject_id: str

    :param slope: Samples per bpm.
    :type slope: float

    :param intercept: Samples.
    :type intercept: float

    :param kind: Weighting in :data:`FIT_KINDS`.
    :type kind: str

    :param degenerate: Whether the fit lacked heart rate spread, defaults to `False`.
    :type degenerate: bool, optional
    """

    def __init__(self, subject_id, slope, intercept, kind, degenerate=False):
        """Initialize instance variable attributes.
        """
        if kind not in FIT_KINDS:
            raise ArgumentError('unknown fit kind %r' % kind)

        self.subject_id = str(subject_id)
        self.slope = float(slope)
        self.intercept = float(intercept)
        self.kind = kind
        self.degenerate = bool(degenerate)

        return None

    def at(self, heart_rate_bpm):
        """Fitted T-peak location at heart rate.
        """
        return self.slope * heart_rate_bpm + self.intercept


class AugmentationRange:
    """
    Definition of the T-peak interval augmented beats are synthesized over.

    :param subject_id: Subject identifier.
    :type subject_id: str

    :param t_min: Lowest T-peak location relative to R-peak, samples.
    :type t_min: int

    :param t_max: Highest T-peak location relative to R-peak, samples.
    :type t_max: int
    """

    def __init__(self, subject_id, t_min, t_max):
        """Initialize instance variable attributes.
        """
        self.subject_id = str(subject_id)
        self.t_min = int(t_min)
        self.t_max = int(t_max)

        return None

    def __len__(self):
        return max(0, self.t_max - self.t_min + 1)

    def __iter__(self):
        return iter(range(self.t_min, self.t_max + 1))

    def check(self, t_p_min=se_augment['t_p_min']):
        """Check range invariants.

        :raises ArgumentError: Unless t_p_min <= t_min <= t_max <= 73.
        """
        if not t_p_min <= self.t_min <= self.t_max <= T_MAX_LIMIT:
            raise ArgumentError('range of %s must satisfy %s <= %s <= %s <= %s'
                                % (self.subject_id, t_p_min, self.t_min, self.t_max, T_MAX_LIMIT))

        return None


class AugmentationConstants:
    """
    Definition of range selection constants.

    :param hr_limit: Heart rate the fits are extrapolated to, defaults to 140 bpm.
    :type hr_limit: float, optional

    :param t_g_min: Global fit T-peak location at hr_limit, defaults to 29 samples.
    :type t_g_min: int, optional

    :param t_p_min: Physiological lowest T-peak location, defaults to 25 samples.
    :type t_p_min: int, optional

    :raises ConfigurationError: If hr_limit is not positive or t_p_min > t_g_min.
    """

    def __init__(self,
                 hr_limit=se_augment['hr_limit'],
                 t_g_min=se_augment['t_g_min'],
                 t_p_min=se_augment['t_p_min']):
        """Initialize instance variable attributes.
        """
        if not hr_limit > 0:
            raise ConfigurationError('must be positive, got %s' % hr_limit, key='augment.hr_limit')

        if not t_p_min <= t_g_min:
            raise ConfigurationError('t_p_min %s > t_g_min %s' % (t_p_min, t_g_min),
                                     key='augment.t_p_min')

        self.hr_limit = float(hr_limit)
        self.t_g_min = t_g_min
        self.t_p_min = int(t_p_min)

        return None
