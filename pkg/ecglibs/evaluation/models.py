# EpyECG/ecglibs/evaluation/models.py
# Standard library imports
from fractions import Fraction

# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import ConfigurationError
from ecglibs.commons.metrics import compute_fir
from ecglibs.settings import se_split
from ecglibs.signals.models import CONDITIONS, SESSIONS


ABLATIONS = (
    'DE-PADA',
    'DE-PADA\\DE',
    'DE-PADA\\PA',
    'DE-PADA\\DA',
    'SCR',
    'ACR',
)

REPORT_CONDITIONS = (
    'sit',
    'exercise_phase_1',
    'exercise_phase_2',
    'supine',
    'tripod',
)


class SplitPlan:
    """
    Definition of train and test recordings of the Target set.

    :param train: Conditions by training session, defaults to :data:`ecglibs.settings.se_split`.
    :type train: dict[str, list[str]], optional

    :param test: Conditions by test session, defaults to :data:`ecglibs.settings.se_split`.
    :type test: dict[str, list[str]], optional

    :param val_fraction: Fraction of training beats held out per subject for validation, defaults to 0.2.
    :type val_fraction: float, optional

    :raises ConfigurationError: If a session appears in both train and test, or values are unknown.
    """

    def __init__(self,
                 train=se_split['train'],
                 test=se_split['test'],
                 val_fraction=se_split['val_fraction']):
        """Initialize instance variable attributes.
        """
        for key, sessions in [('split.train', train), ('split.test', test)]:
            for session, conditions in sessions.items():

                if session not in SESSIONS:
                    raise ConfigurationError('unknown session %r' % session, key=key)

                unknown = set(conditions) - set(CONDITIONS)

                if unknown:
                    raise ConfigurationError('unknown conditions %s' % sorted(unknown), key=key)

        shared = set(train) & set(test)

        if shared:
            raise ConfigurationError('sessions %s both in train and test' % sorted(shared),
                                     key='split')

        if not 0 < val_fraction < 1:
            raise ConfigurationError('must be in (0, 1), got %s' % val_fraction,
                                     key='split.val_fraction')

        self.train = {k: list(v) for k, v in train.items()}
        self.test = {k: list(v) for k, v in test.items()}
        self.val_fraction = float(val_fraction)

        return None

    def is_train(self, session, condition):
        """Whether a recording belongs to the training partition.
        """
        return condition in self.train.get(session, ())

    def is_test(self, session, condition):
        """Whether a recording belongs to the test partition.
        """
        return condition in self.test.get(session, ())


class EvalReport:
    """
    Definition of a closed-set identification report over repeated runs.

    Per-run identification rates are exact fractions. Means and standard
    deviations (population) are computed over the runs where the condition
    was present.

    :param ablation_id: Configuration in :data:`ABLATIONS`.
    :type ablation_id: str

    :param classifier_augmented: Whether Target beats were augmented for the classifier.
    :type classifier_augmented: bool
    """

    def __init__(self, ablation_id, classifier_augmented):
        """Initialize instance variable attributes.

        :ivar idr: Identification rate of each run by condition, `None` when absent.
        :vartype idr: dict[str, list[:class:`fractions.Fraction` or NoneType]]
        """
        if ablation_id not in ABLATIONS:
            raise ConfigurationError('unknown ablation %r, expected one of %s'
                                     % (ablation_id, ABLATIONS), key='experiment.ablation')

        self.ablation_id = ablation_id
        self.classifier_augmented = bool(classifier_augmented)

        self.idr = {condition: [] for condition in REPORT_CONDITIONS}

        return None

    @property
    def runs(self):
        """Number of recorded runs.
        """
        return max(len(v) for v in self.idr.values())

    def add_run(self, idr_by_condition):
        """Record identification rates of one run.

        :param idr_by_condition: Identification rate by condition, missing conditions are absent.
        :type idr_by_condition: dict[str, :class:`fractions.Fraction` or NoneType]
        """
        for condition in REPORT_CONDITIONS:
            self.idr[condition].append(idr_by_condition.get(condition))

        return None

    def fir(self, condition):
        """False identification rate of each run for condition.
        """
        return [compute_fir(idr) for idr in self.idr[condition]]

    def mean(self, condition, metric='idr'):
        """Mean over runs of IDR or FIR.

        :return: Mean, `None` if absent in every run.
        :rtype: float or NoneType
        """
        values = self.idr[condition] if metric == 'idr' else self.fir(condition)
        values = [v for v in values if v is not None]

        if not values:
            return None

        mean = float(sum(values, Fraction(0)) / len(values))

        return mean

    def std(self, condition, metric='idr'):
        """Population standard deviation over runs of IDR or FIR.

        :return: Standard deviation, `None` if absent in every run.
        :rtype: float or NoneType
        """
        values = self.idr[condition] if metric == 'idr' else self.fir(condition)
        values = [float(v) for v in values if v is not None]

        if not values:
            return None

        std = float(np.std(values))

        return std
