# EpyECG/ecglibs/config.py
# Standard library imports
import hashlib
import copy
import json

# Local application/library specific imports
from ecglibs.augment.models import AugmentationConstants
from ecglibs.beats.models import DetectionConfig
from ecglibs.commons.errors import ConfigurationError
from ecglibs.evaluation.experiment import check_ablation
from ecglibs.evaluation.models import SplitPlan
from ecglibs.network.hyperparameters import check_hyperparameters
from ecglibs.signals.models import FilterSpec
from ecglibs.settings import (
    se_architecture,
    se_augment,
    se_beats,
    se_corpus,
    se_experiment,
    se_filter,
    se_hPars,
    se_split,
)


# Section name and the settings dictionary holding its defaults
SECTIONS = {
    'filter': se_filter,
    'beats': se_beats,
    'augment': se_augment,
    'train': se_hPars,
    'architecture': se_architecture,
    'split': se_split,
    'corpus': se_corpus,
    'experiment': se_experiment,
}

# Top-level scalar entries
SCALARS = {
    'exclusion_list': None,
    'roster': None,
    'seed': 0,
    'threads': 1,
}


def positive_int(value, key, minimum=1):
    """Check integer value against a lower bound.
    """
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise ConfigurationError('must be an integer >= %s, got %s' % (minimum, value), key=key)

    return None


def flag(value, key):
    """Check boolean value.
    """
    if not isinstance(value, bool):
        raise ConfigurationError('must be true or false, got %r' % (value,), key=key)

    return None


class RunConfig:
    """
    Definition of a run configuration: one section per settings dictionary plus top-level entries.

    Precedence is flags, then document, then :py:mod:`ecglibs.settings` defaults.

    :param document: Nested key-value document, defaults to `None` which keeps every default.
    :type document: dict or NoneType, optional

    :raises ConfigurationError: If a section or key is unknown, or a value violates its invariants.
    """

    def __init__(self, document=None):
        """Initialize instance variable attributes.
        """
        self.sections = {name: copy.deepcopy(defaults) for name, defaults in SECTIONS.items()}
        self.scalars = dict(SCALARS)

        self.update(document or {})

        return None

    @classmethod
    def from_file(cls, path):
        """Load configuration from JSON file.

        :param path: Filename.
        :type path: str

        :raises ConfigurationError: If file is not a JSON object.

        :return: Configuration.
        :rtype: :class:`ecglibs.config.RunConfig`
        """
        try:
            with open(path, 'r') as msg:
                document = json.load(msg)
        except json.JSONDecodeError as error:
            raise ConfigurationError('%s: %s' % (path, error), key='config') from error

        if not isinstance(document, dict):
            raise ConfigurationError('%s: expected a JSON object' % path, key='config')

        return cls(document)

    def update(self, document):
        """Merge document into configuration and check it.

        :raises ConfigurationError: If a section or key is unknown.
        """
        for name, value in document.items():

            if name in SCALARS:
                self.scalars[name] = value

            elif name in SECTIONS:
                if not isinstance(value, dict):
                    raise ConfigurationError('section must be an object', key=name)

                for key, v in value.items():
                    if key not in SECTIONS[name]:
                        raise ConfigurationError('unknown key, expected one of %s'
                                                 % sorted(SECTIONS[name]), key='%s.%s' % (name, key))

                    self.sections[name][key] = copy.deepcopy(v)

            else:
                raise ConfigurationError('unknown section, expected one of %s'
                                         % sorted(list(SECTIONS) + list(SCALARS)), key=name)

        self.check()

        return None

    def override(self, flags):
        """Set values from command line flags, `None` values are ignored.

        :param flags: Value by `section.key` or top-level entry.
        :type flags: dict
        """
        document = {}

        for dotted_key, value in flags.items():

            if value is None:
                continue

            if '.' in dotted_key:
                name, key = dotted_key.split('.', 1)
                document.setdefault(name, {})[key] = value
            else:
                document[dotted_key] = value

        self.update(document)

        return None

    def __getitem__(self, name):
        return self.sections[name] if name in self.sections else self.scalars[name]

    def check(self):
        """Check every value against the invariants of its owning module.

        :raises ConfigurationError: Naming the offending key.
        """
        f, b, a = self.sections['filter'], self.sections['beats'], self.sections['augment']

        if not b['sample_rate_hz'] > 0:
            raise ConfigurationError('must be positive, got %s' % b['sample_rate_hz'], key='beats.sample_rate_hz')

        self.filter_spec().check(b['sample_rate_hz'])
        self.detection_config()
        self.augmentation_constants()

        if a['t_max_source'] not in ('standing', 'all'):
            raise ConfigurationError('must be standing or all, got %r' % a['t_max_source'],
                                     key='augment.t_max_source')

        flag(a['refit_global'], 'augment.refit_global')

        lo, hi = a['uniform_range']

        if not a['t_p_min'] <= lo < hi:
            raise ConfigurationError('must satisfy t_p_min <= low < high, got %s' % a['uniform_range'],
                                     key='augment.uniform_range')

        if a['max_per_subject'] is not None:
            positive_int(a['max_per_subject'], 'augment.max_per_subject')

        check_hyperparameters(self.sections['train'])
        flag(self.sections['train']['verbose'], 'train.verbose')

        arch = self.sections['architecture']

        if not arch['channels'] or len(arch['channels']) != len(arch['kernels']):
            raise ConfigurationError('channels and kernels must have the same non-zero length',
                                     key='architecture.channels')

        for key in ['channels', 'kernels']:
            for v in arch[key]:
                positive_int(v, 'architecture.%s' % key)

        positive_int(arch['hidden_units'], 'architecture.hidden_units')

        if not 0 <= arch['dropout'] < 1:
            raise ConfigurationError('must lie in [0, 1), got %s' % arch['dropout'], key='architecture.dropout')

        self.split_plan()

        corpus = self.sections['corpus']

        positive_int(corpus['n_subjects'], 'corpus.n_subjects', minimum=2)
        positive_int(corpus['n_auxiliary'], 'corpus.n_auxiliary', minimum=0)

        for key in ['rest_duration_s', 'exercise_duration_s']:
            if not corpus[key] >= 5:
                raise ConfigurationError('must be at least 5, got %s' % corpus[key], key='corpus.%s' % key)

        if not corpus['sample_rate_hz'] > 0:
            raise ConfigurationError('must be positive', key='corpus.sample_rate_hz')

        experiment = self.sections['experiment']

        positive_int(experiment['n_runs'], 'experiment.n_runs')
        positive_int(experiment['base_seed'], 'experiment.base_seed', minimum=0)
        flag(experiment['classifier_augmented'], 'experiment.classifier_augmented')
        check_ablation(experiment['ablation'], experiment['classifier_augmented'])

        positive_int(self.scalars['seed'], 'seed', minimum=0)
        positive_int(self.scalars['threads'], 'threads')

        return None

    def filter_spec(self):
        return FilterSpec(**self.sections['filter'])

    def detection_config(self):
        b = self.sections['beats']

        return DetectionConfig(b['averaging_window_W'], b['zscore_threshold'], b['iqr_factor'], b['zscore_per_subject'])

    def augmentation_constants(self):
        a = self.sections['augment']

        return AugmentationConstants(a['hr_limit'], a['t_g_min'], a['t_p_min'])

    def split_plan(self):
        return SplitPlan(**self.sections['split'])

    def as_dict(self):
        """Full configuration as a nested document.
        """
        document = copy.deepcopy(self.sections)
        document.update(self.scalars)

        return document

    def dumps(self):
        """Canonical JSON dump.
        """
        return json.dumps(self.as_dict(), sort_keys=True, separators=(',', ':'))

    def digest(self):
        """SHA-256 of canonical JSON dump, used in run manifests.

        :rtype: str
        """
        return hashlib.sha256(self.dumps().encode()).hexdigest()
