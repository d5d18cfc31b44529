# EpyECG/ecglibs/evaluation/experiment.py
# Standard library imports
from concurrent.futures import ProcessPoolExecutor
import copy

# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.augment.fitting import (
    fit_global,
    fit_subjects,
)
from ecglibs.augment.models import AugmentationConstants
from ecglibs.augment.ranges import (
    select_ranges,
    uniform_range,
)
from ecglibs.augment.resampling import augment_subject
from ecglibs.commons.errors import (
    ArgumentError,
    ConfigurationError,
)
from ecglibs.commons.logs import (
    process_logs,
    warning_logs,
)
from ecglibs.commons.metrics import compute_idr
from ecglibs.commons.models import dataSet
from ecglibs.evaluation.models import (
    ABLATIONS,
    EvalReport,
    REPORT_CONDITIONS,
    SplitPlan,
)
from ecglibs.evaluation.phases import split_exercise_phases
from ecglibs.evaluation.splits import (
    split_recordings,
    stratified_split,
)
from ecglibs.experts.models import (
    DualExpertGraph,
    ExpertGraph,
    dual_slices,
)
from ecglibs.experts.training import (
    prune_aux_classes,
    train_dual_expert_stage2,
    train_experts,
)
from ecglibs.beats.models import beat_geometry
from ecglibs.network.builders import build_standard_cnn
from ecglibs.settings import (
    se_augment,
    se_beats,
    se_hPars,
)


# Ablations trained as a single Standard CNN
SINGLE_STAGE = ('SCR', 'ACR')

# Ablations without personalized augmentation of the Target set
NO_PERSONALIZED = ('DE-PADA\\PA', 'SCR', 'ACR')

# Rows of the ablation matrix
MATRIX_ABLATIONS = ('DE-PADA', 'DE-PADA\\DE', 'DE-PADA\\PA', 'DE-PADA\\DA')


def check_ablation(ablation_id, classifier_augmented):
    """Reject unknown or inconsistent ablation settings.

    :raises ConfigurationError: If ablation is unknown, or classifier augmentation is requested where there is no classifier stage or no augmentation.
    """
    if ablation_id not in ABLATIONS:
        raise ConfigurationError('unknown ablation %r, expected one of %s'
                                 % (ablation_id, ABLATIONS), key='experiment.ablation')

    if classifier_augmented and ablation_id in NO_PERSONALIZED:
        raise ConfigurationError('classifier augmentation is inconsistent with %s' % ablation_id,
                                 key='experiment.classifier_augmented')

    return None


def beat_matrix(beats):
    """Stack beat samples into (n, length) features.
    """
    if not beats:
        return np.zeros((0, 0))

    return np.stack([beat.samples for beat in beats])


def labeled_set(beats, labels, num_classes, name):
    """Labeled set of beats.

    :param beats: Beats.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param labels: Class index by subject identifier.
    :type labels: dict[str, int]

    :param num_classes: Width of one-hot encoding.
    :type num_classes: int

    :param name: Name of set.
    :type name: str

    :return: Labeled set.
    :rtype: :class:`ecglibs.commons.models.dataSet`
    """
    y = [labels[beat.subject_id] for beat in beats]

    dset = dataSet(beat_matrix(beats), y, num_classes=num_classes, name=name)

    return dset


class ExperimentData:
    """
    Definition of the beat dataset of an experiment, arranged by role and partition.

    :param beats: Gated beats of all subjects.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param roster: Role by subject identifier, defaults to `None` where all subjects are targets.
    :type roster: dict[str, str] or NoneType, optional

    :param plan: Split plan, defaults to `None` for defaults.
    :type plan: :class:`ecglibs.evaluation.models.SplitPlan` or NoneType, optional

    :param sample_rate_hz: Sampling rate of beats, defaults to 200.
    :type sample_rate_hz: float, optional

    :raises ConfigurationError: If fewer than two Target subjects have training beats.
    """

    def __init__(self, beats, roster=None, plan=None, sample_rate_hz=se_beats['sample_rate_hz']):
        """Initialize instance variable attributes.
        """
        roster = roster or {}

        self.plan = plan or SplitPlan()
        self.sample_rate_hz = sample_rate_hz

        genuine = [beat for beat in beats if not beat.augmented]

        target = [beat for beat in genuine if roster.get(beat.subject_id, 'target') == 'target']
        auxiliary = [beat for beat in genuine if roster.get(beat.subject_id) == 'auxiliary']

        self.train, self.test = split_recordings(target, self.plan)

        self.target_ids = sorted({beat.subject_id for beat in self.train})

        missing = sorted({beat.subject_id for beat in target} - set(self.target_ids))

        if missing:
            warning_logs('Target subjects without training beats left out: %s' % ', '.join(missing))
            self.test = [beat for beat in self.test if beat.subject_id in self.target_ids]

        if len(self.target_ids) < 2:
            raise ConfigurationError('at least 2 Target subjects with training beats required, got %s'
                                     % len(self.target_ids), key='roster')

        self.auxiliary = auxiliary
        self.aux_ids = sorted({beat.subject_id for beat in auxiliary})

        # Target labels first, then Auxiliary
        self.labels = {sid: i for i, sid in enumerate(self.target_ids + self.aux_ids)}

        self.test_groups = self.group_test_beats()

        return None

    @property
    def num_target(self):
        return len(self.target_ids)

    @property
    def num_aux(self):
        return len(self.aux_ids)

    def group_test_beats(self):
        """Test beats by report condition, exercise recordings split by recovery phase.

        :return: Beats by condition in :data:`ecglibs.evaluation.models.REPORT_CONDITIONS`.
        :rtype: dict[str, list[:class:`ecglibs.beats.models.BeatTemplate`]]
        """
        groups = {condition: [] for condition in REPORT_CONDITIONS}

        recordings = {}

        for beat in self.test:

            if beat.condition == 'exercise':
                recordings.setdefault((beat.subject_id, beat.session), []).append(beat)

            elif beat.condition in groups:
                groups[beat.condition].append(beat)

        for key in sorted(recordings):

            phase_1, phase_2 = split_exercise_phases(recordings[key], sample_rate_hz=self.sample_rate_hz)

            groups['exercise_phase_1'].extend(phase_1)
            groups['exercise_phase_2'].extend(phase_2)

        return groups


def augmentation_ranges(ablation_id, train_beats, se_augment=se_augment):
    """Augmentation range of every Target subject for an ablation.

    :return: Ranges by subject identifier, `None` without augmentation.
    :rtype: dict[str, :class:`ecglibs.augment.models.AugmentationRange`] or NoneType
    """
    subject_ids = sorted({beat.subject_id for beat in train_beats})

    if ablation_id == 'ACR':
        return {sid: uniform_range(sid, se_augment['uniform_range']) for sid in subject_ids}

    if ablation_id in NO_PERSONALIZED:
        return None

    t_g_min = se_augment['t_g_min']

    if se_augment['refit_global']:
        refit = fit_global(train_beats).at(se_augment['hr_limit'])
        t_g_min = max(int(np.rint(refit)), se_augment['t_p_min'])

    consts = AugmentationConstants(se_augment['hr_limit'], t_g_min, se_augment['t_p_min'])

    fits = fit_subjects(train_beats)

    ranges = select_ranges(fits, train_beats, consts, se_augment['t_max_source'])

    return ranges


def augment_beats(beats, ranges, se_augment=se_augment, sample_rate_hz=se_beats['sample_rate_hz']):
    """Genuine beats followed by augmented beats of every subject.
    """
    if ranges is None:
        return list(beats)

    augmented = []

    for sid in sorted({beat.subject_id for beat in beats}):

        subject_beats = [beat for beat in beats if beat.subject_id == sid]

        augmented.extend(augment_subject(subject_beats, ranges[sid], se_augment['max_per_subject'], sample_rate_hz))

    return augmented


def run_single(ablation_id, classifier_augmented, data, seed, run_index=0,
               se_augment=se_augment, se_hPars=se_hPars):
    """Train and test one ablation with one seed.

    :param ablation_id: Configuration in :data:`ecglibs.evaluation.models.ABLATIONS`.
    :type ablation_id: str

    :param classifier_augmented: Augment Target beats for the classifier stage.
    :type classifier_augmented: bool

    :param data: Experiment dataset.
    :type data: :class:`ExperimentData`

    :param seed: Seed for split, initialization and batches.
    :type seed: int

    :param run_index: Index of run, for predictions, defaults to 0.
    :type run_index: int, optional

    :return: Identification rate by condition and prediction rows.
    :rtype: tuple[dict, list[tuple]]
    """
    predictor = train_predictor(ablation_id, classifier_augmented, data, seed, se_augment, se_hPars)

    return identify(predictor, data, run_index)


def train_predictor(ablation_id, classifier_augmented, data, seed, se_augment=se_augment, se_hPars=se_hPars):
    """Train the identification model of an ablation.

    :return: Standard CNN for single-stage references, pruned expert composition otherwise.
    :rtype: :class:`ecglibs.network.models.ModelGraph` or :class:`ecglibs.experts.models.ExpertGraph`
    """
    check_ablation(ablation_id, classifier_augmented)

    fs = data.sample_rate_hz
    rng = np.random.default_rng(seed)

    T = data.num_target
    target_labels = {sid: data.labels[sid] for sid in data.target_ids}

    # (1) Stratified split on genuine beats
    y = [target_labels[beat.subject_id] for beat in data.train]
    tr_idx, val_idx = stratified_split(y, data.plan.val_fraction, rng)

    train_part = [data.train[i] for i in tr_idx]
    val_part = [data.train[i] for i in val_idx]

    # (2) Ranges fitted on all genuine training beats
    ranges = augmentation_ranges(ablation_id, data.train, se_augment)

    aug_train = augment_beats(train_part, ranges, se_augment, fs)
    aug_val = augment_beats(val_part, ranges, se_augment, fs)

    length = beat_geometry(fs)['length']

    # (3) Single-stage references
    if ablation_id in SINGLE_STAGE:

        predictor = build_standard_cnn(length, T, seed=seed, se_hPars=se_hPars)

        predictor.train(labeled_set(aug_train, target_labels, T, 'dtrain'),
                        labeled_set(aug_val, target_labels, T, 'dval'))

    # (4) Two-stage expert models
    else:
        slices = [slice(0, length)] if ablation_id == 'DE-PADA\\DE' else list(dual_slices(fs))

        backbones = train_experts(slices,
                                  labeled_set(aug_train, target_labels, T, 'dtrain'),
                                  labeled_set(aug_val, target_labels, T, 'dval'),
                                  T, seed=seed, se_hPars=se_hPars)

        if len(backbones) == 2:
            graph = DualExpertGraph(*backbones, sample_rate_hz=fs)
        else:
            graph = ExpertGraph(list(zip(slices, backbones)), input_len=length, name='SingleExpert')

        # Classifier data, Target then Auxiliary
        cls_train = aug_train if classifier_augmented else train_part
        cls_val = aug_val if classifier_augmented else val_part

        aux_ids = [] if ablation_id == 'DE-PADA\\DA' else data.aux_ids

        if aux_ids:
            aux_beats = [beat for beat in data.auxiliary if beat.subject_id in aux_ids]

            y_aux = [data.labels[beat.subject_id] for beat in aux_beats]
            atr_idx, aval_idx = stratified_split(y_aux, data.plan.val_fraction, rng)

            cls_train = cls_train + [aux_beats[i] for i in atr_idx]
            cls_val = cls_val + [aux_beats[i] for i in aval_idx]

        elif ablation_id != 'DE-PADA\\DA':
            warning_logs('no Auxiliary subjects in roster, classifier trained without domain adaptation')

        num_classes = T + len(aux_ids)

        graph = train_dual_expert_stage2(graph,
                                         labeled_set(cls_train, data.labels, num_classes, 'dtrain'),
                                         labeled_set(cls_val, data.labels, num_classes, 'dval'),
                                         T, len(aux_ids), data.target_ids, aux_ids,
                                         seed=seed, se_hPars=se_hPars)

        predictor = prune_aux_classes(graph, T)

    return predictor


def identify(predictor, data, run_index=0):
    """Closed-set identification of test beats by condition.

    :param predictor: Model whose outputs are Target labels.
    :type predictor: :class:`ecglibs.network.models.ModelGraph` or :class:`ecglibs.experts.models.ExpertGraph`

    :param data: Experiment dataset.
    :type data: :class:`ExperimentData`

    :raises ArgumentError: If model width differs from the number of Target subjects.

    :return: Identification rate by condition, `None` without test beats, and prediction rows.
    :rtype: tuple[dict, list[tuple]]
    """
    if predictor.num_classes != data.num_target:
        raise ArgumentError('%s outputs %s classes, dataset has %s Target subjects'
                            % (predictor.name, predictor.num_classes, data.num_target))

    target_labels = {sid: data.labels[sid] for sid in data.target_ids}

    idr_by_condition = {}
    predictions = []

    for condition in REPORT_CONDITIONS:

        beats = data.test_groups[condition]

        if not beats:
            idr_by_condition[condition] = None
            continue

        predicted = predictor.predict(beat_matrix(beats)).P
        true = [target_labels[beat.subject_id] for beat in beats]

        idr_by_condition[condition] = compute_idr(predicted, true)

        for beat, p in zip(beats, predicted):
            predictions.append((run_index, condition, beat.subject_id, data.target_ids[int(p)]))

    return idr_by_condition, predictions


def run_experiment(ablation_id, classifier_augmented, data, n_runs=10, base_seed=0,
                   se_augment=se_augment, se_hPars=se_hPars, threads=1, predictions=None):
    """Repeat an ablation over seeds base_seed + run_index and aggregate.

    Each run redraws the validation split and the model seed.

    :param ablation_id: Configuration in :data:`ecglibs.evaluation.models.ABLATIONS`.
    :type ablation_id: str

    :param classifier_augmented: Augment Target beats for the classifier stage.
    :type classifier_augmented: bool

    :param data: Experiment dataset, or gated beats of all subjects with default roles.
    :type data: :class:`ExperimentData` or list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param n_runs: Number of runs, defaults to 10.
    :type n_runs: int, optional

    :param base_seed: Seed of first run, defaults to 0.
    :type base_seed: int, optional

    :param threads: Number of worker processes, defaults to 1.
    :type threads: int, optional

    :param predictions: Collects prediction rows when a list is given, defaults to `None`.
    :type predictions: list or NoneType, optional

    :raises ConfigurationError: On inconsistent ablation settings or fewer than one run.

    :return: Report over runs.
    :rtype: :class:`ecglibs.evaluation.models.EvalReport`
    """
    check_ablation(ablation_id, classifier_augmented)

    if not int(n_runs) >= 1:
        raise ConfigurationError('must be at least 1, got %s' % n_runs, key='experiment.n_runs')

    if not isinstance(data, ExperimentData):
        data = ExperimentData(data)

    report = EvalReport(ablation_id, classifier_augmented)

    args = [(ablation_id, classifier_augmented, data, base_seed + r, r, se_augment, se_hPars)
            for r in range(int(n_runs))]

    if threads and threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(run_single, *zip(*args)))

    else:
        results = [run_single(*arg) for arg in args]

    # Reduction in run order
    for idr_by_condition, rows in results:

        report.add_run(idr_by_condition)

        if predictions is not None:
            predictions.extend(rows)

    process_logs('%s (classifier augmented: %s): %s runs' % (ablation_id, classifier_augmented, report.runs), level=1)

    return report


def run_ablation_matrix(data, n_runs=10, base_seed=0, se_augment=se_augment, se_hPars=se_hPars, threads=1):
    """Four configurations in both classifier scenarios.

    Without augmentation anywhere, the ablation of personalized augmentation
    has the same runs in both scenarios. It is run once and each row gets
    its own copy of the report, labeled with the row scenario.

    :return: Classifier scenario and report of each row, 8 rows.
    :rtype: list[tuple[bool, :class:`ecglibs.evaluation.models.EvalReport`]]
    """
    rows = []
    done = {}

    for classifier_augmented in (False, True):
        for ablation_id in MATRIX_ABLATIONS:

            scenario = classifier_augmented and ablation_id not in NO_PERSONALIZED

            key = (ablation_id, scenario)

            if key not in done:
                done[key] = run_experiment(ablation_id, scenario, data, n_runs, base_seed,
                                           se_augment, se_hPars, threads)

            report = copy.deepcopy(done[key])
            report.classifier_augmented = classifier_augmented

            rows.append((classifier_augmented, report))

    return rows
