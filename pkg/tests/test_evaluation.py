# EpyECG/tests/test_evaluation.py
# Standard library imports
import json
import time
from fractions import Fraction

# Related third party imports
import numpy as np
import pytest

# Local application/library specific imports
from ecglibs.augment.models import SubjectFit
from ecglibs.beats.pipeline import gate_dataset, preprocess_recording
from ecglibs.commons.errors import ArgumentError, ConfigurationError
from ecglibs.commons.logs import PipelineWarning
from ecglibs.commons.metrics import compute_fir, compute_idr
from ecglibs.evaluation.experiment import (
    ExperimentData,
    MATRIX_ABLATIONS,
    augmentation_ranges,
    check_ablation,
    run_ablation_matrix,
    run_experiment,
)
from ecglibs.evaluation.features import export_features, pca_project
from ecglibs.evaluation.models import EvalReport, SplitPlan
from ecglibs.evaluation.phases import phase_boundary, split_exercise_phases
from ecglibs.evaluation.report import aggregate_runs, render_report, report_to_json
from ecglibs.evaluation.splits import split_recordings, stratified_split
from ecglibs.network.builders import build_standard_cnn
from ecglibs.settings import se_corpus, se_hPars
from ecglibs.synthetic.generator import generate_corpus


def test_idr_example():
    assert compute_idr([0, 1, 2, 2], [0, 1, 2, 1]) == Fraction(3, 4)
    assert compute_idr([1, 2, 3], [1, 2, 2]) == Fraction(2, 3)


def test_idr_and_fir_sum_to_one():
    rng = np.random.default_rng(0)

    pred, true = rng.integers(0, 7, 37), rng.integers(0, 7, 37)

    idr = compute_idr(pred, true)

    assert idr + compute_fir(idr) == 1


def test_idr_empty_and_mismatch():
    assert compute_idr([], []) is None
    assert compute_fir(None) is None

    with pytest.raises(ArgumentError):
        compute_idr([0, 1], [0])


def test_report_mean_and_std():
    report = aggregate_runs([{'sit': Fraction(1, 2), 'supine': None},
                             {'sit': Fraction(1, 1), 'supine': Fraction(3, 4)}], 'DE-PADA', False)

    assert report.runs == 2
    assert report.mean('sit') == pytest.approx(0.75)
    assert report.std('sit') == pytest.approx(0.25)
    assert report.mean('sit', 'fir') == pytest.approx(0.25)

    # Absent runs are skipped
    assert report.mean('supine') == pytest.approx(0.75)
    assert report.std('supine') == 0.

    # Absent in every run
    assert report.mean('tripod') is None
    assert report.fir('tripod') == [None, None]


def test_report_rejects_unknown_ablation():
    with pytest.raises(ConfigurationError):
        EvalReport('DE-PADA\\XX', False)


def test_render_report_marks_absent_conditions():
    report = aggregate_runs([{'sit': Fraction(1, 2)}, {'sit': Fraction(1, 1)}], 'SCR', False)

    table = render_report([report])

    assert 'SCR' in table
    assert '75.00 ± 25.00' in table
    assert '-' in table


def test_report_to_json_keeps_exact_fractions():
    report = aggregate_runs([{'sit': Fraction(2, 3)}], 'ACR', False)

    document = json.loads(report_to_json([(True, report)]))

    assert document[0]['ablation_id'] == 'ACR'
    assert document[0]['classifier_augmented'] is True
    assert document[0]['runs'] == 1
    assert document[0]['conditions']['sit']['idr_runs'] == ['2/3']
    assert document[0]['conditions']['tripod']['idr_runs'] == [None]
    assert document[0]['conditions']['sit']['fir_mean'] == pytest.approx(1 / 3)


def test_stratified_split_holds_out_every_label():
    labels = [0] * 10 + [1] * 3 + [2] * 2

    train_idx, val_idx = stratified_split(labels, 0.2, np.random.default_rng(0))

    labels = np.asarray(labels)

    assert sorted(np.concatenate([train_idx, val_idx])) == list(range(15))
    assert np.count_nonzero(labels[val_idx] == 0) == 2

    for label in (0, 1, 2):
        assert label in labels[train_idx]
        assert label in labels[val_idx]


def test_stratified_split_single_sample_label():
    with pytest.warns(PipelineWarning):
        train_idx, val_idx = stratified_split([0, 0, 0, 1], 0.5, np.random.default_rng(0))

    assert 3 in train_idx
    assert 3 not in val_idx


def test_stratified_split_is_reproducible():
    labels = [0] * 20

    a = stratified_split(labels, 0.2, np.random.default_rng(0))[1]
    b = stratified_split(labels, 0.2, np.random.default_rng(0))[1]

    np.testing.assert_array_equal(a, b)


def test_split_plan_errors():
    with pytest.raises(ConfigurationError) as error:
        SplitPlan(train={'S1': ['sit']}, test={'S1': ['exercise']})

    assert error.value.key == 'split'

    with pytest.raises(ConfigurationError):
        SplitPlan(val_fraction=1.)

    with pytest.raises(ConfigurationError):
        SplitPlan(train={'S9': ['sit']})


def test_split_recordings(make_beat):
    beats = [make_beat(session='S1', condition='sit'),
             make_beat(session='S2', condition='stand'),
             make_beat(session='S3', condition='exercise'),
             make_beat(session='S5', condition='tripod'),
             make_beat(session='S2', condition='exercise')]

    train, test = split_recordings(beats)

    assert train == beats[:2]
    assert test == beats[2:4]


def test_phase_boundary():
    assert phase_boundary(200.) == 12000


def test_exercise_phases_half_open(make_beat):
    beats = [make_beat(condition='exercise', source_time_s=t) for t in (0., 59.9, 60.0, 90.)]

    phase_1, phase_2 = split_exercise_phases(beats, duration_s=120.)

    assert phase_1 == beats[:2]
    assert phase_2 == beats[2:]


def test_short_exercise_recording_has_one_phase(make_beat):
    beats = [make_beat(condition='exercise', source_time_s=t) for t in (0., 20., 40.)]

    with pytest.warns(PipelineWarning):
        phase_1, phase_2 = split_exercise_phases(beats)

    assert phase_1 == beats
    assert phase_2 == []


def test_check_ablation():
    check_ablation('DE-PADA', True)
    check_ablation('SCR', False)

    for ablation_id in ('DE-PADA\\PA', 'SCR', 'ACR'):
        with pytest.raises(ConfigurationError):
            check_ablation(ablation_id, True)

    with pytest.raises(ConfigurationError) as error:
        check_ablation('CNN', False)

    assert error.value.key == 'experiment.ablation'


def experiment_beats(make_beat):
    beats = []

    for sid in ('T01', 'T02'):
        beats += [make_beat(subject_id=sid, session='S1', condition='sit', t_peak_rel_r=40)] * 3
        beats += [make_beat(subject_id=sid, session='S3', condition='sit', t_peak_rel_r=40)]
        beats += [make_beat(subject_id=sid, session='S3', condition='exercise', source_time_s=t, t_peak_rel_r=30)
                  for t in (10., 65.)]

    beats += [make_beat(subject_id='A01', session='S1', condition='sit', t_peak_rel_r=40)] * 2

    return beats


def test_experiment_data_roles_and_groups(make_beat):
    data = ExperimentData(experiment_beats(make_beat), roster={'A01': 'auxiliary'})

    assert data.target_ids == ['T01', 'T02']
    assert data.aux_ids == ['A01']
    assert data.labels == {'T01': 0, 'T02': 1, 'A01': 2}
    assert len(data.train) == 6

    assert len(data.test_groups['sit']) == 2
    assert len(data.test_groups['exercise_phase_1']) == 2
    assert len(data.test_groups['exercise_phase_2']) == 2
    assert data.test_groups['supine'] == []


def test_experiment_data_requires_two_targets(make_beat):
    beats = [make_beat(subject_id='T01', session='S1', condition='sit')] * 3

    with pytest.raises(ConfigurationError):
        ExperimentData(beats)


def test_augmentation_ranges_by_ablation(make_beat):
    train = [make_beat(subject_id=sid, t_peak_rel_r=40) for sid in ('T01', 'T02')]

    assert augmentation_ranges('SCR', train) is None
    assert augmentation_ranges('DE-PADA\\PA', train) is None

    ranges = augmentation_ranges('ACR', train)

    assert sorted(ranges) == ['T01', 'T02']
    assert (ranges['T01'].t_min, ranges['T01'].t_max) == (25, 73)


def test_run_experiment_rejects_no_run(make_beat):
    with pytest.raises(ConfigurationError):
        run_experiment('SCR', False, experiment_beats(make_beat), n_runs=0)


def test_pca_projection():
    F = np.array([[1., 5.], [-1., 5.], [2., 5.], [-2., 5.]])

    P = pca_project(F, 2)

    np.testing.assert_allclose(P[:, 0], [1., -1., 2., -2.], atol=1e-12)
    np.testing.assert_allclose(P[:, 1], 0., atol=1e-12)

    with pytest.raises(ArgumentError):
        pca_project(F[:1], 2)


@pytest.fixture(scope='module')
def small_corpus_data():
    corpus = dict(se_corpus, rest_duration_s=20., exercise_duration_s=70.)

    recordings, roster, _ = generate_corpus(n_subjects=3, n_auxiliary=1, seed=0, se_corpus=corpus)

    beats = []

    for rec, _ in recordings:
        beats += preprocess_recording(rec)[0]

    beats = gate_dataset(beats, roster)

    return ExperimentData(beats, roster)


@pytest.mark.slow
@pytest.mark.parametrize('ablation_id', ['DE-PADA', 'SCR'])
def test_run_experiment_on_synthetic_corpus(small_corpus_data, ablation_id):
    hPars = dict(se_hPars, max_epochs=2, batch_size=16)

    predictions = []

    report = run_experiment(ablation_id, False, small_corpus_data, n_runs=2, base_seed=0,
                            se_hPars=hPars, predictions=predictions)

    assert report.runs == 2
    assert all(0 <= idr <= 1 for idr in report.idr['sit'])
    assert report.mean('exercise_phase_2') is not None
    assert {row[0] for row in predictions} == {0, 1}
    assert {row[2] for row in predictions} <= set(small_corpus_data.target_ids)


@pytest.mark.slow
def test_run_experiment_is_reproducible(small_corpus_data):
    hPars = dict(se_hPars, max_epochs=2, batch_size=16)

    serial = run_experiment('SCR', False, small_corpus_data, n_runs=2, base_seed=3, se_hPars=hPars)
    again = run_experiment('SCR', False, small_corpus_data, n_runs=2, base_seed=3, se_hPars=hPars)
    pooled = run_experiment('SCR', False, small_corpus_data, n_runs=2, base_seed=3, se_hPars=hPars, threads=2)

    assert report_to_json([serial]) == report_to_json([again]) == report_to_json([pooled])


def test_ablation_matrix_rows(monkeypatch):
    calls = []

    def one_run(ablation_id, classifier_augmented, data, *args):
        calls.append((ablation_id, classifier_augmented))

        report = EvalReport(ablation_id, classifier_augmented)
        report.add_run({'sit': Fraction(len(calls), 10)})

        return report

    monkeypatch.setattr('ecglibs.evaluation.experiment.run_experiment', one_run)

    rows = run_ablation_matrix(None, n_runs=1)

    assert len(rows) == 8
    assert [flag for flag, _ in rows] == [False] * 4 + [True] * 4
    assert [report.ablation_id for _, report in rows] == list(MATRIX_ABLATIONS) * 2

    # Without augmentation anywhere, one set of runs serves both scenarios
    assert len(calls) == 7
    assert ('DE-PADA\\PA', True) not in calls

    genuine, augmented = rows[2][1], rows[6][1]

    assert genuine.idr == augmented.idr
    assert (genuine.classifier_augmented, augmented.classifier_augmented) == (False, True)

    for flag, report in rows:
        assert report.classifier_augmented == flag

    document = json.loads(report_to_json(rows))

    assert [row['classifier_augmented'] for row in document] == [False] * 4 + [True] * 4
    assert json.loads(report_to_json([augmented])) == [document[6]]


def test_export_features_width_and_normalized_path(make_beat):
    backbone = build_standard_cnn(70, 3, seed=0).backbone()

    beats = [make_beat(t_peak_in_beat=t + 35, t_peak_rel_r=t, subject_id=sid)
             for sid in ('T01', 'T02') for t in (40, 50, 60)]

    header, rows = export_features(backbone, beats)

    assert len(header) == 2 + 1088
    assert all(len(row) == 2 + 1088 for row in rows)
    assert rows[0][:2] == ['T01', 'sit']

    assert export_features(backbone, beats)[1] == rows

    fits = {sid: SubjectFit(sid, -0.5, 100., 'balanced') for sid in ('T01', 'T02')}
    mean_train_hr = {'T01': 80., 'T02': 80.}

    header, normalized = export_features(backbone, beats, True, fits, mean_train_hr, n_components=2)

    assert header[-2:] == ['pc1', 'pc2']
    assert len(normalized) == 6

    # Beats already at the normalized T-peak keep their features
    np.testing.assert_allclose(normalized[2][2:1090], rows[2][2:], atol=1e-6)

    with pytest.raises(ArgumentError):
        export_features(backbone, beats, True, {'T01': fits['T01']}, mean_train_hr)


REST_CONDITIONS = ('sit', 'supine', 'tripod')

EXERCISE_CONDITIONS = ('exercise_phase_1', 'exercise_phase_2')

# Desk-scale training schedule
DESK = dict(se_hPars, max_epochs=40, early_stop_patience=8)


def condition_mean(report, conditions):
    return float(np.mean([report.mean(condition) for condition in conditions]))


@pytest.mark.slow
def test_exercise_gap_closed_on_default_corpus():
    start = time.perf_counter()

    recordings, roster, _ = generate_corpus(seed=0)

    beats = []

    for rec, _ in recordings:
        beats += preprocess_recording(rec)[0]

    data = ExperimentData(gate_dataset(beats, roster), roster)

    assert data.num_target == 20
    assert data.num_aux == 6

    reports = {ablation_id: run_experiment(ablation_id, False, data, n_runs=10, base_seed=0,
                                           se_hPars=DESK, threads=4)
               for ablation_id in ('SCR', 'ACR', 'DE-PADA')}

    elapsed = time.perf_counter() - start

    scr_rest = condition_mean(reports['SCR'], REST_CONDITIONS)
    scr_exercise = condition_mean(reports['SCR'], EXERCISE_CONDITIONS)

    assert scr_rest >= 0.95
    assert condition_mean(reports['DE-PADA'], EXERCISE_CONDITIONS) >= scr_exercise + 0.10
    assert condition_mean(reports['DE-PADA'], REST_CONDITIONS) >= condition_mean(reports['ACR'], REST_CONDITIONS)

    assert elapsed <= 15 * 60
