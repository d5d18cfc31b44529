# EpyECG/tests/test_cli.py
# Standard library imports
import json

# Related third party imports
import pytest

# Local application/library specific imports
from ecglibs.cli import main
from ecglibs.commons.library import read_beats, read_ranges, read_roster


@pytest.fixture
def short_config(tmp_path):
    f = tmp_path / 'config.json'
    f.write_text(json.dumps({'corpus': {'rest_duration_s': 20., 'exercise_duration_s': 20.}}))

    return str(f)


def test_version(capsys):
    with pytest.raises(SystemExit) as error:
        main(['--version'])

    assert error.value.code == 0
    assert 'epyecg' in capsys.readouterr().out


def test_configuration_error_exit_code(tmp_path):
    f = tmp_path / 'config.json'
    f.write_text(json.dumps({'augment': {'hr_lmit': 150.}}))

    assert main(['synth', '--config', str(f), '--out', str(tmp_path / 'corpus')]) == 2


def test_argument_error_exit_code(tmp_path):
    assert main(['preprocess', '--in', str(tmp_path / 'missing'), '--out', str(tmp_path / 'beats.csv')]) == 3


def test_data_format_error_exit_code(tmp_path):
    corpus = tmp_path / 'corpus'
    corpus.mkdir()
    (corpus / 'T01_S1_sit.txt').write_text('T01,S1,sit,200\nnot-a-number\n')

    assert main(['preprocess', '--in', str(corpus), '--out', str(tmp_path / 'beats.csv')]) == 4


def test_synth_then_preprocess(tmp_path, short_config):
    corpus = tmp_path / 'corpus'

    assert main(['synth', '--config', short_config, '--subjects', '2', '--auxiliary', '1',
                 '--seed', '0', '--out', str(corpus)]) == 0

    assert read_roster(str(corpus / 'roster.csv')) == {'T01': 'target', 'T02': 'target', 'A01': 'auxiliary'}
    assert (corpus / 'T01_S1_sit.txt').exists()
    assert (corpus / 'T01_S1_sit.truth.csv').exists()

    manifest = json.loads((corpus / 'run.json').read_text())

    assert manifest['command'] == 'synth'
    assert manifest['config']['corpus']['n_subjects'] == 2

    beats_file = str(tmp_path / 'beats.csv')

    assert main(['preprocess', '--config', short_config, '--in', str(corpus), '--out', beats_file]) == 0

    beats = read_beats(beats_file)

    assert {beat.subject_id for beat in beats} == {'T01', 'T02', 'A01'}
    assert not any(beat.augmented for beat in beats)
    assert all(beat.t_peak_rel_r is not None for beat in beats)

    inputs = json.loads(open(beats_file + '.run.json').read())['inputs']

    assert str(corpus / 'T01_S1_sit.txt') in inputs

    ranges_file = str(tmp_path / 'ranges.csv')

    assert main(['fit-ranges', '--beats', beats_file, '--roster', str(corpus / 'roster.csv'),
                 '--fits', str(tmp_path / 'fits.csv'), '--ranges', ranges_file]) == 0

    assert sorted(read_ranges(ranges_file)) == ['T01', 'T02']

    augmented_file = str(tmp_path / 'augmented.csv')

    assert main(['augment', '--beats', beats_file, '--ranges', ranges_file, '--out', augmented_file]) == 0

    augmented = read_beats(augmented_file)

    assert len(augmented) >= len(beats)
    assert [beat.augmented for beat in augmented[:len(beats)]] == [False] * len(beats)


@pytest.fixture(scope='module')
def cli_dataset(tmp_path_factory):
    """Small corpus written and preprocessed through the command line.
    """
    tmp = tmp_path_factory.mktemp('cli')

    config = tmp / 'config.json'
    config.write_text(json.dumps({
        'corpus': {'rest_duration_s': 20., 'exercise_duration_s': 20.},
        'train': {'max_epochs': 2, 'batch_size': 16},
        'experiment': {'n_runs': 1},
    }))

    corpus = tmp / 'corpus'

    assert main(['synth', '--config', str(config), '--subjects', '3', '--auxiliary', '1',
                 '--seed', '0', '--out', str(corpus)]) == 0

    beats = tmp / 'beats.csv'

    assert main(['preprocess', '--config', str(config), '--in', str(corpus), '--out', str(beats)]) == 0

    common = ['--config', str(config), '--roster', str(corpus / 'roster.csv'), '--beats', str(beats)]

    return tmp, common


@pytest.mark.slow
def test_train_evaluate_export_features(cli_dataset):
    tmp, common = cli_dataset

    for name in ('a', 'b'):
        assert main(['train'] + common + ['--ablation', 'DE-PADA', '--seed', '1',
                                          '--out', str(tmp / ('model_%s.pickle' % name))]) == 0

    # Same seed, same checkpoint
    assert (tmp / 'model_a.pickle').read_bytes() == (tmp / 'model_b.pickle').read_bytes()

    model = str(tmp / 'model_a.pickle')

    for name in ('a', 'b'):
        assert main(['evaluate'] + common + ['--ablation', 'DE-PADA', '--model', model,
                                             '--out', str(tmp / ('report_%s.txt' % name)),
                                             '--json', str(tmp / ('report_%s.json' % name)),
                                             '--predictions', str(tmp / ('predictions_%s.csv' % name))]) == 0

    for f in ('report_%s.txt', 'report_%s.json', 'predictions_%s.csv'):
        assert (tmp / (f % 'a')).read_bytes() == (tmp / (f % 'b')).read_bytes()

    document = json.loads((tmp / 'report_a.json').read_text())

    assert [(row['ablation_id'], row['runs']) for row in document] == [('DE-PADA', 1)]
    assert (tmp / 'predictions_a.csv').read_text().splitlines()[0] == 'run,condition,subject_id,predicted'

    features = tmp / 'features.csv'

    assert main(['export-features'] + common + ['--model', model, '--expert', 'st', '--out', str(features)]) == 0

    lines = features.read_text().splitlines()

    assert lines[0].split(',')[:3] == ['subject_id', 'condition', 'f0']
    assert all(len(line.split(',')) == 2 + 1088 for line in lines)

    normalized = tmp / 'normalized.csv'

    assert main(['export-features'] + common + ['--model', model, '--normalized', '--pca', '2',
                                                '--out', str(normalized)]) == 0

    header = normalized.read_text().splitlines()[0].split(',')

    assert len(header) == 2 + 1088 + 2
    assert header[-1] == 'pc2'


@pytest.mark.slow
def test_ablate_writes_eight_rows(cli_dataset):
    tmp, common = cli_dataset

    report = tmp / 'ablation.json'

    assert main(['ablate'] + common + ['--out', str(tmp / 'ablation.txt'), '--json', str(report)]) == 0

    document = json.loads(report.read_text())

    assert len(document) == 8
    assert [row['classifier_augmented'] for row in document] == [False] * 4 + [True] * 4
    assert [row['ablation_id'] for row in document[:4]] == [row['ablation_id'] for row in document[4:]]
    assert all(row['runs'] == 1 for row in document)
