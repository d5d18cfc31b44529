# EpyECG/tests/test_library.py
# Related third party imports
import numpy as np
import pytest

# Local application/library specific imports
from ecglibs.augment.models import AugmentationRange
from ecglibs.commons.errors import DataFormatError
from ecglibs.commons.library import (
    read_beats,
    read_exclusion_list,
    read_ground_truth,
    read_model,
    read_ranges,
    read_recording,
    read_recordings,
    read_roster,
    write_beats,
    write_ground_truth,
    write_model,
    write_ranges,
    write_recording,
    write_recording_npy,
    write_roster,
)
from ecglibs.experts.models import DualExpertGraph
from ecglibs.network.builders import build_classifier_head, build_standard_cnn
from ecglibs.signals.models import RawRecording


@pytest.fixture
def recording():
    samples = np.random.default_rng(0).normal(size=50)

    return RawRecording('T01', 'S2', 'stand', samples, 200.)


@pytest.mark.parametrize('suffix, writer', [('.txt', write_recording), ('.npy', write_recording_npy)])
def test_recording_files(tmp_path, recording, suffix, writer):
    f = str(tmp_path / ('T01_S2_stand' + suffix))

    writer(recording, f)

    rec = read_recording(f)

    assert (rec.subject_id, rec.session, rec.condition, rec.sample_rate_hz) == ('T01', 'S2', 'stand', 200.)
    np.testing.assert_array_equal(rec.samples, recording.samples)


def test_read_recordings_sorted(tmp_path, recording):
    write_recording(RawRecording('T02', 'S1', 'sit', [0., 1.], 200.), str(tmp_path / 'b.txt'))
    write_recording(recording, str(tmp_path / 'a.txt'))

    assert [rec.subject_id for rec in read_recordings(str(tmp_path))] == ['T01', 'T02']


@pytest.mark.parametrize('text', [
    '',
    'T01,S1,sit\n1.0\n',
    'T01,S1,sit,200\n1.0\nabc\n',
    'T01,S9,sit,200\n1.0\n',
])
def test_malformed_recording(tmp_path, text):
    f = tmp_path / 'bad.txt'
    f.write_text(text)

    with pytest.raises(DataFormatError):
        read_recording(str(f))


def test_empty_directory(tmp_path):
    with pytest.raises(DataFormatError):
        read_recordings(str(tmp_path))


def test_ground_truth_file(tmp_path, clean_recording):
    _, truth = clean_recording

    f = str(tmp_path / 'truth.csv')
    write_ground_truth(truth, f)

    read = read_ground_truth(f)

    np.testing.assert_array_equal(read['r_samples'], truth['r_samples'])
    np.testing.assert_array_equal(read['t_samples'], truth['t_samples'])
    np.testing.assert_array_equal(read['heart_rate_bpm'], truth['heart_rate_bpm'])


def test_beat_file(tmp_path, make_beat):
    beats = [make_beat(hr=72.5, t_peak_rel_r=40, source_time_s=1.25),
             make_beat(subject_id='T02', condition='stand', session='S2').replace(augmented=True)]

    f = str(tmp_path / 'beats.csv')
    write_beats(beats, f)

    assert open(f).readline().strip().endswith(',s109,augmented')

    read = read_beats(f)

    assert [beat.subject_id for beat in read] == ['T01', 'T02']
    assert [beat.augmented for beat in read] == [False, True]
    assert read[0].t_peak_rel_r == 40
    assert read[1].t_peak_rel_r is None
    assert read[0].heart_rate_bpm == 72.5
    assert read[0].source_time_s == 1.25
    np.testing.assert_array_equal(read[0].samples, beats[0].samples)


def test_beat_file_without_augmented_column(tmp_path, make_beat):
    f = str(tmp_path / 'beats.csv')
    write_beats([make_beat()], f)

    assert open(f).readline().strip().endswith(',s109')
    assert read_beats(f)[0].augmented is False


def test_malformed_beat_file(tmp_path, make_beat):
    f = tmp_path / 'beats.csv'
    write_beats([make_beat(t_peak_rel_r=40)], str(f))

    header, row = f.read_text().splitlines()

    f.write_text('\n'.join([header, row + ',0.0']))

    with pytest.raises(DataFormatError):
        read_beats(str(f))

    # T-peak outside its search window
    f.write_text('\n'.join([header, row.replace(',40,', ',90,', 1)]))

    with pytest.raises(DataFormatError):
        read_beats(str(f))

    f.write_text('subject_id,session\n')

    with pytest.raises(DataFormatError):
        read_beats(str(f))


def test_ranges_file(tmp_path):
    ranges = {'T02': AugmentationRange('T02', 28, 52), 'T01': AugmentationRange('T01', 25, 73)}

    f = str(tmp_path / 'ranges.csv')
    write_ranges(ranges, f)

    read = read_ranges(f)

    assert sorted(read) == ['T01', 'T02']
    assert (read['T02'].t_min, read['T02'].t_max) == (28, 52)


def test_roster_file(tmp_path):
    f = str(tmp_path / 'roster.csv')
    write_roster({'T01': 'target', 'A01': 'auxiliary'}, f)

    assert read_roster(f) == {'T01': 'target', 'A01': 'auxiliary'}


@pytest.mark.parametrize('text', ['T01,target\nT01,auxiliary\n', 'T01,reference\n'])
def test_malformed_roster(tmp_path, text):
    f = tmp_path / 'roster.csv'
    f.write_text(text)

    with pytest.raises(DataFormatError):
        read_roster(str(f))


def test_exclusion_list(tmp_path):
    f = tmp_path / 'exclude.txt'
    f.write_text('# noisy\nT03\n\nT07\n')

    assert read_exclusion_list(str(f)) == {'T03', 'T07'}


def test_model_checkpoint(tmp_path):
    model = build_standard_cnn(110, 3, seed=4)

    f = str(tmp_path / 'model.pickle')
    write_model(model, f)

    read = read_model(f)

    X = np.random.default_rng(0).normal(size=(5, 110))

    np.testing.assert_array_equal(read.predict(X).A, model.predict(X).A)
    assert read.parameter_digest() == model.parameter_digest()
    assert (tmp_path / 'model.pickle.manifest.txt').exists()


def test_expert_checkpoint(tmp_path):
    pqrs = build_standard_cnn(50, 3, seed=0).backbone()
    st = build_standard_cnn(70, 3, seed=1).backbone()

    model = DualExpertGraph(pqrs, st, build_classifier_head(1856, 3, seed=2))

    f = str(tmp_path / 'experts.pickle')
    write_model(model, f)

    read = read_model(f)

    X = np.random.default_rng(0).normal(size=(4, 110))

    assert isinstance(read, DualExpertGraph)
    assert read.backbone_digests() == model.backbone_digests()
    assert not any(read.backbones[0].trainable_mask)
    np.testing.assert_array_equal(read.predict(X).A, model.predict(X).A)


def test_not_a_checkpoint(tmp_path):
    f = tmp_path / 'model.pickle'
    f.write_text('hello')

    with pytest.raises(DataFormatError):
        read_model(str(f))
