# EpyECG/tests/test_beats.py
# Related third party imports
import numpy as np
import pytest

# Local application/library specific imports
from ecglibs.beats.detection import (
    compute_heart_rates,
    detect_r_peaks,
    remove_amplitude_outliers,
)
from ecglibs.beats.fiducials import detect_t_peak, zscore_gate_t_peaks
from ecglibs.beats.models import BeatTemplate, DetectionConfig, SegmentationReport, beat_geometry
from ecglibs.beats.pipeline import gate_dataset, preprocess_recording
from ecglibs.beats.segmentation import average_beats, segment_beats
from ecglibs.commons.errors import ArgumentError, ConfigurationError
from ecglibs.commons.logs import PipelineWarning
from ecglibs.signals.filtering import bandpass_filter
from ecglibs.signals.models import RawRecording
from ecglibs.synthetic.generator import draw_subjects, generate_recording
from ecglibs.synthetic.models import SubjectParams


def recording(samples, fs=200.):
    return RawRecording('T01', 'S1', 'sit', samples, fs)


def constant_beat(value, hr=60.):
    return BeatTemplate(np.full(110, float(value)), 35, hr, 'T01', 'S1', 'sit', 0.)


def test_beat_geometry_at_200_hz():
    assert beat_geometry(200.) == {'length': 110, 'r_index': 35, 'split': 50, 't_start': 50}


def test_detection_config_rejects_window():
    with pytest.raises(ConfigurationError):
        DetectionConfig(averaging_window_W=0)


def test_r_peaks_at_75_bpm(subject_params):
    params = SubjectParams(subject_params.waves, -1.0, 320., (75., 75.), (120., 130.))

    rec, truth = generate_recording(params, 'sit', 26., snr_db=np.inf, rng=np.random.default_rng(1))

    peaks = detect_r_peaks(bandpass_filter(rec))

    r = truth['r_samples']
    interior = r[(r >= 50) & (r < len(rec.samples) - 50)]

    assert len(interior) >= 20
    inner = peaks[(peaks >= 50) & (peaks < len(rec.samples) - 50)]

    assert np.all(np.abs(np.diff(inner) - 160) <= 2)
    assert all(np.min(np.abs(peaks - p)) <= 2 for p in interior)


def test_r_peaks_recovered_at_20_db(subject_params):
    rec, truth = generate_recording(subject_params, 'sit', 60., snr_db=20., rng=np.random.default_rng(2))

    peaks = detect_r_peaks(bandpass_filter(rec))

    r = truth['r_samples']
    interior = r[(r >= 50) & (r < len(rec.samples) - 50)]

    found = [np.min(np.abs(peaks - p)) <= 2 for p in interior]

    assert np.mean(found) >= 0.99
    assert np.all(np.diff(peaks) >= 40)


def test_r_peaks_all_zero():
    assert len(detect_r_peaks(recording(np.zeros(2000)))) == 0


def test_r_peaks_short_recording():
    with pytest.warns(PipelineWarning):
        peaks = detect_r_peaks(recording(np.ones(150)))

    assert len(peaks) == 0


def test_spike_removed_by_amplitude_gate(clean_recording):
    rec, truth = clean_recording

    samples = np.array(rec.samples)
    r = truth['r_samples']
    spike = (r[10] + r[11]) // 2
    samples[spike] = 10 * samples[r[10]]

    filtered = bandpass_filter(rec.replace(samples))

    peaks = remove_amplitude_outliers(detect_r_peaks(filtered), filtered, 1.5)

    assert all(abs(p - spike) > 2 for p in peaks)


def test_amplitude_gate_removes_outlier():
    rec = recording([10., 10., 11., 11., 12., 50.])

    kept = remove_amplitude_outliers(np.arange(6), rec, 1.5)

    np.testing.assert_array_equal(kept, [0, 1, 2, 3, 4])


def test_amplitude_gate_keeps_inliers():
    rec = recording([10., 11., 12., 11.])

    np.testing.assert_array_equal(remove_amplitude_outliers(np.arange(4), rec, 1.5), np.arange(4))


def test_amplitude_gate_equal_amplitudes():
    rec = recording(np.full(8, 3.))

    assert len(remove_amplitude_outliers(np.arange(8), rec, 1.5)) == 8


def test_amplitude_gate_too_few_peaks():
    rec = recording([1., 100., 1000.])

    np.testing.assert_array_equal(remove_amplitude_outliers([0, 1, 2], rec, 1.5), [0, 1, 2])


def test_amplitude_gate_idempotent():
    rec = recording([10., 10., 11., 11., 12., 50.])

    once = remove_amplitude_outliers(np.arange(6), rec, 1.5)

    np.testing.assert_array_equal(remove_amplitude_outliers(once, rec, 1.5), once)


def test_heart_rates():
    np.testing.assert_allclose(compute_heart_rates([0, 160, 320], 200.), [75., 75., 75.])
    np.testing.assert_allclose(compute_heart_rates([0, 150], 200.), [80., 80.])
    np.testing.assert_allclose(compute_heart_rates([0, 100, 250], 200.), [120., 120., 80.])

    with pytest.raises(ArgumentError):
        compute_heart_rates([10], 200.)


def test_segment_beat_window():
    rec = recording(np.arange(3000.))

    beats = segment_beats(rec, [1000], [70.])

    assert len(beats) == 1
    assert beats[0].samples[0] == 965.
    assert beats[0].samples[-1] == 1074.
    assert beats[0].r_index == 35
    assert beats[0].source_time_s == pytest.approx(965 / 200.)


def test_segment_drops_boundary_beats():
    rec = recording(np.arange(3000.))
    report = SegmentationReport()

    beats = segment_beats(rec, [20, 1000, 2990], [70., 70., 70.], report)

    assert len(beats) == 1
    assert report.dropped_boundary == 2
    assert report.segmented == 1


def test_segment_interior_peaks():
    rec = recording(np.zeros(4000))
    peaks = 100 + 160 * np.arange(20)

    beats = segment_beats(rec, peaks, np.full(20, 75.))

    assert len(beats) == 20

    for beat in beats:
        beat.check()


def test_average_beats_mean():
    averaged = average_beats([constant_beat(1, 60.), constant_beat(2, 70.), constant_beat(3, 80.)], 3)

    assert len(averaged) == 1
    np.testing.assert_allclose(averaged[0].samples, 2.)
    assert averaged[0].heart_rate_bpm == pytest.approx(70.)


def test_average_beats_identity():
    beats = [constant_beat(v, 60. + v) for v in range(5)]

    averaged = average_beats(beats, 1)

    for a, b in zip(averaged, beats):
        np.testing.assert_array_equal(a.samples, b.samples)
        assert a.heart_rate_bpm == b.heart_rate_bpm


def test_average_beats_count():
    assert len(average_beats([constant_beat(v) for v in range(12)], 10)) == 3


def test_average_beats_too_few():
    with pytest.warns(PipelineWarning):
        assert average_beats([constant_beat(1)] * 4, 10) == []


def test_t_peak_on_bump(make_beat):
    assert detect_t_peak(make_beat(t_peak_in_beat=85)) == 50


def test_t_peak_on_decreasing_tail(make_beat):
    beat = make_beat().replace(samples=np.linspace(1., 0., 110))

    assert detect_t_peak(beat) == 15


def test_t_peak_tie_goes_to_earlier_index(make_beat):
    samples = np.zeros(110)
    samples[70] = samples[90] = 0.5

    assert detect_t_peak(make_beat().replace(samples=samples)) == 35


def test_t_peak_recovered_on_synthetic(clean_recording):
    rec, truth = clean_recording

    beats, report = preprocess_recording(rec)

    expected = truth['t_samples'][0] - truth['r_samples'][0]

    assert report.averaged == len(beats) > 0
    assert all(abs(beat.t_peak_rel_r - expected) <= 2 for beat in beats)

    for beat in beats:
        beat.check()


def test_t_peaks_recovered_at_20_db():
    for k, params in enumerate(draw_subjects(4, seed=3)):

        for condition in ('sit', 'stand'):

            rec, truth = generate_recording(params, condition, 30., snr_db=20., rng=np.random.default_rng([k, 1]))

            beats, _ = preprocess_recording(rec)

            # Constant heart rate at rest
            expected = truth['t_samples'][0] - truth['r_samples'][0]

            assert len(beats) > 0
            assert all(abs(beat.t_peak_rel_r - expected) <= 2 for beat in beats), (k, condition)


def test_r_peaks_recovered_at_20_db_on_drawn_subjects():
    for k, params in enumerate(draw_subjects(4, seed=3)):

        for condition, duration_s in [('sit', 30.), ('exercise', 120.)]:

            rec, truth = generate_recording(params, condition, duration_s, snr_db=20., rng=np.random.default_rng([k, 2]))

            peaks = detect_r_peaks(bandpass_filter(rec))

            r = truth['r_samples']
            interior = r[(r >= 50) & (r < len(rec.samples) - 50)]

            assert np.mean([np.min(np.abs(peaks - p)) <= 2 for p in interior]) >= 0.99, (k, condition)


def locations_group(locations):
    return [constant_beat(0).replace(t_peak_rel_r=t) for t in locations]


def test_zscore_gate_removes_outlier():
    locations = [40 + (i % 3) - 1 for i in range(100)] + [75]

    gated = zscore_gate_t_peaks({'rest': locations_group(locations)}, 3.)

    kept = [beat.t_peak_rel_r for beat in gated['rest']]

    assert 75 not in kept
    assert len(kept) == 100


def test_zscore_gate_degenerate_std():
    gated = zscore_gate_t_peaks({'rest': locations_group([40] * 30)}, 3.)

    assert len(gated['rest']) == 30


def test_zscore_gate_uniform_locations():
    gated = zscore_gate_t_peaks({'rest': locations_group([38 + i % 5 for i in range(50)])}, 3.)

    assert len(gated['rest']) == 50


def test_zscore_gate_small_group():
    with pytest.warns(PipelineWarning):
        gated = zscore_gate_t_peaks({'exercise': locations_group([30, 31, 70])}, 3.)

    assert len(gated['exercise']) == 3


def test_zscore_gate_reference_statistics():
    reference = {'exercise': locations_group([30 + i % 3 for i in range(20)])}

    gated = zscore_gate_t_peaks({'exercise': locations_group([31, 45])}, 3., reference)

    assert [beat.t_peak_rel_r for beat in gated['exercise']] == [31]


def test_gate_dataset_uses_auxiliary_exercise_statistics():
    auxiliary = [constant_beat(0).replace(subject_id='A01', session='S3', condition='exercise', t_peak_rel_r=30 + i % 3)
                 for i in range(20)]
    target = [constant_beat(0).replace(session='S3', condition='exercise', t_peak_rel_r=t) for t in [31, 60]]

    retained = gate_dataset(auxiliary + target, roster={'T01': 'target', 'A01': 'auxiliary'})

    assert len(retained) == 21
    assert [beat.t_peak_rel_r for beat in retained if beat.subject_id == 'T01'] == [31]
