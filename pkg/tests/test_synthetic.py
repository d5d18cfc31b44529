# EpyECG/tests/test_synthetic.py
# Related third party imports
import numpy as np
import pytest

# Local application/library specific imports
from ecglibs.beats.pipeline import preprocess_recording
from ecglibs.commons.errors import ArgumentError, ConfigurationError
from ecglibs.settings import se_corpus
from ecglibs.synthetic.generator import (
    EXERCISE_TAU_S,
    draw_subjects,
    generate_corpus,
    generate_recording,
    rest_template,
)
from ecglibs.synthetic.models import SubjectParams


SHORT = dict(se_corpus, rest_duration_s=5., exercise_duration_s=5.)


def test_t_center_moves_with_heart_rate(subject_params):
    assert subject_params.t_center_ms(60.) == 320.
    assert subject_params.t_center_ms(140.) == 240.

    # 64 samples after R at 200 Hz
    assert subject_params.t_center_ms(60.) * 200. / 1000. == 64.


def test_ground_truth_t_samples(clean_recording, subject_params):
    rec, truth = clean_recording

    expected = np.rint([subject_params.t_center_ms(hr) * 0.2 for hr in truth['heart_rate_bpm']])

    np.testing.assert_array_equal(truth['t_samples'] - truth['r_samples'], expected)
    assert rec.subject_id == 'T01'
    assert rec.duration_s == pytest.approx(30.)


def test_rest_heart_rate_in_range(clean_recording, subject_params):
    _, truth = clean_recording

    lo, hi = subject_params.hr_rest

    assert np.all((truth['heart_rate_bpm'] >= lo) & (truth['heart_rate_bpm'] <= hi))


def test_r_peaks_at_clean_maxima(clean_recording):
    rec, truth = clean_recording

    clean = truth['clean']

    for r in truth['r_samples'][1:-1]:
        assert abs(r - 20 + int(np.argmax(clean[r - 20:r + 21]))) <= 1


def test_exercise_heart_rate_decays(subject_params):
    _, truth = generate_recording(subject_params, 'exercise', 120., snr_db=np.inf,
                                  rng=np.random.default_rng(1))

    hr = truth['heart_rate_bpm']

    assert 120. <= hr[0] <= 130.
    assert np.all(np.diff(hr) <= 0)
    assert 80. <= hr[-1] <= 90.


def test_noise_level_matches_snr(subject_params):
    _, truth = generate_recording(subject_params, 'sit', 60., snr_db=20., rng=np.random.default_rng(2))

    snr = 10 * np.log10(np.mean(truth['clean'] ** 2) / np.mean(truth['noise'] ** 2))

    assert snr == pytest.approx(20., abs=1.)


def test_recording_is_deterministic(subject_params):
    a, _ = generate_recording(subject_params, 'stand', 10., rng=np.random.default_rng(3))
    b, _ = generate_recording(subject_params, 'stand', 10., rng=np.random.default_rng(3))

    np.testing.assert_array_equal(a.samples, b.samples)


def test_recording_errors(subject_params):
    with pytest.raises(ArgumentError):
        generate_recording(subject_params, 'sit', 4.)

    with pytest.raises(ArgumentError):
        generate_recording(subject_params, 'run', 10.)


def test_subject_params_errors(subject_params):
    waves = dict(subject_params.waves)

    with pytest.raises(ConfigurationError):
        SubjectParams(waves, 1.0, 320., (60., 80.), (120., 130.))

    with pytest.raises(ConfigurationError):
        SubjectParams(waves, -1.0, 320., (80., 60.), (120., 130.))

    with pytest.raises(ConfigurationError):
        SubjectParams(dict(waves, T=(1.2, 0., 40.)), -1.0, 320., (60., 80.), (120., 130.))

    # T center leaves the search window
    with pytest.raises(ConfigurationError):
        SubjectParams(waves, -1.0, 400., (60., 80.), (120., 130.))


def test_subjects_are_separated():
    subjects = draw_subjects(8, seed=0)

    templates = [rest_template(params) for params in subjects]

    for i in range(len(templates)):
        for j in range(i):
            assert np.corrcoef(templates[i], templates[j])[0, 1] <= 0.98


def test_corpus_roster_and_recordings():
    recordings, roster, params = generate_corpus(n_subjects=3, n_auxiliary=2, seed=0, se_corpus=SHORT)

    assert roster == {'T01': 'target', 'T02': 'target', 'T03': 'target',
                      'A01': 'auxiliary', 'A02': 'auxiliary'}
    assert sorted(params) == sorted(roster)

    # Ten Target recordings, three Auxiliary recordings
    assert len(recordings) == 3 * 10 + 2 * 3

    aux = [(rec.session, rec.condition) for rec, _ in recordings if rec.subject_id == 'A01']

    assert aux == [('S1', 'sit'), ('S2', 'stand'), ('S3', 'exercise')]


def test_corpus_is_deterministic():
    a, _, _ = generate_corpus(n_subjects=2, n_auxiliary=0, seed=5, se_corpus=SHORT)
    b, _, _ = generate_corpus(n_subjects=2, n_auxiliary=0, seed=5, se_corpus=SHORT)

    for (rec_a, _), (rec_b, _) in zip(a, b):
        np.testing.assert_array_equal(rec_a.samples, rec_b.samples)


def test_corpus_errors():
    with pytest.raises(ArgumentError):
        generate_corpus(n_subjects=1, se_corpus=SHORT)

    with pytest.raises(ArgumentError):
        generate_corpus(n_subjects=2, n_auxiliary=-1, se_corpus=SHORT)


def test_t_wave_narrows_with_heart_rate(subject_params):
    # Interval from 75 ms to T center: 245 ms at 60 bpm, 165 ms at 140 bpm
    assert subject_params.t_width_ms(60.) == 40.
    assert subject_params.t_width_ms(140.) == pytest.approx(40. * 165. / 245.)

    steep = SubjectParams(subject_params.waves, -2.5, 320., (60., 80.), (120., 130.))

    # Scale floor
    assert steep.t_width_ms(150.) == pytest.approx(40. * 0.3)


def test_drawn_subjects_recover_within_two_minutes():
    for params in draw_subjects(26, seed=0):

        excess = (params.hr_active[1] - params.hr_rest[1]) * np.exp(-120. / EXERCISE_TAU_S)

        assert excess <= 10.
        assert params.t_center_ms(params.hr_active[1]) > 100.


def test_corpus_noise_level_matches_snr():
    recordings, _, _ = generate_corpus(n_subjects=3, n_auxiliary=1, seed=2, se_corpus=SHORT)

    for rec, truth in recordings:
        snr = 10 * np.log10(np.mean(truth['clean'] ** 2) / np.mean(truth['noise'] ** 2))

        assert snr == pytest.approx(se_corpus['snr_db'], abs=1.), rec.condition


def test_t_slope_recovered_from_detected_t_peaks():
    for k, params in enumerate(draw_subjects(3, seed=4)):

        hr, t_peak = [], []

        for condition, duration_s in [('supine', 40.), ('sit', 40.), ('stand', 40.), ('exercise', 120.)]:

            rec, _ = generate_recording(params, condition, duration_s, snr_db=20., rng=np.random.default_rng([k, len(hr)]))

            for beat in preprocess_recording(rec)[0]:
                # T-wave fuses with the next P-wave at high heart rate
                if beat.heart_rate_bpm <= 105.:
                    hr.append(beat.heart_rate_bpm)
                    t_peak.append(beat.t_peak_rel_r)

        slope = np.polyfit(hr, t_peak, 1)[0]

        # ms per bpm to samples per bpm at 200 Hz
        expected = params.t_slope * 0.2

        assert slope == pytest.approx(expected, rel=0.15)
