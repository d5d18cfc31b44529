# EpyECG/tests/test_augment.py
# Related third party imports
import numpy as np
import pytest

# Local application/library specific imports
from ecglibs.augment.fitting import fit_global, fit_subjects, fit_tpeak_vs_hr
from ecglibs.augment.models import AugmentationConstants, AugmentationRange, SubjectFit
from ecglibs.augment.ranges import select_range, select_ranges, uniform_range
from ecglibs.augment.resampling import augment_beat, augment_subject, normalize_st_duration
from ecglibs.beats.fiducials import detect_t_peak
from ecglibs.beats.models import BeatTemplate
from ecglibs.commons.errors import ArgumentError, ConfigurationError
from ecglibs.commons.logs import PipelineWarning


def point(make_beat, hr, t_peak, condition='sit', subject_id='T01'):
    return make_beat(hr=hr, t_peak_rel_r=t_peak, condition=condition, subject_id=subject_id)


def fits(t_b, t_ub):
    """Flat fits evaluating to t_b and t_ub at any heart rate.
    """
    return {
        'balanced': SubjectFit('T01', 0., t_b, 'balanced'),
        'unbalanced': SubjectFit('T01', 0., t_ub, 'unbalanced'),
    }


def test_fit_collinear_points(make_beat):
    beats = [point(make_beat, 60, 70), point(make_beat, 80, 60, 'stand'), point(make_beat, 100, 50, 'stand')]

    fit = fit_tpeak_vs_hr(beats, 'unbalanced')

    assert fit.slope == pytest.approx(-0.5)
    assert fit.intercept == pytest.approx(100.)
    assert not fit.degenerate


@pytest.mark.parametrize('weighting', ['balanced', 'unbalanced'])
def test_fit_sit_stand_example(make_beat, weighting):
    beats = [point(make_beat, 60, 70), point(make_beat, 60, 70), point(make_beat, 80, 60, 'stand')]

    fit = fit_tpeak_vs_hr(beats, weighting)

    assert fit.slope == pytest.approx(-0.5)
    assert fit.intercept == pytest.approx(100.)
    assert fit.kind == weighting


def test_balanced_fit_weights_positions_equally(make_beat):
    sit = [point(make_beat, 60, 70), point(make_beat, 62, 69), point(make_beat, 64, 71), point(make_beat, 66, 66)]
    stand = [point(make_beat, 85, 58, 'stand')]

    balanced = fit_tpeak_vs_hr(sit + stand, 'balanced')
    unbalanced = fit_tpeak_vs_hr(sit + stand, 'unbalanced')

    assert balanced.slope != pytest.approx(unbalanced.slope)


def test_balanced_equals_unbalanced_with_equal_counts(make_beat):
    beats = [point(make_beat, 60, 70), point(make_beat, 63, 66),
             point(make_beat, 80, 61, 'stand'), point(make_beat, 84, 57, 'stand')]

    balanced = fit_tpeak_vs_hr(beats, 'balanced')
    unbalanced = fit_tpeak_vs_hr(beats, 'unbalanced')

    assert balanced.slope == pytest.approx(unbalanced.slope)
    assert balanced.intercept == pytest.approx(unbalanced.intercept)


def test_fit_invariant_to_duplication(make_beat):
    rng = np.random.default_rng(4)

    beats = [point(make_beat, hr, int(t), c)
             for hr, t, c in zip(rng.uniform(55, 95, 30), rng.integers(40, 70, 30), ['sit', 'stand'] * 15)]

    for weighting in ['balanced', 'unbalanced']:
        once = fit_tpeak_vs_hr(beats, weighting)
        twice = fit_tpeak_vs_hr(beats + beats, weighting)

        assert twice.slope == pytest.approx(once.slope)
        assert twice.intercept == pytest.approx(once.intercept)


def test_fit_degenerate_spread(make_beat):
    fit = fit_tpeak_vs_hr([point(make_beat, 70, 60), point(make_beat, 70, 62)])

    assert fit.degenerate


def test_fit_subjects_and_global(make_beat):
    beats = [point(make_beat, 60, 70), point(make_beat, 80, 60, 'stand'),
             point(make_beat, 60, 72, subject_id='T02'), point(make_beat, 80, 62, 'stand', subject_id='T02'),
             point(make_beat, 120, 40, 'exercise', subject_id='T02')]

    by_subject = fit_subjects(beats)

    assert sorted(by_subject) == ['T01', 'T02']
    assert by_subject['T02']['balanced'].slope == pytest.approx(-0.5)

    fit = fit_global(beats)

    assert fit.kind == 'global'
    assert fit.subject_id == '*'
    assert fit.slope == pytest.approx(-0.5)


def test_select_range_picks_balanced():
    rng_range = select_range(fits(28, 33), standing_tpeaks=[50, 52, 54])

    assert (rng_range.t_min, rng_range.t_max) == (28, 52)


def test_select_range_picks_unbalanced_and_clamps():
    rng_range = select_range(fits(22, 24), standing_tpeaks=[50, 52, 54])

    assert rng_range.t_min == 25


def test_select_range_tie_goes_to_balanced():
    rng_range = select_range(fits(27, 31), standing_tpeaks=[40])

    assert rng_range.t_min == 27


def test_select_range_without_standing_beats():
    with pytest.warns(PipelineWarning):
        rng_range = select_range(fits(28, 33), standing_tpeaks=[], all_tpeaks=[44, 46, 60])

    assert rng_range.t_max == 46


def test_select_range_clamps_t_max():
    rng_range = select_range(fits(28, 33), standing_tpeaks=[74, 74, 74])

    assert rng_range.t_max == 73


def test_select_range_all_source():
    rng_range = select_range(fits(28, 33), standing_tpeaks=[60], all_tpeaks=[40, 42, 44], t_max_source='all')

    assert rng_range.t_max == 42


def test_select_range_degenerate_falls_back_to_global():
    degenerate = {
        'balanced': SubjectFit('T01', 0., 60., 'balanced', degenerate=True),
        'unbalanced': SubjectFit('T01', 0., 60., 'unbalanced', degenerate=True),
    }

    assert select_range(degenerate, standing_tpeaks=[50]).t_min == 29


def test_select_range_invariants_over_random_fits():
    rng = np.random.default_rng(11)
    consts = AugmentationConstants()

    for _ in range(200):
        fit_b = SubjectFit('T01', rng.uniform(-2, 1), rng.uniform(-50, 250), 'balanced')
        fit_ub = SubjectFit('T01', rng.uniform(-2, 1), rng.uniform(-50, 250), 'unbalanced')
        standing = rng.integers(15, 75, rng.integers(0, 6))

        rng_range = select_range({'balanced': fit_b, 'unbalanced': fit_ub}, consts, standing, [45])

        rng_range.check(consts.t_p_min)


def test_select_ranges_per_subject(make_beat):
    beats = [point(make_beat, 60, 60), point(make_beat, 80, 50, 'stand'), point(make_beat, 84, 48, 'stand')]

    ranges = select_ranges(fit_subjects(beats), beats)

    assert ranges['T01'].t_max == 49
    assert ranges['T01'].t_min >= 25


def test_uniform_range_clamps():
    with pytest.warns(PipelineWarning):
        rng_range = uniform_range('T01', [25, 80])

    assert (rng_range.t_min, rng_range.t_max) == (25, 73)


def test_constants_invariants():
    with pytest.raises(ConfigurationError):
        AugmentationConstants(hr_limit=0)

    with pytest.raises(ConfigurationError):
        AugmentationConstants(t_g_min=20, t_p_min=25)


def test_range_invariants():
    with pytest.raises(ArgumentError):
        AugmentationRange('T01', 30, 74).check()

    assert len(AugmentationRange('T01', 28, 52)) == 25


def test_augment_beat_moves_t_peak(make_beat):
    beat = make_beat(t_peak_in_beat=75, t_peak_rel_r=40)

    new = augment_beat(beat, 50)

    assert len(new.samples) == 110
    assert new.r_index == 35
    assert new.t_peak_rel_r == 50
    assert new.augmented
    assert abs(50 + int(np.argmax(new.samples[50:])) - 85) <= 1
    np.testing.assert_array_equal(new.samples[:50], beat.samples[:50])


def test_augment_beat_identity(make_beat):
    beat = make_beat(t_peak_in_beat=75, t_peak_rel_r=40)

    np.testing.assert_allclose(augment_beat(beat, 40).samples, beat.samples, atol=1e-9)


def test_augment_beat_implausible_scale(make_beat):
    beat = make_beat(t_peak_in_beat=85, t_peak_rel_r=50)

    with pytest.warns(PipelineWarning):
        assert augment_beat(beat, 25) is None


def test_augment_beat_requires_t_peak_after_origin(make_beat):
    with pytest.raises(ArgumentError):
        augment_beat(make_beat(t_peak_in_beat=50, t_peak_rel_r=15), 30)


def test_augment_subject_cardinality(make_beat):
    beats = [make_beat(t_peak_in_beat=75, t_peak_rel_r=40, source_time_s=i) for i in range(5)]

    out = augment_subject(beats, AugmentationRange('T01', 28, 30))

    assert len(out) == 20
    assert sum(beat.augmented for beat in out) == 15
    assert out[:5] == beats


def test_augment_subject_range_of_worked_example(make_beat):
    out = augment_subject([make_beat(t_peak_in_beat=75, t_peak_rel_r=40)], AugmentationRange('T01', 28, 52))

    augmented = [beat for beat in out if beat.augmented]

    assert len(augmented) == 25
    assert [beat.t_peak_rel_r for beat in augmented] == list(range(28, 53))

    for beat in augmented:
        assert abs(int(np.argmax(beat.samples[50:])) + 50 - (beat.t_peak_rel_r + 35)) <= 1
        np.testing.assert_array_equal(beat.samples[:50], out[0].samples[:50])


def test_augment_subject_duplicates_at_same_t_peak(make_beat):
    beats = [make_beat(t_peak_in_beat=65, t_peak_rel_r=30)] * 3

    out = augment_subject(beats, AugmentationRange('T01', 30, 30))

    assert len(out) == 6

    for original, augmented in zip(out[:3], out[3:]):
        np.testing.assert_allclose(augmented.samples, original.samples, atol=1e-9)


def test_augment_subject_empty_range(make_beat):
    beats = [make_beat(t_peak_in_beat=75, t_peak_rel_r=40)]

    assert augment_subject(beats, AugmentationRange('T01', 30, 29)) == beats


def test_augment_subject_cap(make_beat):
    beats = [make_beat(t_peak_in_beat=75, t_peak_rel_r=40, source_time_s=i) for i in range(5)]

    out = augment_subject(beats, AugmentationRange('T01', 28, 52), max_per_subject=10)

    assert len(out) == 15


def test_normalize_st_duration(make_beat):
    fit = SubjectFit('T01', -0.5, 100., 'balanced')

    beats = [make_beat(t_peak_in_beat=t + 35, t_peak_rel_r=t) for t in [40, 50, 60, 70]]

    normalized = normalize_st_duration(beats, fit, 80.)

    assert len(normalized) == 4
    assert all(abs(detect_t_peak(beat) - 60) <= 1 for beat in normalized)
    np.testing.assert_allclose(normalized[2].samples, beats[2].samples, atol=1e-9)


def test_normalize_rejects_degenerate_fit(make_beat):
    with pytest.raises(ArgumentError):
        normalize_st_duration([make_beat(t_peak_rel_r=40)], SubjectFit('T01', 0., 50., 'balanced', degenerate=True), 70.)


def test_normalize_skips_t_peak_at_origin(make_beat):
    fit = SubjectFit('T01', -0.5, 100., 'balanced')

    beats = [make_beat(t_peak_in_beat=80, t_peak_rel_r=45), make_beat(t_peak_in_beat=50, t_peak_rel_r=15)]

    with pytest.warns(PipelineWarning):
        normalized = normalize_st_duration(beats, fit, 80.)

    assert len(normalized) == 1
    assert abs(detect_t_peak(normalized[0]) - 60) <= 1


def test_normalize_skips_all_when_target_at_origin(make_beat):
    # Line evaluates to 15 at 170 bpm
    fit = SubjectFit('T01', -0.5, 100., 'balanced')

    with pytest.warns(PipelineWarning):
        assert normalize_st_duration([make_beat(t_peak_in_beat=80, t_peak_rel_r=45)], fit, 170.) == []


def test_augmented_t_peaks_on_random_beats():
    rng = np.random.default_rng(11)

    n = np.arange(110)

    for _ in range(1000):
        t_old = int(rng.integers(20, 74))

        # Valid target: inside the window and a plausible ST scale
        lo = max(16, int(np.ceil(15 + 0.3 * (t_old - 15))))
        hi = min(73, int(np.floor(15 + 3.0 * (t_old - 15))))
        t_new = int(rng.integers(lo, hi + 1))

        samples = rng.normal(0., 0.05, 110)
        samples[:50] += rng.normal(0., 0.2, 50)
        samples[50:] = rng.uniform(0.2, 0.8) * np.exp(-0.5 * ((n[50:] - t_old - 35) / rng.uniform(2., 8.)) ** 2)
        samples[35] = 1.5

        beat = BeatTemplate(samples=samples, r_index=35, heart_rate_bpm=float(rng.uniform(50., 150.)),
                            subject_id='T01', session='S1', condition='sit', source_time_s=0., t_peak_rel_r=t_old)

        new = augment_beat(beat, t_new, warn=False)

        assert new is not None, (t_old, t_new)
        assert abs(detect_t_peak(new) - t_new) <= 1, (t_old, t_new)
        np.testing.assert_array_equal(new.samples[:50], samples[:50])
