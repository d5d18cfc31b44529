# EpyECG/ecglibs/beats/pipeline.py
# Local application/library specific imports
from ecglibs.beats.detection import (
    compute_heart_rates,
    detect_r_peaks,
    remove_amplitude_outliers,
)
from ecglibs.beats.fiducials import annotate_t_peaks, zscore_gate_t_peaks
from ecglibs.beats.models import DetectionConfig, SegmentationReport
from ecglibs.beats.segmentation import average_beats, segment_beats
from ecglibs.commons.logs import warning_logs
from ecglibs.evaluation.models import SplitPlan
from ecglibs.signals.filtering import bandpass_filter


def preprocess_recording(rec, filter_spec=None, cfg=None):
    """Extract averaged and annotated heartbeats from a raw recording.

    Filter, detect R-peaks, gate amplitudes, compute heart rates, segment,
    average and locate T-peaks.

    :param rec: Raw recording.
    :type rec: :class:`ecglibs.signals.models.RawRecording`

    :param filter_spec: Band-pass settings, defaults to `None` for defaults.
    :type filter_spec: :class:`ecglibs.signals.models.FilterSpec` or NoneType, optional

    :param cfg: Extraction settings, defaults to `None` for defaults.
    :type cfg: :class:`ecglibs.beats.models.DetectionConfig` or NoneType, optional

    :return: Beats and counts along extraction.
    :rtype: tuple[list[:class:`ecglibs.beats.models.BeatTemplate`], :class:`ecglibs.beats.models.SegmentationReport`]
    """
    cfg = cfg or DetectionConfig()

    report = SegmentationReport()

    # (1) Band-pass
    filtered = bandpass_filter(rec, filter_spec)

    # (2) R-peaks
    peaks = detect_r_peaks(filtered)
    report.detected = len(peaks)

    # (3) Amplitude gate
    retained = remove_amplitude_outliers(peaks, filtered, cfg.iqr_factor)
    report.gated = len(peaks) - len(retained)

    if len(retained) < 2:
        warning_logs('%s/%s/%s: %s R-peaks retained, no beat extracted'
                     % (rec.subject_id, rec.session, rec.condition, len(retained)))
        return [], report

    # (4) Heart rates and segmentation
    heart_rates = compute_heart_rates(retained, rec.sample_rate_hz)

    beats = segment_beats(filtered, retained, heart_rates, report)

    # (5) Sliding average
    beats = average_beats(beats, cfg.averaging_window_W)
    report.averaged = len(beats)

    # (6) T-peaks
    beats = annotate_t_peaks(beats, rec.sample_rate_hz)

    return beats, report


def gate_groups(beats, roster, cfg, plan):
    """Form z-score groups and their reference statistics.

    :return: Groups to gate and reference beats by group name.
    :rtype: tuple[dict]
    """
    def is_auxiliary(beat):
        return roster.get(beat.subject_id) == 'auxiliary'

    def is_rest_train(beat):
        if beat.condition == 'exercise':
            return False
        return is_auxiliary(beat) or plan.is_train(beat.session, beat.condition)

    groups, reference = {}, {}

    # Rest-state beats against rest training statistics
    for beat in beats:

        if beat.condition == 'exercise':
            continue

        name = 'rest:' + beat.subject_id if cfg.zscore_per_subject else 'rest'

        groups.setdefault(name, []).append(beat)
        reference.setdefault(name, [])

        if is_rest_train(beat):
            reference[name].append(beat)

    # Exercise beats against auxiliary exercise statistics
    exercise = [beat for beat in beats if beat.condition == 'exercise']

    if exercise:
        groups['exercise'] = exercise
        reference['exercise'] = [beat for beat in exercise if is_auxiliary(beat)]

        if not reference['exercise']:
            warning_logs('no auxiliary exercise beats, exercise gate uses pooled exercise beats')
            reference['exercise'] = exercise

    return groups, reference


def gate_dataset(beats, roster=None, cfg=None, plan=None):
    """Apply the T-peak z-score gate to a whole beat dataset.

    Rest-state beats are gated with the statistics of the pooled rest-state
    training beats, or per subject when `cfg.zscore_per_subject` is set.
    Exercise beats are gated with the statistics of the auxiliary subjects'
    exercise beats.

    :param beats: Annotated beats of all recordings.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param roster: Role by subject identifier, defaults to `None` where all subjects are targets.
    :type roster: dict[str, str] or NoneType, optional

    :param cfg: Extraction settings, defaults to `None` for defaults.
    :type cfg: :class:`ecglibs.beats.models.DetectionConfig` or NoneType, optional

    :param plan: Split plan defining training sessions, defaults to `None` for defaults.
    :type plan: :class:`ecglibs.evaluation.models.SplitPlan` or NoneType, optional

    :return: Retained beats in input order.
    :rtype: list[:class:`ecglibs.beats.models.BeatTemplate`]
    """
    roster = roster or {}
    cfg = cfg or DetectionConfig()
    plan = plan or SplitPlan()

    groups, reference = gate_groups(beats, roster, cfg, plan)

    gated = zscore_gate_t_peaks(groups, cfg.zscore_threshold, reference)

    kept = {id(beat) for group in gated.values() for beat in group}

    retained = [beat for beat in beats if id(beat) in kept]

    return retained
