# EpyECG/ecglibs/evaluation/report.py
# Standard library imports
import json

# Related third party imports
from tabulate import tabulate

# Local application/library specific imports
from ecglibs.evaluation.models import (
    EvalReport,
    REPORT_CONDITIONS,
)


# Column titles of report conditions
CONDITION_TITLES = {
    'sit': 'Sit',
    'exercise_phase_1': 'Ex_P1',
    'exercise_phase_2': 'Ex_P2',
    'supine': 'Supine',
    'tripod': 'Tripod',
}


def aggregate_runs(runs, ablation_id, classifier_augmented):
    """Report from per-run identification rates.

    :param runs: Identification rate by condition of each run.
    :type runs: list[dict[str, :class:`fractions.Fraction` or NoneType]]

    :param ablation_id: Configuration in :data:`ecglibs.evaluation.models.ABLATIONS`.
    :type ablation_id: str

    :param classifier_augmented: Whether Target beats were augmented for the classifier.
    :type classifier_augmented: bool

    :return: Report over runs.
    :rtype: :class:`ecglibs.evaluation.models.EvalReport`
    """
    report = EvalReport(ablation_id, classifier_augmented)

    for idr_by_condition in runs:
        report.add_run(idr_by_condition)

    return report


def as_rows(reports):
    """Normalize reports to (classifier scenario, report) pairs.
    """
    rows = []

    for item in reports:
        if isinstance(item, EvalReport):
            rows.append((item.classifier_augmented, item))
        else:
            rows.append(tuple(item))

    return rows


def render_report(reports, metric='idr'):
    """Text table of methods against conditions, mean and standard deviation in percent.

    :param reports: Reports, or (classifier scenario, report) pairs.
    :type reports: list

    :param metric: One of `idr`, `fir`, defaults to `idr`.
    :type metric: str, optional

    :return: Rendered table, absent entries as '-'.
    :rtype: str
    """
    headers = ['Method', 'Classifier'] + [CONDITION_TITLES[c] for c in REPORT_CONDITIONS] + ['Runs']

    table = []

    for classifier_augmented, report in as_rows(reports):

        row = [report.ablation_id, 'augmented' if classifier_augmented else 'genuine']

        for condition in REPORT_CONDITIONS:

            mean = report.mean(condition, metric)

            if mean is None:
                row.append('-')
            else:
                row.append('%.2f ± %.2f' % (100 * mean, 100 * report.std(condition, metric)))

        row.append(report.runs)

        table.append(row)

    logs = tabulate(table, headers=headers, stralign='center', tablefmt='pretty')

    return logs


def report_to_json(reports):
    """Machine-readable reports.

    Per-run identification rates are written as exact 'correct/trials' fractions.

    :param reports: Reports, or (classifier scenario, report) pairs.
    :type reports: list

    :return: JSON document with sorted keys.
    :rtype: str
    """
    document = []

    for classifier_augmented, report in as_rows(reports):

        conditions = {}

        for condition in REPORT_CONDITIONS:
            conditions[condition] = {
                'idr_runs': [None if v is None else '%s/%s' % (v.numerator, v.denominator)
                             for v in report.idr[condition]],
                'idr_mean': report.mean(condition, 'idr'),
                'idr_std': report.std(condition, 'idr'),
                'fir_mean': report.mean(condition, 'fir'),
                'fir_std': report.std(condition, 'fir'),
            }

        document.append({
            'ablation_id': report.ablation_id,
            'classifier_augmented': bool(classifier_augmented),
            'runs': report.runs,
            'conditions': conditions,
        })

    return json.dumps(document, indent=2, sort_keys=True)
