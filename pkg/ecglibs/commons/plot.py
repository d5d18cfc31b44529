# EpyECG/ecglibs/commons/plot.py
# Standard library imports
import os

# Related third party imports
import matplotlib
matplotlib.use('Agg')
from matplotlib import pyplot as plt
import numpy as np

# Local application/library specific imports
from ecglibs.commons.logs import process_logs


def pyplot_history(history, path=None, title='Training'):
    """Plot loss and accuracy per epoch of a training run with matplotlib.

    :param history: Training history, one record per epoch.
    :type history: list[dict]

    :param path: Where to write the PNG file, defaults to `None` which does not write.
    :type path: str or NoneType, optional

    :param title: Figure title, defaults to 'Training'.
    :type title: str, optional

    :return: Figure.
    :rtype: :class:`matplotlib.figure.Figure`
    """
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))

    x = [record['epoch'] for record in history]

    # Iterate over metrics
    for ax, s in zip(axes, ['loss', 'accuracy']):

        # Iterate over datasets
        for dname in ['train', 'val']:
            y = [record['%s_%s' % (dname, s)] for record in history]

            ax.plot(x, y, label=dname + ' ' + s)

        ax.set_xlabel('Epoch')
        ax.set_ylabel(s.capitalize())
        ax.legend()

    fig.suptitle(title)

    if path:
        fig.savefig(path)
        process_logs('Make: ' + path, level=1)

    plt.close(fig)

    return fig


def pyplot_fits(beats, fits, path=None, subject_id=None):
    """Plot T-peak location against heart rate with fit lines for one subject.

    :param beats: Beats of the subject.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param fits: Fits of the subject by kind, balanced and unbalanced.
    :type fits: dict[str, :class:`ecglibs.augment.models.SubjectFit`]

    :param path: Where to write the PNG file, defaults to `None` which does not write.
    :type path: str or NoneType, optional

    :param subject_id: Subject identifier shown in title, defaults to `None`.
    :type subject_id: str or NoneType, optional

    :return: Figure.
    :rtype: :class:`matplotlib.figure.Figure`
    """
    fig, ax = plt.subplots(figsize=(6, 4))

    # Scatter per condition
    for condition in sorted({beat.condition for beat in beats}):
        hr = [beat.heart_rate_bpm for beat in beats if beat.condition == condition]
        tp = [beat.t_peak_rel_r for beat in beats if beat.condition == condition]

        ax.scatter(hr, tp, s=6, label=condition)

    hr_range = np.linspace(min(b.heart_rate_bpm for b in beats), max(b.heart_rate_bpm for b in beats), 50)

    for kind in sorted(fits):
        ax.plot(hr_range, fits[kind].at(hr_range), label=kind + ' fit')

    ax.set_xlabel('Heart rate (bpm)')
    ax.set_ylabel('T-peak (samples after R)')
    ax.legend()

    ax.set_title(subject_id or beats[0].subject_id)

    if path:
        fig.savefig(path)
        process_logs('Make: ' + path, level=1)

    plt.close(fig)

    return fig


def plot_path(directory, name):
    """PNG path within directory, created if needed.
    """
    os.makedirs(directory, exist_ok=True)

    return os.path.join(directory, name + '.png')
