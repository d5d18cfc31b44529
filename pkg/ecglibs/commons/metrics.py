# EpyECG/ecglibs/commons/metrics.py
# Standard library imports
from fractions import Fraction

# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import ArgumentError


def accuracy(Y, A):
    """Accuracy of prediction.

    :param Y: One-hot true labels for a set of samples.
    :type Y: :class:`numpy.ndarray`

    :param A: Output of forward propagation.
    :type A: :class:`numpy.ndarray`

    :return: Accuracy for each sample.
    :rtype: :class:`numpy.ndarray`
    """
    P = np.argmax(A, axis=1)
    y = np.argmax(Y, axis=1)

    accuracy = (P - y == 0)

    return accuracy


def compute_idr(pred_labels, true_labels):
    """Identification rate: number of correct predictions over number of trials.

    Computed on counts as an exact fraction, so that ``idr + compute_fir(idr) == 1``.

    :param pred_labels: Predicted subject labels.
    :type pred_labels: list or :class:`numpy.ndarray`

    :param true_labels: True subject labels.
    :type true_labels: list or :class:`numpy.ndarray`

    :raises ArgumentError: If lengths differ.

    :return: Identification rate, `None` when there is no trial.
    :rtype: :class:`fractions.Fraction` or NoneType
    """
    pred_labels = np.asarray(pred_labels)
    true_labels = np.asarray(true_labels)

    if pred_labels.shape != true_labels.shape:
        raise ArgumentError('predicted and true labels differ in length: %s != %s'
                            % (pred_labels.shape, true_labels.shape))

    # Undefined, reported as absent
    if pred_labels.size == 0:
        return None

    correct = int(np.count_nonzero(pred_labels == true_labels))

    idr = Fraction(correct, int(pred_labels.size))

    return idr


def compute_fir(idr):
    """False identification rate.

    :param idr: Identification rate.
    :type idr: :class:`fractions.Fraction` or NoneType

    :return: False identification rate.
    :rtype: :class:`fractions.Fraction` or NoneType
    """
    fir = None if idr is None else 1 - idr

    return fir
