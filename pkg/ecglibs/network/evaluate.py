# EpyECG/ecglibs/network/evaluate.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.metrics import accuracy


# Samples per inference chunk
INFERENCE_CHUNK = 512


def model_infer(model, X, chunk=INFERENCE_CHUNK):
    """Inference mode forward propagation by chunks of samples.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param X: Set of sample features.
    :type X: :class:`numpy.ndarray`

    :param chunk: Number of samples per forward pass.
    :type chunk: int, optional

    :return: Output of forward propagation.
    :rtype: :class:`numpy.ndarray`
    """
    X = np.asarray(X, dtype=float)

    if len(X) <= chunk:
        return model.forward(X)

    A = np.concatenate([model.forward(X[i:i+chunk]) for i in range(0, len(X), chunk)])

    return A


def model_evaluate(model, dset):
    """Compute loss and accuracy for a labeled set in inference mode.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param dset: Labeled set.
    :type dset: :class:`ecglibs.commons.models.dataSet`

    :return: Mean loss and mean accuracy.
    :rtype: tuple[float]
    """
    # Output probs
    dset.A = model_infer(model, dset.X)

    # Decisions
    dset.P = np.argmax(dset.A, axis=1)

    return batch_evaluate(model, dset.Y, dset.A)


def batch_evaluate(model, Y, A):
    """Compute metrics for current batch.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param Y: True labels for batch samples.
    :type Y: :class:`numpy.ndarray`

    :param A: Output of forward propagation for batch.
    :type A: :class:`numpy.ndarray`

    :return: Mean loss and mean accuracy.
    :rtype: tuple[float]
    """
    # Per sample 1D array to scalar
    cost = float(np.mean(model.training_loss(Y, A)))

    # Per sample 1D array to scalar
    acc = float(np.mean(accuracy(Y, A)))

    return cost, acc
