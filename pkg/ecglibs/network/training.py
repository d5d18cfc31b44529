# EpyECG/ecglibs/network/training.py
# Standard library imports
import math

# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import TrainingError
from ecglibs.network.evaluate import (
    batch_evaluate,
    model_evaluate,
)
from ecglibs.network.report import model_report


def model_training(model, epochs, patience):
    """Perform the training of the network with early stopping on validation loss.

    An epoch improves if its validation loss is strictly lower than the best
    so far. Training stops after `patience` epochs without improvement, and
    parameters and normalization statistics of the best epoch are restored.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param epochs: Maximum number of training epochs.
    :type epochs: int

    :param patience: Number of epochs without improvement before stopping.
    :type patience: int

    :raises TrainingError: On non-finite loss.
    """
    best_loss = math.inf
    best_state = model_state(model)
    wait = 0

    # Iterate over training epochs
    for model.e in range(epochs):

        # Shuffle dtrain and prepare new batches
        model.embedding.training_batches()

        costs, accs = [], []

        # Iterate over training batches
        for batch in model.embedding.batch_dtrain:

            # Pass through every layer.forward() methods
            A = model.forward(batch.X, training=True)

            cost, acc = batch_evaluate(model, batch.Y, A)

            if not math.isfinite(cost):
                raise TrainingError(nonfinite_diagnostic(model, batch))

            # Compute derivative of loss
            dA = model.training_loss(batch.Y, A, deriv=True)

            # Pass through every layer.backward() methods
            model.backward(dA)

            costs.append(cost)
            accs.append(acc)

        # Validation in inference mode
        val_cost, val_acc = model_evaluate(model, model.embedding.dval)

        record = {
            'epoch': model.e + 1,
            'lrate': model.layers[-1].lrate[model.e],
            'train_loss': float(np.mean(costs)),
            'val_loss': val_cost,
            'train_accuracy': float(np.mean(accs)),
            'val_accuracy': val_acc,
        }

        model.history.append(record)

        if val_cost < best_loss:
            best_loss = val_cost
            best_state = model_state(model)
            wait = 0
        else:
            wait += 1

        stop = (wait >= patience)

        # Tabular report for dsets
        model_report(model, record, last=(stop or model.e == epochs - 1))

        if stop:
            break

    model_restore(model, best_state)

    return None


def model_state(model):
    """Copy parameters and normalization running statistics of layers.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :return: Per-layer copies.
    :rtype: list[dict[str, :class:`numpy.ndarray`]]
    """
    state = []

    for layer in model.layers:

        saved = {'p_' + k: v.copy() for k, v in layer.p.items()}

        for k in ['mean', 'var']:
            if k in layer.s:
                saved['s_' + k] = layer.s[k].copy()

        state.append(saved)

    return state


def model_restore(model, state):
    """Restore parameters and statistics from :func:`model_state`.
    """
    for layer, saved in zip(model.layers, state):

        for key, value in saved.items():

            cache = layer.p if key.startswith('p_') else layer.s
            cache[key[2:]] = value.copy()

    return None


def nonfinite_diagnostic(model, batch):
    """Build diagnostic message for non-finite loss.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param batch: Current training batch.
    :type batch: :class:`ecglibs.commons.models.dataSet`

    :return: Message naming epoch, batch and first layer with non-finite output.
    :rtype: str
    """
    culprit = 'loss'

    for layer in model.layers:
        if not np.all(np.isfinite(layer.fc['A'])):
            culprit = layer.name
            break

    message = 'non-finite loss at epoch %s, batch %s, first non-finite output in %s' % (
        model.e + 1, batch.name, culprit)

    return message
