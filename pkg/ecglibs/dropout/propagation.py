# EpyECG/ecglibs/dropout/propagation.py
# Related third party imports
import numpy as np


def dropout_forward(layer, A):
    """Inverted dropout: kept values are scaled by 1 / (1 - d) during training.

    Identity at inference and for d = 0.
    """
    X = layer.fc['X'] = A

    d = layer.d['d']

    if not layer.training or d == 0:
        D = np.ones_like(X)
    else:
        D = (layer.np_rng.uniform(0, 1, X.shape) > d) / (1 - d)

    layer.fc['D'] = D

    A = layer.fc['A'] = X * D

    return A


def dropout_backward(layer, dX):
    """Gradients flow through kept values only, with the same scaling.
    """
    dA = layer.bc['dA'] = dX

    dX = layer.bc['dX'] = dA * layer.fc['D']

    return dX
