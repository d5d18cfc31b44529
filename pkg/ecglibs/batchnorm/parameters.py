# EpyECG/ecglibs/batchnorm/parameters.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.optimizer import adam_update


def batchnorm_compute_shapes(layer, A):
    """Compute forward shapes and dimensions from input for layer.
    """
    X = A    # Input of current layer

    layer.fs['X'] = X.shape    # (m, l, d) or (m, d)

    layer.d['d'] = layer.fs['X'][-1]    # Number of channels (d)

    layer.fs['gamma'] = layer.fs['beta'] = (layer.d['d'], )

    return None


def batchnorm_initialize_parameters(layer):
    """Initialize parameters and running statistics for layer.
    """
    layer.p['gamma'] = np.ones(layer.fs['gamma'])
    layer.p['beta'] = np.zeros(layer.fs['beta'])

    layer.s['mean'] = np.zeros(layer.fs['gamma'])
    layer.s['var'] = np.ones(layer.fs['gamma'])

    return None


def batchnorm_compute_gradients(layer):
    """Compute gradients with respect to scale and shift for layer.
    """
    dA = layer.bc['dA']
    Xh = layer.fc['Xh']

    axes = tuple(range(dA.ndim - 1))

    layer.g['dgamma'] = np.sum(dA * Xh, axis=axes)    # dL/dgamma
    layer.g['dbeta'] = np.sum(dA, axis=axes)          # dL/dbeta

    return None


def batchnorm_update_parameters(layer):
    """Update parameters from gradients for layer.
    """
    adam_update(layer)

    return None
