# EpyECG/ecglibs/convolution/backward.py
# Related third party imports
import numpy as np


def initialize_backward(layer, dX):
    """Backward cache initialization.

    :param layer: An instance of convolution layer.
    :type layer: :class:`ecglibs.convolution.models.Convolution`

    :param dX: Output of backward propagation from next layer.
    :type dX: :class:`numpy.ndarray`

    :return: Input of backward propagation for current layer.
    :rtype: :class:`numpy.ndarray`
    """
    dA = layer.bc['dA'] = dX

    return dA


def convolution_backward(layer, dX):
    """Backward propagate error gradients to previous layer.
    """
    # (1) Initialize cache
    dA = initialize_backward(layer, dX)    # (m, ol, u)

    # (2) Gradient of the loss with respect to Z
    dZ = layer.bc['dZ'] = dA * layer.activate(layer.fc['Z'], deriv=True)

    # (3) Initialize gradient with respect to padded input
    dXp = np.zeros_like(layer.fc['Xp'])    # (m, l + 2p, d)

    ol = dZ.shape[1]
    sw = layer.d['sw']

    # Iterate over filter taps
    for k in range(layer.d['fw']):

        # Input positions hit by tap k for each output position
        stop = k + sw * (ol - 1) + 1

        dXp[:, k:stop:sw, :] += np.dot(dZ, layer.p['W'][k].T)
        # (m, ol, u) . (u, d) -> (m, ol, d)

    # (4) Remove padding
    p = layer.d['p']
    dX = layer.bc['dX'] = dXp[:, p:dXp.shape[1] - p, :]

    return dX    # To previous layer
