# EpyECG/ecglibs/convolution/forward.py
# Related third party imports
import numpy as np


def initialize_forward(layer, A):
    """Forward cache initialization.

    :param layer: An instance of convolution layer.
    :type layer: :class:`ecglibs.convolution.models.Convolution`

    :param A: Output of forward propagation from previous layer.
    :type A: :class:`numpy.ndarray`

    :return: Input of forward propagation for current layer.
    :rtype: :class:`numpy.ndarray`
    """
    X = layer.fc['X'] = A

    return X


def convolution_forward(layer, A):
    """Forward propagate signal to next layer.
    """
    # (1) Initialize cache
    X = initialize_forward(layer, A)    # (m, l, d)

    # (2) Zero padding along length
    p = layer.d['p']
    Xp = layer.fc['Xp'] = np.pad(X, ((0, 0), (p, p), (0, 0)))

    # (3) Slice input w.r.t. filter size (fw) and strides (sw)
    Xb = np.lib.stride_tricks.sliding_window_view(Xp, layer.d['fw'], axis=1)
    Xb = layer.fc['Xb'] = Xb[:, ::layer.d['sw']]
    # (m, l + 2p, d) ->
    # (m, ol, d, fw)

    # (4) Linear activation Xb -> Z
    Z = np.tensordot(Xb, layer.p['W'], axes=([3, 2], [0, 1]))
    # (m, ol, d, fw) . (fw, d, u) -> (m, ol, u)

    Z = layer.fc['Z'] = Z + layer.p['b'] if layer.use_bias else Z

    # (5) Activation Z -> A
    A = layer.fc['A'] = layer.activate(Z)

    return A    # To next layer
