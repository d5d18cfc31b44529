# EpyECG/ecglibs/commons/loss.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import ConfigurationError
from ecglibs.commons.maths import E_SAFE


def loss_functions(key=None, output_activation=None):
    """Callback function for loss.

    :param key: Name of the loss function, defaults to `None` which returns all functions.
    :type key: str, optional

    :param output_activation: Name of the activation function for output layer.
    :type output_activation: str, optional

    :raises ConfigurationError: If key is `CCE` and output activation is different from softmax.

    :return: Loss functions or selected loss.
    :rtype: dict[str, function] or function
    """
    loss = {
        'CCE': CCE,
    }

    if key and key not in loss:
        raise ConfigurationError('unknown loss %s' % key, key='train.loss')

    if key == 'CCE' and output_activation != 'softmax':
        raise ConfigurationError('CCE can not be used with %s activation, '
                                 'please use softmax instead.' % output_activation,
                                 key='train.loss')

    # If key provided, returns the function
    if key:
        loss = loss[key]

    return loss


def CCE(Y, A, deriv=False):
    """Categorical Cross-Entropy, averaged over samples.

    :param Y: One-hot true labels for a set of samples.
    :type Y: :class:`numpy.ndarray`

    :param A: Output of forward propagation.
    :type A: :class:`numpy.ndarray`

    :param deriv: To compute the derivative.
    :type deriv: bool, optional

    :return: Per-sample loss, or derivative of the batch-mean loss.
    :rtype: :class:`numpy.ndarray`
    """
    m = A.shape[0]    # Number of samples

    if not deriv:
        loss = -1. * np.sum(Y * np.log(A+E_SAFE), axis=1)

    elif deriv:
        loss = -1. / m * (Y / (A+E_SAFE))

    return loss
