# EpyECG/ecglibs/commons/maths.py
# Related third party imports
import numpy as np


# To prevent from divide floatting points errors
E_SAFE = 1e-16


### Activation functions and derivatives

# Identity function

def identity(x, deriv=False):
    """Compute identity activation or derivative.

    :param x: Input array to pass in function.
    :type x: class:`numpy.ndarray`

    :param deriv: To compute derivative, defaults to False.
    :type deriv: bool, optional

    :return: Output array passed in function.
    :rtype: :class:`numpy.ndarray`
    """
    if not deriv:
        pass

    elif deriv:
        x = np.ones_like(x)

    return x


# Rectifier Linear Unit (ReLU)

def relu(x, deriv=False):
    """Compute ReLU activation or derivative.

    :param x: Input array to pass in function.
    :type x: class:`numpy.ndarray`

    :param deriv: To compute derivative, defaults to False.
    :type deriv: bool, optional

    :return: Output array passed in function.
    :rtype: :class:`numpy.ndarray`
    """
    if not deriv:
        x = np.maximum(0, x)

    elif deriv:
        x = np.greater(x, 0).astype(float)

    return x


# Softmax

def softmax(x, deriv=False):
    """Compute softmax activation or derivative.

    The derivative is not materialized as a jacobian: see
    :func:`softmax_backward` which applies its transpose to an upstream gradient.

    :param x: Input array to pass in function.
    :type x: class:`numpy.ndarray`

    :param deriv: To compute derivative, defaults to False.
    :type deriv: bool, optional

    :return: Output array passed in function.
    :rtype: :class:`numpy.ndarray`
    """
    # Numerically stable version of softmax function
    x_safe = x - np.max(x, axis=1, keepdims=True)

    x_exp = np.exp(x_safe)
    x_sum = np.sum(x_exp, axis=1, keepdims=True)

    x = x_exp / x_sum

    return x


def softmax_backward(dA, A):
    """Jacobian-vector product of softmax, row by row.

    :param dA: Gradient of the loss with respect to softmax output, shape (m, u).
    :type dA: :class:`numpy.ndarray`

    :param A: Softmax output, shape (m, u).
    :type A: :class:`numpy.ndarray`

    :return: Gradient of the loss with respect to softmax input.
    :rtype: :class:`numpy.ndarray`
    """
    dZ = A * (dA - np.sum(dA * A, axis=1, keepdims=True))

    return dZ


### Weight initialization

def fans(shape):
    """Fan-in and fan-out of a weight array whose last axis is output units.

    :param shape: Shape of weight array, (n, u) or (fw, d, u).
    :type shape: tuple[int]

    :return: Fan-in and fan-out.
    :rtype: tuple[int]
    """
    receptive = int(np.prod(shape[:-2])) if len(shape) > 2 else 1

    fan_in = shape[-2] * receptive
    fan_out = shape[-1] * receptive

    return fan_in, fan_out


# Xavier

def xavier(shape, rng=np.random):
    """Xavier Normal Distribution initialization for weight array.

    :param shape: Shape of weight array.
    :type shape: tuple[int]

    :param rng: Pseudo-random number generator, defaults to `np.random`.
    :type rng: :class:`numpy.random.Generator`

    :return: Initialized weight array.
    :rtype: :class:`numpy.ndarray`
    """
    fan_in, fan_out = fans(shape)

    W = rng.standard_normal(shape)            # Normal distribution, zero-centered
    W *= np.sqrt(2 / (fan_in + fan_out))      # Scale

    return W


# He

def he(shape, rng=np.random):
    """He Normal Distribution initialization for weight array feeding ReLU.

    :param shape: Shape of weight array.
    :type shape: tuple[int]

    :param rng: Pseudo-random number generator, defaults to `np.random`.
    :type rng: :class:`numpy.random.Generator`

    :return: Initialized weight array.
    :rtype: :class:`numpy.ndarray`
    """
    fan_in, _ = fans(shape)

    W = rng.standard_normal(shape)
    W *= np.sqrt(2 / fan_in)

    return W
