# EpyECG/ecglibs/convolution/models.py
# Local application/library specific imports
from ecglibs.commons.models import Layer
from ecglibs.commons.maths import (
    identity,
    he,
)
from ecglibs.convolution.forward import convolution_forward
from ecglibs.convolution.backward import convolution_backward
from ecglibs.commons.optimizer import adam_update
from ecglibs.convolution.parameters import (
    convolution_compute_shapes,
    convolution_initialize_parameters,
    convolution_compute_gradients,
)


class Convolution(Layer):
    """
    Definition of a 1-D convolution layer prototype over channels-last input (m, l, d).

    :param unit_filters: Number of unit filters in convolution layer, defaults to 1.
    :type unit_filters: int, optional

    :param filter_size: Width of convolution window, defaults to 3.
    :type filter_size: int, optional

    :param strides: Step to shift the convolution window by, defaults to 1.
    :type strides: int, optional

    :param padding: Number of zeros to pad each side of the features with, defaults to 0.
    :type padding: int, optional

    :param activate: Activation of unit filters, defaults to `identity`.
    :type activate: function, optional

    :param initialization: Weight initialization function for convolution layer, defaults to `he`.
    :type initialization: function, optional

    :param use_bias: Whether the layer uses bias, defaults to `True`.
    :type use_bias: bool, optional
    """

    def __init__(self,
                 unit_filters=1,
                 filter_size=3,
                 strides=1,
                 padding=0,
                 activate=identity,
                 initialization=he,
                 use_bias=True):
        """Initialize instance variable attributes.
        """
        super().__init__()

        self.d['u'] = unit_filters
        self.d['fw'] = filter_size
        self.d['sw'] = strides
        self.d['p'] = padding
        self.activate = activate
        self.initialization = initialization
        self.use_bias = use_bias

        self.activation = { 'activate': activate.__name__ }
        self.trainable = True

        self.kind = 'conv1d'
        self.config = {
            'unit_filters': unit_filters,
            'filter_size': filter_size,
            'strides': strides,
            'padding': padding,
            'activate': activate.__name__,
            'use_bias': use_bias,
        }

        return None

    def compute_shapes(self, A):
        convolution_compute_shapes(self, A)

        return None

    def initialize_parameters(self):
        convolution_initialize_parameters(self)

        return None

    def forward(self, A):
        """Wrapper for :func:`ecglibs.convolution.forward.convolution_forward()`.
        """
        A = convolution_forward(self, A)
        self.update_shapes(self.fc, self.fs)

        return A

    def backward(self, dX):
        """Wrapper for :func:`ecglibs.convolution.backward.convolution_backward()`.
        """
        dX = convolution_backward(self, dX)
        self.update_shapes(self.bc, self.bs)

        return dX

    def compute_gradients(self):
        convolution_compute_gradients(self)

        return None

    def update_parameters(self):
        if self.trainable:
            adam_update(self)

        return None
