# EpyECG/ecglibs/batchnorm/models.py
# Local application/library specific imports
from ecglibs.commons.models import Layer
from ecglibs.batchnorm.forward import batchnorm_forward
from ecglibs.batchnorm.backward import batchnorm_backward
from ecglibs.batchnorm.parameters import (
    batchnorm_compute_shapes,
    batchnorm_initialize_parameters,
    batchnorm_compute_gradients,
    batchnorm_update_parameters,
)


class BatchNorm(Layer):
    """
    Definition of a batch normalization layer prototype. Normalizes the last axis (channels) over all other axes.

    In training mode, a trainable layer normalizes with batch statistics and
    updates running statistics. A frozen layer, or any layer in inference
    mode, normalizes with running statistics which are left untouched.

    :param momentum: Weight of batch statistics in running statistics update, defaults to 0.1.
    :type momentum: float, optional

    :param epsilon: Added to variance, defaults to 1e-5.
    :type epsilon: float, optional
    """

    def __init__(self,
                 momentum=0.1,
                 epsilon=1e-5):
        """Initialize instance variable attributes.
        """
        super().__init__()

        self.d['momentum'] = momentum
        self.d['epsilon'] = epsilon

        self.trainable = True

        self.kind = 'batch_norm'
        self.config = {'momentum': momentum, 'epsilon': epsilon}

        return None

    @property
    def batch_stats(self):
        """Whether forward propagation normalizes with batch statistics.
        """
        return self.training and self.trainable

    def compute_shapes(self, A):
        """Wrapper for :func:`ecglibs.batchnorm.parameters.batchnorm_compute_shapes()`.

        :param A: Output of forward propagation from previous layer.
        :type A: :class:`numpy.ndarray`
        """
        batchnorm_compute_shapes(self, A)

        return None

    def initialize_parameters(self):
        """Wrapper for :func:`ecglibs.batchnorm.parameters.batchnorm_initialize_parameters()`.
        """
        batchnorm_initialize_parameters(self)

        return None

    def forward(self, A):
        """Wrapper for :func:`ecglibs.batchnorm.forward.batchnorm_forward()`.

        :param A: Output of forward propagation from previous layer.
        :type A: :class:`numpy.ndarray`

        :return: Output of forward propagation for current layer.
        :rtype: :class:`numpy.ndarray`
        """
        A = batchnorm_forward(self, A)
        self.update_shapes(self.fc, self.fs)

        return A

    def backward(self, dX):
        """Wrapper for :func:`ecglibs.batchnorm.backward.batchnorm_backward()`.

        :param dX: Output of backward propagation from next layer.
        :type dX: :class:`numpy.ndarray`

        :return: Output of backward propagation for current layer.
        :rtype: :class:`numpy.ndarray`
        """
        dX = batchnorm_backward(self, dX)
        self.update_shapes(self.bc, self.bs)

        return dX

    def compute_gradients(self):
        """Wrapper for :func:`ecglibs.batchnorm.parameters.batchnorm_compute_gradients()`.
        """
        batchnorm_compute_gradients(self)

        return None

    def update_parameters(self):
        """Wrapper for :func:`ecglibs.batchnorm.parameters.batchnorm_update_parameters()`.
        """
        if self.trainable:
            batchnorm_update_parameters(self)

        return None
