# EpyECG/ecglibs/pooling/models.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.models import Layer
from ecglibs.pooling.forward import pooling_forward
from ecglibs.pooling.backward import pooling_backward


class Pooling(Layer):
    """
    Definition of a 1-D pooling layer prototype over channels-last input (m, l, d).

    Output length is ``floor((l - pool_size) / strides) + 1``, trailing
    samples that do not fill a window are left out.

    :param pool_size: Width of pooling window, defaults to 2.
    :type pool_size: int, optional

    :param strides: Step to shift the pooling window by, defaults to None which equals pool_size.
    :type strides: int or NoneType, optional

    :param pool: Pooling activation of units, defaults to :func:`np.max`.
    :type pool: function, optional
    """

    def __init__(self,
                 pool_size=2,
                 strides=None,
                 pool=np.max):
        """Initialize instance variable attributes.
        """
        super().__init__()

        self.d['pw'] = pool_size
        self.d['sw'] = strides if strides else pool_size
        self.pool = pool

        self.kind = 'max_pool' if pool is np.max else 'min_pool'
        self.config = {'pool_size': pool_size, 'strides': self.d['sw']}

        return None

    def compute_shapes(self, A):
        """Compute forward shapes and dimensions from input for layer.

        :param A: Output of forward propagation from previous layer.
        :type A: :class:`numpy.ndarray`
        """
        self.fs['X'] = A.shape    # (m, l, d)

        self.d['m'], self.d['l'], self.d['d'] = A.shape

        # Output length (ol)
        self.d['ol'] = (self.d['l'] - self.d['pw']) // self.d['sw'] + 1

        return None

    def forward(self, A):
        """Wrapper for :func:`ecglibs.pooling.forward.pooling_forward()`.
        """
        A = pooling_forward(self, A)
        self.update_shapes(self.fc, self.fs)

        return A

    def backward(self, dX):
        """Wrapper for :func:`ecglibs.pooling.backward.pooling_backward()`.
        """
        dX = pooling_backward(self, dX)
        self.update_shapes(self.bc, self.bs)

        return dX
