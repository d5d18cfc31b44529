# EpyECG/ecglibs/dense/models.py
# Local application/library specific imports
from ecglibs.commons.models import Layer
from ecglibs.commons.maths import (
    identity,
    xavier,
)
from ecglibs.dense.forward import dense_forward
from ecglibs.dense.backward import dense_backward
from ecglibs.commons.optimizer import adam_update
from ecglibs.dense.parameters import (
    dense_compute_shapes,
    dense_initialize_parameters,
    dense_compute_gradients,
)


class Dense(Layer):
    """
    Definition of a dense layer prototype.

    :param units: Number of units in dense layer, defaults to 1.
    :type units: int, optional

    :param activate: Non-linear activation of units, defaults to `identity`.
    :type activate: function, optional

    :param initialization: Weight initialization function for dense layer, defaults to `xavier`.
    :type initialization: function, optional

    :param per_unit: Compute each unit from its own weight column, defaults to `False`.
        Logits of a unit then do not depend on how many other units the layer has,
        which keeps predictions identical after output units are removed.
    :type per_unit: bool, optional
    """

    def __init__(self,
                 units=1,
                 activate=identity,
                 initialization=xavier,
                 per_unit=False):
        """Initialize instance variable attributes.
        """
        super().__init__()

        self.d['u'] = units
        self.activate = activate
        self.initialization = initialization
        self.per_unit = per_unit

        self.activation = { 'activate': activate.__name__ }
        self.trainable = True

        self.kind = 'fully_connected'
        self.config = {
            'units': units,
            'activate': activate.__name__,
            'per_unit': per_unit,
        }

        return None

    def prune_units(self, keep):
        """Keep a subset of units, in given order.

        :param keep: Indices of units to keep.
        :type keep: list[int] or :class:`numpy.ndarray`
        """
        self.p['W'] = self.p['W'][:, keep].copy()
        self.p['b'] = self.p['b'][:, keep].copy()

        # Optimizer state no longer matches
        for key in list(self.s.keys()):
            self.s.pop(key)

        self.o.pop('t', None)

        self.d['u'] = len(keep)
        self.config['units'] = len(keep)

        self.fs['W'] = self.p['W'].shape
        self.fs['b'] = self.p['b'].shape

        return None

    def compute_shapes(self, A):
        dense_compute_shapes(self, A)

        return None

    def initialize_parameters(self):
        dense_initialize_parameters(self)

        return None

    def forward(self, A):
        """Wrapper for :func:`ecglibs.dense.forward.dense_forward()`.
        """
        A = dense_forward(self, A)
        self.update_shapes(self.fc, self.fs)

        return A

    def backward(self, dX):
        """Wrapper for :func:`ecglibs.dense.backward.dense_backward()`.
        """
        dX = dense_backward(self, dX)
        self.update_shapes(self.bc, self.bs)

        return dX

    def compute_gradients(self):
        dense_compute_gradients(self)

        return None

    def update_parameters(self):
        # Frozen layers keep parameters and optimizer state
        if self.trainable:
            adam_update(self)

        return None
