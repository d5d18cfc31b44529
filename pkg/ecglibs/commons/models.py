# EpyECG/ecglibs/commons/models.py
# Related third party imports
import numpy as np


class Layer:
    """
    Definition of a parent **base layer** prototype. Any given **layer** prototype inherits from this class and is defined with respect to a specific architecture (Dense, Convolution, BatchNorm...). The **parent** base layer defines instance attributes common to any **child** layer prototype.
    """

    def __init__(self):
        """Initialize instance variable attributes.

        :ivar d: Layer **dimensions** containing scalar quantities such as the number of units, filters or samples.
        :vartype d: dict[str, int]

        :ivar fs: Layer **forward shapes** for parameters, input, output and processing intermediates.
        :vartype fs: dict[str, tuple[int]]

        :ivar p: Layer weight and bias **parameters**. These are the trainable parameters.
        :vartype p: dict[str, :class:`numpy.ndarray`]

        :ivar fc: Layer **forward cache** related for input, output and processing intermediates.
        :vartype fc: dict[str, :class:`numpy.ndarray`]

        :ivar bs: Layer **backward shapes** for gradients, input, output and processing intermediates.
        :vartype bs: dict[str, tuple[int]]

        :ivar g: Layer **gradients** used to update the trainable parameters.
        :vartype g: dict[str, :class:`numpy.ndarray`]

        :ivar bc: Layer **backward cache** for input, output and processing intermediates.
        :vartype bc: dict[str, :class:`numpy.ndarray`]

        :ivar s: Layer **statistics and optimizer state** which are not trained by gradient descent (batch norm running statistics, Adam moments).
        :vartype s: dict[str, :class:`numpy.ndarray`]

        :ivar o: Other scalar quantities that do not fit within the above-described attributes.
        :vartype o: dict[str, int]

        :ivar activation: Conveniency attribute containing names of activation functions.
        :vartype activation: dict[str, str]

        :ivar training: Whether forward propagation runs in training mode.
        :vartype training: bool
        """
        self.d = {}
        self.fs = {}
        self.p = {}
        self.fc = {}
        self.bs = {}
        self.g = {}
        self.bc = {}
        self.s = {}
        self.o = {}

        self.activation = {}

        self.training = False
        self.trainable = False

        # Seeded by model, see :func:`ecglibs.network.initialize.model_assign_seeds`
        self.np_rng = np.random.default_rng()

        self.se_hPars = None
        self.lrate = []
        self.e = 0

        self.name = self.__class__.__name__

        return None

    def update_shapes(self, cache, shapes):
        """Update shapes from cache.

        :param cache: Cache from forward or backward propagation.
        :type cache: dict[str, :class:`numpy.ndarray`]

        :param shapes: Corresponding shapes.
        :type shapes: dict[str, tuple[int]]
        """
        shapes.update({k:v.shape for k,v in cache.items()})

        return None

    # Layers without parameters (input, activation, flatten, dropout) keep the
    # methods below, layers with parameters override them.

    def compute_shapes(self, A):
        """Record input shape.

        :param A: Output of forward propagation from previous layer.
        :type A: :class:`numpy.ndarray`
        """
        self.fs['X'] = A.shape

        return None

    def initialize_parameters(self):
        return None

    def compute_gradients(self):
        return None

    def update_parameters(self):
        return None

    def spec(self):
        """Static description of layer used for checkpoints and manifests.

        :return: Layer kind and kind-specific dimensions set at construction.
        :rtype: dict
        """
        spec = {
            'kind': self.kind,
            'config': dict(self.config),
            'trainable': self.trainable,
        }

        return spec


class dataSet:
    """
    Definition of a dataSet object prototype.

    :param X_data: Set of sample features.
    :type X_data: :class:`numpy.ndarray`

    :param Y_data: Set of integer sample labels, defaults to None.
    :type Y_data: :class:`numpy.ndarray` or NoneType, optional

    :param num_classes: Width of one-hot encoding, defaults to None which infers it from labels.
    :type num_classes: int or NoneType, optional

    :param name: Name of set, defaults to 'dummy'.
    :type name: str, optional
    """

    def __init__(self,
                 X_data,
                 Y_data=None,
                 num_classes=None,
                 name='dummy'):
        """Initialize dataSet object.

        :ivar X: Set of sample features.
        :vartype X: :class:`numpy.ndarray`

        :ivar Y: One-hot encoded set of sample label.
        :vartype Y: :class:`numpy.ndarray`

        :ivar y: Set of single-digit sample label.
        :vartype y: :class:`numpy.ndarray`

        :ivar b: Balance of labels in set.
        :vartype b: dict[int: int]

        :ivar ids: Sample identifiers.
        :vartype ids: :class:`numpy.ndarray`
        """
        self.name = name

        # Vectorize X_data in NumPy array
        self.X = np.asarray(X_data, dtype=float)

        self.active = True if len(self.X) > 0 else False

        if Y_data is not None:

            self.y = np.asarray(Y_data, dtype=int)

            if num_classes is None:
                num_classes = int(self.y.max()) + 1 if self.active else 0

            # One-hot encoding of labels
            self.Y = np.eye(num_classes)[self.y]

            # Map single-digit label with representation in dataset
            self.b = {int(label): int(np.count_nonzero(self.y == label)) for label in np.unique(self.y)}

        self.ids = np.arange(len(self.X))

        return None
