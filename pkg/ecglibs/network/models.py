# EpyECG/ecglibs/network/models.py
# Standard library imports
import hashlib
import copy

# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import ArgumentError
from ecglibs.commons.loss import loss_functions
from ecglibs.commons.models import dataSet
from ecglibs.network.report import initialize_model_report
from ecglibs.network.initialize import (
    model_assign_seeds,
    model_initialize,
    model_initialize_exceptions,
)
from ecglibs.network.hyperparameters import (
    model_hyperparameters,
    model_learning_rate,
)
from ecglibs.network.evaluate import (
    model_evaluate,
    model_infer,
)
from ecglibs.network.forward import model_forward
from ecglibs.network.backward import model_backward
from ecglibs.network.training import model_training
from ecglibs.settings import se_hPars


class ModelGraph:
    """
    Definition of a Neural Network prototype following the EpyECG scheme.

    :param layers: Network architecture, starting with an :class:`ecglibs.embedding.models.Embedding` layer.
    :type layers: list[Object]

    :param name: Name of network, defaults to 'ModelGraph'.
    :type name: str, optional
    """

    def __init__(self, layers, name='ModelGraph'):
        """Initialize instance variable attributes.

        :ivar layers: Network architecture.
        :vartype layers: list[Object]

        :ivar embedding: Embedding layer.
        :vartype embedding: :class:`ecglibs.embedding.models.Embedding`

        :ivar history: One entry per training epoch.
        :vartype history: list[dict]

        :ivar initialized: Model initialization state.
        :vartype initialized: bool
        """
        # Layers
        self.layers = layers
        self.embedding = self.layers[0]

        self.name = name

        # State
        self.initialized = False
        self.history = []
        self.seed = None
        self.e = 0

        self.se_hPars = dict(se_hPars)
        self.network = {}

        return None

    @property
    def input_len(self):
        """Number of samples per input beat.
        """
        return self.embedding.d['l']

    @property
    def num_classes(self):
        """Width of output layer, `None` for a headless network.
        """
        output = self.layers[-1]

        return output.d['u'] if output.kind == 'fully_connected' else None

    @property
    def trainable_mask(self):
        """Per-layer trainable flags.
        """
        return [layer.trainable for layer in self.layers]

    def forward(self, X, training=False):
        """Wrapper for :func:`ecglibs.network.forward.model_forward()`.

        :param X: Set of sample features.
        :type X: :class:`numpy.ndarray`

        :param training: Training mode, defaults to `False` which uses running statistics and disables dropout.
        :type training: bool, optional

        :return: Output of forward propagation through all layers in the Network.
        :rtype: :class:`numpy.ndarray`
        """
        A = model_forward(self, X, training=training)

        return A

    def backward(self, dA, update=True):
        """Wrapper for :func:`ecglibs.network.backward.model_backward()`.

        :param dA: Derivative of the loss function with respect to the output of forward propagation.
        :type dA: :class:`numpy.ndarray`

        :param update: Update parameters of trainable layers, defaults to `True`.
        :type update: bool, optional

        :return: Gradient of the loss with respect to network input.
        :rtype: :class:`numpy.ndarray`
        """
        dX = model_backward(self, dA, update=update)

        return dX

    def initialize(self, loss='CCE', se_hPars=se_hPars, seed=None, params=True, end='\n'):
        """Wrapper for :func:`ecglibs.network.initialize.model_initialize()`. Perform a dry epoch including all but not the parameters update step.

        :param loss: Loss function to use for training, defaults to 'CCE'. See :py:mod:`ecglibs.commons.loss` for built-in functions.
        :type loss: str, optional

        :param se_hPars: Hyperparameters, defaults to :data:`ecglibs.settings.se_hPars`.
        :type se_hPars: dict[str: float or str], optional

        :param seed: Reproducibility in pseudo-random procedures.
        :type seed: int or NoneType, optional

        :param params: Layer parameters initialization, defaults to `True`.
        :type params: bool, optional

        :param end: Whether to print every line for initialization steps or overwrite, default to `\\n`.
        :type end: str in ['\\n', '\\r'], optional
        """
        # Initialize model summary
        self.network = {id(layer): {} for layer in self.layers}

        # Check consistency output activation and loss
        self.loss = loss
        self.output = self.layers[-1].activation.get('activate')
        self.training_loss = loss_functions(loss, self.output)

        # Assign model and layers hyperparameters
        self.se_hPars = dict(se_hPars)
        model_hyperparameters(self)

        # Seed model and layers
        self.seed = seed
        model_assign_seeds(self)

        try:
            # Attempt to initialize model
            model_initialize(self, params=params, end=end)

        except Exception as error:
            # Handle errors and provide debug info
            model_initialize_exceptions(self, error)

        # Termination
        self.initialized = True

        return None

    def train(self, dtrain, dval, epochs=None, patience=None):
        """Wrapper for :func:`ecglibs.network.training.model_training()`. Apart, it computes learning rate along learning epochs.

        :param dtrain: Training set, labels within [0, num_classes).
        :type dtrain: :class:`ecglibs.commons.models.dataSet`

        :param dval: Validation set, non-empty.
        :type dval: :class:`ecglibs.commons.models.dataSet`

        :param epochs: Maximum number of training epochs, defaults to `None` which reads `max_epochs` from hyperparameters.
        :type epochs: int or NoneType, optional

        :param patience: Early stopping patience, defaults to `None` which reads `early_stop_patience` from hyperparameters.
        :type patience: int or NoneType, optional

        :raises ArgumentError: If sets are empty or labels do not match the output layer.

        :return: Training history.
        :rtype: list[dict]
        """
        # Model initialization
        if not self.initialized:
            self.initialize()

        for dset in [dtrain, dval]:
            if not dset.active:
                raise ArgumentError('%s set is empty' % dset.name)

            if dset.Y.shape[1] != self.num_classes:
                raise ArgumentError('%s labels span %s classes, model outputs %s'
                                    % (dset.name, dset.Y.shape[1], self.num_classes))

        epochs = epochs if epochs else self.se_hPars['max_epochs']
        patience = patience if patience else self.se_hPars['early_stop_patience']

        self.embedding.set_datasets(dtrain, dval, batch_size=self.se_hPars['batch_size'])

        # Compute learning rate schedule for layers in model
        model_learning_rate(self, epochs)

        initialize_model_report(self)

        # Start training
        model_training(self, epochs, patience)

        return self.history

    def evaluate(self, dset):
        """Wrapper for :func:`ecglibs.network.evaluate.model_evaluate()`.

        :param dset: Labeled set.
        :type dset: :class:`ecglibs.commons.models.dataSet`

        :return: Mean loss and accuracy.
        :rtype: tuple[float]
        """
        return model_evaluate(self, dset)

    def predict(self, X_data):
        """Perform prediction of label from unlabeled samples in dataset.

        :param X_data: Set of sample features, shaped (n, input_len).
        :type X_data: list[list[float]] or :class:`numpy.ndarray`

        :raises ArgumentError: If samples are not shaped (n, input_len).

        :return: Data embedding and output of forward propagation.
        :rtype: :class:`ecglibs.commons.models.dataSet`
        """
        dset = dataSet(X_data)

        if dset.X.ndim != 2 or dset.X.shape[1] != self.input_len:
            raise ArgumentError('%s expects input shaped (n, %s), got %s'
                                % (self.name, self.input_len, dset.X.shape))

        # Predict
        dset.A = model_infer(self, dset.X)

        # Make decisions
        dset.P = np.argmax(dset.A, axis=1)

        return dset

    def freeze(self):
        """Mark every layer as not trainable. Parameters and normalization statistics no longer change.

        :return: The frozen network.
        :rtype: :class:`ecglibs.network.models.ModelGraph`
        """
        for layer in self.layers:
            layer.trainable = False

        return self

    def backbone(self):
        """Copy of the network up to and including its Flatten layer, frozen.

        :raises ArgumentError: If the network has no Flatten layer.

        :return: Headless frozen network which outputs flattened features.
        :rtype: :class:`ecglibs.network.models.ModelGraph`
        """
        kinds = [layer.kind for layer in self.layers]

        if 'flatten' not in kinds:
            raise ArgumentError('%s has no flatten layer' % self.name)

        cut = kinds.index('flatten') + 1

        # Datasets attached to embedding are not copied
        embedding = self.embedding
        memo = {id(dset): None for dset in [embedding.dtrain, embedding.dval, getattr(embedding, 'batch_dtrain', None)]}

        layers = copy.deepcopy(self.layers[:cut], memo)

        layers[0].dtrain = layers[0].dval = None
        layers[0].dsets = layers[0].batch_dtrain = []

        for layer in layers:
            layer.fc, layer.bc = {}, {}

        graph = ModelGraph(layers, name=self.name + '_backbone')

        graph.seed = self.seed
        graph.se_hPars = dict(self.se_hPars)
        graph.history = list(self.history)
        graph.initialized = True

        return graph.freeze()

    def parameter_digest(self):
        """SHA-256 over parameters and normalization running statistics.

        :return: Hexadecimal digest.
        :rtype: str
        """
        sha = hashlib.sha256()

        for i, layer in enumerate(self.layers):

            tensors = dict(layer.p)
            tensors.update({k: layer.s[k] for k in ['mean', 'var'] if k in layer.s})

            for key in sorted(tensors):
                value = np.ascontiguousarray(tensors[key], dtype='<f8')

                sha.update(('%s/%s/%s' % (i, key, value.shape)).encode())
                sha.update(value.tobytes())

        return sha.hexdigest()

    def spec(self):
        """Static description of layers.

        :return: Layer specs in order.
        :rtype: list[dict]
        """
        return [layer.spec() for layer in self.layers]
