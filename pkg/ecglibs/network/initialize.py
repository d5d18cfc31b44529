# EpyECG/ecglibs/network/initialize.py
# Related third party imports
from termcolor import cprint
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import ConfigurationError


def model_initialize(model, params=True, end='\n'):
    """Initialize network with a dry forward and backward pass on a dummy batch.

    The dry pass runs in inference mode and does not update parameters.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param params: Layer parameters initialization, defaults to `True`.
    :type params: bool, optional

    :param end: Wether to print every line for steps or overwrite, default to `\\n`.
    :type end: str in ['\\n', '\\r']

    :raises ConfigurationError: If any layer other than Dense was provided with softmax activation.
    """
    verbose = model.se_hPars['verbose']

    # Dummy batch
    A = np.zeros((2, model.input_len))

    if verbose:
        cprint('{: <100}'.format('--- EpyECG Check --- '), attrs=['bold'], end=end)

    # Iterate over layers
    for layer in model.layers:

        # Layer instance attributes
        layer.check = False
        layer.training = False

        if verbose:
            cprint('Layer: ' + layer.name, attrs=['bold'], end=end)

        # Store layer information in model summary
        model.network[id(layer)]['Layer'] = layer.name
        model.network[id(layer)]['Trainable'] = layer.trainable
        model.network[id(layer)]['Dimensions'] = layer.d

        # Dense applies the softmax jacobian, see :func:`ecglibs.commons.maths.softmax_backward`
        if 'softmax' in layer.activation.values() and layer.name != 'Dense':
            raise ConfigurationError('softmax can not be used with %s, only with Dense' % layer.name,
                                     key='architecture')

        layer.compute_shapes(A)

        # Initialize trainable parameters
        if params:
            layer.initialize_parameters()

        A = layer.forward(A)

        # Store forward shapes in model summary
        model.network[id(layer)]['FW_Shapes'] = layer.fs

        # Clear check
        delattr(layer, 'check')

    # Dummy labels
    Y = np.eye(A.shape[1])[np.zeros(len(A), dtype=int)]

    # Compute derivative of loss function
    dX = model.training_loss(Y, A, deriv=True)

    # Iterate over reversed layers
    for layer in reversed(model.layers):

        # Set check attribute for layer
        layer.check = False

        dX = layer.backward(dX)

        # Store backward shapes in model summary
        model.network[id(layer)]['BW_Shapes'] = layer.bs

        layer.compute_gradients()

        # Clear check
        delattr(layer, 'check')

    if verbose:
        cprint('{: <100}'.format('--- EpyECG Check OK! --- '), attrs=['bold'], end=end)

    # Initialize current epoch to zero
    model.e = 0

    return None


def model_assign_seeds(model):
    """Seed model and layers with independant pseudo-random number generators.

    Model is seeded from user-input. Layers are seeded by incrementing the
    input by one in order to not generate same numbers for all objects.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`
    """
    seed = model.seed

    # If seed is not defined, seeding is random
    model.np_rng = np.random.default_rng(seed=seed)

    # Iterate over layers
    for layer in model.layers:

        # Seed zero is a valid seed
        if seed is not None:
            # We do not want the same seed for every object
            seed += 1

        # Seed layer
        layer.o['seed'] = seed
        layer.np_rng = np.random.default_rng(seed=layer.o['seed'])

    return None


def model_initialize_exceptions(model, error):
    """Handle error in model initialization and show logs.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param error: Error raised during initialization.
    :type error: Exception

    :raises ConfigurationError: Always, naming the faulty layer.
    """
    cprint('\n/!\\ Initialization of %s model failed - debug' % model.name, 'red', attrs=['bold'])

    faulty = [layer for layer in model.layers if hasattr(layer, 'check')]

    if faulty:
        # Identify faulty layer
        layer = faulty[0]
        delattr(layer, 'check')

        # Update shapes from existing caches
        layer.update_shapes(layer.fc, layer.fs)
        layer.update_shapes(layer.bc, layer.bs)

        # Report debug information for faulty layer
        cprint('%s layer: ' % layer.name, 'red', attrs=['bold'])

        cprint('Known dimensions', 'white', attrs=['bold'])
        print(', '.join([k + ': ' + str(v) for k, v in layer.d.items()]))

        cprint('Known forward shapes', 'green', attrs=['bold'])
        print('\n'.join([k + ': ' + str(v) for k, v in layer.fs.items()]))

        cprint('Known backward shape', 'cyan', attrs=['bold'])
        print('\n'.join([k + ': ' + str(v) for k, v in layer.bs.items()]))

        message = 'layer %s: %s' % (layer.name, error)

    else:
        message = str(error)

    raise ConfigurationError(message, key='architecture') from error
