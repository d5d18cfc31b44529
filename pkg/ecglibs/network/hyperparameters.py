# EpyECG/ecglibs/network/hyperparameters.py
# Local application/library specific imports
from ecglibs.commons.errors import ConfigurationError
from ecglibs.commons.schedule import schedule_functions


def model_hyperparameters(model):
    """Set hyperparameters for each layer in model.

    Layers share the hyperparameters dictionary of the model.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :raises ConfigurationError: If a hyperparameter is out of range.
    """
    se_hPars = model.se_hPars

    check_hyperparameters(se_hPars)

    # Iterate over layers
    for layer in model.layers:
        layer.se_hPars = se_hPars

    return None


def model_learning_rate(model, epochs):
    """Schedule learning rate for each layer in model.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param epochs: Number of training epochs for model.
    :type epochs: int
    """
    lrate = schedule_lrate(model.se_hPars, epochs)

    # Iterate over layers
    for layer in model.layers:
        layer.lrate = lrate

    return None


def schedule_lrate(se_hPars, training_epochs):
    """Learning rate schedule.

    :param se_hPars: Hyperparameters settings for layer.
    :type se_hPars: dict

    :param training_epochs: Number of training epochs for model.
    :type training_epochs: int

    :return: Scheduled learning rate for layer.
    :rtype: list[float]
    """
    # Extract hyperparameters
    e = training_epochs
    lr = se_hPars['learning_rate']
    k = se_hPars['decay_k']

    # Default decay, ~ 1% of initial lr for last epoch
    if k == 0:
        k = 5 / e

    # Compute learning rate schedule
    hPars = (e, lr, k)
    lrate = schedule_functions(se_hPars['schedule'], hPars)

    return lrate


def check_hyperparameters(se_hPars):
    """Check training hyperparameters.

    :param se_hPars: Hyperparameters.
    :type se_hPars: dict

    :raises ConfigurationError: If a hyperparameter is out of range or the schedule is unknown.
    """
    for key in ['learning_rate', 'batch_size', 'max_epochs', 'early_stop_patience']:
        if not se_hPars[key] > 0:
            raise ConfigurationError('must be positive, got %s' % se_hPars[key], key='train.%s' % key)

    for key in ['beta_1', 'beta_2']:
        if not 0 <= se_hPars[key] < 1:
            raise ConfigurationError('must lie in [0, 1), got %s' % se_hPars[key], key='train.%s' % key)

    if not se_hPars['decay_k'] >= 0:
        raise ConfigurationError('must be non-negative, got %s' % se_hPars['decay_k'], key='train.decay_k')

    # Raises on unknown schedule
    schedule_functions(se_hPars['schedule'], (1, se_hPars['learning_rate'], 1))

    return None
