# EpyECG/ecglibs/commons/optimizer.py
# Related third party imports
import numpy as np


def adam_update(layer):
    """Update parameters from gradients with adaptive moment estimation.

    First and second moments are stored in `layer.s` next to the parameter
    they belong to, the step counter in `layer.o`.

    :param layer: An instance of trainable layer.
    :type layer: :class:`ecglibs.commons.models.Layer`
    """
    beta_1 = layer.se_hPars['beta_1']
    beta_2 = layer.se_hPars['beta_2']
    epsilon = layer.se_hPars['epsilon']

    lrate = layer.lrate[layer.e]

    t = layer.o['t'] = layer.o.get('t', 0) + 1

    for gradient in layer.g.keys():

        parameter = gradient[1:]
        g = layer.g[gradient]

        # Moment estimates
        m = layer.s['m_' + parameter] = beta_1 * layer.s.get('m_' + parameter, 0.) + (1 - beta_1) * g
        v = layer.s['v_' + parameter] = beta_2 * layer.s.get('v_' + parameter, 0.) + (1 - beta_2) * g**2

        # Bias correction
        m_hat = m / (1 - beta_1**t)
        v_hat = v / (1 - beta_2**t)

        # Update is driven by learning rate and corrected moments
        layer.p[parameter] -= lrate * m_hat / (np.sqrt(v_hat) + epsilon)

    return None
