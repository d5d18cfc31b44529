# EpyECG/ecglive/synthetic_identification/settings.py


# HYPERPARAMETERS SETTINGS
se_hPars = {
    # Schedule learning rate
    'learning_rate': 1e-3,
    'schedule': 'steady',
    'decay_k': 0,
    # Adam
    'beta_1': 0.9,
    'beta_2': 0.999,
    'epsilon': 1e-8,
    # Training loop
    'loss': 'CCE',
    'batch_size': 64,
    'max_epochs': 60,
    'early_stop_patience': 10,
    'verbose': True,
}
"""Hyperparameters dictionary settings.

Fewer epochs than library defaults for a desk-scale run.
"""


# SYNTHETIC CORPUS SETTINGS
se_corpus = {
    'n_subjects': 8,
    'n_auxiliary': 3,
    'rest_duration_s': 30.0,
    'exercise_duration_s': 120.0,
    'snr_db': 20.0,
    'sample_rate_hz': 200.0,
}
"""Small corpus for the example."""
