# EpyECG/ecglibs/settings.py


# SIGNAL FILTERING SETTINGS
se_filter = {
    'order': 4,
    'low_cut_hz': 0.5,
    'high_cut_hz': 40.0,
    'zero_phase': True,
}
"""Band-pass filter settings.

4th order Butterworth, 0.5-40 Hz. Zero-phase mode runs the filter
forward and backward, which doubles the effective order.
"""


# HEARTBEAT SETTINGS
se_beats = {
    'sample_rate_hz': 200.0,
    'averaging_window_W': 10,
    'zscore_threshold': 3.0,
    'zscore_per_subject': False,
    'iqr_factor': 1.5,
}
"""Heartbeat segmentation, averaging and quality gates settings."""


# PERSONALIZED AUGMENTATION SETTINGS
se_augment = {
    'hr_limit': 140.0,
    't_g_min': 29,
    't_p_min': 25,
    't_max_source': 'standing',
    'refit_global': False,
    'uniform_range': [25, 73],
    'max_per_subject': 300,
}
"""Personalized augmentation settings.

`t_g_min` and `t_p_min` are T-peak locations in samples relative to the
R-peak at 200 Hz. `uniform_range` is the range shared by all subjects for
the augmented CNN reference. `max_per_subject` caps the augmented beats
of a subject, `None` keeps one per beat and per T-peak location.
"""


# ARCHITECTURE SETTINGS
se_architecture = {
    'channels': [16, 32, 64],
    'kernels': [7, 5, 3],
    'hidden_units': 128,
    'dropout': 0.5,
}
"""Standard CNN dimensions shared by every model."""


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
    'max_epochs': 500,
    'early_stop_patience': 20,
    'verbose': False,
}
"""Hyperparameters dictionary settings.

Set hyperparameters for model training.
"""


# DATA SPLIT SETTINGS
se_split = {
    'train': {
        'S1': ['sit'],
        'S2': ['sit', 'stand'],
        'S4': ['sit'],
        'S6': ['sit', 'stand'],
    },
    'test': {
        'S3': ['sit', 'exercise'],
        'S5': ['supine', 'tripod'],
    },
    'val_fraction': 0.2,
}
"""Train and test sessions and conditions for the Target set."""


# SYNTHETIC CORPUS SETTINGS
se_corpus = {
    'n_subjects': 20,
    'n_auxiliary': 6,
    'rest_duration_s': 30.0,
    'exercise_duration_s': 120.0,
    'snr_db': 20.0,
    'sample_rate_hz': 200.0,
}
"""Synthetic corpus generation settings."""


# EXPERIMENT SETTINGS
se_experiment = {
    'n_runs': 10,
    'base_seed': 0,
    'ablation': 'DE-PADA',
    'classifier_augmented': False,
}
"""Repeated-run evaluation settings."""
