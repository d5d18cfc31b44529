# EpyECG/conftest.py
# Presence of this file puts the repository root on sys.path for tests.
