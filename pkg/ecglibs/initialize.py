# EpyECG/ecglibs/initialize.py
# Local application/library specific imports
from ecglibs.commons.logs import set_highlighted_excepthook

# Colored excepthook
set_highlighted_excepthook()
