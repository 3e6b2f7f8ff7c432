from .context import *
from .io import *
