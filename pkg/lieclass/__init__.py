from .lieclass import *
from .utils.family import catalog, list_models
