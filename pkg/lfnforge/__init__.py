from .version import __version__

from .forms import CoefficientTable, FormDescriptor, build_delta_table
from .lfun import EvalContext
from .zeros import ZeroStore
