from .bits import bits_of, iter_bits, popcount, subsets_of
from .color_log import ColorFormatter
