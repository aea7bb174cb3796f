from qftbell.constants import VERSION

__version__ = VERSION
