"""GOE edge statistics, Painleve II and Airy-kernel Fredholm determinants."""

from ._kpze import *  # noqa: F401,F403
from ._kpze import InvalidArgument, NumericError, TruncationError  # noqa: F401

__version__ = "0.1.0"
