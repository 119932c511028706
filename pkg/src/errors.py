#!/usr/bin/env python3
"""
Exception types shared by the merge backends, the generators and the CLI
"""

from typing import Optional

# Exit codes used by the command line front end
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3


class MergeError(Exception):
    """Base class for every error raised by this package"""

    exit_code = EXIT_USAGE


class ConfigurationError(MergeError):
    """Invalid parameters or an unsupported backend mode"""

    exit_code = EXIT_USAGE


class InputFormatError(MergeError):
    """An input file cannot be read as newline-delimited strings"""

    exit_code = EXIT_INPUT

    def __init__(self, path: str, line: Optional[int], reason: str):
        self.path = path
        self.line = line
        self.reason = reason
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {reason}")


class MonotonicityViolation(MergeError):
    """A source produced a value that is not strictly above its predecessor"""

    exit_code = EXIT_INPUT

    def __init__(
        self,
        source: str,
        line: Optional[int],
        previous: bytes,
        value: bytes,
    ):
        self.source = source
        self.line = line
        self.previous = previous
        self.value = value
        where = f"{source}:{line}" if line is not None else source
        super().__init__(
            f"{where}: {value!r} does not follow {previous!r} in increasing order"
        )


class AlphabetError(MergeError):
    """A string holds a byte outside the declared trie alphabet"""

    exit_code = EXIT_INPUT

    def __init__(self, byte: int, source: Optional[str] = None):
        self.byte = byte
        self.source = source
        origin = f" (from {source})" if source else ""
        super().__init__(f"byte {byte:#04x} is not in the alphabet{origin}")


class InvariantViolation(MergeError):
    """A definitional checker disagreed with the maintained structure"""

    exit_code = EXIT_INVARIANT

    def __init__(self, check: str, detail: str):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}")
