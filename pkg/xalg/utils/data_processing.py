import re

import numpy as np
import yaml


def parse_int_list(value):
    """
    Read a list of integers from a hand-written literal.

    Accepts a YAML/JSON list, a bare integer, or a string such as
    "0,1,0", "[0, 1, 0]" or "0 1 0".

    Args:
        value: The literal as loaded from a definition file

    Returns:
        List of Python ints

    Raises:
        ValueError: If no integer list can be read
    """
    if isinstance(value, (list, tuple)):
        try:
            return [int(v) for v in value]
        except (TypeError, ValueError):
            raise ValueError(f"not a list of integers: {value!r}")
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return [int(value)]
    if not isinstance(value, str):
        raise ValueError(f"not a list of integers: {value!r}")

    text = value.strip()
    if text == '':
        return []
    try:
        loaded = yaml.safe_load(text)
        if isinstance(loaded, list):
            return [int(v) for v in loaded]
        if isinstance(loaded, int) and not isinstance(loaded, bool):
            return [loaded]
    except (yaml.YAMLError, TypeError, ValueError):
        pass

    tokens = [t for t in re.split(r'[\s,;\[\]()]+', text) if t]
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ValueError(f"not a list of integers: {value!r}")


def parse_vector(value, modulus, length, names=None):
    """
    Coordinates of an element, reduced mod p.

    ``names`` maps element names (from the algebra's ``elements`` section)
    to coordinate lists; a name may be used wherever a vector is expected.
    """
    if isinstance(value, str) and names and value.strip() in names:
        return np.asarray(names[value.strip()], dtype=np.int64) % modulus
    coords = parse_int_list(value)
    if len(coords) != length:
        raise ValueError(f"expected {length} coordinates, got {len(coords)}: {value!r}")
    return np.asarray(coords, dtype=np.int64) % modulus


def parse_matrix(value, modulus, rows, cols):
    """
    A rows x cols matrix written as a list of rows, or one of the
    keywords "zero" and "identity".
    """
    if isinstance(value, str):
        keyword = value.strip().lower()
        if keyword == 'zero':
            return np.zeros((rows, cols), dtype=np.int64)
        if keyword == 'identity':
            if rows != cols:
                raise ValueError(f"identity needs a square shape, got {rows}x{cols}")
            return np.eye(rows, dtype=np.int64)
        value = yaml.safe_load(value)
    if value is None:
        value = []
    if not isinstance(value, (list, tuple)):
        raise ValueError(f"matrix must be a list of rows: {value!r}")
    parsed = [parse_int_list(row) for row in value]
    if len(parsed) != rows or any(len(row) != cols for row in parsed):
        shape = (len(parsed), max((len(r) for r in parsed), default=0))
        raise ValueError(f"expected a {rows}x{cols} matrix, got {shape[0]}x{shape[1]}")
    if rows == 0:
        return np.zeros((0, cols), dtype=np.int64)
    return np.asarray(parsed, dtype=np.int64).reshape(rows, cols) % modulus


def parse_index_pair(key, separator):
    """Split "i*j" or "i.p" into two integer indices."""
    parts = str(key).split(separator)
    if len(parts) != 2:
        raise ValueError(f"expected 'a{separator}b', got {key!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"expected integer indices in {key!r}")
