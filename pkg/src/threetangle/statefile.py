"""JSON state files.

A file holds either a ket::

    {"label": "GHZ", "amplitudes": [[re, im], ... 8 pairs]}

or a density matrix::

    {"label": "rho", "density": [[[re, im], ... 8], ... 8 rows]}

Complex numbers are always ``[re, im]`` pairs and the flat ket index is
``4i + 2j + k`` for ``|ijk>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import TangleError
from .states import check_density, normalize


class StateFileError(TangleError):
    pass


@dataclass(frozen=True)
class StateFile:
    label: str | None
    ket: np.ndarray | None = None
    density: np.ndarray | None = None

    @property
    def is_ket(self):
        return self.ket is not None

    def as_density(self):
        if self.is_ket:
            return np.outer(self.ket, self.ket.conj())
        return self.density


def _complex_array(data, shape, what):
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise StateFileError(f"{what}: entries must be [re, im] number pairs") from None
    if arr.shape != shape + (2,):
        raise StateFileError(f"{what}: expected shape {shape} of [re, im] pairs, got {arr.shape[:-1]}")
    return arr[..., 0] + 1j * arr[..., 1]


def state_from_json(doc) -> StateFile:
    if not isinstance(doc, dict):
        raise StateFileError("state file must hold a JSON object")
    has_amp, has_rho = "amplitudes" in doc, "density" in doc
    if has_amp == has_rho:
        raise StateFileError("exactly one of 'amplitudes' or 'density' must be present")
    label = doc.get("label")
    if has_amp:
        ket = _complex_array(doc["amplitudes"], (8,), "amplitudes")
        return StateFile(label, ket=normalize(ket))
    rho = _complex_array(doc["density"], (8, 8), "density")
    return StateFile(label, density=check_density(rho))


def _pairs(arr):
    arr = np.asarray(arr, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def state_to_json(state, label=None):
    """JSON document for a ket (1-D array) or density matrix (2-D array)."""
    arr = np.asarray(state, dtype=complex)
    doc = {} if label is None else {"label": label}
    if arr.ndim == 1:
        doc["amplitudes"] = _pairs(arr)
    else:
        doc["density"] = _pairs(arr)
    return doc


def read_state_file(path) -> StateFile:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path}: malformed JSON ({exc})") from None
    except OSError as exc:
        raise StateFileError(f"{path}: {exc.strerror}") from None
    try:
        return state_from_json(doc)
    except TangleError as exc:
        raise StateFileError(f"{path}: {exc}") from None


def write_state_file(path, state, label=None):
    with open(path, "w") as fh:
        json.dump(state_to_json(state, label), fh, indent=1)
        fh.write("\n")
