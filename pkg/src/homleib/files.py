"""JSON definition files for algebras, bimodules, operators and bracket entries.

An algebra file looks like::

    {
      "name": "E4",
      "dim": 2,
      "alpha": [["1", "0"], ["0", "1"]],
      "brackets": {
        "pi1": [{"i": 2, "j": 2, "k": 1, "c": "1"}],
        "pi2": [{"i": 2, "j": 1, "k": 1, "c": "1"}]
      },
      "module": {
        "dim": 1,
        "beta": [["1"]],
        "actions": {"mL1": [], "mR1": [], "mL2": [], "mR2": []}
      }
    }

An entry ``{i, j, k, c}`` of a bracket means ``[e_i, e_j]`` gains ``c e_k``.
For ``mL`` actions ``i`` indexes the algebra and ``j, k`` the module; for
``mR`` actions ``i, k`` index the module and ``j`` the algebra.  Indices are
1-based, rationals are strings such as ``"-3/4"`` (plain JSON integers are
accepted too) and omitted entries are zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import linalg
from .cochains import Cochain, HomVectorSpace
from .representation import Bimodule, CompatibleBimodule
from .structures import CompatibleHomLeibnizAlgebra, HomLeibnizAlgebra, LinearOperator

BRACKET_LABELS = ("pi1", "pi2")
ACTION_LABELS = ("mL1", "mR1", "mL2", "mR2")

Entries = dict[tuple[int, int, int], Fraction]


class AlgebraFileError(ValueError):
    """Malformed input; ``where`` is a line number or a field path."""

    def __init__(self, source: str, where: str, message: str):
        self.source, self.where, self.message = source, where, message
        super().__init__(f"{source}: {where}: {message}")


class _Reader:
    def __init__(self, source: str):
        self.source = source

    def fail(self, path: str, message: str):
        raise AlgebraFileError(self.source, path or "<top>", message)

    def load(self, text: str):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraFileError(self.source, f"line {exc.lineno} column {exc.colno}", exc.msg) from None

    def mapping(self, value, path: str, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> dict:
        if not isinstance(value, dict):
            self.fail(path, "expected an object")
        for key in required:
            if key not in value:
                self.fail(_join(path, key), "missing field")
        unknown = sorted(set(value) - set(required) - set(optional))
        if unknown:
            self.fail(_join(path, unknown[0]), "unknown field")
        return value

    def count(self, value, path: str, minimum: int = 1) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(path, "expected an integer")
        if value < minimum:
            self.fail(path, f"must be at least {minimum}")
        return value

    def rational(self, value, path: str) -> Fraction:
        try:
            return linalg.scalar(value)
        except (TypeError, ValueError, ZeroDivisionError):
            self.fail(path, f"invalid rational literal {json.dumps(value)}")

    def matrix(self, value, path: str, rows: int, cols: Optional[int] = None) -> np.ndarray:
        cols = rows if cols is None else cols
        if not isinstance(value, list) or len(value) != rows:
            self.fail(path, f"expected a {rows}x{cols} matrix")
        out = linalg.zeros((rows, cols))
        for r, row in enumerate(value):
            if not isinstance(row, list) or len(row) != cols:
                self.fail(f"{path}[{r}]", f"expected a row of length {cols}")
            for c, v in enumerate(row):
                out[r, c] = self.rational(v, f"{path}[{r}][{c}]")
        return out

    def entries(self, value, path: str, bounds: tuple[int, int, int]) -> Entries:
        if not isinstance(value, list):
            self.fail(path, "expected a list of entries")
        out: Entries = {}
        for n, item in enumerate(value):
            where = f"{path}[{n}]"
            self.mapping(item, where, ("i", "j", "k", "c"))
            idx = []
            for key, bound in zip("ijk", bounds):
                v = self.count(item[key], f"{where}.{key}")
                if v > bound:
                    self.fail(f"{where}.{key}", f"index {v} out of range 1..{bound}")
                idx.append(v)
            key = tuple(idx)
            if key in out:
                self.fail(where, f"duplicate entry for (i, j, k) = {key}")
            out[key] = self.rational(item["c"], f"{where}.c")
        return out


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


@dataclass
class ModuleBlock:
    dim: int
    beta: np.ndarray
    actions: dict[str, Entries]


@dataclass
class AlgebraFile:
    name: str
    dim: int
    alpha: np.ndarray
    brackets: dict[str, Entries]
    module: Optional[ModuleBlock] = None

    @property
    def compatible(self) -> bool:
        return len(self.brackets) == 2

    @property
    def space(self) -> HomVectorSpace:
        return HomVectorSpace(self.dim, self.alpha)

    def algebra(self) -> Union[HomLeibnizAlgebra, CompatibleHomLeibnizAlgebra]:
        s = self.space
        pis = [Cochain.from_entries(s, s, 2, self.brackets[label]) for label in BRACKET_LABELS if label in self.brackets]
        if self.compatible:
            return CompatibleHomLeibnizAlgebra(s, *pis)
        return HomLeibnizAlgebra(s, *pis)

    def bimodule(self) -> Union[Bimodule, CompatibleBimodule, None]:
        if self.module is None:
            return None
        base = self.algebra()
        coeff = HomVectorSpace(self.module.dim, self.module.beta)
        d, m = self.dim, self.module.dim
        tensors = {}
        for label in ACTION_LABELS[: 2 * len(self.brackets)]:
            shape = (d, m, m) if label.startswith("mL") else (m, d, m)
            t = linalg.zeros(shape)
            for (i, j, k), c in self.module.actions.get(label, {}).items():
                t[i - 1, j - 1, k - 1] = c
            tensors[label] = t
        if self.compatible:
            return CompatibleBimodule(base, coeff, *(tensors[label] for label in ACTION_LABELS))
        return Bimodule(base, coeff, tensors["mL1"], tensors["mR1"])

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "dim": self.dim,
            "alpha": _matrix_out(self.alpha),
            "brackets": {label: _entries_out(e) for label, e in self.brackets.items()},
        }
        if self.module is not None:
            out["module"] = {
                "dim": self.module.dim,
                "beta": _matrix_out(self.module.beta),
                "actions": {label: _entries_out(e) for label, e in sorted(self.module.actions.items())},
            }
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def __eq__(self, other):
        if not isinstance(other, AlgebraFile):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def _matrix_out(m: np.ndarray) -> list[list[str]]:
    return [[linalg.format_scalar(v) for v in row] for row in m]


def _entries_out(entries: Entries) -> list[dict]:
    return [
        {"i": i, "j": j, "k": k, "c": linalg.format_scalar(c)}
        for (i, j, k), c in sorted(entries.items())
        if c != 0
    ]


def _tensor_entries(t: np.ndarray) -> Entries:
    return {tuple(int(i) + 1 for i in idx): v for idx, v in np.ndenumerate(t) if v != 0}


def parse_algebra_text(text: str, source: str = "<string>") -> AlgebraFile:
    r = _Reader(source)
    doc = r.mapping(r.load(text), "", ("dim", "alpha", "brackets"), ("name", "module"))
    name = doc.get("name", "")
    if not isinstance(name, str):
        r.fail("name", "expected a string")
    d = r.count(doc["dim"], "dim")
    alpha = r.matrix(doc["alpha"], "alpha", d)
    raw = doc["brackets"]
    if not isinstance(raw, dict) or set(raw) not in ({"pi1"}, {"pi1", "pi2"}):
        r.fail("brackets", 'expected an object with key "pi1" and optionally "pi2"')
    brackets = {label: r.entries(raw[label], f"brackets.{label}", (d, d, d)) for label in BRACKET_LABELS if label in raw}
    module = None
    if "module" in doc:
        block = r.mapping(doc["module"], "module", ("dim", "beta"), ("actions",))
        m = r.count(block["dim"], "module.dim")
        beta = r.matrix(block["beta"], "module.beta", m)
        allowed = ACTION_LABELS[: 2 * len(brackets)]
        raw_actions = r.mapping(block.get("actions", {}), "module.actions", (), allowed)
        actions = {}
        for label in allowed:
            bounds = (d, m, m) if label.startswith("mL") else (m, d, m)
            actions[label] = r.entries(raw_actions.get(label, []), f"module.actions.{label}", bounds)
        module = ModuleBlock(m, beta, actions)
    return AlgebraFile(name, d, alpha, brackets, module)


def parse_algebra_file(path) -> AlgebraFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise AlgebraFileError(str(path), "<file>", exc.strerror or str(exc)) from None
    return parse_algebra_text(text, str(path))


def from_structure(structure, name: str = "") -> AlgebraFile:
    """Inverse of :meth:`AlgebraFile.algebra` / :meth:`AlgebraFile.bimodule`."""
    module = None
    if isinstance(structure, (Bimodule, CompatibleBimodule)):
        algebra = structure.base
        if isinstance(structure, CompatibleBimodule):
            tensors = (structure.left1, structure.right1, structure.left2, structure.right2)
        else:
            tensors = (structure.left, structure.right)
        actions = {label: _tensor_entries(t) for label, t in zip(ACTION_LABELS, tensors)}
        module = ModuleBlock(structure.coeff.dim, structure.coeff.twist, actions)
    else:
        algebra = structure
    brackets = {label: _tensor_entries(pi.coeffs) for label, pi in zip(BRACKET_LABELS, algebra.brackets)}
    return AlgebraFile(name, algebra.dim, algebra.space.twist, brackets, module)


def _read_json(path):
    path = Path(path)
    r = _Reader(str(path))
    try:
        text = path.read_text()
    except OSError as exc:
        r.fail("<file>", exc.strerror or str(exc))
    return r, r.load(text)


def parse_operator_file(path, dim: int) -> np.ndarray:
    """A ``dim x dim`` matrix, bare or as ``{"matrix": ...}``, acting on columns."""
    r, doc = _read_json(path)
    where = ""
    if isinstance(doc, dict):
        doc = r.mapping(doc, "", ("matrix",))["matrix"]
        where = "matrix"
    return r.matrix(doc, where, dim)


def parse_entries_file(path, dim: int) -> Entries:
    """Bracket entries, bare or as ``{"entries": [...]}``."""
    r, doc = _read_json(path)
    where = ""
    if isinstance(doc, dict):
        doc = r.mapping(doc, "", ("entries",))["entries"]
        where = "entries"
    return r.entries(doc, where, (dim, dim, dim))


def operator_to_dict(op: LinearOperator) -> dict:
    return {"matrix": _matrix_out(op.matrix)}
