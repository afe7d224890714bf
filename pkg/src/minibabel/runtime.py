"""Runtime model: values, the store, and the split environment.

An environment has two disjoint parts: ``nonlinear`` maps identifiers to
immutable values, ``linear`` maps identifiers to store locations that may
be rebound by assignment.  ``freeze`` reads every linear slot and moves it
into the nonlinear part; it is applied at every simple-expression boundary
and when a closure captures its environment, which is why rebinding can
never be observed through a closure or across a simple-expression.

The store maps locations (monotonically allocated integers, never reused
within one evaluation) to values.  It is mutated in place; environments
are never mutated, only replaced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .ast import Expr
from .errors import IllformedError, Pos, RuntimeTypeError


@dataclass(frozen=True)
class VInt:
    value: int


@dataclass(frozen=True)
class VBool:
    value: bool


@dataclass(frozen=True)
class VList:
    items: tuple[Value, ...]


@dataclass(frozen=True, eq=False)
class VFun:
    """A closure: parameter, body, and the frozen environment it captured.

    Closures have no structural equality; compare them by applying them.
    """

    param: str
    body: Expr
    env: Env


Value = Union[VInt, VBool, VList, VFun]

Location = int


def type_name(v: Value) -> str:
    if isinstance(v, VInt):
        return "integer"
    if isinstance(v, VBool):
        return "boolean"
    if isinstance(v, VList):
        return "list"
    return "function"


def render_value(v: Value) -> str:
    """Canonical rendering: decimal integers, ``true``/``false``,
    ``[v1, v2]`` lists, ``<fun>`` for functions."""
    if isinstance(v, VInt):
        return str(v.value)
    if isinstance(v, VBool):
        return "true" if v.value else "false"
    if isinstance(v, VList):
        return "[" + ", ".join(render_value(item) for item in v.items) + "]"
    return "<fun>"


def contains_function(v: Value) -> bool:
    if isinstance(v, VFun):
        return True
    if isinstance(v, VList):
        return any(contains_function(item) for item in v.items)
    return False


def values_equal(a: Value, b: Value, pos: Pos | None = None) -> bool:
    """Structural equality for ``==``/``!=``.

    Defined only for function-free operands of matching shape; anything
    else is a type error, including any comparison involving a function.
    """
    if contains_function(a) or contains_function(b):
        raise RuntimeTypeError("'==' is not defined for functions", pos)
    return _structural_equal(a, b, pos)


def _structural_equal(a: Value, b: Value, pos: Pos | None) -> bool:
    if isinstance(a, VInt) and isinstance(b, VInt):
        return a.value == b.value
    if isinstance(a, VBool) and isinstance(b, VBool):
        return a.value == b.value
    if isinstance(a, VList) and isinstance(b, VList):
        if len(a.items) != len(b.items):
            return False
        return all(
            _structural_equal(x, y, pos) for x, y in zip(a.items, b.items)
        )
    raise RuntimeTypeError(
        f"'==' requires operands of the same shape, got {type_name(a)} and {type_name(b)}",
        pos,
    )


def to_value(obj: object) -> Value:
    """Convert a Python int/bool/list into a language value (embedding aid)."""
    if isinstance(obj, bool):
        return VBool(obj)
    if isinstance(obj, int):
        return VInt(obj)
    if isinstance(obj, (list, tuple)):
        return VList(tuple(to_value(x) for x in obj))
    if isinstance(obj, (VInt, VBool, VList, VFun)):
        return obj
    raise TypeError(f"no language value for {obj!r}")


def from_value(v: Value) -> object:
    """Convert a function-free language value back into Python data."""
    if isinstance(v, VInt):
        return v.value
    if isinstance(v, VBool):
        return v.value
    if isinstance(v, VList):
        return [from_value(item) for item in v.items]
    raise TypeError("functions have no Python representation")


class Store:
    """Location-to-value map with a monotone allocation counter."""

    __slots__ = ("_cells", "_next")

    def __init__(self) -> None:
        self._cells: dict[Location, Value] = {}
        self._next: Location = 0

    def alloc(self, value: Value) -> Location:
        loc = self._next
        self._next += 1
        self._cells[loc] = value
        return loc

    def read(self, loc: Location) -> Value:
        return self._cells[loc]

    def write(self, loc: Location, value: Value) -> None:
        # Only existing locations may be written; allocation is explicit.
        if loc not in self._cells:
            raise KeyError(loc)
        self._cells[loc] = value

    def contents(self) -> dict[Location, Value]:
        """Snapshot of the current cells (used by purity instrumentation)."""
        return dict(self._cells)

    def copy(self) -> Store:
        dup = Store()
        dup._cells = dict(self._cells)
        dup._next = self._next
        return dup

    def __contains__(self, loc: Location) -> bool:
        return loc in self._cells

    def __len__(self) -> int:
        return len(self._cells)


@dataclass(frozen=True)
class Env:
    """Split identifier environment; both parts are treated as immutable."""

    nonlinear: Mapping[str, Value]
    linear: Mapping[str, Location]


EMPTY_ENV = Env({}, {})


def freeze(env: Env, store: Store) -> Env:
    """Turn every linear binding into a nonlinear one by reading its slot."""
    if not env.linear:
        return env
    nonlinear = dict(env.nonlinear)
    for name, loc in env.linear.items():
        nonlinear[name] = store.read(loc)
    return Env(nonlinear, {})


def bind(env: Env, store: Store, name: str, value: Value) -> Env:
    """Create a fresh linear binding, shadowing any existing binding."""
    loc = store.alloc(value)
    nonlinear = env.nonlinear
    if name in nonlinear:
        nonlinear = dict(nonlinear)
        del nonlinear[name]
    linear = dict(env.linear)
    linear[name] = loc
    return Env(nonlinear, linear)


def rebind(env: Env, store: Store, name: str, value: Value,
           pos: Pos | None = None) -> None:
    """Overwrite the slot of a linear binding; the update is visible through
    every environment sharing the location."""
    loc = env.linear.get(name)
    if loc is None:
        raise IllformedError(
            f"cannot assign to '{name}': it is not in linear scope", pos
        )
    store.write(loc, value)


def lookup(env: Env, store: Store, name: str, pos: Pos | None = None) -> Value:
    if name in env.linear:
        return store.read(env.linear[name])
    if name in env.nonlinear:
        return env.nonlinear[name]
    raise IllformedError(f"unbound identifier '{name}'", pos)
