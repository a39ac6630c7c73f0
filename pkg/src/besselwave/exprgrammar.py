"""Tiny arithmetic expression grammar for custom metric charts.

Accepted: numeric literals, the variables x and y, pi, + - * / ^ (power),
unary minus, and the calls sin, cos, sinh, cosh, exp.  Compiled through a
whitelisted Python AST into a numpy-vectorized callable, so no arbitrary
code can sneak in through a chart definition string.
"""

from __future__ import annotations

import ast
import math

import numpy as np

__all__ = ["ExpressionError", "compile_expression"]

_FUNCTIONS = {"sin": np.sin, "cos": np.cos, "sinh": np.sinh, "cosh": np.cosh, "exp": np.exp}
_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)
_UNARY = (ast.USub, ast.UAdd)


class ExpressionError(ValueError):
    """The expression uses something outside the documented grammar."""


def _validate(node: ast.AST, variables: tuple[str, ...]) -> None:
    if isinstance(node, ast.Expression):
        _validate(node.body, variables)
    elif isinstance(node, ast.Constant):
        if not isinstance(node.value, (int, float)):
            raise ExpressionError(f"literal {node.value!r} is not numeric")
    elif isinstance(node, ast.Name):
        if node.id not in variables and node.id != "pi":
            raise ExpressionError(f"unknown name {node.id!r}")
    elif isinstance(node, ast.BinOp):
        if not isinstance(node.op, _BINOPS):
            raise ExpressionError(f"operator {type(node.op).__name__} not allowed")
        _validate(node.left, variables)
        _validate(node.right, variables)
    elif isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, _UNARY):
            raise ExpressionError(f"unary {type(node.op).__name__} not allowed")
        _validate(node.operand, variables)
    elif isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCTIONS:
            raise ExpressionError("only sin, cos, sinh, cosh, exp calls are allowed")
        if len(node.args) != 1 or node.keywords:
            raise ExpressionError("grammar functions take exactly one argument")
        _validate(node.args[0], variables)
    else:
        raise ExpressionError(f"syntax element {type(node).__name__} not allowed")


def compile_expression(source: str, variables: tuple[str, ...] = ("x", "y")):
    """Compile a grammar string into a vectorized callable of the variables."""
    text = source.replace("^", "**").replace("·", "*")
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {source!r}: {exc}") from exc
    _validate(tree, tuple(variables))
    code = compile(tree, "<chart-expression>", "eval")
    namespace = dict(_FUNCTIONS)
    namespace["pi"] = math.pi

    def fn(*args):
        if len(args) != len(variables):
            raise TypeError(f"expression expects {len(variables)} arguments")
        arrays = [np.asarray(a, dtype=float) for a in args]
        local = dict(zip(variables, arrays))
        out = np.asarray(eval(code, {"__builtins__": {}}, {**namespace, **local}), dtype=float)
        # constants must still broadcast to the argument shape
        shape = np.broadcast(*arrays).shape if arrays else ()
        if out.ndim == 0 and shape:
            out = np.full(shape, float(out))
        return out

    fn.source = source
    return fn
