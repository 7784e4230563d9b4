"""Gluing equations, Neumann-Zagier reduction and the built-in triangulations.

Rows of the gluing matrices are the ``N`` edge equations followed by the
meridian and the longitude; columns are tetrahedra. The reduction keeps
edge rows ``1..N-1`` and the meridian, and halves the longitude row.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "GluingData",
    "NZReduced",
    "reduce",
    "builtin",
    "builtin_names",
    "builtin_reduced",
    "parse_triangulation",
    "write_triangulation",
    "ParseError",
    "UnknownKnot",
    "NonIntegralLongitude",
]

Matrix = tuple[tuple[int, ...], ...]


class ParseError(ValueError):
    """Malformed triangulation file; carries 1-based ``line`` and ``column``."""

    def __init__(self, msg: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


class UnknownKnot(KeyError):
    pass


class NonIntegralLongitude(ValueError):
    pass


def _mat(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


@dataclass(frozen=True)
class GluingData:
    """Raw gluing matrices ``G, G', G''`` of shape ``(N+2) x N``."""

    N: int
    G: Matrix
    Gp: Matrix
    Gpp: Matrix

    def __post_init__(self):
        object.__setattr__(self, "G", _mat(self.G))
        object.__setattr__(self, "Gp", _mat(self.Gp))
        object.__setattr__(self, "Gpp", _mat(self.Gpp))
        for name in ("G", "Gp", "Gpp"):
            m = getattr(self, name)
            if len(m) != self.N + 2 or any(len(r) != self.N for r in m):
                raise ValueError(f"{name} must be {self.N + 2} x {self.N}")

    @property
    def eta(self) -> tuple[int, ...]:
        return (2,) * self.N + (0, 0)


@dataclass(frozen=True)
class NZReduced:
    """Reduced Neumann-Zagier data driving the index sums.

    ``A``, ``B`` are ``N x N`` (edge rows ``1..N-1`` then the meridian),
    ``lam``/``lampp`` are the halved longitude rows of ``A_full``/``B_full``
    and ``nu_lambda`` the halved last entry of ``nu_full``. The full
    ``(N+2)``-row data after the integrality adjustment are kept for the
    plain index.
    """

    N: int
    A: Matrix
    B: Matrix
    nu: tuple[int, ...]
    lam: tuple[int, ...]
    lampp: tuple[int, ...]
    nu_lambda: int
    A_full: Matrix
    B_full: Matrix
    nu_full: tuple[int, ...]
    adjustment: tuple[int, ...] = ()

    def col_a(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.A)

    def col_b(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.B)

    def is_symplectic(self) -> bool:
        n = self.N
        abt = [[sum(self.A[i][k] * self.B[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
        return all(abt[i][j] == abt[j][i] for i in range(n) for j in range(n))


def _gf2_combination(rows: list[list[int]], target: list[int]) -> list[int] | None:
    """0/1 coefficients ``c`` with ``sum c_i rows_i == target (mod 2)``, lowest rows first."""
    n = len(rows)
    width = len(target)
    # augmented columns: basis vectors tracked alongside to recover coefficients
    work = [([x & 1 for x in r], [int(i == k) for k in range(n)]) for i, r in enumerate(rows)]
    t = [x & 1 for x in target]
    tc = [0] * n
    used = [False] * n
    for col in range(width):
        p = next((i for i in range(n) if not used[i] and work[i][0][col]), None)
        if p is None:
            continue
        used[p] = True
        pv, pc = work[p]
        for i in range(n):
            if i != p and work[i][0][col]:
                work[i] = ([a ^ b for a, b in zip(work[i][0], pv)], [a ^ b for a, b in zip(work[i][1], pc)])
        if t[col]:
            t = [a ^ b for a, b in zip(t, pv)]
            tc = [a ^ b for a, b in zip(tc, pc)]
    if any(t):
        return None
    return tc


def reduce(g: GluingData, nu_lambda: int | None = None) -> NZReduced:
    """Neumann-Zagier reduction of gluing data.

    ``nu_lambda`` overrides the halved longitude entry of the sign vector;
    by default it is computed from the gluing data.

    Raises
    ------
    NonIntegralLongitude
        If no combination of edge rows makes the halved longitude data integral.
    """
    N = g.N
    A_full = [[a - b for a, b in zip(r, rp)] for r, rp in zip(g.G, g.Gp)]
    B_full = [[a - b for a, b in zip(r, rp)] for r, rp in zip(g.Gpp, g.Gp)]
    nu_full = [eta - sum(rp) for eta, rp in zip(g.eta, g.Gp)]

    last = A_full[-1] + B_full[-1] + [nu_full[-1]]
    adjust = [0] * N
    if any(x % 2 for x in last):
        rows = [A_full[i] + B_full[i] + [nu_full[i]] for i in range(N)]
        c = _gf2_combination(rows, last)
        if c is None:
            raise NonIntegralLongitude("longitude row cannot be made even with edge rows")
        adjust = c
        for i, ci in enumerate(c):
            if ci:
                A_full[-1] = [a + ci * b for a, b in zip(A_full[-1], A_full[i])]
                B_full[-1] = [a + ci * b for a, b in zip(B_full[-1], B_full[i])]
                nu_full[-1] += ci * nu_full[i]

    keep = list(range(N - 1)) + [N]
    A = [A_full[i] for i in keep]
    B = [B_full[i] for i in keep]
    nu = [nu_full[i] for i in keep]
    return NZReduced(
        N=N,
        A=_mat(A),
        B=_mat(B),
        nu=tuple(nu),
        lam=tuple(x // 2 for x in A_full[-1]),
        lampp=tuple(x // 2 for x in B_full[-1]),
        nu_lambda=nu_full[-1] // 2 if nu_lambda is None else int(nu_lambda),
        A_full=_mat(A_full),
        B_full=_mat(B_full),
        nu_full=tuple(nu_full),
        adjustment=tuple(adjust),
    )


_BUILTINS = {
    "4_1": GluingData(
        N=2,
        G=[[2, 2], [0, 0], [1, 0], [1, 1]],
        Gp=[[1, 1], [1, 1], [0, 0], [1, -1]],
        Gpp=[[0, 0], [2, 2], [0, -1], [1, -3]],
    ),
    "5_2": GluingData(
        N=3,
        G=[[1, 1, 1], [0, 0, 0], [1, 1, 1], [-1, 0, 0], [3, 2, 1]],
        Gp=[[0, 2, 0], [1, 0, 1], [1, 0, 1], [0, 0, 0], [1, 2, 1]],
        Gpp=[[1, 0, 1], [1, 2, 1], [0, 0, 0], [0, 1, 0], [-1, 0, 3]],
    ),
    "m237": GluingData(
        N=3,
        G=[[1, 1, 1], [1, 0, 0], [0, 1, 1], [0, 0, -1], [-1, 1, -18]],
        Gp=[[1, 0, 0], [0, 2, 2], [1, 0, 0], [0, 0, 0], [1, -1, -2]],
        Gpp=[[0, 1, 0], [2, 1, 0], [0, 0, 2], [2, 0, 0], [35, 1, 0]],
    ),
}

_ALIASES = {"41": "4_1", "52": "5_2", "(-2,3,7)": "m237", "-2,3,7": "m237", "pretzel": "m237"}


# The printed 5_2 index carries no (-q^(1/2))^(-(n-n') nu_lambda) factor although
# the gluing data give nu_lambda = -2; the printed form is the one with
# I(n, n') = I(-n, n'), so it is the default for the built-in.
_NU_LAMBDA = {"5_2": 0}


def builtin_reduced(name: str) -> NZReduced:
    """Reduced data of a built-in knot in the convention of its printed index formula."""
    key = _ALIASES.get(name, name)
    return reduce(builtin(key), _NU_LAMBDA.get(key))


def builtin_names() -> list[str]:
    return list(_BUILTINS)


def builtin(name: str) -> GluingData:
    """Gluing data of a built-in knot complement: ``4_1``, ``5_2`` or ``m237``."""
    key = _ALIASES.get(name, name)
    try:
        return _BUILTINS[key]
    except KeyError:
        raise UnknownKnot(name) from None


# ---------------------------------------------------------------------------
# triangulation files

_INT = re.compile(r"[+-]?\d+")


def write_triangulation(g: GluingData) -> str:
    out = [f"N {g.N}"]
    for head, m in (("G", g.G), ("G'", g.Gp), ("G''", g.Gpp)):
        out.append(head)
        out.extend(" ".join(str(x) for x in row) for row in m)
    return "\n".join(out) + "\n"


def parse_triangulation(data: bytes | str) -> GluingData:
    """Parse the text format written by :func:`write_triangulation`.

    ``#`` starts a comment. Raises :class:`ParseError` with the position of
    the first problem.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 text ({exc.reason})", 1, 1) from None
    lines = []
    for lineno, raw in enumerate(data.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            col = len(body) - len(body.lstrip()) + 1
            lines.append((lineno, col, body.strip()))
    if not lines:
        raise ParseError("empty input", 1, 1)
    it = iter(lines)
    lineno, col, text = next(it)
    parts = text.split()
    if len(parts) != 2 or parts[0] != "N" or not _INT.fullmatch(parts[1]):
        raise ParseError("expected header 'N <count>'", lineno, col)
    N = int(parts[1])
    if N < 1:
        raise ParseError("tetrahedron count must be positive", lineno, col + 2)
    mats = {}
    for head in ("G", "G'", "G''"):
        try:
            lineno, col, text = next(it)
        except StopIteration:
            raise ParseError(f"missing block {head}", lines[-1][0] + 1, 1) from None
        if text != head:
            raise ParseError(f"expected block header {head!r}, got {text!r}", lineno, col)
        rows = []
        for _ in range(N + 2):
            try:
                lineno, col, text = next(it)
            except StopIteration:
                raise ParseError(f"block {head} needs {N + 2} rows", lines[-1][0] + 1, 1) from None
            toks = text.split()
            for t in toks:
                if not _INT.fullmatch(t):
                    raise ParseError(f"not an integer: {t!r}", lineno, col + text.index(t))
            if len(toks) != N:
                raise ParseError(f"expected {N} entries, found {len(toks)}", lineno, col)
            rows.append([int(t) for t in toks])
        mats[head] = rows
    extra = next(it, None)
    if extra is not None:
        raise ParseError("unexpected trailing content", extra[0], extra[1])
    return GluingData(N=N, G=mats["G"], Gp=mats["G'"], Gpp=mats["G''"])
