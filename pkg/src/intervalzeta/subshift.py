"""Finite-word combinatorics of shift spaces.

Words of the Fibonacci shift (binary words over {1,2} with no "11"),
edge-shift adjacency matrices and their periodic-point counts, and the
branch-collapse map on admissible words.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

Word = str

FIB_ALPHABET = "12"


def fib_language(n: int) -> list[Word]:
    """All length-n words over {1,2} with no two consecutive 1s, in lex order."""
    if n < 0:
        raise ValueError("word length must be >= 0")
    out = []
    for letters in product(FIB_ALPHABET, repeat=n):
        w = "".join(letters)
        if "11" not in w:
            out.append(w)
    return out


def fib_numbers(n: int) -> list[int]:
    """Fibonacci numbers l_0..l_n with l_0 = 0, l_1 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = [0, 1]
    while len(out) <= n:
        out.append(out[-1] + out[-2])
    return out[: n + 1]


class AdjMatrix:
    """Square nonnegative-integer adjacency matrix of an edge shift."""

    def __init__(self, rows: Sequence[Sequence[int]]):
        k = len(rows)
        if any(len(r) != k for r in rows):
            raise ValueError("adjacency matrix must be square")
        if any(int(e) < 0 or int(e) != e for r in rows for e in r):
            raise ValueError("entries must be nonnegative integers")
        self.k = k
        self.rows = tuple(tuple(int(e) for e in r) for r in rows)

    def __eq__(self, other):
        return isinstance(other, AdjMatrix) and self.rows == other.rows

    def __matmul__(self, other: "AdjMatrix") -> "AdjMatrix":
        k = self.k
        return AdjMatrix(
            [[sum(self.rows[i][l] * other.rows[l][j] for l in range(k)) for j in range(k)] for i in range(k)]
        )

    def identity(self) -> "AdjMatrix":
        return AdjMatrix([[1 if i == j else 0 for j in range(self.k)] for i in range(self.k)])

    def power(self, m: int) -> "AdjMatrix":
        if m < 0:
            raise ValueError("negative matrix power")
        acc = self.identity()
        base = self
        while m:
            if m & 1:
                acc = acc @ base
            base = base @ base
            m >>= 1
        return acc

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.k))

    def to_json(self) -> dict:
        return {"k": self.k, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "AdjMatrix":
        return cls(data["rows"])

    def __repr__(self):
        return "AdjMatrix(%r)" % (list(list(r) for r in self.rows),)


def fib_adjacency() -> AdjMatrix:
    """Adjacency matrix of the two-vertex graph presenting the Fibonacci shift."""
    return AdjMatrix([[0, 1], [1, 1]])


def sft_periodic_counts(a: AdjMatrix, n: int) -> list[int]:
    """Periodic-point counts N_1..N_n of the edge shift: traces of powers."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = []
    acc = a
    for _ in range(n):
        out.append(acc.trace())
        acc = acc @ a
    return out


def vee_map(w: Word) -> Word:
    """Left-to-right collapse of "12" blocks to "1" on admissible words.

    A leading 1 with a symbol after it must be followed by 2 (no "11" in the
    language); the pair is replaced by a single 1 and scanning resumes after
    it.  A trailing 1 is kept as is.  The image word records one inverse
    branch application per symbol: a 1 costs a double-step branch, a 2 a
    single-step branch, so 2*(#1s) + (#2s) of the output equals len(w).
    """
    if "11" in w:
        raise ValueError("word contains '11' and is not in the Fibonacci language")
    if any(ch not in FIB_ALPHABET for ch in w):
        raise ValueError("word must be over the alphabet {1,2}")
    out = []
    i = 0
    n = len(w)
    while i < n:
        if w[i] == "1" and i < n - 1:
            out.append("1")
            i += 2
        else:
            out.append(w[i])
            i += 1
    return "".join(out)
