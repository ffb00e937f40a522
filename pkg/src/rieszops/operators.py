"""Regular operators between coordinate Riesz spaces.

A regular operator here is a matrix acting on column vectors; between
finite-dimensional spaces every operator is regular and order continuous,
and the lattice operations admit entrywise closed forms:

* ``|A|``      -- entrywise absolute value,
* ``(S v T)`` -- entrywise max,  ``(S ^ T)`` -- entrywise min.

The point of this module is not to trust those closed forms but to check
them against the defining Riesz-Kantorovich expressions, which quantify
over positive partitions of a positive test vector:

* ``|A| w   = sup { sum_i |A w_i| : w_i >= 0, sum_i w_i = w }``
* ``(S^T) w = inf { sum_i min(S w_i, T w_i) : w_i >= 0, sum_i w_i = w }``

``modulus_oracle`` and ``meet_oracle`` evaluate those partition sums over
configurable partition families (trivial / halves / atomic / dyadic /
seeded random convex splits) and report the best bound seen.  In the
coordinate model the atomic partition attains the supremum/infimum exactly,
which the test-suite pins down.

``OperatorPartition`` models the operator-side decompositions
``sum_j |T_j| = T`` used by the superoperator formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterator, Optional, Sequence

from .lattice import (
    DimensionMismatchError,
    LatticeVector,
    Partition,
    PartitionScheme,
    atomic_partition,
    refinement_chain,
    trivial_partition,
    vector_partitions,
)
from .scalars import (
    DEFAULT_TOLERANCE,
    EXACT,
    FLOAT,
    ScalarModeError,
    coerce_entries,
    eq,
    is_zero,
    le,
    scalar_to_json,
    zero_of,
)


@dataclass(frozen=True)
class RegularOperator:
    """Matrix operator between coordinate Riesz spaces (rows x cols).

    Entries are stored row-major as a flat tuple, all exact rationals or
    all floats (mixed input is coerced to float).
    """

    rows: int
    cols: int
    entries: tuple

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if rows <= 0 or cols <= 0:
            raise ValueError("operator dimensions must be positive")
        coerced, _ = coerce_entries(entries)
        if len(coerced) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} operator, "
                f"got {len(coerced)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", coerced)

    # -- structure ---------------------------------------------------------

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def mode(self) -> str:
        return FLOAT if isinstance(self.entries[0], float) else EXACT

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> LatticeVector:
        return LatticeVector(self.entries[i * self.cols : (i + 1) * self.cols])

    def column(self, j: int) -> LatticeVector:
        return LatticeVector([self.entry(i, j) for i in range(self.rows)])

    def _check_same_shape(self, other: "RegularOperator"):
        if not isinstance(other, RegularOperator):
            raise TypeError(f"expected RegularOperator, got {type(other).__name__}")
        if self.shape != other.shape:
            raise DimensionMismatchError(
                f"shape mismatch: {self.shape} vs {other.shape}"
            )
        if self.mode != other.mode:
            raise ScalarModeError(
                f"scalar mode mismatch: {self.mode} vs {other.mode}"
            )

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, n: int, mode: str = EXACT) -> "RegularOperator":
        one = Fraction(1) if mode == EXACT else 1.0
        zero = zero_of(mode)
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int, mode: str = EXACT) -> "RegularOperator":
        return cls(rows, cols, [zero_of(mode)] * (rows * cols))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RegularOperator":
        rows = [list(r) for r in rows]
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        flat = [x for r in rows for x in r]
        return cls(len(rows), ncols, flat)

    @classmethod
    def diagonal(cls, diag: LatticeVector) -> "RegularOperator":
        n = diag.dim
        zero = zero_of(diag.mode)
        return cls(
            n,
            n,
            [diag.entries[i] if i == j else zero for i in range(n) for j in range(n)],
        )

    @classmethod
    def matrix_unit(
        cls, rows: int, cols: int, i: int, j: int, mode: str = EXACT
    ) -> "RegularOperator":
        """E_ij: 1 in entry (i, j), zero elsewhere."""
        one = Fraction(1) if mode == EXACT else 1.0
        entries = [zero_of(mode)] * (rows * cols)
        entries[i * cols + j] = one
        return cls(rows, cols, entries)

    @classmethod
    def from_json(cls, data: dict) -> "RegularOperator":
        return cls(int(data["rows"]), int(data["cols"]), data["entries"])

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [scalar_to_json(x) for x in self.entries],
        }

    def to_lists(self) -> list:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols])
                for i in range(self.rows)]

    def as_floats(self) -> list:
        return [[float(self.entry(i, j)) for j in range(self.cols)]
                for i in range(self.rows)]

    def to_float(self) -> "RegularOperator":
        """The same operator in float mode (no-op on float operators)."""
        if not self.is_exact:
            return self
        return RegularOperator(
            self.rows, self.cols, [float(a) for a in self.entries]
        )

    # -- algebra ----------------------------------------------------------

    def apply(self, v: LatticeVector) -> LatticeVector:
        if v.dim != self.cols:
            raise DimensionMismatchError(
                f"operator expects dim {self.cols}, vector has dim {v.dim}"
            )
        if v.mode != self.mode:
            raise ScalarModeError(
                f"scalar mode mismatch: operator {self.mode}, vector {v.mode}"
            )
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(
                sum(self.entries[base + j] * v.entries[j] for j in range(self.cols))
            )
        return LatticeVector(out)

    def compose(self, other: "RegularOperator") -> "RegularOperator":
        """Matrix product self @ other."""
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot compose {self.shape} with {other.shape}"
            )
        if self.mode != other.mode:
            raise ScalarModeError(
                f"scalar mode mismatch: {self.mode} vs {other.mode}"
            )
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                out.append(
                    sum(
                        self.entry(i, k) * other.entry(k, j)
                        for k in range(self.cols)
                    )
                )
        return RegularOperator(self.rows, other.cols, out)

    def __matmul__(self, other: "RegularOperator") -> "RegularOperator":
        return self.compose(other)

    def transpose(self) -> "RegularOperator":
        return RegularOperator(
            self.cols,
            self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def __add__(self, other: "RegularOperator") -> "RegularOperator":
        self._check_same_shape(other)
        return RegularOperator(
            self.rows,
            self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "RegularOperator") -> "RegularOperator":
        self._check_same_shape(other)
        return RegularOperator(
            self.rows,
            self.cols,
            [a - b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self) -> "RegularOperator":
        return RegularOperator(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "RegularOperator":
        if isinstance(c, float) and self.is_exact:
            raise ScalarModeError("cannot scale an exact operator by a float")
        if isinstance(c, (int, Fraction)) and not self.is_exact:
            c = float(c)
        return RegularOperator(self.rows, self.cols, [c * a for a in self.entries])

    def __mul__(self, c) -> "RegularOperator":
        return self.scale(c)

    __rmul__ = __mul__

    # -- order and lattice closed forms -------------------------------------

    def is_positive(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        zero = zero_of(self.mode)
        return all(le(zero, a, tol) for a in self.entries)

    def le(self, other: "RegularOperator", tol: float = DEFAULT_TOLERANCE) -> bool:
        self._check_same_shape(other)
        return all(le(a, b, tol) for a, b in zip(self.entries, other.entries))

    def eq(self, other: "RegularOperator", tol: float = DEFAULT_TOLERANCE) -> bool:
        self._check_same_shape(other)
        return all(eq(a, b, tol) for a, b in zip(self.entries, other.entries))

    def is_zero(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        return all(is_zero(a, tol) for a in self.entries)

    def modulus_closed_form(self) -> "RegularOperator":
        """|A|: entrywise absolute value (coordinate-model closed form)."""
        return RegularOperator(self.rows, self.cols, [abs(a) for a in self.entries])

    def __abs__(self) -> "RegularOperator":
        return self.modulus_closed_form()

    def pos_part(self) -> "RegularOperator":
        zero = zero_of(self.mode)
        return RegularOperator(
            self.rows, self.cols, [max(a, zero) for a in self.entries]
        )

    def neg_part(self) -> "RegularOperator":
        zero = zero_of(self.mode)
        return RegularOperator(
            self.rows, self.cols, [max(-a, zero) for a in self.entries]
        )

    def join_closed_form(self, other: "RegularOperator") -> "RegularOperator":
        self._check_same_shape(other)
        return RegularOperator(
            self.rows,
            self.cols,
            [max(a, b) for a, b in zip(self.entries, other.entries)],
        )

    def meet_closed_form(self, other: "RegularOperator") -> "RegularOperator":
        self._check_same_shape(other)
        return RegularOperator(
            self.rows,
            self.cols,
            [min(a, b) for a, b in zip(self.entries, other.entries)],
        )

    def disjoint_with(
        self, other: "RegularOperator", tol: float = DEFAULT_TOLERANCE
    ) -> bool:
        """|self| ^ |other| = 0."""
        return (
            self.modulus_closed_form()
            .meet_closed_form(other.modulus_closed_form())
            .is_zero(tol)
        )

    def __repr__(self) -> str:
        return f"RegularOperator({self.rows}x{self.cols}, {self.to_lists()!r})"


def rank_one(functional: LatticeVector, value: LatticeVector) -> RegularOperator:
    """The operator  x' (x) y : v |-> <x', v> y  (matrix y x'^T)."""
    if functional.mode != value.mode:
        raise ScalarModeError(
            f"scalar mode mismatch: {functional.mode} vs {value.mode}"
        )
    entries = [
        value.entries[i] * functional.entries[j]
        for i in range(value.dim)
        for j in range(functional.dim)
    ]
    return RegularOperator(value.dim, functional.dim, entries)


# ---------------------------------------------------------------------------
# partition oracles for |A| and S ^ T
# ---------------------------------------------------------------------------


def partition_modulus_sum(A: RegularOperator, partition: Partition) -> LatticeVector:
    """sum_i |A w_i| for one positive partition of w."""
    total = LatticeVector.zero(A.rows, A.mode)
    for piece in partition.pieces:
        total = total + abs(A.apply(piece))
    return total


def partition_meet_sum(
    S: RegularOperator, T: RegularOperator, partition: Partition
) -> LatticeVector:
    """sum_i min(S w_i, T w_i) for one positive partition of w."""
    S._check_same_shape(T)
    total = LatticeVector.zero(S.rows, S.mode)
    for piece in partition.pieces:
        total = total + S.apply(piece).meet(T.apply(piece))
    return total


@dataclass(frozen=True)
class OracleResult:
    """Best partition bound found for a Riesz-Kantorovich expression.

    ``value`` is the running sup (modulus) or inf (meet) over all partitions
    tried; ``best_partition`` is the first partition attaining it;
    ``closed_form`` is the entrywise prediction at the same test vector;
    ``attained`` reports componentwise equality of the two at ``tol``.
    """

    value: LatticeVector
    best_partition: Partition
    closed_form: LatticeVector
    attained: bool
    partitions_tried: int


_DEFAULT_SCHEMES = (
    PartitionScheme(kind="trivial"),
    PartitionScheme(kind="halves"),
    PartitionScheme(kind="atomic"),
    PartitionScheme(kind="dyadic", depth=1),
    PartitionScheme(kind="random", parts=3, samples=5, seed=0),
)


def _iter_scheme_partitions(
    w: LatticeVector, schemes: Sequence[PartitionScheme]
) -> Iterator[Partition]:
    for scheme in schemes:
        yield from vector_partitions(w, scheme)


def modulus_oracle(
    A: RegularOperator,
    w: LatticeVector,
    schemes: Sequence[PartitionScheme] = _DEFAULT_SCHEMES,
    tol: float = DEFAULT_TOLERANCE,
) -> OracleResult:
    """Evaluate sup { sum_i |A w_i| } over the given partition families.

    The supremum is directed (refinements only increase the sum) and in the
    coordinate model it is attained by the atomic partition, where the sum
    collapses to (|A| w).
    """
    if not w.is_positive():
        raise ValueError("the modulus oracle needs a positive test vector")
    if w.dim != A.cols:
        raise DimensionMismatchError(
            f"operator expects dim {A.cols}, vector has dim {w.dim}"
        )
    closed = A.modulus_closed_form().apply(w)
    best: Optional[LatticeVector] = None
    best_partition: Optional[Partition] = None
    tried = 0
    for partition in _iter_scheme_partitions(w, schemes):
        tried += 1
        value = partition_modulus_sum(A, partition)
        if best is None:
            best, best_partition = value, partition
            continue
        candidate = best.join(value)
        if not candidate.eq(best, tol):
            best_partition = partition
        best = candidate
    assert best is not None and best_partition is not None
    return OracleResult(
        value=best,
        best_partition=best_partition,
        closed_form=closed,
        attained=best.eq(closed, tol),
        partitions_tried=tried,
    )


def meet_oracle(
    S: RegularOperator,
    T: RegularOperator,
    w: LatticeVector,
    schemes: Sequence[PartitionScheme] = _DEFAULT_SCHEMES,
    tol: float = DEFAULT_TOLERANCE,
) -> OracleResult:
    """Evaluate inf { sum_i min(S w_i, T w_i) } over the given families."""
    if not w.is_positive():
        raise ValueError("the meet oracle needs a positive test vector")
    if w.dim != S.cols:
        raise DimensionMismatchError(
            f"operator expects dim {S.cols}, vector has dim {w.dim}"
        )
    S._check_same_shape(T)
    closed = S.meet_closed_form(T).apply(w)
    best: Optional[LatticeVector] = None
    best_partition: Optional[Partition] = None
    tried = 0
    for partition in _iter_scheme_partitions(w, schemes):
        tried += 1
        value = partition_meet_sum(S, T, partition)
        if best is None:
            best, best_partition = value, partition
            continue
        candidate = best.meet(value)
        if not candidate.eq(best, tol):
            best_partition = partition
        best = candidate
    assert best is not None and best_partition is not None
    return OracleResult(
        value=best,
        best_partition=best_partition,
        closed_form=closed,
        attained=best.eq(closed, tol),
        partitions_tried=tried,
    )


def refinement_sums(A: RegularOperator, w: LatticeVector) -> list:
    """Partition-modulus sums along a refinement chain of w (monotone up)."""
    return [partition_modulus_sum(A, p) for p in refinement_chain(w)]


# ---------------------------------------------------------------------------
# operator partitions  sum_j |T_j| = T
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OperatorPartition:
    """Family (T_j) with sum_j |T_j| = T for a positive target T."""

    target: RegularOperator
    pieces: tuple

    def __init__(self, target: RegularOperator, pieces: Sequence[RegularOperator]):
        pieces = tuple(pieces)
        if not pieces:
            raise ValueError("an operator partition needs at least one piece")
        if not target.is_positive():
            raise ValueError("operator partitions target a positive operator")
        total = pieces[0].modulus_closed_form()
        for p in pieces[1:]:
            total = total + p.modulus_closed_form()
        if not total.eq(target):
            raise ValueError("moduli of the pieces do not sum to the target")
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "pieces", pieces)

    def __len__(self) -> int:
        return len(self.pieces)


def trivial_operator_partition(T: RegularOperator) -> OperatorPartition:
    return OperatorPartition(T, (T,))


def atomic_operator_partition(T: RegularOperator) -> OperatorPartition:
    """Split T >= 0 into matrix-unit pieces t_ij E_ij (nonzero entries only)."""
    pieces = []
    for i in range(T.rows):
        for j in range(T.cols):
            t = T.entry(i, j)
            if not is_zero(t, 0.0 if T.is_exact else DEFAULT_TOLERANCE):
                pieces.append(
                    RegularOperator.matrix_unit(T.rows, T.cols, i, j, T.mode) * t
                )
    if not pieces:
        pieces = [T]
    return OperatorPartition(T, tuple(pieces))


def signed_operator_partition(
    T: RegularOperator, signs: Sequence[int]
) -> OperatorPartition:
    """Atomic pieces with chosen signs: sum stays |sum of moduli| = T."""
    atomic = atomic_operator_partition(T)
    if len(signs) != len(atomic.pieces):
        raise ValueError("one sign per atomic piece required")
    pieces = [
        piece if s >= 0 else -piece for piece, s in zip(atomic.pieces, signs)
    ]
    return OperatorPartition(T, tuple(pieces))


def random_operator_partition(
    T: RegularOperator, parts: int, rng: Random, signed: bool = True
) -> OperatorPartition:
    """Split each entry of T >= 0 across ``parts`` pieces with random convex
    weights (grid 1/16, exact in rational mode) and, when ``signed``, random
    signs; unsigned splits give positive decompositions sum T_i = T."""
    from .lattice import SPLIT_DENOMINATOR, _integer_composition

    denom = SPLIT_DENOMINATOR
    grids = []
    for a in T.entries:
        weights = _integer_composition(rng, denom, parts)
        if signed:
            signs = [1 if rng.random() < 0.5 else -1 for _ in range(parts)]
        else:
            signs = [1] * parts
        if T.is_exact:
            grids.append([s * a * Fraction(c, denom) for s, c in zip(signs, weights)])
        else:
            grids.append([s * a * (c / denom) for s, c in zip(signs, weights)])
    pieces = []
    for p in range(parts):
        entries = [grids[k][p] for k in range(len(T.entries))]
        op = RegularOperator(T.rows, T.cols, entries)
        if not op.is_zero():
            pieces.append(op)
    if not pieces:
        pieces = [T]
    return OperatorPartition(T, tuple(pieces))


@dataclass(frozen=True)
class OperatorSplitScheme:
    """Configuration for a family of operator partitions of a positive T.

    Kinds: ``singleton`` ({T} itself), ``atomic`` (matrix-unit pieces,
    which attain the Riesz-Kantorovich supremum in this model), ``random``
    (seeded signed convex entry splits, ``samples`` of them).
    """

    kind: str = "atomic"
    parts: int = 3
    samples: int = 5
    seed: int = 0


def operator_partitions(
    T: RegularOperator, scheme: OperatorSplitScheme
) -> Iterator[OperatorPartition]:
    if scheme.kind == "singleton":
        yield trivial_operator_partition(T)
    elif scheme.kind == "atomic":
        yield atomic_operator_partition(T)
    elif scheme.kind == "random":
        rng = Random(scheme.seed)
        for _ in range(scheme.samples):
            yield random_operator_partition(T, scheme.parts, rng)
    else:
        raise ValueError(f"unknown operator split kind: {scheme.kind!r}")
