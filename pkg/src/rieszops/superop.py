"""Two-sided multiplication superoperators T |-> A T B.

Given A (z x y) and B (x x w), the map M(T) = A T B sends y x x matrices to
z x w matrices.  Because the matrix space with entrywise order is itself a
coordinate Riesz space, M is an operator between coordinate Riesz spaces and
all the machinery of ``operators`` applies to its matrix representation:
under column-major stacking, rep(M) = B^T (x) A (Kronecker product), so
moduli, meets, and joins of superoperators are entrywise on rep.

The verifiers check, with exact rational arithmetic:

* ``verify_prop21``        -- for a positive left factor A0:
                              |M_{A0,B}|(T) = A0 T |B|  and
                              (M_{A0,B} v M_{A0,D})(T) = A0 T (B v D),
                              plus attainment of the operator-partition
                              supremum  sup { sum_j |A0 T_j B| w }  by the
                              atomic splitting of T.
* ``verify_cor22``         -- |M_{A,B}| = M_{|A|,|B|} at rep level, pairwise
                              disjointness of the four sign-corner
                              superoperators M_{A+-,B+-}, and the signed
                              corner expansion reconstructing M_{A,B}.
* ``verify_synnatzschke_a`` -- for a positive right factor B0:
                              |M_{A,B0}| = M_{|A|,B0}  and
                              M_{A,B0} v M_{C,B0} = M_{A v C,B0}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .lattice import DimensionMismatchError, LatticeVector
from .operators import (
    OperatorPartition,
    OperatorSplitScheme,
    RegularOperator,
    operator_partitions,
)
from .reports import VerificationReport, make_report
from .scalars import DEFAULT_TOLERANCE, ScalarModeError, zero_of


class FactorlessSuperoperatorError(RuntimeError):
    """Factor access on a superoperator that only has a matrix rep.

    Meets/moduli of superoperators generally admit no A, B factorization;
    recovering one is not attempted.
    """


def kron(P: RegularOperator, Q: RegularOperator) -> RegularOperator:
    """Kronecker product P (x) Q: block matrix of P[i,j] * Q."""
    if P.mode != Q.mode:
        raise ScalarModeError(f"scalar mode mismatch: {P.mode} vs {Q.mode}")
    entries = []
    for pr in range(P.rows):
        for qr in range(Q.rows):
            for pc in range(P.cols):
                for qc in range(Q.cols):
                    entries.append(P.entry(pr, pc) * Q.entry(qr, qc))
    return RegularOperator(P.rows * Q.rows, P.cols * Q.cols, entries)


def vec(T: RegularOperator) -> LatticeVector:
    """Column-major stacking of a matrix into a vector."""
    return LatticeVector(
        [T.entry(i, j) for j in range(T.cols) for i in range(T.rows)]
    )


def unvec(v: LatticeVector, rows: int, cols: int) -> RegularOperator:
    """Inverse of ``vec`` for the given shape."""
    if v.dim != rows * cols:
        raise DimensionMismatchError(
            f"cannot reshape dim {v.dim} into {rows}x{cols}"
        )
    entries = [v.entries[j * rows + i] for i in range(rows) for j in range(cols)]
    return RegularOperator(rows, cols, entries)


@dataclass(frozen=True)
class Superoperator:
    """Linear map on matrix spaces: y x x inputs, z x w outputs.

    ``dims = (w, x, y, z)`` are the four underlying coordinate-space
    dimensions; ``rep`` is the (z*w) x (y*x) matrix acting on column-stacked
    inputs.  When the map arose as T |-> A T B the factors are retained;
    lattice operations drop them (their results are generally not
    two-sided multiplications).
    """

    dims: tuple
    rep: RegularOperator
    factors: Optional[tuple] = None

    def __post_init__(self):
        w, x, y, z = self.dims
        if min(w, x, y, z) <= 0:
            raise ValueError("all four dimensions must be positive")
        if self.rep.shape != (z * w, y * x):
            raise DimensionMismatchError(
                f"rep shape {self.rep.shape} does not match dims {self.dims}: "
                f"expected {(z * w, y * x)}"
            )
        if self.factors is not None:
            A, B = self.factors
            if A.shape != (z, y) or B.shape != (x, w):
                raise DimensionMismatchError(
                    f"factor shapes {A.shape}, {B.shape} do not match dims "
                    f"{self.dims}: expected {(z, y)} and {(x, w)}"
                )

    # -- construction -------------------------------------------------------

    @classmethod
    def build(cls, A: RegularOperator, B: RegularOperator) -> "Superoperator":
        """The two-sided multiplication T |-> A T B (A: z x y, B: x x w)."""
        if A.mode != B.mode:
            raise ScalarModeError(
                f"scalar mode mismatch: A is {A.mode}, B is {B.mode}"
            )
        z, y = A.shape
        x, w = B.shape
        rep = kron(B.transpose(), A)
        return cls(dims=(w, x, y, z), rep=rep, factors=(A, B))

    @classmethod
    def identity(cls, n: int, mode: str = "exact") -> "Superoperator":
        eye = RegularOperator.identity(n, mode)
        return cls.build(eye, eye)

    @classmethod
    def from_json(cls, data: dict) -> "Superoperator":
        w, x, y, z = (int(d) for d in data["dims"])
        if "A" in data or "B" in data:
            A = RegularOperator.from_json(data["A"])
            B = RegularOperator.from_json(data["B"])
            M = cls.build(A, B)
            if M.dims != (w, x, y, z):
                raise DimensionMismatchError(
                    f"declared dims {(w, x, y, z)} do not match factors {M.dims}"
                )
            return M
        rep = RegularOperator.from_json(data["rep"])
        return cls(dims=(w, x, y, z), rep=rep, factors=None)

    def to_json(self) -> dict:
        if self.factors is not None:
            A, B = self.factors
            return {"dims": list(self.dims), "A": A.to_json(), "B": B.to_json()}
        return {"dims": list(self.dims), "rep": self.rep.to_json()}

    # -- structure ----------------------------------------------------------

    @property
    def mode(self) -> str:
        return self.rep.mode

    @property
    def has_factors(self) -> bool:
        return self.factors is not None

    @property
    def factor_A(self) -> RegularOperator:
        if self.factors is None:
            raise FactorlessSuperoperatorError(
                "this superoperator has no A, B factorization (it is the "
                "result of a lattice operation); use its rep instead"
            )
        return self.factors[0]

    @property
    def factor_B(self) -> RegularOperator:
        if self.factors is None:
            raise FactorlessSuperoperatorError(
                "this superoperator has no A, B factorization (it is the "
                "result of a lattice operation); use its rep instead"
            )
        return self.factors[1]

    def input_shape(self) -> tuple:
        w, x, y, z = self.dims
        return (y, x)

    def output_shape(self) -> tuple:
        w, x, y, z = self.dims
        return (z, w)

    def _check_compatible(self, other: "Superoperator"):
        if self.dims != other.dims:
            raise DimensionMismatchError(
                f"superoperator dims mismatch: {self.dims} vs {other.dims}"
            )

    # -- action -------------------------------------------------------------

    def apply(self, T: RegularOperator) -> RegularOperator:
        """A T B via factors when available, rep action otherwise."""
        if T.shape != self.input_shape():
            raise DimensionMismatchError(
                f"superoperator expects {self.input_shape()} inputs, "
                f"got {T.shape}"
            )
        if self.factors is not None:
            A, B = self.factors
            return A @ T @ B
        return self.apply_rep(T)

    def apply_rep(self, T: RegularOperator) -> RegularOperator:
        """Action through the matrix rep only (coherence cross-check)."""
        if T.shape != self.input_shape():
            raise DimensionMismatchError(
                f"superoperator expects {self.input_shape()} inputs, "
                f"got {T.shape}"
            )
        z, w = self.output_shape()
        return unvec(self.rep.apply(vec(T)), z, w)

    def compose(self, other: "Superoperator") -> "Superoperator":
        """self after other; factor form (A A', B' B) survives when present."""
        if other.output_shape() != self.input_shape():
            raise DimensionMismatchError(
                f"cannot compose: inner shapes {other.output_shape()} vs "
                f"{self.input_shape()}"
            )
        w, x, y, z = self.dims
        ow, ox, oy, oz = other.dims
        rep = self.rep @ other.rep
        factors = None
        if self.factors is not None and other.factors is not None:
            A, B = self.factors
            C, D = other.factors
            factors = (A @ C, D @ B)
        return Superoperator(dims=(w, ox, oy, z), rep=rep, factors=factors)

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "Superoperator") -> "Superoperator":
        self._check_compatible(other)
        return Superoperator(self.dims, self.rep + other.rep, None)

    def __sub__(self, other: "Superoperator") -> "Superoperator":
        self._check_compatible(other)
        return Superoperator(self.dims, self.rep - other.rep, None)

    def __neg__(self) -> "Superoperator":
        return Superoperator(self.dims, -self.rep, None)

    def scale(self, c) -> "Superoperator":
        return Superoperator(self.dims, self.rep.scale(c), None)

    # -- lattice structure (entrywise on rep) --------------------------------

    def modulus(self) -> "Superoperator":
        return Superoperator(self.dims, self.rep.modulus_closed_form(), None)

    def meet(self, other: "Superoperator") -> "Superoperator":
        self._check_compatible(other)
        return Superoperator(self.dims, self.rep.meet_closed_form(other.rep), None)

    def join(self, other: "Superoperator") -> "Superoperator":
        self._check_compatible(other)
        return Superoperator(self.dims, self.rep.join_closed_form(other.rep), None)

    def pos_part(self) -> "Superoperator":
        return Superoperator(self.dims, self.rep.pos_part(), None)

    def neg_part(self) -> "Superoperator":
        return Superoperator(self.dims, self.rep.neg_part(), None)

    # -- order --------------------------------------------------------------

    def eq(self, other: "Superoperator", tol: float = DEFAULT_TOLERANCE) -> bool:
        self._check_compatible(other)
        return self.rep.eq(other.rep, tol)

    def le(self, other: "Superoperator", tol: float = DEFAULT_TOLERANCE) -> bool:
        self._check_compatible(other)
        return self.rep.le(other.rep, tol)

    def is_positive(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        return self.rep.is_positive(tol)

    def is_zero(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        return self.rep.is_zero(tol)

    def disjoint_with(
        self, other: "Superoperator", tol: float = DEFAULT_TOLERANCE
    ) -> bool:
        self._check_compatible(other)
        return self.rep.disjoint_with(other.rep, tol)

    def __repr__(self) -> str:
        tag = "factors" if self.factors is not None else "rep-only"
        return f"Superoperator(dims={self.dims}, {tag})"


def build(A: RegularOperator, B: RegularOperator) -> Superoperator:
    """Module-level alias for ``Superoperator.build``."""
    return Superoperator.build(A, B)


# ---------------------------------------------------------------------------
# deviation helpers
# ---------------------------------------------------------------------------


def matrix_deviation(X: RegularOperator, Y: RegularOperator):
    """Largest entrywise |X - Y| (Fraction in exact mode, float otherwise)."""
    diff = X - Y
    return max(abs(a) for a in diff.entries)


def vector_deviation(x: LatticeVector, y: LatticeVector):
    diff = x - y
    return max(abs(a) for a in diff.entries)


def one_sided_excess(x: LatticeVector, upper: LatticeVector):
    """How far x pokes above upper: max(0, max_i (x - upper)_i)."""
    diff = x - upper
    worst = max(diff.entries)
    zero = zero_of(x.mode)
    return worst if worst > zero else zero


# ---------------------------------------------------------------------------
# the operator-partition supremum
# ---------------------------------------------------------------------------

SchemeLike = Union[OperatorSplitScheme, Sequence[OperatorSplitScheme]]


def _iter_operator_partitions(
    T: RegularOperator, strategy: SchemeLike
) -> Iterator[OperatorPartition]:
    if isinstance(strategy, OperatorSplitScheme):
        strategy = (strategy,)
    for scheme in strategy:
        yield from operator_partitions(T, scheme)


def partition_superop_sum(
    A0: RegularOperator,
    B: RegularOperator,
    partition: OperatorPartition,
) -> RegularOperator:
    """sum_j |A0 T_j B| for one operator partition of T."""
    total = RegularOperator.zero(A0.rows, B.cols, A0.mode)
    for piece in partition.pieces:
        total = total + (A0 @ piece @ B).modulus_closed_form()
    return total


def operator_partition_sup(
    A0: RegularOperator,
    B: RegularOperator,
    T: RegularOperator,
    w: LatticeVector,
    strategy: SchemeLike = OperatorSplitScheme(kind="atomic"),
) -> LatticeVector:
    """sup over partitions (sum_j |T_j| = T) of  (sum_j |A0 T_j B|) w.

    Requires A0 >= 0 and T >= 0.  With the atomic strategy the supremum is
    attained and equals A0 T |B| w exactly; coarser strategies give
    componentwise smaller-or-equal values (cancellation inside |A0 T_j B|
    only ever loses mass).
    """
    if not A0.is_positive():
        raise ValueError("the partition supremum needs a positive left factor")
    if not T.is_positive():
        raise ValueError("the partition supremum needs a positive argument T")
    if T.shape != (A0.cols, B.rows):
        raise DimensionMismatchError(
            f"T has shape {T.shape}, expected {(A0.cols, B.rows)}"
        )
    if w.dim != B.cols:
        raise DimensionMismatchError(
            f"w has dim {w.dim}, expected {B.cols}"
        )
    if not w.is_positive():
        raise ValueError("the partition supremum is evaluated at positive w")
    best: Optional[LatticeVector] = None
    for partition in _iter_operator_partitions(T, strategy):
        value = partition_superop_sum(A0, B, partition).apply(w)
        best = value if best is None else best.join(value)
    if best is None:
        raise ValueError("empty partition strategy")
    return best


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------


def verify_prop21(
    A0: RegularOperator,
    B: RegularOperator,
    D: RegularOperator,
    T: RegularOperator,
    w: LatticeVector,
    seed: Optional[int] = None,
    tol: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Positive-left-factor identities, checked pointwise at T (and w).

    (i)   |M_{A0,B}|(T)            = A0 T |B|
    (ii)  (M_{A0,B} v M_{A0,D})(T) = A0 T (B v D)
    (iii) the operator-partition supremum at w: the atomic splitting of T
          attains A0 T |B| w exactly; singleton and random splittings stay
          componentwise below it.
    """
    if not A0.is_positive():
        raise ValueError("the left factor A0 must be positive")
    if not T.is_positive():
        raise ValueError("the argument T must be positive")
    M_B = Superoperator.build(A0, B)
    M_D = Superoperator.build(A0, D)
    M_absB = Superoperator.build(A0, B.modulus_closed_form())
    M_joinBD = Superoperator.build(A0, B.join_closed_form(D))

    dev_modulus = matrix_deviation(M_B.modulus().apply_rep(T), M_absB.apply(T))
    dev_join = matrix_deviation(M_B.join(M_D).apply_rep(T), M_joinBD.apply(T))

    rhs_at_w = M_absB.apply(T).apply(w)
    atomic_value = operator_partition_sup(
        A0, B, T, w, OperatorSplitScheme(kind="atomic")
    )
    dev_atomic = vector_deviation(atomic_value, rhs_at_w)

    coarse = operator_partition_sup(
        A0,
        B,
        T,
        w,
        (
            OperatorSplitScheme(kind="singleton"),
            OperatorSplitScheme(kind="random", parts=3, samples=5, seed=seed or 0),
        ),
    )
    dev_coarse = one_sided_excess(coarse, rhs_at_w)

    exact = A0.is_exact and B.is_exact and D.is_exact and T.is_exact and w.is_exact
    inputs = {
        "A0": A0.to_json(),
        "B": B.to_json(),
        "D": D.to_json(),
        "T": T.to_json(),
        "w": w.to_json(),
    }
    return make_report(
        claim_id="prop21",
        inputs=inputs,
        deviations=[dev_modulus, dev_join, dev_atomic, dev_coarse],
        exact=exact,
        witnesses=(
            {"role": "modulus_at_T", **M_absB.apply(T).to_json()},
            {"role": "partition_sup_at_w", **atomic_value.to_json()},
        ),
        seed=seed,
        details={
            "modulus_identity_deviation": _dev_json(dev_modulus),
            "join_identity_deviation": _dev_json(dev_join),
            "atomic_attainment_deviation": _dev_json(dev_atomic),
            "coarse_strategy_excess": _dev_json(dev_coarse),
        },
        tol=tol,
    )


def verify_cor22(
    A: RegularOperator,
    B: RegularOperator,
    seed: Optional[int] = None,
    tol: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Modulus factorization and the sign-corner decomposition.

    Checks rep(|M_{A,B}|) = rep(M_{|A|,|B|}); pairwise disjointness of the
    four corners M_{A+,B+}, M_{A+,B-}, M_{A-,B+}, M_{A-,B-}; and the signed
    expansion  corner(+,+) - corner(+,-) - corner(-,+) + corner(-,-)
    reconstructing M_{A,B}.
    """
    M = Superoperator.build(A, B)
    M_abs = Superoperator.build(A.modulus_closed_form(), B.modulus_closed_form())
    dev_modulus = matrix_deviation(M.modulus().rep, M_abs.rep)

    Ap, An = A.pos_part(), A.neg_part()
    Bp, Bn = B.pos_part(), B.neg_part()
    corners = (
        Superoperator.build(Ap, Bp),
        Superoperator.build(Ap, Bn),
        Superoperator.build(An, Bp),
        Superoperator.build(An, Bn),
    )
    zero = zero_of(A.mode)
    dev_disjoint = zero
    for i in range(4):
        for j in range(i + 1, 4):
            meet_rep = corners[i].rep.meet_closed_form(corners[j].rep)
            worst = max(abs(a) for a in meet_rep.entries)
            dev_disjoint = max(dev_disjoint, worst)

    signed = corners[0] - corners[1] - corners[2] + corners[3]
    dev_expansion = matrix_deviation(signed.rep, M.rep)

    exact = A.is_exact and B.is_exact
    inputs = {"A": A.to_json(), "B": B.to_json()}
    return make_report(
        claim_id="cor22",
        inputs=inputs,
        deviations=[dev_modulus, dev_disjoint, dev_expansion],
        exact=exact,
        witnesses=({"role": "modulus_rep", **M.modulus().rep.to_json()},),
        seed=seed,
        details={
            "modulus_rep_deviation": _dev_json(dev_modulus),
            "corner_disjointness_deviation": _dev_json(dev_disjoint),
            "signed_expansion_deviation": _dev_json(dev_expansion),
        },
        tol=tol,
    )


def verify_synnatzschke_a(
    A: RegularOperator,
    C: RegularOperator,
    B0: RegularOperator,
    seed: Optional[int] = None,
    tol: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Positive-right-factor identities, checked at rep level.

    (i)  |M_{A,B0}|          = M_{|A|,B0}
    (ii) M_{A,B0} v M_{C,B0} = M_{A v C,B0}
    """
    if not B0.is_positive():
        raise ValueError("the right factor B0 must be positive")
    M_A = Superoperator.build(A, B0)
    M_C = Superoperator.build(C, B0)
    dev_modulus = matrix_deviation(
        M_A.modulus().rep, Superoperator.build(A.modulus_closed_form(), B0).rep
    )
    dev_join = matrix_deviation(
        M_A.join(M_C).rep,
        Superoperator.build(A.join_closed_form(C), B0).rep,
    )
    exact = A.is_exact and C.is_exact and B0.is_exact
    inputs = {"A": A.to_json(), "C": C.to_json(), "B0": B0.to_json()}
    return make_report(
        claim_id="synnatzschke_a",
        inputs=inputs,
        deviations=[dev_modulus, dev_join],
        exact=exact,
        witnesses=({"role": "join_rep", **M_A.join(M_C).rep.to_json()},),
        seed=seed,
        details={
            "modulus_rep_deviation": _dev_json(dev_modulus),
            "join_rep_deviation": _dev_json(dev_join),
        },
        tol=tol,
    )


def _dev_json(value):
    from .scalars import scalar_to_json

    return scalar_to_json(value)
