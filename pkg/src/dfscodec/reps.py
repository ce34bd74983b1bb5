"""Unitary representations, characters, multiplicities and isotypic bases.

The block basis produced by :func:`isotypic_decompose` is the workhorse for
token-state construction: in that basis every collective operator splits into
one block per irrep, each block being the irrep matrix tensored with an
identity on the multiplicity space.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (
    MissingIrrepMatrices,
    NonIntegerMultiplicity,
    NotFaithful,
    NumericalDegeneracy,
    ResourceLimit,
    RMaxExceeded,
)
from .groups import ConjugacyClasses, FiniteGroup, conjugacy_classes

DEFAULT_R_MAX = 32
MAX_DECOMPOSE_DIM = 4096

UNITARY_TOL = 1e-9
HOMOMORPHISM_TOL = 1e-9
MULTIPLICITY_TOL = 1e-6
FAITHFUL_TOL = 1e-9
BLOCK_TOL = 1e-8
RANK_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """A map from group elements to d x d unitaries.

    ``projective`` marks representations that are homomorphisms only up to a
    per-pair phase (the Pauli set for the Klein group is the canonical case);
    validation then checks the product law up to a unimodular factor.
    """

    group: FiniteGroup
    dim: int
    matrices: np.ndarray  # shape (|G|, d, d)
    projective: bool = False

    def __post_init__(self) -> None:
        self.matrices.setflags(write=False)

    def matrix(self, i: int) -> np.ndarray:
        return self.matrices[i]

    @classmethod
    def build(
        cls,
        group: FiniteGroup,
        matrices,
        *,
        projective: bool = False,
        tol: float = UNITARY_TOL,
    ) -> "UnitaryRep":
        """Validate and construct; the identity matrix is snapped to exact I."""
        mats = np.array(matrices, dtype=np.complex128)
        if mats.shape[0] != group.order or mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise ValueError(f"expected {group.order} square matrices, got shape {mats.shape}")
        d = mats.shape[1]
        eye = np.eye(d)
        if np.max(np.abs(mats[0] - eye)) > tol:
            raise ValueError("matrix at the identity element is not the identity")
        mats[0] = eye
        for i in range(group.order):
            err = np.max(np.abs(mats[i].conj().T @ mats[i] - eye))
            if err > tol:
                raise ValueError(f"matrix {i} is not unitary (residue {err:.2e})")
        for i in range(group.order):
            for k in range(group.order):
                prod = mats[i] @ mats[k]
                target = mats[group.mul(i, k)]
                if projective:
                    phase = np.trace(target.conj().T @ prod) / d
                    if abs(abs(phase) - 1.0) > 1e-6:
                        raise ValueError(
                            f"pair ({i},{k}) is not a product up to phase"
                        )
                    err = np.max(np.abs(prod - phase * target))
                else:
                    err = np.max(np.abs(prod - target))
                if err > max(tol, HOMOMORPHISM_TOL):
                    raise ValueError(
                        f"product law fails at pair ({i},{k}) with residue {err:.2e}"
                    )
        return cls(group=group, dim=d, matrices=mats, projective=projective)


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Irrep characters per conjugacy class, plus optional explicit irrep matrices.

    Row 0 is the trivial irrep.  ``irrep_matrices[lam]`` has shape
    (|G|, d_lam, d_lam) and is required whenever a multi-dimensional irrep has
    to be resolved into matrix elements (non-abelian token construction).
    """

    group: FiniteGroup
    classes: ConjugacyClasses
    dims: np.ndarray
    chars: np.ndarray  # shape (s, s), chars[lam, c]
    irrep_matrices: tuple[np.ndarray, ...] | None = None

    def __post_init__(self) -> None:
        self.dims.setflags(write=False)
        self.chars.setflags(write=False)

    @property
    def num_irreps(self) -> int:
        return len(self.dims)

    def element_character(self, lam: int, element: int) -> complex:
        return complex(self.chars[lam, self.classes.class_of[element]])

    @classmethod
    def build(
        cls,
        group: FiniteGroup,
        dims,
        chars,
        irrep_matrices=None,
        *,
        classes: ConjugacyClasses | None = None,
        orth_tol: float = 1e-10,
    ) -> "CharacterTable":
        classes = classes or conjugacy_classes(group)
        dims = np.asarray(dims, dtype=np.int64)
        chars = np.asarray(chars, dtype=np.complex128)
        s = classes.s
        if chars.shape != (s, s):
            raise ValueError(f"character matrix must be {s}x{s}, got {chars.shape}")
        if dims.shape != (s,):
            raise ValueError(f"expected {s} irrep dimensions")
        if int(np.sum(dims**2)) != group.order:
            raise ValueError("sum of squared irrep dimensions must equal the group order")
        if np.max(np.abs(chars[0] - 1.0)) > orth_tol:
            raise ValueError("row 0 must be the trivial irrep (all ones)")
        gram = (chars * classes.class_sizes) @ chars.conj().T / group.order
        if np.max(np.abs(gram - np.eye(s))) > orth_tol:
            raise ValueError("characters violate the orthogonality relation")
        if irrep_matrices is not None:
            irrep_matrices = tuple(np.asarray(m, dtype=np.complex128) for m in irrep_matrices)
            for lam, mats in enumerate(irrep_matrices):
                if mats.shape != (group.order, dims[lam], dims[lam]):
                    raise ValueError(f"irrep {lam}: matrix block has shape {mats.shape}")
                for i in range(group.order):
                    for k in range(group.order):
                        err = np.max(
                            np.abs(mats[i] @ mats[k] - mats[group.mul(i, k)])
                        )
                        if err > 1e-9:
                            raise ValueError(f"irrep {lam} is not a homomorphism")
                trace = np.array([np.trace(mats[c[0]]) for c in classes.classes])
                if np.max(np.abs(trace - chars[lam])) > 1e-9:
                    raise ValueError(f"irrep {lam} matrices disagree with the character row")
        return cls(
            group=group,
            classes=classes,
            dims=dims,
            chars=chars,
            irrep_matrices=irrep_matrices,
        )


@dataclass(frozen=True)
class MultiplicityVector:
    """Irrep multiplicities of the n-th tensor power of a representation."""

    power: int
    gammas: tuple[int, ...]

    def __iter__(self):
        return iter(self.gammas)

    def __getitem__(self, lam: int) -> int:
        return self.gammas[lam]


@dataclass(frozen=True)
class IsotypicComponent:
    irrep: int
    dim: int
    multiplicity: int
    offset: int  # first column of this block in the basis matrix


@dataclass(frozen=True, eq=False)
class IsotypicDecomposition:
    """Orthonormal block basis for a tensor power of a representation.

    Columns of ``basis`` are ordered per component as (carrier index n outer,
    multiplicity index beta inner), so each collective operator becomes
    ``irrep_matrix(g) (x) I_multiplicity`` on its block.
    """

    rep: UnitaryRep
    power: int
    table: CharacterTable
    multiplicities: MultiplicityVector
    basis: np.ndarray
    components: tuple[IsotypicComponent, ...]

    def __post_init__(self) -> None:
        self.basis.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    def component(self, lam: int) -> IsotypicComponent:
        for comp in self.components:
            if comp.irrep == lam:
                return comp
        raise KeyError(f"irrep {lam} does not appear in the decomposition")

    def block_vector(self, lam: int, n: int, beta: int) -> np.ndarray:
        """Basis vector for irrep ``lam``, carrier index ``n``, multiplicity ``beta`` (1-based)."""
        comp = self.component(lam)
        if not (1 <= n <= comp.dim and 1 <= beta <= comp.multiplicity):
            raise IndexError(f"(n, beta) = ({n}, {beta}) out of range for irrep {lam}")
        return self.basis[:, comp.offset + (n - 1) * comp.multiplicity + (beta - 1)]


def compound_character(
    rep: UnitaryRep,
    classes: ConjugacyClasses | None = None,
    *,
    tol: float = UNITARY_TOL,
) -> np.ndarray:
    """Trace of the representing matrix, one entry per conjugacy class."""
    classes = classes or conjugacy_classes(rep.group)
    values = np.empty(classes.s, dtype=np.complex128)
    for c, members in enumerate(classes.classes):
        traces = np.array([np.trace(rep.matrices[i]) for i in members])
        if np.max(np.abs(traces - traces[0])) > tol:
            raise ValueError(f"class {c} members disagree on the trace")
        values[c] = traces[0]
    return values


def _gamma_floats(chi_powered: np.ndarray, table: CharacterTable) -> np.ndarray:
    sizes = table.classes.class_sizes
    return (table.chars.conj() * sizes) @ chi_powered / table.group.order


def multiplicities(
    rep: UnitaryRep,
    table: CharacterTable,
    n: int,
    *,
    tol: float = MULTIPLICITY_TOL,
) -> MultiplicityVector:
    """Irrep multiplicities of the n-th tensor power, via character arithmetic.

    The character of the power is the elementwise power of the base compound
    character, so no matrices are ever tensored here.
    """
    if n < 1:
        raise ValueError("tensor power must be >= 1")
    chi = compound_character(rep, table.classes)
    raw = _gamma_floats(chi**n, table)
    rounded = np.round(raw.real).astype(np.int64)
    residue = float(np.max(np.abs(raw - rounded)))
    if residue > tol:
        raise NonIntegerMultiplicity(
            f"multiplicities of power {n} are not integers (residue {residue:.3e}); "
            "the character table is inconsistent with the representation"
        )
    if np.any(rounded < 0):
        raise NonIntegerMultiplicity(f"negative multiplicity at power {n}")
    total = int(np.sum(rounded * table.dims))
    if total != rep.dim**n:
        raise NonIntegerMultiplicity(
            f"dimension accounting fails at power {n}: {total} != {rep.dim ** n}"
        )
    return MultiplicityVector(power=n, gammas=tuple(int(x) for x in rounded))


def contains_regular(mv: MultiplicityVector, table: CharacterTable) -> bool:
    """True iff every irrep appears at least as often as its dimension."""
    return all(g >= d for g, d in zip(mv.gammas, table.dims))


def is_faithful(rep: UnitaryRep, tol: float = FAITHFUL_TOL) -> bool:
    for i in range(rep.group.order):
        for k in range(i + 1, rep.group.order):
            if np.max(np.abs(rep.matrices[i] - rep.matrices[k])) <= tol:
                return False
    return True


def min_r(
    rep: UnitaryRep,
    table: CharacterTable,
    r_max: int = DEFAULT_R_MAX,
    *,
    faithful_tol: float = FAITHFUL_TOL,
) -> int:
    """Smallest tensor power whose decomposition contains the regular representation.

    Powers whose multiplicities are not integers (possible for projective base
    representations) cannot contain the regular representation and are skipped.
    """
    if not is_faithful(rep, faithful_tol):
        raise NotFaithful("two elements share a matrix; the token construction needs all |G|")
    chi = compound_character(rep, table.classes)
    for r in range(1, r_max + 1):
        raw = _gamma_floats(chi**r, table)
        rounded = np.round(raw.real)
        scale = max(1.0, float(rep.dim) ** r * 1e-12)
        if np.max(np.abs(raw - rounded)) > MULTIPLICITY_TOL * scale:
            continue
        if np.all(rounded >= table.dims):
            return r
    raise RMaxExceeded(
        f"no power r <= {r_max} contains the regular representation; raise r_max"
    )


def regular_rep(group: FiniteGroup) -> UnitaryRep:
    """The |G|-dimensional permutation representation g_k : |g_i> -> |g_k g_i>."""
    n = group.order
    mats = np.zeros((n, n, n), dtype=np.complex128)
    for k in range(n):
        for i in range(n):
            mats[k, group.mul(k, i), i] = 1.0
    return UnitaryRep.build(group, mats)


def tensor_power_matrices(rep: UnitaryRep, r: int) -> np.ndarray:
    """Dense r-fold Kronecker powers of every representing matrix."""
    dim = rep.dim**r
    if dim > MAX_DECOMPOSE_DIM:
        raise ResourceLimit(
            f"dense tensor power of dimension {dim} exceeds the guard {MAX_DECOMPOSE_DIM}"
        )
    out = np.empty((rep.group.order, dim, dim), dtype=np.complex128)
    for i in range(rep.group.order):
        out[i] = reduce(np.kron, [rep.matrices[i]] * r)
    return out


def _orthonormalize(candidates, expected: int, tol: float) -> list[np.ndarray]:
    """Deterministic Gram-Schmidt: keep the first ``expected`` independent images."""
    basis: list[np.ndarray] = []
    for vec in candidates:
        w = vec.astype(np.complex128, copy=True)
        for b in basis:
            w -= b * np.vdot(b, w)
        # second pass for numerical stability
        for b in basis:
            w -= b * np.vdot(b, w)
        norm = np.linalg.norm(w)
        if norm > tol:
            basis.append(w / norm)
        if len(basis) == expected:
            return basis
    raise NumericalDegeneracy(
        f"found {len(basis)} independent vectors, expected {expected}"
    )


def _is_diagonal_rep(mats: np.ndarray, tol: float = 1e-12) -> bool:
    off = mats - np.einsum("gii->gi", mats)[:, :, None] * np.eye(mats.shape[1])
    return bool(np.max(np.abs(off)) <= tol)


def isotypic_decompose(
    rep: UnitaryRep,
    r: int,
    table: CharacterTable,
    *,
    block_tol: float = BLOCK_TOL,
    rank_tol: float = RANK_TOL,
) -> IsotypicDecomposition:
    """Block basis of the r-th tensor power.

    Diagonal representations of abelian groups take a fast path that simply
    groups computational basis states by their phase character, in index
    order; this is what pins the canonical token fixtures.  The general path
    uses matrix-element projectors built from the explicit irrep matrices and
    orthonormalizes projector images of computational basis vectors in
    lexicographic order, which is deterministic and RNG-free.
    """
    group = rep.group
    mv = multiplicities(rep, table, r)
    dim = rep.dim**r
    abelian = table.classes.s == group.order

    columns: list[np.ndarray] = []
    components: list[IsotypicComponent] = []

    if abelian and _is_diagonal_rep(rep.matrices):
        # phase of each computational basis state under every element
        diags = np.empty((group.order, dim), dtype=np.complex128)
        for g in range(group.order):
            diags[g] = reduce(np.kron, [np.diag(rep.matrices[g])] * r)
        element_chars = table.chars[:, table.classes.class_of]  # (s, |G|)
        offset = 0
        for lam in range(table.num_irreps):
            gamma = mv[lam]
            if gamma == 0:
                continue
            match = np.max(np.abs(diags.T - element_chars[lam]), axis=1) <= 1e-9
            indices = np.flatnonzero(match)
            if len(indices) != gamma:
                raise NumericalDegeneracy(
                    f"irrep {lam}: {len(indices)} diagonal states for multiplicity {gamma}"
                )
            for j in indices:
                e = np.zeros(dim, dtype=np.complex128)
                e[j] = 1.0
                columns.append(e)
            components.append(
                IsotypicComponent(irrep=lam, dim=1, multiplicity=gamma, offset=offset)
            )
            offset += gamma
    else:
        powers = tensor_power_matrices(rep, r)
        element_chars = table.chars[:, table.classes.class_of]
        offset = 0
        for lam in range(table.num_irreps):
            gamma = mv[lam]
            if gamma == 0:
                continue
            d_lam = int(table.dims[lam])
            if d_lam == 1:
                proj = np.tensordot(element_chars[lam].conj(), powers, axes=(0, 0)) / group.order
                images = (proj[:, j] for j in range(dim))
                vecs = _orthonormalize(images, gamma, rank_tol)
                columns.extend(vecs)
                components.append(
                    IsotypicComponent(irrep=lam, dim=1, multiplicity=gamma, offset=offset)
                )
                offset += gamma
            else:
                if table.irrep_matrices is None:
                    raise MissingIrrepMatrices(
                        f"irrep {lam} has dimension {d_lam}; explicit matrices are required"
                    )
                umats = table.irrep_matrices[lam]  # (|G|, d_lam, d_lam)
                scale = d_lam / group.order
                proj_11 = scale * np.tensordot(umats[:, 0, 0].conj(), powers, axes=(0, 0))
                images = (proj_11[:, j] for j in range(dim))
                mult_basis = _orthonormalize(images, gamma, rank_tol)
                block: list[np.ndarray] = []
                for n in range(d_lam):
                    if n == 0:
                        block.extend(mult_basis)
                        continue
                    proj_n1 = scale * np.tensordot(
                        umats[:, n, 0].conj(), powers, axes=(0, 0)
                    )
                    # partial isometry between multiplicity rows: images stay orthonormal
                    block.extend(proj_n1 @ w for w in mult_basis)
                columns.extend(block)
                components.append(
                    IsotypicComponent(irrep=lam, dim=d_lam, multiplicity=gamma, offset=offset)
                )
                offset += d_lam * gamma

    basis = np.column_stack(columns)
    if basis.shape != (dim, dim):
        raise NumericalDegeneracy(
            f"block basis has shape {basis.shape}, expected ({dim}, {dim})"
        )
    unitarity = np.max(np.abs(basis.conj().T @ basis - np.eye(dim)))
    if unitarity > 1e-9:
        raise NumericalDegeneracy(f"block basis is not unitary (residue {unitarity:.3e})")

    decomp = IsotypicDecomposition(
        rep=rep,
        power=r,
        table=table,
        multiplicities=mv,
        basis=basis,
        components=tuple(components),
    )
    _verify_block_structure(decomp, block_tol)
    return decomp


def _expected_block(decomp: IsotypicDecomposition, g: int) -> np.ndarray:
    table = decomp.table
    out = np.zeros((decomp.dimension, decomp.dimension), dtype=np.complex128)
    for comp in decomp.components:
        if comp.dim == 1:
            u = np.array([[table.element_character(comp.irrep, g)]])
        else:
            u = table.irrep_matrices[comp.irrep][g]
        block = np.kron(u, np.eye(comp.multiplicity))
        size = comp.dim * comp.multiplicity
        out[comp.offset : comp.offset + size, comp.offset : comp.offset + size] = block
    return out


def _verify_block_structure(decomp: IsotypicDecomposition, tol: float) -> None:
    powers = tensor_power_matrices(decomp.rep, decomp.power)
    v = decomp.basis
    worst = 0.0
    for g in range(decomp.rep.group.order):
        got = v.conj().T @ powers[g] @ v
        worst = max(worst, float(np.max(np.abs(got - _expected_block(decomp, g)))))
    if worst > tol:
        raise NumericalDegeneracy(
            f"block structure violated by {worst:.3e} (tolerance {tol:.1e})"
        )


# --- built-in representations and character tables ---------------------------


def pauli_rep(group: FiniteGroup) -> UnitaryRep:
    """The qubit Pauli set {I, X, iY, Z} as a projective Klein-group action."""
    if group.order != 4 or not group.is_abelian:
        raise ValueError("pauli_rep expects the Klein four-group")
    mats = np.array(
        [
            [[1, 0], [0, 1]],
            [[0, 1], [1, 0]],
            [[0, 1], [-1, 0]],
            [[1, 0], [0, -1]],
        ],
        dtype=np.complex128,
    )
    return UnitaryRep.build(group, mats, projective=True)


def zn_phase_rep(group: FiniteGroup, dim: int = 2) -> UnitaryRep:
    """Diagonal phase action of a cyclic group on a d-level system."""
    n = group.order
    omega = np.exp(2j * np.pi / n)
    mats = np.array(
        [np.diag([omega ** (level * g) for level in range(dim)]) for g in range(n)]
    )
    return UnitaryRep.build(group, mats)


def s3_two_dim_rep(group: FiniteGroup) -> UnitaryRep:
    """The faithful two-dimensional irrep of S3 (triangle symmetries)."""
    mats = _s3_irrep_matrices(group)
    return UnitaryRep.build(group, mats)


def _s3_irrep_matrices(group: FiniteGroup) -> np.ndarray:
    rot = np.array(
        [[-0.5, -np.sqrt(3) / 2], [np.sqrt(3) / 2, -0.5]], dtype=np.complex128
    )
    flip = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    by_label = {
        "e": np.eye(2, dtype=np.complex128),
        "(123)": rot,
        "(132)": rot @ rot,
        "(12)(3)": flip,
        "(23)(1)": flip @ rot,
        "(13)(2)": flip @ rot @ rot,
    }
    return np.array([by_label[lbl] for lbl in group.labels])


def builtin_character_table(group: FiniteGroup) -> CharacterTable:
    """Character table (with explicit irrep matrices) for the built-in groups."""
    classes = conjugacy_classes(group)
    if group.is_abelian and _is_cyclic(group):
        return _cyclic_character_table(group, classes)
    if group.order == 4 and group.is_abelian:
        return _klein_character_table(group, classes)
    if group.name == "s3" or _looks_like_s3(group):
        return _s3_character_table(group, classes)
    if group.is_abelian and group.name and "x" in group.name:
        return _product_character_table(group)
    raise ValueError(
        f"no built-in character table for group {group.name or group.order}; supply one"
    )


def _is_cyclic(group: FiniteGroup) -> bool:
    return any(group.element_order(i) == group.order for i in range(group.order))


def _looks_like_s3(group: FiniteGroup) -> bool:
    return (
        group.order == 6
        and not group.is_abelian
        and set(group.labels) == set(_S3_CANONICAL_LABELS)
    )


_S3_CANONICAL_LABELS = ("e", "(123)", "(132)", "(12)(3)", "(23)(1)", "(13)(2)")


def _cyclic_character_table(group: FiniteGroup, classes: ConjugacyClasses) -> CharacterTable:
    n = group.order
    gen = next(i for i in range(n) if group.element_order(i) == n)
    # discrete log of every element with respect to the chosen generator
    log = np.empty(n, dtype=np.int64)
    cur, k = 0, 0
    for _ in range(n):
        log[cur] = k
        cur = group.mul(cur, gen)
        k += 1
    omega = np.exp(2j * np.pi / n)
    chars = np.array(
        [[omega ** (lam * log[c[0]]) for c in classes.classes] for lam in range(n)]
    )
    irreps = tuple(
        np.array([[[omega ** (lam * log[g])]] for g in range(n)]) for lam in range(n)
    )
    return CharacterTable.build(
        group, np.ones(n, dtype=np.int64), chars, irreps, classes=classes
    )


def _klein_character_table(group: FiniteGroup, classes: ConjugacyClasses) -> CharacterTable:
    chars = np.array(
        [
            [1, 1, 1, 1],
            [1, 1, -1, -1],
            [1, -1, 1, -1],
            [1, -1, -1, 1],
        ],
        dtype=np.complex128,
    )
    irreps = tuple(chars[lam].reshape(4, 1, 1).astype(np.complex128) for lam in range(4))
    return CharacterTable.build(
        group, np.ones(4, dtype=np.int64), chars, irreps, classes=classes
    )


def _s3_character_table(group: FiniteGroup, classes: ConjugacyClasses) -> CharacterTable:
    sign_by_label = {
        "e": 1.0,
        "(123)": 1.0,
        "(132)": 1.0,
        "(12)(3)": -1.0,
        "(23)(1)": -1.0,
        "(13)(2)": -1.0,
    }
    trivial = np.ones((group.order, 1, 1), dtype=np.complex128)
    sign = np.array(
        [[[sign_by_label[lbl]]] for lbl in group.labels], dtype=np.complex128
    )
    two_dim = _s3_irrep_matrices(group)
    irreps = (trivial, sign, two_dim)
    chars = np.array(
        [
            [np.trace(irreps[lam][c[0]]) for c in classes.classes]
            for lam in range(3)
        ]
    )
    return CharacterTable.build(
        group, np.array([1, 1, 2], dtype=np.int64), chars, irreps, classes=classes
    )


def _product_character_table(group: FiniteGroup) -> CharacterTable:
    """Character table of a product of built-in abelian groups, via factor tables."""
    from .groups import builtin_group  # local import to avoid a cycle at load time

    parts = group.name.split("x")
    left = builtin_group(parts[0])
    right = builtin_group("x".join(parts[1:])) if len(parts) > 2 else builtin_group(parts[1])
    ta = builtin_character_table(left)
    tb = builtin_character_table(right)
    classes = conjugacy_classes(group)
    n = group.order
    # element (a, b) was encoded as a*|B| + b
    chars = np.empty((n, classes.s), dtype=np.complex128)
    irreps = []
    for la in range(ta.num_irreps):
        for lb in range(tb.num_irreps):
            lam = la * tb.num_irreps + lb
            per_element = np.empty((n, 1, 1), dtype=np.complex128)
            for g in range(n):
                a, b = divmod(g, right.order)
                per_element[g, 0, 0] = (
                    ta.chars[la, ta.classes.class_of[a]]
                    * tb.chars[lb, tb.classes.class_of[b]]
                )
            irreps.append(per_element)
            chars[lam] = [per_element[c[0], 0, 0] for c in classes.classes]
    return CharacterTable.build(
        group, np.ones(n, dtype=np.int64), chars, tuple(irreps), classes=classes
    )


def builtin_rep(group: FiniteGroup, spec: str = "builtin", dim: int = 2) -> UnitaryRep:
    """Resolve a named built-in representation for a built-in group."""
    spec = spec.strip().lower()
    if group.name == "k4" and spec in ("builtin", "pauli"):
        return pauli_rep(group)
    if spec in ("builtin-2d", "standard") or (group.name == "s3" and spec == "builtin"):
        if _looks_like_s3(group):
            return s3_two_dim_rep(group)
        raise ValueError(f"representation {spec!r} is only defined for s3")
    if group.is_abelian and _is_cyclic(group) and spec in ("builtin", "diagonal"):
        return zn_phase_rep(group, dim)
    if spec == "regular":
        return regular_rep(group)
    raise ValueError(f"no built-in representation {spec!r} for group {group.name}")
