"""The finite quotients PSL2(F_p) of the modular group."""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, model_validator

from ..core.context import ComputeContext, default_context
from ..core.errors import ArgumentError, InvariantViolationError
from ..core.types import Letter
from .words import ReducedWord

Entries = Tuple[int, int, int, int]

# Generator matrices, row-major
A_MATRIX: Entries = (0, -1, 1, 0)
B_MATRIX: Entries = (0, -1, 1, 1)


def is_prime(p: int) -> bool:
    """Trial-division primality test for the small moduli used here."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ArgumentError(f"p must be prime, got {p}", details={"p": p})


def _normalize(entries: Entries, p: int) -> Entries:
    """Reduce mod p and pick the sign representative whose first nonzero entry is at most (p-1)/2."""
    reduced = tuple(x % p for x in entries)
    if p == 2:
        return reduced  # type: ignore[return-value]
    for x in reduced:
        if x:
            if x > (p - 1) // 2:
                return tuple((-y) % p for y in reduced)  # type: ignore[return-value]
            break
    return reduced  # type: ignore[return-value]


def order_psl(p: int) -> int:
    """Order of PSL2(F_p): p(p² − 1)/2, which is 6 for p = 2."""
    _require_prime(p)
    return p * (p * p - 1) // (2 if p > 2 else 1)


class PslElement(BaseModel):
    """An element of PSL2(F_p) as a sign-normalized 2x2 matrix mod p."""

    model_config = {"frozen": True}

    entries: Entries
    p: int

    @model_validator(mode="after")
    def canonical(self) -> "PslElement":
        """Validate primality, residue range, determinant and sign normalization."""
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if any(not 0 <= x < self.p for x in self.entries):
            raise ValueError("entries must be residues mod p")
        a, b, c, d = self.entries
        if (a * d - b * c) % self.p != 1 % self.p:
            raise ValueError("determinant must be 1 mod p")
        if _normalize(self.entries, self.p) != self.entries:
            raise ValueError("entries are not the canonical sign representative")
        return self

    @staticmethod
    def from_matrix(entries: Entries, p: int) -> "PslElement":
        """
        Build an element from an integer matrix with determinant 1 mod p.

        Args:
            entries: Row-major 2x2 integer matrix
            p: Prime modulus

        Returns:
            The sign-normalized element

        Raises:
            ArgumentError: If p is not prime or the determinant is not 1 mod p
        """
        _require_prime(p)
        a, b, c, d = entries
        if (a * d - b * c) % p != 1 % p:
            raise ArgumentError(f"matrix {entries} has determinant != 1 mod {p}")
        return PslElement.model_construct(entries=_normalize(entries, p), p=p)

    @staticmethod
    def identity(p: int) -> "PslElement":
        return PslElement.from_matrix((1, 0, 0, 1), p)

    def __matmul__(self, other: "PslElement") -> "PslElement":
        if other.p != self.p:
            raise ArgumentError(f"cannot multiply elements mod {self.p} and mod {other.p}")
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        product = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        return PslElement.model_construct(entries=_normalize(product, self.p), p=self.p)

    def __str__(self) -> str:
        a, b, c, d = self.entries
        return f"[{a} {b}; {c} {d}] mod {self.p}"

    def power(self, k: int) -> "PslElement":
        result = PslElement.identity(self.p)
        for _ in range(k):
            result = result @ self
        return result

    def order(self) -> int:
        """Smallest k >= 1 with self^k = identity."""
        one = PslElement.identity(self.p)
        x, k = self, 1
        while x != one:
            x = x @ self
            k += 1
        return k


def generator_images(p: int) -> Dict[Letter, PslElement]:
    """Images of a, b and b² in PSL2(F_p)."""
    a = PslElement.from_matrix(A_MATRIX, p)
    b = PslElement.from_matrix(B_MATRIX, p)
    return {Letter.A: a, Letter.B: b, Letter.B2: b @ b}


def psl_image(u: ReducedWord, p: int) -> PslElement:
    """
    Reduce a word of the modular group modulo p.

    Args:
        u: Reduced word
        p: Prime modulus

    Returns:
        The product of the generator images of its letters

    Raises:
        ArgumentError: If p is not prime
    """
    images = generator_images(p)
    result = PslElement.identity(p)
    for letter in u.letters:
        result = result @ images[letter]
    return result


def enumerate_psl(p: int, ctx: Optional[ComputeContext] = None) -> List[PslElement]:
    """
    Enumerate PSL2(F_p) by breadth-first closure under right multiplication by a and b.

    Args:
        p: Prime modulus
        ctx: Compute context (vertex budget and logger)

    Returns:
        All group elements in discovery order, starting at the identity

    Raises:
        ArgumentError: If p is not prime
        ResourceError: If the group exceeds the vertex budget
    """
    ctx = ctx or default_context()
    expected = order_psl(p)
    ctx.check_budget(f"PSL2(F_{p})", expected)

    images = generator_images(p)
    gens = (images[Letter.A], images[Letter.B])
    start = PslElement.identity(p)
    seen = {start}
    queue = [start]
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for g in gens:
            y = x @ g
            if y not in seen:
                seen.add(y)
                queue.append(y)

    if len(queue) != expected:
        raise InvariantViolationError(
            f"closure of PSL2(F_{p}) has {len(queue)} elements, expected {expected}"
        )
    ctx.logger.info(f"Enumerated PSL2(F_{p}): {len(queue)} elements")
    return queue


def genus(p: int) -> int:
    """
    Genus of the regular surface tiling whose symmetry group is PSL2(F_p), faces being p-gons.

    Args:
        p: Odd prime

    Returns:
        (p − 5)(p − 3)(p + 2)/24

    Raises:
        ArgumentError: If p is not an odd prime
        InvariantViolationError: If the formula is not integral
    """
    if p == 2 or not is_prime(p):
        raise ArgumentError(f"genus needs an odd prime, got {p}")
    numerator = (p - 5) * (p - 3) * (p + 2)
    if numerator % 24:
        raise InvariantViolationError(f"genus formula is not integral at p={p}")
    return numerator // 24


class SurfaceComplex(BaseModel):
    """Cell counts of the regular tiling built from PSL2(F_p)."""

    model_config = {"frozen": True}

    p: int
    order: int
    vertices: int  # cosets of <b>
    edges: int  # cosets of <a>
    faces: int  # cosets of <ab>
    face_size: int

    @property
    def euler_characteristic(self) -> int:
        return self.vertices - self.edges + self.faces

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2


def _count_right_cosets(elements: List[PslElement], g: PslElement) -> int:
    assigned = set()
    count = 0
    for x in elements:
        if x in assigned:
            continue
        count += 1
        y = x
        while y not in assigned:
            assigned.add(y)
            y = y @ g
    return count


def surface_complex(p: int, ctx: Optional[ComputeContext] = None) -> SurfaceComplex:
    """
    Count the cells of the tiling directly from the group.

    Args:
        p: Odd prime
        ctx: Compute context

    Returns:
        Vertex, edge and face counts; its genus agrees with genus(p)
    """
    if p == 2 or not is_prime(p):
        raise ArgumentError(f"surface complex needs an odd prime, got {p}")
    elements = enumerate_psl(p, ctx)
    images = generator_images(p)
    ab = images[Letter.A] @ images[Letter.B]
    return SurfaceComplex(
        p=p,
        order=len(elements),
        vertices=_count_right_cosets(elements, images[Letter.B]),
        edges=_count_right_cosets(elements, images[Letter.A]),
        faces=_count_right_cosets(elements, ab),
        face_size=ab.order(),
    )
