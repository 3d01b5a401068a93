"""Reduced words in the free product C2 * C3, which is PSL2(Z) = <a, b | a² = b³ = 1>."""

from typing import Callable, Iterable, Iterator, List, Optional, Tuple

from pydantic import BaseModel, field_validator

from ..core.context import ComputeContext, default_context
from ..core.errors import ArgumentError
from ..core.types import Letter

# (generator, exponent) for each letter; exponents add modulo the generator order
_GENERATOR = {Letter.A: ("a", 1), Letter.B: ("b", 1), Letter.B2: ("b", 2)}
_ORDER = {"a": 2, "b": 3}
_FROM_POWER = {("a", 1): Letter.A, ("b", 1): Letter.B, ("b", 2): Letter.B2}

# Right multiplication moves of the Cayley graph
NEIGHBOR_MOVES: Tuple[Letter, ...] = (Letter.A, Letter.B, Letter.B2)


class ReducedWord(BaseModel):
    """A group element written as an alternating sequence of a and b^{±1} letters."""

    model_config = {"frozen": True}

    letters: Tuple[Letter, ...] = ()

    @field_validator("letters")
    @classmethod
    def alternating(cls, v: Tuple[Letter, ...]) -> Tuple[Letter, ...]:
        """Validate that consecutive letters come from different factors."""
        for left, right in zip(v, v[1:]):
            if left.is_rotation == right.is_rotation:
                raise ValueError(
                    f"letters {left.value}{right.value} are not reduced"
                )
        return v

    @staticmethod
    def parse(text: str) -> "ReducedWord":
        """
        Parse a serialized reduced word.

        Args:
            text: String over {a, b, c} with c meaning b²; "" or "e" is the identity

        Returns:
            The word

        Raises:
            ArgumentError: If the string has unknown letters or is not reduced
        """
        if text in ("", "e"):
            return IDENTITY
        try:
            letters = tuple(Letter(ch) for ch in text)
        except ValueError:
            raise ArgumentError(f"unknown letter in word {text!r}")
        try:
            return ReducedWord(letters=letters)
        except ValueError as e:
            raise ArgumentError(f"word {text!r} is not reduced", details={"error": str(e)})

    @staticmethod
    def from_letters(letters: Iterable[Letter]) -> "ReducedWord":
        """Reduce an arbitrary letter sequence to its normal form."""
        return ReducedWord.model_construct(letters=tuple(reduce_letters(letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(letter.value for letter in self.letters)

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return multiply(self, other)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def token(self) -> str:
        """Serialization usable as a whitespace-separated field ("e" for the identity)."""
        return str(self) or "e"


IDENTITY = ReducedWord.model_construct(letters=())


def word(text: str) -> ReducedWord:
    """Build the reduced form of any string over {a, b, c} (no reducedness required)."""
    if text in ("", "e"):
        return IDENTITY
    try:
        return ReducedWord.from_letters(Letter(ch) for ch in text)
    except ValueError:
        raise ArgumentError(f"unknown letter in word {text!r}")


def reduce_letters(letters: Iterable[Letter]) -> List[Letter]:
    """Free-product reduction with a stack, cancelling at the seam."""
    stack: List[Letter] = []
    for letter in letters:
        gen, power = _GENERATOR[letter]
        if stack:
            top_gen, top_power = _GENERATOR[stack[-1]]
            if top_gen == gen:
                combined = (top_power + power) % _ORDER[gen]
                stack.pop()
                if combined:
                    stack.append(_FROM_POWER[(gen, combined)])
                continue
        stack.append(letter)
    return stack


def multiply(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """
    Multiply two reduced words.

    Args:
        u: Left factor
        v: Right factor

    Returns:
        Reduced form of the concatenation uv
    """
    if not v.letters:
        return u
    if not u.letters:
        return v
    return ReducedWord.model_construct(
        letters=tuple(reduce_letters(u.letters + v.letters))
    )


def inverse(u: ReducedWord) -> ReducedWord:
    """Reverse the word and invert each letter."""
    return ReducedWord.model_construct(
        letters=tuple(letter.inverse for letter in reversed(u.letters))
    )


def pi_project(u: ReducedWord) -> int:
    """
    Signed word length: positive on the b-side of the tree, negative on the a-side.

    Args:
        u: Reduced word

    Returns:
        0 for the identity, +|u| if u starts with b or b², −|u| if it starts with a
    """
    if not u.letters:
        return 0
    return len(u) if u.letters[0].is_rotation else -len(u)


def swap_b(u: ReducedWord) -> ReducedWord:
    """The automorphism fixing a and exchanging b with b²; a reflection of the Cayley graph."""
    swapped = {Letter.A: Letter.A, Letter.B: Letter.B2, Letter.B2: Letter.B}
    return ReducedWord.model_construct(letters=tuple(swapped[x] for x in u.letters))


def sphere_size(n: int) -> int:
    """Number of reduced words of length exactly n."""
    if n < 0:
        raise ArgumentError(f"sphere radius must be nonnegative, got {n}")
    if n == 0:
        return 1
    return 2 ** ((n + 1) // 2) + 2 ** (n // 2)


def ball_size(radius: int) -> int:
    """Number of reduced words of length at most radius."""
    return sum(sphere_size(n) for n in range(radius + 1))


def fiber_size(n: int) -> int:
    """
    Size of the projection fiber over the line vertex n.

    Args:
        n: Line vertex

    Returns:
        2^ceil(n/2) for n >= 0 and 2^floor(|n|/2) for n < 0
    """
    if n >= 0:
        return 2 ** ((n + 1) // 2)
    return 2 ** (-n // 2)


def _alternating(length: int, starts_with_a: bool) -> Iterator[ReducedWord]:
    """All reduced words of a given length and starting factor, in lexicographic order."""
    slots = [(not starts_with_a) == (i % 2 == 0) for i in range(length)]

    def extend(prefix: Tuple[Letter, ...], i: int) -> Iterator[Tuple[Letter, ...]]:
        if i == length:
            yield prefix
            return
        choices = (Letter.B, Letter.B2) if slots[i] else (Letter.A,)
        for letter in choices:
            yield from extend(prefix + (letter,), i + 1)

    for letters in extend((), 0):
        yield ReducedWord.model_construct(letters=letters)


def fiber(n: int) -> List[ReducedWord]:
    """Words w with pi_project(w) = n."""
    if n == 0:
        return [IDENTITY]
    return list(_alternating(abs(n), starts_with_a=n < 0))


def sphere(n: int) -> List[ReducedWord]:
    """Words of length exactly n, a-side first."""
    if n == 0:
        return [IDENTITY]
    return fiber(-n) + fiber(n)


def ball(radius: int, ctx: Optional[ComputeContext] = None) -> List[ReducedWord]:
    """
    Enumerate the ball of reduced words breadth-first from the identity.

    Args:
        radius: Largest word length
        ctx: Compute context (vertex budget and logger)

    Returns:
        Words of length <= radius in breadth-first discovery order

    Raises:
        ArgumentError: If radius is negative
        ResourceError: If the ball exceeds the vertex budget
    """
    ctx = ctx or default_context()
    if radius < 0:
        raise ArgumentError(f"ball radius must be nonnegative, got {radius}")
    ctx.check_budget(f"ball({radius})", ball_size(radius))

    seen = {IDENTITY}
    order = [IDENTITY]
    frontier = [IDENTITY]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for move in NEIGHBOR_MOVES:
                y = multiply(x, ReducedWord.model_construct(letters=(move,)))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        order.extend(nxt)
        frontier = nxt
    ctx.logger.debug(f"Enumerated ball({radius}) with {len(order)} words")
    return order


def orbit_partition(
    words: Iterable[ReducedWord],
    maps: Iterable[Callable[[ReducedWord], ReducedWord]],
) -> List[List[ReducedWord]]:
    """
    Orbits of a finite set under the group generated by the given maps.

    Args:
        words: The set to partition (must be invariant under the maps)
        maps: Generators of the acting group

    Returns:
        Orbits in order of first appearance
    """
    maps = list(maps)
    pool = list(words)
    members = set(pool)
    assigned = set()
    orbits = []
    for start in pool:
        if start in assigned:
            continue
        orbit = [start]
        assigned.add(start)
        i = 0
        while i < len(orbit):
            for g in maps:
                image = g(orbit[i])
                if image not in members:
                    raise ArgumentError(f"set is not invariant: {orbit[i]} maps outside")
                if image not in assigned:
                    assigned.add(image)
                    orbit.append(image)
            i += 1
        orbits.append(orbit)
    return orbits
