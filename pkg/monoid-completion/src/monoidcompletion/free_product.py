"""Free products (coproducts) of finite monoids in alternating normal form

Factors are numbered from 1, so letter (t, e) is element e of the t-th free
summand. The empty word is the unit.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .exceptions import InputError
from .monoid import FiniteMonoid

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]


@dataclass(frozen=True, order=True)
class FreeProductElement:
    """A normal-form word: adjacent letters lie in distinct factors, no letter is a unit"""

    letters: Tuple[Letter, ...] = ()

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def is_unit(self) -> bool:
        return not self.letters

    def is_normal(self, factors: Sequence[FiniteMonoid]) -> bool:
        previous = None
        for t, e in self.letters:
            if not 1 <= t <= len(factors) or not 0 <= e < len(factors[t - 1]):
                return False
            if e == factors[t - 1].unit_index or t == previous:
                return False
            previous = t
        return True

    def format(self, factors: Sequence[FiniteMonoid]) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"{factors[t - 1].element_names[e]}^({t})" for t, e in self.letters)


UNIT_WORD = FreeProductElement()


def _check_letters(k: int, factors: Sequence[FiniteMonoid], letters: Sequence[Letter]) -> None:
    if len(factors) != k:
        raise InputError(f"Expected {k} factors, got {len(factors)}")
    for t, e in letters:
        if not 1 <= t <= k:
            raise InputError(f"Letter refers to factor {t}, only {k} factors")
        if not 0 <= e < len(factors[t - 1]):
            raise InputError(f"Letter refers to element {e} of factor {t}, out of range")


def _push(stack: List[Letter], letters: Sequence[Letter], factors: Sequence[FiniteMonoid]) -> None:
    """Append letters to a normal-form stack, merging at the junction"""
    i = 0
    while i < len(letters) and stack and stack[-1][0] == letters[i][0]:
        t = letters[i][0]
        factor = factors[t - 1]
        merged = factor.multiply(stack[-1][1], letters[i][1])
        i += 1
        if merged == factor.unit_index:
            stack.pop()
        else:
            stack[-1] = (t, merged)
            break
    for t, e in letters[i:]:
        if e == factors[t - 1].unit_index:
            continue
        if stack and stack[-1][0] == t:
            _push(stack, [(t, e)], factors)
        else:
            stack.append((t, e))


def normalize(letters: Sequence[Letter], factors: Sequence[FiniteMonoid]) -> FreeProductElement:
    """Bring an arbitrary letter sequence into normal form"""
    _check_letters(len(factors), factors, letters)
    stack: List[Letter] = []
    _push(stack, list(letters), factors)
    return FreeProductElement(tuple(stack))


def fp_multiply(
    k: int, factors: Sequence[FiniteMonoid], a: FreeProductElement, b: FreeProductElement
) -> FreeProductElement:
    """Multiply two normal-form words of the k-fold free product of `factors`"""
    _check_letters(k, factors, a.letters)
    _check_letters(k, factors, b.letters)
    stack = list(a.letters)
    _push(stack, b.letters, factors)
    return FreeProductElement(tuple(stack))


@dataclass(frozen=True)
class FreeProductMonoid:
    """The free product factors[0] * ... * factors[k-1]"""

    factors: Tuple[FiniteMonoid, ...]

    @classmethod
    def power(cls, factor: FiniteMonoid, k: int) -> "FreeProductMonoid":
        """The k-fold free product of one monoid with itself; k = 0 is the trivial monoid"""
        if k < 0:
            raise InputError("Number of free summands must be nonnegative")
        return cls((factor,) * k)

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def unit(self) -> FreeProductElement:
        return UNIT_WORD

    def multiply(self, a: FreeProductElement, b: FreeProductElement) -> FreeProductElement:
        return fp_multiply(self.k, self.factors, a, b)

    def generators(self) -> List[FreeProductElement]:
        """The one-letter words x^(t) for every non-unit x of every factor"""
        return [
            FreeProductElement(((t, e),))
            for t, factor in enumerate(self.factors, start=1)
            for e in factor.non_units()
        ]

    def is_finite(self) -> bool:
        nontrivial = [f for f in self.factors if len(f) > 1]
        return len(nontrivial) <= 1

    def elements(self, max_length: int) -> Iterator[FreeProductElement]:
        """Every normal-form word of length <= max_length, shortest first"""
        letters = [g.letters[0] for g in self.generators()]
        yield UNIT_WORD
        words: List[Tuple[Letter, ...]] = [()]
        for _ in range(max_length):
            longer = [
                w + (letter,)
                for w in words
                for letter in letters
                if not w or w[-1][0] != letter[0]
            ]
            for w in longer:
                yield FreeProductElement(w)
            words = longer
            if not words:
                break

    def format(self, w: FreeProductElement) -> str:
        return w.format(self.factors)


@dataclass(frozen=True)
class FreeProductHom:
    """A homomorphism between free products, stored on generators

    :param source: The domain
    :param target: The codomain
    :param image: Word in the target for each generator letter (t, e) of the source
    :param name: A label such as "d1" used in witnesses
    """

    source: FreeProductMonoid
    target: FreeProductMonoid
    image: Mapping[Letter, FreeProductElement]
    name: str = "h"
    _key: Tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_key", tuple(sorted(self.image.items())))

    def __call__(self, w: FreeProductElement) -> FreeProductElement:
        return apply_hom_fp(self, w)

    def __eq__(self, other):
        if not isinstance(other, FreeProductHom):
            return NotImplemented
        return self.source == other.source and self.target == other.target and (
            self._key == other._key
        )

    def __hash__(self):
        return hash(self._key)

    def then(self, other: "FreeProductHom") -> "FreeProductHom":
        """The composite `other` after `self`, again stored on generators"""
        image = {letter: apply_hom_fp(other, w) for letter, w in self.image.items()}
        return FreeProductHom(self.source, other.target, image, f"{other.name}{self.name}")

    @classmethod
    def identity(cls, m: FreeProductMonoid) -> "FreeProductHom":
        return cls(m, m, {g.letters[0]: g for g in m.generators()}, "id")

    @classmethod
    def from_summand_map(
        cls, source: FreeProductMonoid, target: FreeProductMonoid, sigma: Sequence[int], name: str
    ) -> "FreeProductHom":
        """The homomorphism moving summand t to summand sigma[t - 1], or killing it when 0

        Only valid when every summand is the same monoid, which is then mapped by the
        identity.
        """
        image: Dict[Letter, FreeProductElement] = {}
        for g in source.generators():
            t, e = g.letters[0]
            destination = sigma[t - 1]
            image[(t, e)] = (
                UNIT_WORD if destination == 0 else FreeProductElement(((destination, e),))
            )
        return cls(source, target, image, name)


def apply_hom_fp(h: FreeProductHom, w: FreeProductElement) -> FreeProductElement:
    """Map each letter through h and renormalise in the target"""
    stack: List[Letter] = []
    factors = h.target.factors
    for letter in w.letters:
        try:
            image = h.image[letter]
        except KeyError:
            raise InputError(f"{h.name} is not defined on generator {letter}") from None
        _push(stack, image.letters, factors)
    return FreeProductElement(tuple(stack))


def random_word(m: FreeProductMonoid, length: int, rng) -> FreeProductElement:
    """A uniformly chosen normal-form word of exactly the given length

    :param rng: A numpy Generator
    """
    letters: List[Letter] = []
    for _ in range(length):
        choices = [
            (t, e)
            for t, factor in enumerate(m.factors, start=1)
            if not letters or letters[-1][0] != t
            for e in factor.non_units()
        ]
        if not choices:
            break
        letters.append(choices[int(rng.integers(len(choices)))])
    return FreeProductElement(tuple(letters))


def count_words(m: FreeProductMonoid, length: int) -> int:
    """Number of normal-form words of exactly this length"""
    if length == 0:
        return 1
    # ways[t]: words of the current length ending in factor t
    sizes = [len(f) - 1 for f in m.factors]
    ways = list(sizes)
    for _ in range(length - 1):
        total = sum(ways)
        ways = [(total - ways[t]) * sizes[t] for t in range(len(sizes))]
    return sum(ways)


