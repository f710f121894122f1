from typing import Dict, Iterable, Mapping, Optional, Tuple

from attr import dataclass
import attr

from .algebra import Dual, FiniteAlgebra, Homomorphism, induced_nucleus, meet_primes
from .errors import AmbientMismatchError, ElementIndexError, HomomorphismError, MorphismError
from .poset import Poset
from .upsets import DEFAULT_UPSET_LIMIT, SPoset
from .util import bits_of, iter_bits

Assignment = Tuple[Optional[int], ...]


def _assignment(values: Iterable[Optional[int]]) -> Assignment:
    return tuple(values)


@dataclass(frozen=True)
class KohlerMorphism:
    """A partial map ``f: X → Y``; ``mapping[x]`` is ``None`` outside the domain.

    Strict on its domain, and every strict successor of an image is hit from above.
    """

    source: Poset
    target: Poset
    mapping: Assignment = attr.ib(converter=_assignment)
    validate: bool = attr.ib(default=True, kw_only=True, eq=False)

    def __attrs_post_init__(self) -> None:
        if len(self.mapping) != self.source.size:
            raise MorphismError(
                f"Expected {self.source.size} assignments, got {len(self.mapping)}"
            )
        for y in self.mapping:
            if y is not None and not 0 <= y < self.target.size:
                raise ElementIndexError(y, self.target.size)
        if self.validate:
            problem = self.violation()
            if problem:
                raise MorphismError(problem)

    @classmethod
    def from_dict(
        cls, source: Poset, target: Poset, mapping: Mapping[int, int]
    ) -> "KohlerMorphism":
        return cls(source, target, [mapping.get(x) for x in range(source.size)])

    def violation(self) -> Optional[str]:
        X, Y, f = self.source, self.target, self.mapping
        domain = [x for x in range(X.size) if f[x] is not None]
        for x in domain:
            for x2 in domain:
                if X.lt(x, x2) and not Y.lt(f[x], f[x2]):
                    return f"Not strict: {x} < {x2} but f({x}) is not below f({x2})"
            for y in iter_bits(Y.up_mask(f[x]) & ~(1 << f[x])):
                if not any(X.lt(x, z) and f[z] == y for z in domain):
                    return f"Back condition fails at {x} for {y}"
        return None

    def __call__(self, x: int) -> int:
        y = self.mapping[x]
        if y is None:
            raise MorphismError(f"{x} is outside the domain")
        return y

    @property
    def domain(self) -> int:
        return bits_of(x for x, y in enumerate(self.mapping) if y is not None)

    def image_of(self, mask: int) -> int:
        return bits_of(self.mapping[x] for x in iter_bits(mask & self.domain))

    def preimage_of(self, mask: int) -> int:
        return bits_of(x for x, y in enumerate(self.mapping) if y is not None and mask >> y & 1)

    @property
    def is_total(self) -> bool:
        return self.domain == self.source.carrier_mask

    @property
    def is_onto(self) -> bool:
        return self.image_of(self.domain) == self.target.carrier_mask

    @property
    def is_injective(self) -> bool:
        images = [y for y in self.mapping if y is not None]
        return len(images) == len(set(images))


def satisfies_s_conditions(f: KohlerMorphism, s: int, t: int) -> bool:
    """The two S-morphism conditions on preimages of ``T`` and on lifts from ``S``."""
    if f.preimage_of(t) != f.domain & s:
        return False
    X = f.source
    for x in iter_bits(s):
        for d in iter_bits(X.up_mask(x) & f.domain):
            if not any(
                f.mapping[d2] == f.mapping[d] and X.leq(s2, d2)
                for s2 in iter_bits(X.up_mask(x) & s & f.domain)
                for d2 in iter_bits(f.domain)
            ):
                return False
    return True


def condition_star(f: KohlerMorphism, s: int, t: int, x: int) -> bool:
    X, Y = f.source, f.target
    left = Y.up_closure(f.image_of(X.up_mask(x)) & t)
    right = f.image_of(X.up_closure(X.up_mask(x) & s))
    return left == right


@dataclass(frozen=True)
class SMorphism:
    source: SPoset
    target: SPoset
    morphism: KohlerMorphism

    def __attrs_post_init__(self) -> None:
        if self.morphism.source != self.source.poset or self.morphism.target != self.target.poset:
            raise AmbientMismatchError("Morphism does not run between the given S-posets")
        if not satisfies_s_conditions(self.morphism, self.source.s, self.target.s):
            raise MorphismError("Partial map is a Köhler morphism but not an S-morphism")

    @classmethod
    def from_dict(cls, source: SPoset, target: SPoset, mapping: Mapping[int, int]) -> "SMorphism":
        return cls(source, target, KohlerMorphism.from_dict(source.poset, target.poset, mapping))

    @property
    def mapping(self) -> Assignment:
        return self.morphism.mapping

    @property
    def domain(self) -> int:
        return self.morphism.domain

    def __call__(self, x: int) -> int:
        return self.morphism(x)


def identity(poset: Poset) -> KohlerMorphism:
    return KohlerMorphism(poset, poset, range(poset.size))


def s_identity(sposet: SPoset) -> SMorphism:
    return SMorphism(sposet, sposet, identity(sposet.poset))


def compose(f, g):
    """``g ∘ f`` on the domain ``f⁻¹(D_g) ∩ D_f``; S-morphisms compose to an S-morphism."""
    first = f.morphism if isinstance(f, SMorphism) else f
    second = g.morphism if isinstance(g, SMorphism) else g
    if first.target != second.source:
        raise AmbientMismatchError("Target of the first morphism is not the source of the second")
    mapping = [
        second.mapping[y] if y is not None else None for y in first.mapping
    ]
    composite = KohlerMorphism(first.source, second.target, mapping)
    if isinstance(f, SMorphism) and isinstance(g, SMorphism):
        return SMorphism(f.source, g.target, composite)
    return composite


def pullback_mask(f: KohlerMorphism, v: int) -> int:
    """``f*(V) = X ∖ ↓f⁻¹(Y ∖ V)`` on bitmasks."""
    outside = f.target.carrier_mask & ~v
    return f.source.carrier_mask & ~f.source.down_closure(f.preimage_of(outside))


def dual_hom_of_morphism(
    f,
    source_algebra: Optional[FiniteAlgebra] = None,
    target_algebra: Optional[FiniteAlgebra] = None,
    bounded: bool = False,
    limit: Optional[int] = DEFAULT_UPSET_LIMIT,
) -> Homomorphism:
    """The homomorphism ``f*: Up(Y) → Up(X)``.

    S-morphisms give algebras equipped with ``j_S`` and ``j_T``; plain Köhler morphisms give
    implicative semilattices.
    """
    if isinstance(f, SMorphism):
        morphism, x_side, y_side, nuclear = f.morphism, f.source, f.target, True
    else:
        morphism, nuclear = f, False
        x_side, y_side = SPoset(f.source), SPoset(f.target)
    if target_algebra is None:
        target_algebra = FiniteAlgebra.from_upsets(x_side, nuclear, bounded, limit)
    if source_algebra is None:
        source_algebra = FiniteAlgebra.from_upsets(y_side, nuclear, bounded, limit)
    index = {mask: i for i, mask in enumerate(target_algebra.upsets)}
    mapping = [index[pullback_mask(morphism, v)] for v in source_algebra.upsets]
    return Homomorphism(source_algebra, target_algebra, mapping)


def is_cofinal_domain(f) -> bool:
    """Whether every maximal point is in the domain, so that ``f*`` preserves 0."""
    morphism = f.morphism if isinstance(f, SMorphism) else f
    source = morphism.source
    return source.max_of(source.carrier_mask) & ~morphism.domain == 0


def right_adjoint(
    h: Homomorphism, source_dual: Optional[Dual] = None, target_dual: Optional[Dual] = None
) -> KohlerMorphism:
    """``h_*(y) = ⋁ {a | h(a) ≤ y}`` from the meet-primes of the target to those of the source.

    Defined on the meet-primes fixed by the nucleus that the image of ``h`` induces.
    """
    A, B = h.source, h.target
    source_dual = source_dual or meet_primes(A)
    target_dual = target_dual or meet_primes(B)
    closure = induced_nucleus(B, h.image())
    position = {m: i for i, m in enumerate(source_dual.elements)}
    mapping = []
    for y in target_dual.elements:
        if closure[y] != y:
            mapping.append(None)
            continue
        value = A.bottom if A.bottom is not None else A.least()
        for a in range(A.size):
            if B.le(h(a), y):
                value = A.join(value, a)
        if value not in position:
            raise HomomorphismError(f"Right adjoint sends {B.label(y)} outside the meet-primes")
        mapping.append(position[value])
    return KohlerMorphism(target_dual.sposet.poset, source_dual.sposet.poset, mapping)


def dual_morphism_of_hom(
    h: Homomorphism, source_dual: Optional[Dual] = None, target_dual: Optional[Dual] = None
) -> SMorphism:
    if not h.nuclear:
        raise HomomorphismError("Only nuclear homomorphisms have an S-morphism dual")
    source_dual = source_dual or meet_primes(h.source)
    target_dual = target_dual or meet_primes(h.target)
    morphism = right_adjoint(h, source_dual, target_dual)
    return SMorphism(target_dual.sposet, source_dual.sposet, morphism)


@dataclass(frozen=True)
class Decomposition:
    """``f = third ∘ second ∘ first``.

    ``first`` is the identity on the domain D, ``second`` maps D totally onto the image and
    ``third`` includes the image into the target as an upset. ``layouts`` carries, for
    S-morphisms, the S-posets X, D, f(X) and Y with the S-sets restricted.
    """

    first: KohlerMorphism
    second: KohlerMorphism
    third: KohlerMorphism
    domain_map: Dict[int, int]
    image_map: Dict[int, int]
    layouts: Optional[Tuple[SPoset, SPoset, SPoset, SPoset]] = None

    def recompose(self) -> KohlerMorphism:
        return compose(compose(self.first, self.second), self.third)

    def s_morphism_flags(self) -> Tuple[bool, bool, bool]:
        if self.layouts is None:
            raise MorphismError("Decomposition was not built from an S-morphism")
        x, d, image, y = self.layouts
        return (
            satisfies_s_conditions(self.first, x.s, d.s),
            satisfies_s_conditions(self.second, d.s, image.s),
            satisfies_s_conditions(self.third, image.s, y.s),
        )


def decompose_kohler(f) -> Decomposition:
    morphism = f.morphism if isinstance(f, SMorphism) else f
    X, Y = morphism.source, morphism.target
    domain_poset, domain_map = X.induced(iter_bits(morphism.domain))
    image_mask = morphism.image_of(morphism.domain)
    image_poset, image_map = Y.induced(iter_bits(image_mask))
    first = KohlerMorphism(X, domain_poset, [domain_map.get(x) for x in range(X.size)])
    back = {i: x for x, i in domain_map.items()}
    second = KohlerMorphism(
        domain_poset,
        image_poset,
        [image_map[morphism.mapping[back[i]]] for i in range(domain_poset.size)],
    )
    inverse_image = {i: y for y, i in image_map.items()}
    third = KohlerMorphism(image_poset, Y, [inverse_image[i] for i in range(image_poset.size)])
    layouts = None
    if isinstance(f, SMorphism):
        s, t = f.source.s, f.target.s
        layouts = (
            f.source,
            SPoset(domain_poset, bits_of(domain_map[x] for x in iter_bits(s & morphism.domain))),
            SPoset(image_poset, bits_of(image_map[y] for y in iter_bits(t & image_mask))),
            f.target,
        )
    return Decomposition(first, second, third, domain_map, image_map, layouts)


def is_pmorphism(source: Poset, target: Poset, mapping: Iterable[int]) -> bool:
    f = list(mapping)
    if len(f) != source.size:
        return False
    for x in range(source.size):
        for x2 in iter_bits(source.up_mask(x)):
            if not target.leq(f[x], f[x2]):
                return False
        for y in iter_bits(target.up_mask(f[x])):
            if not any(f[z] == y for z in iter_bits(source.up_mask(x))):
                return False
    return True


def pmorphism_to_kohler(source: Poset, target: Poset, mapping: Iterable[int]) -> KohlerMorphism:
    """Restrict a total p-morphism to the points maximal in their own fibre."""
    f = list(mapping)
    if not is_pmorphism(source, target, f):
        raise MorphismError("Map is not a p-morphism")
    restricted = []
    for x in range(source.size):
        fibre = bits_of(z for z in range(source.size) if f[z] == f[x])
        restricted.append(f[x] if source.max_of(fibre) >> x & 1 else None)
    return KohlerMorphism(source, target, restricted)


def quotient_by_upset(
    sposet: SPoset, upset: int, limit: Optional[int] = DEFAULT_UPSET_LIMIT
) -> Tuple[Homomorphism, SMorphism]:
    """The onto homomorphism ``V ↦ V ∩ U`` onto ``Up(U)`` and its dual inclusion."""
    poset = sposet.poset
    if not poset.is_upset_mask(upset):
        raise MorphismError(f"{sorted(iter_bits(upset))} is not an upset")
    sub, index = poset.induced(iter_bits(upset))
    sub_sposet = SPoset(sub, bits_of(index[x] for x in iter_bits(upset & sposet.s)))
    whole = FiniteAlgebra.from_upsets(sposet, limit=limit)
    part = FiniteAlgebra.from_upsets(sub_sposet, limit=limit)
    position = {mask: i for i, mask in enumerate(part.upsets)}
    mapping = [
        position[bits_of(index[x] for x in iter_bits(v & upset))] for v in whole.upsets
    ]
    back = {i: x for x, i in index.items()}
    inclusion = SMorphism(
        sub_sposet, sposet, KohlerMorphism(sub, poset, [back[i] for i in range(sub.size)])
    )
    return Homomorphism(whole, part, mapping), inclusion
