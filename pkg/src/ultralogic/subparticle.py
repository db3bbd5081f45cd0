"""Prime-encoded subparticle algebra.

A subparticle representation is a tuple: an identifier a1 built from
primes, a counting coordinate a2, and numeric coordinates indexed from 3
upward.  Characteristic qualities use the first f primes J(1..f); naming
content uses primes outside J (the set K).  Two modes:

  toy    every exponent finite, identifiers are literal integers,
         decode is factorization;
  hyper  exponents and counts may be unlimited (nat-like), identifiers
         stay in factored form and naming content is run-length encoded
         as K-blocks (start index, count).

Fresh ultrasubparticles carry the infinitesimal baseline +e at odd
coordinate indices and -e at even ones.  Intermediates set one
characteristic coordinate to +-lambda*e; combination adds coordinates,
adds counts, and multiplies identifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import factorint, isprime, prime

from .hyper import HyperReal, NatLike, as_hyper, hypernat_for


class SubparticleError(Exception):
    pass


class NameNotInK(SubparticleError):
    pass


class CharOutOfRange(SubparticleError):
    pass


class DimensionMismatch(SubparticleError):
    pass


class NotInfinitesimal(SubparticleError):
    pass


class UnlimitedCoordinate(SubparticleError):
    pass


class NonFactorable(SubparticleError):
    pass


def j_prime(i: int) -> int:
    """The i-th characteristic prime, i >= 1."""
    return prime(i)


def k_prime(index: int, f: int) -> int:
    """The index-th naming prime (1-based) once the first f primes are removed."""
    return prime(f + index)


def coord_for_char(i: int) -> int:
    """Default characteristic -> coordinate-slot map (configurable upstream)."""
    return 2 * i + 1


Count = Union[int, NatLike]


def _count_value(c: Count) -> HyperReal:
    return c.value if isinstance(c, NatLike) else as_hyper(c)


def _count_add(a: Count, b: Count):
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    return NatLike(_count_value(a) + _count_value(b))


@dataclass(frozen=True)
class Identifier:
    mode: str  # "toy" | "hyper"
    char_factors: Tuple[Tuple[int, Count], ...]  # (characteristic i, exponent)
    naming_primes: Tuple[int, ...] = ()  # toy mode, multiset as sorted tuple
    naming_blocks: Tuple[Tuple[int, Count], ...] = ()  # hyper mode, (start, count)

    def toy_value(self) -> int:
        if self.mode != "toy":
            raise SubparticleError("only toy identifiers have an integer value")
        n = 1
        for i, e in self.char_factors:
            n *= j_prime(i) ** e
        for p in self.naming_primes:
            n *= p
        return n

    def multiply(self, other: "Identifier") -> "Identifier":
        if self.mode != other.mode:
            raise SubparticleError("cannot mix identifier modes")
        merged: Dict[int, Count] = {}
        for i, e in self.char_factors + other.char_factors:
            merged[i] = _count_add(merged[i], e) if i in merged else e
        return Identifier(
            mode=self.mode,
            char_factors=tuple(sorted(merged.items())),
            naming_primes=tuple(sorted(self.naming_primes + other.naming_primes)),
            naming_blocks=self.naming_blocks + other.naming_blocks,
        )


@dataclass(frozen=True)
class SubparticleRep:
    a1: Identifier
    a2: Count
    coords: Tuple[Tuple[int, HyperReal], ...]  # (index >= 3, value), sorted
    dims: int

    def coord(self, index: int) -> HyperReal:
        for k, v in self.coords:
            if k == index:
                return v
        raise KeyError(index)

    def coord_indices(self) -> List[int]:
        return [k for k, _ in self.coords]


def _baseline(dims: int, order: int = 8) -> Dict[int, HyperReal]:
    out = {}
    for k in range(3, dims + 1):
        sign = 1 if k % 2 == 1 else -1
        out[k] = HyperReal({1: Fraction(sign)}, order)
    return out


def new_ultrasubparticle(name: int, dims: int, f: int = 2) -> SubparticleRep:
    """A fresh ultrasubparticle named by a single K-prime."""
    if dims < 3:
        raise SubparticleError("dims must be >= 3")
    if not isprime(name) or any(j_prime(i) == name for i in range(1, f + 1)):
        raise NameNotInK(f"{name} is not a naming prime for f={f}")
    ident = Identifier(mode="toy", char_factors=(), naming_primes=(name,))
    coords = _baseline(dims)
    return SubparticleRep(a1=ident, a2=1, coords=tuple(sorted(coords.items())), dims=dims)


def form_intermediate(
    char_i: int,
    magnitude,
    naming,
    sign: int = 1,
    f: int = 2,
    dims: int = 6,
    mode: str = "hyper",
    coord_index: Optional[int] = None,
) -> SubparticleRep:
    """Sum lambda-many ultrasubparticles along one characteristic coordinate.

    toy mode: magnitude is a finite natural lambda; naming is an explicit
    prime tuple.  hyper mode: magnitude is a nonnegative rational r with
    lambda = hypernat_for(r); naming is a K-block (start, count).  The
    chosen coordinate becomes sign * lambda * e; the identifier gains
    J(char_i)^lambda next to the naming content; a2 = lambda.
    """
    if not 1 <= char_i <= f:
        raise CharOutOfRange(f"characteristic {char_i} outside [1, {f}]")
    if sign not in (1, -1):
        raise SubparticleError("sign must be +1 or -1")
    slot = coord_index if coord_index is not None else coord_for_char(char_i)
    coords = _baseline(dims)
    if mode == "toy":
        lam = int(magnitude)
        if lam < 0:
            raise SubparticleError("lambda must be nonnegative")
        count: Count = lam
        ident = Identifier(
            mode="toy",
            char_factors=((char_i, lam),),
            naming_primes=tuple(sorted(int(p) for p in naming)),
        )
        coords[slot] = HyperReal({1: Fraction(sign * lam)})
    elif mode == "hyper":
        lam = hypernat_for(Fraction(magnitude))
        count = lam
        start, blk_count = naming
        ident = Identifier(
            mode="hyper",
            char_factors=((char_i, lam),),
            naming_blocks=((int(start), blk_count),),
        )
        coords[slot] = sign * lam.value * HyperReal.eps()
    else:
        raise SubparticleError(f"unknown mode {mode!r}")
    return SubparticleRep(a1=ident, a2=count, coords=tuple(sorted(coords.items())), dims=dims)


def combine(parts: Sequence[SubparticleRep]) -> SubparticleRep:
    """Coordinatewise sum; counting coordinates add; identifiers multiply."""
    if not parts:
        raise SubparticleError("nothing to combine")
    dims = parts[0].dims
    if any(p.dims != dims for p in parts):
        raise DimensionMismatch("all parts must share dims")
    ident = parts[0].a1
    count = parts[0].a2
    coords = dict(parts[0].coords)
    for p in parts[1:]:
        ident = ident.multiply(p.a1)
        count = _count_add(count, p.a2)
        for k, v in p.coords:
            coords[k] = coords.get(k, HyperReal({})) + v
    return SubparticleRep(a1=ident, a2=count, coords=tuple(sorted(coords.items())), dims=dims)


def add_perturbations(p: SubparticleRep, zetas: Sequence[HyperReal], coord: int) -> SubparticleRep:
    """Shift one coordinate by a finite sum of infinitesimals."""
    for z in zetas:
        if z.classify() != "infinitesimal":
            raise NotInfinitesimal(f"{z!r} is not infinitesimal")
    shift = HyperReal({})
    for z in zetas:
        shift = shift + z
    coords = dict(p.coords)
    coords[coord] = coords.get(coord, HyperReal({})) + shift
    return SubparticleRep(a1=p.a1, a2=p.a2, coords=tuple(sorted(coords.items())), dims=p.dims)


@dataclass(frozen=True)
class EntityProjection:
    coords: Tuple[Tuple[int, Fraction], ...]
    zeroed: Tuple[int, ...]


def project_standard(p: SubparticleRep) -> EntityProjection:
    """Standard parts of the limited non-infinitesimal coordinates.

    Infinitesimal coordinates have no standard reading and land in
    `zeroed`; an unlimited coordinate means the representation has no
    standard projection at all.
    """
    keep = []
    zeroed = []
    for k, v in p.coords:
        c = v.classify()
        if c == "unlimited":
            raise UnlimitedCoordinate(f"coordinate {k} is unlimited")
        if c == "infinitesimal":
            zeroed.append(k)
        else:
            keep.append((k, v.st()))
    return EntityProjection(coords=tuple(keep), zeroed=tuple(zeroed))


def decode(ident, f: int = 2, max_prime: Optional[int] = None):
    """Recover characteristics and naming content from an identifier.

    Toy mode accepts the integer value and factorizes it; primes at J
    positions report their exponents, the rest is naming content.  Hyper
    mode reads the factored form and reports r = st(lambda * e) for
    nat-like exponents.
    """
    if isinstance(ident, Identifier) and ident.mode == "hyper":
        chars = []
        for i, lam in ident.char_factors:
            r = (_count_value(lam) * HyperReal.eps()).st()
            chars.append((i, r))
        return {"characteristics": chars, "constituents": list(ident.naming_blocks)}
    n = ident.toy_value() if isinstance(ident, Identifier) else int(ident)
    if n < 1:
        raise NonFactorable("identifiers are positive integers")
    factors = factorint(n)
    j_primes = {j_prime(i): i for i in range(1, f + 1)}
    chars = []
    constituents = []
    for p_, e in sorted(factors.items()):
        if max_prime is not None and p_ > max_prime:
            raise NonFactorable(f"prime {p_} outside the declared universe")
        if p_ in j_primes:
            chars.append((j_primes[p_], e))
        else:
            constituents.extend([p_] * e)
    return {"characteristics": chars, "constituents": constituents}


def apply_diagonal(lambdas: Dict[int, Count], usp: SubparticleRep) -> SubparticleRep:
    """Diagonal hypermatrix action on coordinates.

    Coordinates at indices in `lambdas` are scaled; everything else is a
    unit diagonal entry.  a1 and a2 pass through unchanged, which is the
    point: the matrix route reproduces intermediate coordinates but loses
    the identifier and count bookkeeping.
    """
    coords = dict(usp.coords)
    for k, lam in lambdas.items():
        if k < 3:
            raise SubparticleError("diagonal action only touches coordinates >= 3")
        if k in coords:
            coords[k] = _count_value(lam) * coords[k]
    return SubparticleRep(a1=usp.a1, a2=usp.a2, coords=tuple(sorted(coords.items())), dims=usp.dims)


def ultrafast_ke(m: HyperReal, v: HyperReal) -> HyperReal:
    """Kinetic energy (1/2) m v^2 for possibly unlimited speeds."""
    return as_hyper(m) * as_hyper(v) * as_hyper(v) * Fraction(1, 2)


class OutOfUnitInterval(SubparticleError):
    pass


def coin_sequence(x, count: int) -> List[str]:
    """Doubling-map coin flips: frac(x * 2^k) < 1/2 reads H, else T."""
    x = Fraction(x)
    if not 0 < x < 1:
        raise OutOfUnitInterval(f"{x} not in (0, 1)")
    if count < 1:
        raise SubparticleError("count must be >= 1")
    out = []
    y = x
    for _ in range(count):
        y = y * 2
        y = y - (y.numerator // y.denominator)
        out.append("H" if y < Fraction(1, 2) else "T")
    return out
