"""Ideal arithmetic, spectra, conductors and extension support."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .config import lattice_limit
from .errors import InternalCheckError, PreconditionError, SizeLimitError
from .rings import (
    FiniteRing,
    Ideal,
    closure_mask,
    is_field,
    is_local,
    local_decomposition,
    mask_elements,
    quotient,
    subgroup_sum_mask,
)


def zero_ideal(ring: FiniteRing) -> Ideal:
    return Ideal(ring, (ring.zero,))


def unit_ideal(ring: FiniteRing) -> Ideal:
    return Ideal(ring, tuple(range(ring.order)))


def principal_ideal(ring: FiniteRing, x: int) -> Ideal:
    # Rx is already closed under addition: r1 x + r2 x = (r1 + r2) x
    return Ideal(ring, tuple(int(i) for i in np.unique(ring.mul[:, x])))


def ideal_generated(ring: FiniteRing, gens: Iterable[int]) -> Ideal:
    mask = closure_mask(ring.order, list(gens) + [ring.zero], internal=(ring.add,), absorbing=(ring.mul,))
    return Ideal(ring, mask_elements(mask))


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    return Ideal(a.ring, mask_elements(subgroup_sum_mask(a.ring, a.mask, b.mask)))


def ideal_intersection(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    return Ideal(a.ring, mask_elements(a.mask & b.mask))


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    """Additive span of the pairwise products; it absorbs automatically."""
    _same_ring(a, b)
    ring = a.ring
    ai = np.asarray(a.elements, dtype=np.intp)
    bi = np.asarray(b.elements, dtype=np.intp)
    prods = np.unique(ring.mul[np.ix_(ai, bi)])
    mask = closure_mask(ring.order, list(prods) + [ring.zero], internal=(ring.add,))
    return Ideal(ring, mask_elements(mask))


def ideal_power(a: Ideal, e: int) -> Ideal:
    if e < 1:
        raise PreconditionError("ideal power needs a positive exponent")
    out = a
    for _ in range(e - 1):
        out = ideal_product(out, a)
    return out


def colon(a: Ideal, b: Ideal) -> Ideal:
    """(a : b) = elements r with r*b inside a."""
    _same_ring(a, b)
    ring = a.ring
    bi = np.asarray(b.elements, dtype=np.intp)
    good = a.mask[ring.mul[:, bi]].all(axis=1)
    return Ideal(ring, tuple(int(i) for i in np.flatnonzero(good)))


def annihilator(ring: FiniteRing, module) -> Ideal:
    """(0 : M) for a module given by its action table."""
    good = (module.action == module.zero).all(axis=1)
    return Ideal(ring, tuple(int(i) for i in np.flatnonzero(good)))


def contains(outer: Ideal, inner: Ideal) -> bool:
    return not bool((inner.mask & ~outer.mask).any())


def _same_ring(a: Ideal, b: Ideal) -> None:
    if a.ring is not b.ring:
        raise PreconditionError("ideals belong to different rings")


def all_ideals(ring: FiniteRing, max_order: Optional[int] = None) -> list[Ideal]:
    """Every ideal, as the join closure of the principal ideals.

    Ordered by cardinality, then lexicographically on the element tuple.
    """
    if ring.order > lattice_limit(max_order):
        raise SizeLimitError(f"ideal enumeration bound exceeded for order {ring.order}")
    masks: dict[bytes, np.ndarray] = {}
    principals = []
    for x in range(ring.order):
        m = np.zeros(ring.order, dtype=bool)
        m[np.unique(ring.mul[:, x])] = True
        key = m.tobytes()
        if key not in masks:
            masks[key] = m
            principals.append(m)
    frontier = list(masks.values())
    while frontier:
        fresh = []
        for cur in frontier:
            for p in principals:
                s = subgroup_sum_mask(ring, cur, p)
                key = s.tobytes()
                if key not in masks:
                    masks[key] = s
                    fresh.append(s)
        frontier = fresh
    out = [Ideal(ring, mask_elements(m)) for m in masks.values()]
    out.sort(key=lambda i: (i.order, i.elements))
    return out


@dataclass(frozen=True)
class SpectrumReport:
    """Primes, maximals, nilradical and Jacobson radical of a finite ring."""

    ring: FiniteRing
    primes: tuple[Ideal, ...]
    maximals: tuple[Ideal, ...]
    nilradical: Ideal
    jacobson: Ideal

    def vanishing(self, ideal: Ideal) -> tuple[Ideal, ...]:
        """V(I): the primes containing the given ideal."""
        return tuple(p for p in self.primes if contains(p, ideal))


def spectrum(ring: FiniteRing, max_order: Optional[int] = None) -> SpectrumReport:
    ideals = all_ideals(ring, max_order)
    primes = []
    maximals = []
    for ideal in ideals:
        if ideal.is_whole:
            continue
        comp = np.flatnonzero(~ideal.mask)
        if not ideal.mask[ring.mul[np.ix_(comp, comp)]].any():
            primes.append(ideal)
        if is_field(quotient(ring, ideal).ring):
            maximals.append(ideal)
    nilradical = Ideal(ring, tuple(int(i) for i in np.flatnonzero(ring.nilpotents)))
    jac = np.ones(ring.order, dtype=bool)
    for m in maximals:
        jac &= m.mask
    jacobson = Ideal(ring, tuple(int(i) for i in np.flatnonzero(jac)))
    return SpectrumReport(ring, tuple(primes), tuple(maximals), nilradical, jacobson)


def conductor(ext) -> Ideal:
    """(R : S) = {r in R : r*S lies in the image of R}; the largest ideal of
    S contained in R."""
    base, top, embed = ext.base, ext.top, ext.embed
    rows = top.mul[embed.map]
    inside = ext.image_mask[rows].all(axis=1)
    cond = Ideal(base, tuple(int(i) for i in np.flatnonzero(inside)))
    cond_in_top = embed.map[np.asarray(cond.elements, dtype=np.intp)]
    if not Ideal.from_indices(top, cond_in_top, validate=False)._is_valid():
        raise InternalCheckError("conductor image is not an ideal of the extension ring")
    return cond


def _primitive_idempotents(ring: FiniteRing, dec) -> list[int]:
    """One primitive idempotent per local factor, in factor order."""
    out = []
    for i, (fring, proj) in enumerate(dec.factors):
        cand = proj.map == fring.one
        for j, (oring, oproj) in enumerate(dec.factors):
            if j != i:
                cand &= oproj.map == oring.zero
        out.append(int(np.flatnonzero(cand)[0]))
    return out


def maximal_of_local_factor(ring: FiniteRing, dec, factor_index: int) -> Ideal:
    """Pull the maximal ideal of one local factor back to the whole ring."""
    fring, proj = dec.factors[factor_index]
    m = is_local(fring)
    if m is None:
        raise InternalCheckError("local factor is not local")
    bad = np.isin(proj.map, np.asarray(m.elements))
    return Ideal(ring, tuple(int(i) for i in np.flatnonzero(bad)))


def support_of_extension(ext) -> list[Ideal]:
    """Maximal ideals M of the base where the localizations differ.

    Localization at M is projection onto the matching local factor; for the
    top ring the matching factor is e'S where e' is the image of the base
    factor's primitive idempotent."""
    base, top, embed = ext.base, ext.top, ext.embed
    dec = local_decomposition(base)
    idems = _primitive_idempotents(base, dec)
    out = []
    for i, (fring, _) in enumerate(dec.factors):
        e_top = int(embed.map[idems[i]])
        top_factor_size = len(np.unique(top.mul[e_top]))
        if top_factor_size != fring.order:
            out.append(maximal_of_local_factor(base, dec, i))
    out.sort(key=lambda ideal: ideal.elements)
    return out
