"""Seeded generation of normalization test corpora.

Each corpus entry is a paired polynomial form composed with a random
exact automorphism of the target quadric, together with the ground
truth needed to grade a round trip: the extra components psi, the
automorphism parameters, and the paired form itself.  Generation is
deterministic per (spec, index), so suites may fan out per instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .automorphisms import (
    Automorphism,
    compose,
    make_automorphism,
    random_indefinite_unitary,
)
from .expressions import format_poly
from .mapfiles import autparams_to_dict, map_to_dict
from .normalform import reference_normal_form
from .polynomials import HoloPoly, VariableSpace
from .quadrics import Hyperquadric
from .scalars import GaussianRational, I

__all__ = ["CorpusSpec", "gen_corpus", "corpus_entry"]


@dataclass(frozen=True, slots=True)
class CorpusSpec:
    """Parameters of a generated corpus.

    psi_weight_bound < 2 forces psi = 0 and height_bound = 0 forces the
    identity automorphism, so the smallest spec produces the bare
    linear embedding.
    """

    n: int
    ell: int
    big_n: int
    ellp: int
    psi_weight_bound: int = 4
    height_bound: int = 2
    count: int = 1
    seed: int = 0

    @property
    def tau(self) -> int:
        return self.ellp - self.ell

    @property
    def narrow_signature_range(self) -> bool:
        """Whether ell <= ell' < 2 ell, the regime where the paired
        form is available and normalization applies."""
        return self.ell <= self.ellp < 2 * self.ell

    def validate(self) -> None:
        if self.n < 3 or not 1 <= self.ell <= (self.n - 1) // 2:
            raise ValueError(
                f"infeasible signature: need n >= 3 and 1 <= ell <= (n-1)/2, "
                f"got n={self.n}, ell={self.ell}"
            )
        if not self.narrow_signature_range:
            raise ValueError(
                f"infeasible signature: need ell <= ell' < 2*ell, "
                f"got ell={self.ell}, ell'={self.ellp}"
            )
        if self.big_n < self.n + 2 * self.tau:
            raise ValueError(
                f"infeasible signature: target dimension {self.big_n} below "
                f"n + 2(ell'-ell) = {self.n + 2 * self.tau}"
            )
        if not self.ellp <= (self.big_n - 1) // 2:
            raise ValueError(
                f"infeasible signature: need ell' <= (N-1)/2, "
                f"got N={self.big_n}, ell'={self.ellp}"
            )
        if self.count < 0 or self.height_bound < 0:
            raise ValueError("count and height_bound must be nonnegative")


def _nonzero_fraction(rng: random.Random, height: int) -> Fraction:
    num = rng.choice([k for k in range(-height, height + 1) if k])
    return Fraction(num, rng.randint(1, height))


def _scalar(rng: random.Random, height: int, nonzero: bool = False) -> GaussianRational:
    while True:
        re = Fraction(rng.randint(-height, height), rng.randint(1, height))
        im = Fraction(rng.randint(-height, height), rng.randint(1, height))
        v = GaussianRational.of(re) + GaussianRational.of(im) * I
        if v or not nonzero:
            return v


def _random_psi(
    rng: random.Random, sp: VariableSpace, weight_bound: int, height: int
) -> HoloPoly:
    """A sparse combination of monomials of weight 2..weight_bound,
    always containing a pure-z quadratic so the component lies outside
    the span of the coordinate functions."""
    psi = sp.zero()
    quad_keys = sp.z_monomials_of_degree(2)
    psi = psi + sp.monomial(rng.choice(quad_keys), _scalar(rng, height, nonzero=True))
    extra_keys = [
        key
        for wt in range(2, weight_bound + 1)
        for key in sp.monomials_of_weight(wt)
    ]
    for key in rng.sample(extra_keys, k=min(len(extra_keys), rng.randint(0, 3))):
        psi = psi + sp.monomial(key, _scalar(rng, height))
    return psi


def _random_automorphism(
    rng: random.Random, quadric: Hyperquadric, height: int
) -> Automorphism:
    if height == 0:
        return make_automorphism(quadric)
    lam = Fraction(rng.randint(1, height), rng.randint(1, height))
    nz = quadric.space.nz
    a = [_scalar(rng, height) for _ in range(nz)]
    r = _nonzero_fraction(rng, height)
    u = random_indefinite_unitary(quadric.signs, rng, steps=2 * height + 1)
    return make_automorphism(quadric, lam=lam, eps=1, a=a, r=r, u=u)


def corpus_entry(spec: CorpusSpec, index: int) -> dict:
    """The index-th map file of the corpus, deterministically."""
    spec.validate()
    rng = random.Random(spec.seed * 1_000_003 + index)
    source = Hyperquadric.standard(spec.n, spec.ell)
    target = Hyperquadric.standard(spec.big_n, spec.ellp)
    sp = source.space
    if spec.psi_weight_bound >= 2:
        psi = [
            _random_psi(rng, sp, spec.psi_weight_bound, max(1, spec.height_bound))
            for _ in range(spec.tau)
        ]
    else:
        psi = [sp.zero()] * spec.tau
    base = reference_normal_form(spec.n, spec.ell, spec.ellp, spec.big_n, psi)
    gamma = _random_automorphism(rng, target, spec.height_bound)
    composed = compose(gamma, base)
    name = (
        f"corpus-{spec.n}-{spec.ell}-{spec.big_n}-{spec.ellp}"
        f"-s{spec.seed}-{index:03d}"
    )
    entry = map_to_dict(
        composed,
        metadata={
            "name": name,
            "seed": spec.seed,
            "notes": (
                f"paired form composed with a sampled target automorphism; "
                f"narrow signature range: {spec.narrow_signature_range}"
            ),
            "ground_truth": {
                "psi": [format_poly(p) for p in psi],
                "automorphism": autparams_to_dict(gamma.params),
                "normal_form": {
                    "f": [format_poly(c) for c in base.z_components],
                    "g": format_poly(base.w_component),
                },
            },
        },
    )
    return entry


def gen_corpus(spec: CorpusSpec) -> List[dict]:
    spec.validate()
    return [corpus_entry(spec, i) for i in range(spec.count)]
