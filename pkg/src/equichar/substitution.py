"""Ring homomorphisms between torus rings given by images of ``w_i`` and ``u_i``."""

from __future__ import annotations

from .coeffs import AQ, QQ
from .torus import TorusPolynomial, VariableMismatch


class SubstitutionMap:
    """Degree-preserving homomorphism ``R_{source_n} -> R_{target_n}``.

    ``w_images`` must be u-free and homogeneous of degree 1; ``u_images`` must
    be idempotent of degree 0.  Both are checked on construction.
    """

    def __init__(self, source_n, target_n, w_images, u_images):
        if len(w_images) != source_n or len(u_images) != source_n:
            raise VariableMismatch("need one w-image and one u-image per source variable")
        ring = AQ if any(p.ring == AQ for p in list(w_images) + list(u_images)) else QQ
        self.source_n = source_n
        self.target_n = target_n
        self.ring = ring
        self.w_images = tuple(_lift(p, target_n, ring) for p in w_images)
        self.u_images = tuple(_lift(p, target_n, ring) for p in u_images)
        for i, p in enumerate(self.w_images, start=1):
            if p and (not p.is_u_free() or p.degrees() != {1}):
                raise ValueError(f"image of w{i} must be u-free of degree 1, got {p}")
        for i, p in enumerate(self.u_images, start=1):
            if p and p.degrees() != {0}:
                raise ValueError(f"image of u{i} must have degree 0, got {p}")
            if p * p != p:
                raise ValueError(f"image of u{i} is not idempotent: {p}")
        self._cache: dict = {}

    def __repr__(self):
        return f"SubstitutionMap({self.source_n} -> {self.target_n})"

    def _image(self, m):
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        out = TorusPolynomial.constant(self.target_n, 1, self.ring)
        n = self.source_n
        for i in range(n):
            if m[i]:
                out = out * self.w_images[i] ** m[i]
            if (m[-1] >> (n - 1 - i)) & 1:
                out = out * self.u_images[i]
        self._cache[m] = out
        return out

    def __call__(self, p: TorusPolynomial) -> TorusPolynomial:
        return substitute(self, p)

    def compose(self, inner: "SubstitutionMap") -> "SubstitutionMap":
        """The map ``self o inner`` (apply ``inner`` first)."""
        if inner.target_n != self.source_n:
            raise VariableMismatch("composition of incompatible substitutions")
        return SubstitutionMap(inner.source_n, self.target_n,
                               [substitute(self, p) for p in inner.w_images],
                               [substitute(self, p) for p in inner.u_images])


def _lift(p, n, ring):
    if not isinstance(p, TorusPolynomial):
        p = TorusPolynomial.constant(n, p, ring)
    if p.n != n:
        raise VariableMismatch(f"image lives in {p.n} variables, expected {n}")
    return p.promote() if ring == AQ else p


def substitute(f: SubstitutionMap, p: TorusPolynomial) -> TorusPolynomial:
    if p.n != f.source_n:
        raise VariableMismatch(f"substitution expects {f.source_n} variables, got {p.n}")
    ring = AQ if AQ in (f.ring, p.ring) else QQ
    out = TorusPolynomial.zero(f.target_n, ring)
    for m, c in p.terms.items():
        img = f._image(m)
        if ring == AQ:
            img = img.promote()
        out = out + img.scale(c)
    return out


def identity_map(n, ring=QQ) -> SubstitutionMap:
    return SubstitutionMap(n, n, [TorusPolynomial.w(i, n, ring) for i in range(1, n + 1)],
                           [TorusPolynomial.u(i, n, ring) for i in range(1, n + 1)])
