"""Toric K-energy of convex piecewise-linear functions, two ways.

A convex rational PL function on Q is held as exact heights on the
configuration points (the function being their lower-hull interpolation)
or as a max of affine forms. Its K-energy

    L(f) = integral of f over the boundary - n (vol dQ / vol Q) integral of f

is computed once from the two integrals and once through the pairing
with the weight vectors of a triangulation refining f's domains of
linearity; both routes are exact rationals and must agree.
"""

import random
from fractions import Fraction
from math import gcd

from .errors import LinearityViolation, NonConvex, TriangulationMismatch
from .geometry import LatticePolytope, PointConfiguration
from .linalg import lattice_length, scale_to_integers
from .polytopes import hurwitz_degree_formula
from .triangulation import Triangulation, engine, height_subdivision, max_eq_lp
from .weights import eta_k, hurwitz_vector

_PERTURB_DEN = 1 << 62


def _hull_value(config, heights, point):
    """Lower-hull interpolation at a rational point of Q, by exact LP."""
    cols = [tuple(p) + (1,) for p in config.points]
    rhs = tuple(point) + (1,)
    status, _, value = max_eq_lp([-h for h in heights], cols, rhs)
    if status != "optimal":
        raise ValueError(f"point {point} is outside the configuration hull")
    return -value


class PLFunction:
    """Convex piecewise-linear function on the hull of a configuration."""

    def __init__(self, config, heights, forms=None):
        self.config = config
        self.heights = tuple(Fraction(h) for h in heights)
        self.forms = None if forms is None else tuple(
            tuple(Fraction(x) for x in form) for form in forms
        )
        if len(self.heights) != len(config):
            raise ValueError("one height per configuration point")
        self._faithful = None

    @classmethod
    def from_heights(cls, config, heights):
        """Heights that must already sit on their own lower hull."""
        f = cls(config, heights)
        for label in config.labels():
            point = config.point(label)
            value = _hull_value(config, f.heights, point)
            if value != f.heights[label - 1]:
                raise NonConvex(
                    f"height at point {label} lies above the lower hull "
                    f"({f.heights[label - 1]} > {value})"
                )
        return f

    @classmethod
    def envelope(cls, config, heights):
        """Convexification: replace each height by its lower-hull value."""
        raw = tuple(Fraction(h) for h in heights)
        hull = tuple(
            _hull_value(config, raw, config.point(label))
            for label in config.labels()
        )
        return cls(config, hull)

    @classmethod
    def from_affine(cls, config, forms):
        """Pointwise max of affine forms (a1, ..., an, c)."""
        forms = tuple(tuple(Fraction(x) for x in form) for form in forms)
        if not forms:
            raise ValueError("need at least one affine form")
        heights = [
            max(_affine_at(form, config.point(label)) for form in forms)
            for label in config.labels()
        ]
        return cls(config, heights, forms)

    def __call__(self, point):
        if self.forms is not None:
            return max(_affine_at(form, point) for form in self.forms)
        return _hull_value(self.config, self.heights, point)

    def value_at_label(self, label):
        return self.heights[label - 1]

    @property
    def is_faithful(self):
        """Whether the heights' lower hull reproduces the function."""
        if self._faithful is None:
            if self.forms is None:
                self._faithful = True
            else:
                t, _ = _refine_heights(self.config, self.heights)
                self._faithful = all(
                    _linear_on_cell(self, t, cell) for cell in t.cells
                )
        return self._faithful

    def dilation_order(self):
        """Minimal k so the function on kQ has lattice linearity domains."""
        if self.is_faithful:
            return 1
        for k in range(2, _dilation_bound(self) + 1):
            if self.dilate(k).is_faithful:
                return k
        raise AssertionError("dilation bound failed to clear denominators")

    def dilate(self, k):
        """The function x -> k f(x/k) on the lattice points of kQ."""
        scaled = LatticePolytope(
            [
                tuple(k * x for x in self.config.point(label))
                for label in self.config.labels()
            ]
        )
        big = PointConfiguration(sorted(scaled.lattice_points()))
        if self.forms is not None:
            forms = [form[:-1] + (k * form[-1],) for form in self.forms]
            return PLFunction.from_affine(big, forms)
        heights = [
            k * self(tuple(Fraction(x, k) for x in p)) for p in big.points
        ]
        return PLFunction(big, heights)


def _affine_at(form, point):
    return sum(a * x for a, x in zip(form, point)) + form[-1]


def _dilation_bound(f):
    """lcm of denominators of all candidate linearity-region vertices.

    Region vertices are intersections of two break lines or of a break
    line with a facet line of Q; their coordinates have denominators
    dividing the corresponding 2x2 determinants.
    """
    lines = []
    forms = f.forms or ()
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            diff = tuple(a - b for a, b in zip(forms[i], forms[j]))
            if any(diff[:-1]):
                lines.append(scale_to_integers(diff[:-1])[0])
    for normal, _ in f.config.polytope.facets:
        lines.append(tuple(normal))
    bound = 1
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a, b = lines[i], lines[j]
            det = abs(a[0] * b[1] - a[1] * b[0])
            if det:
                bound = bound * det // gcd(bound, det)
    return max(bound, 1)


def _refine_heights(config, heights, seed=0):
    """Regular triangulation refining the subdivision of the heights.

    Perturbs the heights by an amount far below any nonzero integer gap,
    so every cell of the perturbed lower hull sits inside a cell of the
    original subdivision; redraws on the measure-zero chance of a tie.
    """
    den = 1
    for h in heights:
        den = den * h.denominator // gcd(den, h.denominator)
    base = [h * den for h in heights]
    rng = random.Random(seed)
    for _ in range(32):
        jitter = [
            h + Fraction(rng.randrange(1, 1 << 31), _PERTURB_DEN)
            for h in base
        ]
        cells = height_subdivision(config, jitter)
        if all(len(c) == 3 for c in cells):
            return Triangulation(config, cells), jitter
        rng = random.Random(rng.random())
    raise AssertionError("could not find a simplicial perturbation")


def _linear_on_cell(f, triangulation, cell):
    points = [triangulation.config.point(label) for label in cell]
    centroid = tuple(
        sum(Fraction(p[i]) for p in points) / len(points)
        for i in range(len(points[0]))
    )
    average = sum(f.value_at_label(label) for label in cell) / len(cell)
    return f(centroid) == average


def induced_triangulation(f, seed=0):
    """Regular triangulation on whose cells f is linear, with the dilation.

    Returns (triangulation, k). When f's linearity domains already have
    vertices on the configuration, k is 1 and the triangulation lives on
    f's own configuration; otherwise the function is recomputed on the
    lattice points of kQ for the minimal clearing k and the triangulation
    refers to that dilated configuration.
    """
    k = f.dilation_order()
    g = f if k == 1 else f.dilate(k)
    t, _ = _refine_heights(g.config, g.heights, seed=seed)
    for cell in t.cells:
        if not _linear_on_cell(g, t, cell):
            raise AssertionError("perturbed refinement left a nonlinear cell")
    return t, k


def _check_cells(f, triangulation, error):
    if triangulation.config is not f.config and (
        triangulation.config.points != f.config.points
    ):
        raise error("triangulation lives on a different configuration")
    for cell in triangulation.cells:
        if not _linear_on_cell(f, triangulation, cell):
            raise error(f"function is not affine on cell {cell}")


def integral_over_Q(f, triangulation):
    """Exact integral of f over Q: per cell, vol/(n+1)! times the vertex sum."""
    _check_cells(f, triangulation, LinearityViolation)
    eng = engine(f.config)
    n = f.config.polytope.dim
    factorial = 1
    for i in range(2, n + 2):
        factorial *= i
    total = Fraction(0)
    for cell, mask in zip(triangulation.cells, triangulation.masks):
        vertex_sum = sum(f.value_at_label(label) for label in cell)
        total += Fraction(eng.volume(mask), factorial) * vertex_sum
    return total


def boundary_integral(f, triangulation):
    """Exact integral of f over the boundary against the lattice measure.

    Each boundary edge contributes its lattice length times the average
    of the endpoint values, which is the exact integral of a function
    linear on the edge.
    """
    _check_cells(f, triangulation, LinearityViolation)
    seen = {}
    for cell in triangulation.cells:
        for i in range(len(cell)):
            for j in range(i + 1, len(cell)):
                edge = (cell[i], cell[j])
                seen[edge] = seen.get(edge, 0) + 1
    total = Fraction(0)
    for (a, b), count in seen.items():
        if count == 1:
            pa, pb = f.config.point(a), f.config.point(b)
            length = lattice_length(pa, pb)
            total += Fraction(length, 2) * (
                f.value_at_label(a) + f.value_at_label(b)
            )
    return total


def k_energy_integral(f, seed=0):
    """L(f) from the two integrals, dilating first when f needs it."""
    k = f.dilation_order()
    g = f if k == 1 else f.dilate(k)
    t, _ = _refine_heights(g.config, g.heights, seed=seed)
    poly = g.config.polytope
    n = poly.dim
    ratio = Fraction(poly.boundary_volume(), poly.normalized_volume())
    energy = boundary_integral(g, t) - n * ratio * integral_over_Q(g, t)
    return energy / (k * k)


def k_energy_pairing(f, triangulation=None, seed=0):
    """L(f) through the weight vectors of a refining triangulation.

    Pairs the heights with n deg(Hurwitz) eta - (n+1) deg(Chow) xi and
    divides by (n+1)! vol(Q). The triangulation must refine f's domains
    of linearity; one is constructed when not supplied.
    """
    k = f.dilation_order()
    g = f if k == 1 else f.dilate(k)
    if triangulation is None:
        triangulation, _ = _refine_heights(g.config, g.heights, seed=seed)
    elif k != 1:
        raise TriangulationMismatch(
            "function needs dilation; pass no triangulation"
        )
    _check_cells(g, triangulation, TriangulationMismatch)
    poly = g.config.polytope
    n = poly.dim
    volume = poly.normalized_volume()
    deg_chow = volume
    deg_hurwitz = hurwitz_degree_formula(poly)
    eta = eta_k(triangulation, n).values
    xi = hurwitz_vector(triangulation).values
    weight = [
        n * deg_hurwitz * e - (n + 1) * deg_chow * x for e, x in zip(eta, xi)
    ]
    pairing = sum(h * w for h, w in zip(g.heights, weight))
    factorial = 1
    for i in range(2, n + 2):
        factorial *= i
    return pairing / (factorial * volume) / (k * k)
