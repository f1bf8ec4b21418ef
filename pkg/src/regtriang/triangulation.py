"""Triangulations of point configurations: validity, regularity, flips.

Cells are stored as bitmasks (bit i-1 = label i) next to the public
sorted-label view. A per-configuration engine caches simplex volumes,
affine dependences and containment tests, since enumeration revisits the
same small sets constantly.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import (
    DegenerateSimplex,
    OverlapNotFace,
    UnsupportedFlip,
    VolumeMismatch,
)
from .geometry import LatticePolytope
from .linalg import (
    affine_dependence,
    barycentric,
    normalized_simplex_volume,
    scale_to_integers,
)
from .lp import _Tableau, max_lp, strict_feasible


class NotRegular:
    """Falsy marker returned when no strictly convex heights exist."""

    def __bool__(self):
        return False

    def __repr__(self):
        return "NotRegular"


NOT_REGULAR = NotRegular()


def _bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _labels(mask):
    return tuple(i + 1 for i in _bits(mask))


def _mask(labels):
    m = 0
    for l in labels:
        m |= 1 << (l - 1)
    return m


@dataclass(frozen=True)
class Circuit:
    """A minimal affine dependence, split into its two sign classes.

    `plus` is the side containing the smallest label of the support.
    Coefficients are the primitive integer dependence values, keyed by
    label, positive on `plus` and negative on `minus`.
    """

    plus: tuple
    minus: tuple
    coeffs: tuple  # ((label, coeff), ...) sorted by label

    @property
    def support(self):
        return tuple(sorted(self.plus + self.minus))

    def __repr__(self):
        return f"Circuit(+{list(self.plus)}, -{list(self.minus)})"


class Triangulation:
    """A set of maximal simplices on a configuration, by 1-based labels."""

    def __init__(self, config, cells):
        self.config = config
        norm = sorted(tuple(sorted(c)) for c in cells)
        self.cells = tuple(norm)
        self.masks = tuple(_mask(c) for c in self.cells)

    def __eq__(self, other):
        return (
            isinstance(other, Triangulation)
            and self.cells == other.cells
            and self.config.points == other.config.points
        )

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return f"Triangulation({self.encode()})"

    def encode(self):
        return ";".join(",".join(str(l) for l in c) for c in self.cells)

    @classmethod
    def decode(cls, config, text):
        cells = [tuple(int(x) for x in part.split(",")) for part in text.split(";")]
        return cls(config, cells)

    @property
    def used_mask(self):
        m = 0
        for c in self.masks:
            m |= c
        return m

    def used_labels(self):
        return _labels(self.used_mask)

    def unused_labels(self):
        full = (1 << len(self.config)) - 1
        return _labels(full & ~self.used_mask)

    def validate(self):
        """Check the cells triangulate the hull; raise a specific error."""
        eng = engine(self.config)
        n = self.config.dim
        total = 0
        for cell, mask in zip(self.cells, self.masks):
            if len(cell) != n + 1 or len(set(cell)) != n + 1:
                raise DegenerateSimplex(f"cell {cell} is not an (n+1)-subset")
            if not all(1 <= l <= len(self.config) for l in cell):
                raise DegenerateSimplex(f"cell {cell} has labels out of range")
            v = eng.volume(mask)
            if v == 0:
                raise DegenerateSimplex(f"cell {cell} has volume 0")
            total += v
        hull_vol = eng.hull_volume
        if total != hull_vol:
            raise VolumeMismatch(f"cells fill {total}, hull has {hull_vol}")
        for i in range(len(self.masks)):
            for j in range(i + 1, len(self.masks)):
                if not eng.meet_in_common_face(self.masks[i], self.masks[j]):
                    raise OverlapNotFace(
                        f"cells {self.cells[i]} and {self.cells[j]} overlap badly"
                    )
        return True

    def is_valid(self):
        try:
            self.validate()
        except (DegenerateSimplex, VolumeMismatch, OverlapNotFace):
            return False
        return True


class Engine:
    """Per-configuration caches and the flip/regularity machinery."""

    def __init__(self, config):
        self.config = config
        self.pts = config.points
        self.m = len(config.points)
        self.n = config.dim
        self.full_mask = (1 << self.m) - 1
        self.hull_volume = config.polytope.normalized_volume()
        self._vol = {}
        self._dep = {}
        self._circuits = {}
        self._bary = {}

    def points_of(self, mask):
        return [self.pts[i] for i in _bits(mask)]

    def volume(self, mask):
        v = self._vol.get(mask)
        if v is None:
            v = normalized_simplex_volume(self.points_of(mask))
            self._vol[mask] = v
        return v

    def barycentric_in(self, cell_mask, label):
        """Barycentric coordinates of a point in a cell, or None."""
        key = (cell_mask, label)
        if key not in self._bary:
            self._bary[key] = barycentric(
                self.points_of(cell_mask), self.pts[label - 1]
            )
        return self._bary[key]

    def cell_contains(self, cell_mask, label):
        if cell_mask & (1 << (label - 1)):
            return True
        coords = self.barycentric_in(cell_mask, label)
        return coords is not None and all(c >= 0 for c in coords)

    def circuit_of(self, smask):
        """Circuit supported inside the point set smask, or None.

        smask must have a one-dimensional affine dependence space (r+2
        points spanning r dimensions).
        """
        if smask in self._dep:
            return self._dep[smask]
        labels = _labels(smask)
        dep = affine_dependence([self.pts[l - 1] for l in labels])
        if dep is None:
            self._dep[smask] = None
            return None
        support = [(l, c) for l, c in zip(labels, dep) if c != 0]
        if support[0][1] < 0:
            support = [(l, -c) for l, c in support]
        plus = tuple(l for l, c in support if c > 0)
        minus = tuple(l for l, c in support if c < 0)
        circ = self._circuits.get((plus, minus))
        if circ is None:
            circ = Circuit(plus=plus, minus=minus, coeffs=tuple(support))
            self._circuits[(plus, minus)] = circ
        self._dep[smask] = circ
        return circ

    # -- an exact test that two simplices meet in a common face --------

    def meet_in_common_face(self, m1, m2):
        """conv(m1) and conv(m2) intersect exactly in conv(m1 & m2).

        Any vertex subset of a simplex spans a face, so this is the
        face-to-face condition. Decided by maximizing the barycentric mass
        off the shared vertices over the intersection.
        """
        if m1 == m2:
            return True
        shared = m1 & m2
        p1 = self.points_of(m1)
        p2 = self.points_of(m2)
        l1 = _labels(m1)
        l2 = _labels(m2)
        d = self.n
        # columns: lambda (over m1), mu (over m2)
        cols = []
        obj = []
        for l, p in zip(l1, p1):
            cols.append(list(p) + [1, 0])
            obj.append(0 if (1 << (l - 1)) & shared else 1)
        for l, p in zip(l2, p2):
            cols.append([-x for x in p] + [0, 1])
            obj.append(0 if (1 << (l - 1)) & shared else 1)
        b = [0] * d + [1, 1]
        status, x, val = max_eq_lp(obj, cols, b)
        if status == "infeasible":
            return True  # hulls do not even intersect
        assert status == "optimal"
        return val == 0

    # -- regularity ------------------------------------------------------

    def fold_rows(self, masks):
        """Integer rows r with r.g > 0 for all rows iff heights g induce T.

        One row per interior wall (local convexity of the fold) and one
        per unused point (lift strictly above its containing cell).
        Returns None when the triangulation is not flippable-consistent
        (a wall with an apex whose dependence coefficient vanishes cannot
        occur in a valid triangulation).
        """
        rows = []
        used = 0
        walls = {}
        for cm in masks:
            used |= cm
            mm = cm
            while mm:
                low = mm & (-mm)
                walls.setdefault(cm ^ low, []).append(cm)
                mm ^= low
        for wall, owners in walls.items():
            if len(owners) == 1:
                continue
            assert len(owners) == 2, "wall shared by more than two cells"
            smask = owners[0] | owners[1]
            circ = self.circuit_of(smask)
            assert circ is not None
            coeffs = dict(circ.coeffs)
            apex_bit = owners[0] & ~wall
            apex = _labels(apex_bit)[0]
            ca = coeffs.get(apex, 0)
            assert ca != 0, "apex off the wall circuit in a valid triangulation"
            row = [0] * self.m
            sign = 1 if ca > 0 else -1
            for l, c in circ.coeffs:
                row[l - 1] = sign * c
            other_apex = _labels(owners[1] & ~wall)[0]
            assert row[other_apex - 1] > 0, "apexes fold to the same side"
            rows.append(row)
        unused = self.full_mask & ~used
        for i in _bits(unused):
            label = i + 1
            placed = False
            for cm in sorted(masks):
                if self.cell_contains(cm, label):
                    coords = self.barycentric_in(cm, label)
                    den = lcm(*(c.denominator for c in coords)) if coords else 1
                    row = [0] * self.m
                    row[i] = den
                    for l, c in zip(_labels(cm), coords):
                        row[l - 1] -= int(c * den)
                    rows.append(row)
                    placed = True
                    break
            assert placed, "unused point outside every cell"
        return rows

    def regular_quick(self, masks):
        """Fast regularity decision via strict wall-fold feasibility."""
        rows = self.fold_rows(masks)
        if not rows:
            return True, tuple(Fraction(0) for _ in range(self.m))
        ok, g, _ = strict_feasible(rows)
        if ok:
            return True, tuple(g)
        return False, None


_ENGINES = {}


def engine(config):
    key = id(config)
    got = _ENGINES.get(key)
    if got is None or got.config is not config:
        got = Engine(config)
        _ENGINES[key] = got
    return got


def max_eq_lp(c, cols, b):
    """Maximize c.x over {sum x_j cols[j] = b, x >= 0}, exact.

    Phase 1 on artificials, then phase 2 on the real objective with
    artificial columns barred from entering.
    """
    m = len(b)
    n = len(cols)
    c, c_scale = scale_to_integers([Fraction(x) for x in c])
    rows = [[cols[j][i] for j in range(n)] for i in range(m)]
    rhs = list(b)
    for i in range(m):
        scaled, _ = scale_to_integers(rows[i] + [rhs[i]])
        rows[i] = list(scaled[:n])
        rhs[i] = scaled[n]
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    for i in range(m):
        art = [0] * m
        art[i] = 1
        rows[i] = rows[i] + art
    obj = [0] * n + [-1] * m
    tab = _Tableau(obj, rows, rhs, [n + i for i in range(m)])
    for i in range(m):
        tab.price_out(i + 1, n + i)
    status = tab.bland()
    assert status == "optimal"
    if tab.objective_value() != 0:
        return "infeasible", None, None
    # drive leftover basic artificials out of the basis at level zero, so
    # later pivots cannot lift them (that would break the equalities)
    row = 1
    while row < len(tab.t):
        var = tab.basis[row - 1]
        if var >= n:
            target = None
            for j in range(n):
                if tab.t[row][j] != 0:
                    target = j
                    break
            if target is None:
                # equality row is redundant by now; drop it
                tab.t.pop(row)
                tab.basis.pop(row - 1)
                continue
            if tab.t[row][target] < 0:
                tab.t[row] = [-a for a in tab.t[row]]
            tab.pivot(row, target)
        row += 1
    # phase 2: swap in the real objective, keep artificials out
    den = tab.den
    cost = [Fraction(x) for x in list(c) + [0] * m] + [Fraction(0)]
    new0 = [x * den for x in cost]
    for i, var in enumerate(tab.basis):
        f = new0[var]
        if f:
            rowi = tab.t[i + 1]
            new0 = [a - f * Fraction(bb, den) for a, bb in zip(new0, rowi)]
    row0 = []
    for x in new0:
        assert x.denominator == 1
        row0.append(int(x))
    tab.t[0] = row0
    tab.ncols = n + 1  # bar artificial columns from entering
    status = tab.bland()
    tab.ncols = n + m + 1
    if status != "optimal":
        return status, None, None
    return "optimal", tab.solution(n), tab.objective_value() / c_scale


def lower_hull_subdivision(config_points, heights):
    """Cells (point-index masks) of the lower hull of lifted points.

    Base points must span their ambient space. A height vector whose lift
    is not full-dimensional (an affine function) yields the single
    trivial cell.
    """
    lifted = [tuple(p) + (h,) for p, h in zip(config_points, heights)]
    poly = LatticePolytope(lifted)
    base_dim = len(config_points[0])
    if poly.dim <= base_dim:
        return [(1 << len(lifted)) - 1]
    cells = []
    for normal, off in poly.facets:
        if normal[-1] <= 0:
            continue
        mask = 0
        for i, q in enumerate(lifted):
            if sum(a * b for a, b in zip(normal, q)) == off:
                mask |= 1 << i
        cells.append(mask)
    return sorted(cells)


def height_subdivision(config, heights):
    """Label sets of the regular subdivision induced by heights."""
    masks = lower_hull_subdivision(config.points, heights)
    return [_labels(m) for m in masks]


def is_regular(triangulation):
    """Certified regularity: heights with strictly positive margin, or
    the falsy NOT_REGULAR.

    Solves the exact LP: variables are heights g in [-1, 1] and a margin
    d; for every cell and every point off the cell, the lift of the point
    must exceed the cell's affine interpolation by at least d; maximize d.
    The triangulation is regular iff the optimum is positive, and the
    returned heights are verified by reconstructing their subdivision.
    """
    config = triangulation.config
    eng = engine(config)
    m = len(config)
    rows = []
    for cell, cmask in zip(triangulation.cells, triangulation.masks):
        for label in config.labels():
            if cmask & (1 << (label - 1)):
                continue
            coords = barycentric(eng.points_of(cmask), config.point(label))
            assert coords is not None  # full-dim cell spans everything
            den = lcm(*(c.denominator for c in coords))
            row = [0] * (m + 1)
            row[label - 1] = den
            for l, c in zip(cell, coords):
                row[l - 1] -= int(c * den)
            row[m] = -den  # ... - den * delta >= 0
            rows.append(row)
    if not rows:
        # every point is a vertex of the single cell; all heights work
        heights = tuple(Fraction(0) for _ in range(m))
        rebuilt = lower_hull_subdivision(config.points, heights)
        assert tuple(sorted(rebuilt)) == tuple(sorted(triangulation.masks))
        return heights
    # to standard <= form with x = g + 1 in [0, 2]: coefficient sums over
    # g-entries are zero, so the substitution leaves row values unchanged
    ineq = [[-v for v in row] for row in rows]
    for i in range(m):
        box = [0] * (m + 1)
        box[i] = 1
        ineq.append(box)
    rhs = [0] * len(rows) + [2] * m
    obj = [0] * m + [1]
    status, x, delta = max_lp(obj, ineq, rhs)
    assert status == "optimal"
    if delta <= 0:
        return NOT_REGULAR
    heights = tuple(xi - 1 for xi in x[:m])
    rebuilt = lower_hull_subdivision(config.points, heights)
    assert tuple(sorted(rebuilt)) == tuple(sorted(triangulation.masks)), (
        "certificate failed to reproduce the triangulation"
    )
    return heights


def placing_triangulation(config, order=None):
    """Triangulation built by inserting points in label order.

    Points inside the hull of the already-placed set are skipped; points
    outside cone over the visible boundary; points off the current affine
    span cone over every cell.
    """
    labels = list(order) if order is not None else list(config.labels())
    placed = []
    cells = []  # masks of current d-simplices
    for label in labels:
        p = config.point(label)
        bit = 1 << (label - 1)
        if not placed:
            placed.append(label)
            cells = [bit]
            continue
        poly = LatticePolytope([config.point(l) for l in placed])
        coords = poly._coord_or_none(p)
        if coords is None:
            # dimension jump: pyramid over everything
            cells = [c | bit for c in cells]
            placed.append(label)
            continue
        if poly.contains(p):
            continue
        new_cells = list(cells)
        for u, off, tight in poly.hull.facets:
            val = sum(a * b for a, b in zip(u, coords))
            if val >= off:
                continue
            # facet is visible; cone over the boundary walls lying on it
            tight_mask = 0
            for t in tight:
                tight_mask |= 1 << (placed[t] - 1)
            for cm in cells:
                mm = cm
                while mm:
                    low = mm & (-mm)
                    wall = cm ^ low
                    if wall and wall & tight_mask == wall:
                        wc = wall | bit
                        if wc not in new_cells:
                            new_cells.append(wc)
                    mm ^= low
        cells = new_cells
        placed.append(label)
    return Triangulation(config, [_labels(c) for c in cells])


def supported_flips(triangulation):
    """All circuits currently supporting a flip, in canonical order."""
    eng = engine(triangulation.config)
    out = []
    seen = set()
    for circ in _candidate_circuits(eng, triangulation.masks):
        if circ.support in seen:
            continue
        seen.add(circ.support)
        if _present_side(eng, triangulation.masks, circ) is not None:
            out.append(circ)
    return sorted(out, key=lambda c: c.support)


def _candidate_circuits(eng, masks):
    walls = {}
    used = 0
    for cm in masks:
        used |= cm
        mm = cm
        while mm:
            low = mm & (-mm)
            walls.setdefault(cm ^ low, []).append(cm)
            mm ^= low
    for wall, owners in walls.items():
        if len(owners) == 2:
            circ = eng.circuit_of(owners[0] | owners[1])
            if circ is not None:
                yield circ
    unused = eng.full_mask & ~used
    for i in _bits(unused):
        label = i + 1
        for cm in sorted(masks):
            if eng.cell_contains(cm, label):
                circ = eng.circuit_of(cm | (1 << i))
                if circ is not None:
                    yield circ


def _present_side(eng, masks, circ):
    """Which side of the circuit is supported in T: 'plus', 'minus', None.

    'plus' means the cells using all of circ.plus are present (so the flip
    would switch to the minus side).
    """
    smask = _mask(circ.support)
    cellset = set(masks)
    for name, removers in (("plus", circ.minus), ("minus", circ.plus)):
        taus = [smask & ~(1 << (z - 1)) for z in removers]
        tau0 = taus[0]
        link = [c & ~tau0 for c in masks if c & tau0 == tau0]
        if not link:
            continue
        ok = True
        for tau in taus:
            owners = [c for c in masks if c & tau == tau]
            if len(owners) != len(link):
                ok = False
                break
            for lam in link:
                if (tau | lam) not in cellset:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return name
    return None


def flip(triangulation, circuit):
    """Apply the circuit flip; UnsupportedFlip if it does not apply."""
    eng = engine(triangulation.config)
    masks = triangulation.masks
    side = _present_side(eng, masks, circuit)
    if side is None:
        raise UnsupportedFlip(f"{circuit} is not supported")
    smask = _mask(circuit.support)
    if side == "plus":
        old_removers, new_removers = circuit.minus, circuit.plus
    else:
        old_removers, new_removers = circuit.plus, circuit.minus
    taus = [smask & ~(1 << (z - 1)) for z in old_removers]
    tau0 = taus[0]
    link = [c & ~tau0 for c in masks if c & tau0 == tau0]
    old_cells = {tau | lam for tau in taus for lam in link}
    new_cells = {
        (smask & ~(1 << (z - 1))) | lam for z in new_removers for lam in link
    }
    result = [c for c in masks if c not in old_cells] + sorted(new_cells)
    return Triangulation(triangulation.config, [_labels(c) for c in result])


def neighbors(triangulation):
    """Triangulations one supported flip away."""
    out = []
    for circ in supported_flips(triangulation):
        out.append(flip(triangulation, circ))
    return out
