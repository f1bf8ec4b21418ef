from regtriang.enumeration import enumerate_regular
from regtriang.geometry import PointConfiguration
from regtriang.triangulation import Triangulation
from regtriang.weights import eta_k, hurwitz_vector, is_massive, massive_gkz

SQUARE = PointConfiguration([(0, 0), (1, 0), (1, 1), (0, 1)])

VERONESE = PointConfiguration([(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)])

HEXAGON = PointConfiguration(
    [(0, 0), (0, 1), (1, 1), (1, 0), (0, -1), (-1, -1), (-1, 0)]
)

VERONESE_HURWITZ = {
    (4, 0, 1, 0, 6, 1),
    (3, 2, 0, 0, 6, 1),
    (3, 0, 1, 2, 6, 0),
    (2, 2, 0, 2, 6, 0),
    (1, 0, 4, 6, 0, 1),
    (0, 2, 3, 6, 0, 1),
    (1, 0, 3, 6, 2, 0),
    (0, 2, 2, 6, 2, 0),
    (1, 6, 1, 0, 0, 4),
    (0, 6, 1, 2, 0, 3),
    (1, 6, 0, 0, 2, 3),
    (0, 6, 0, 2, 2, 2),
    (4, 0, 4, 0, 0, 4),
    (0, 4, 0, 4, 4, 0),
}

HEXAGON_HURWITZ = {
    (12, 2, 2, 2, 2, 2, 2),
    (10, 0, 4, 2, 2, 2, 4),
    (10, 2, 2, 2, 4, 0, 4),
    (10, 2, 2, 4, 0, 4, 2),
    (10, 2, 4, 0, 4, 2, 2),
    (10, 4, 0, 4, 2, 2, 2),
    (10, 4, 2, 2, 2, 4, 0),
    (8, 0, 4, 2, 4, 0, 6),
    (8, 0, 4, 4, 0, 4, 4),
    (8, 0, 6, 0, 4, 2, 4),
    (8, 2, 4, 0, 6, 0, 4),
    (8, 4, 0, 4, 4, 0, 4),
    (8, 4, 0, 6, 0, 4, 2),
    (8, 4, 2, 4, 0, 6, 0),
    (8, 4, 4, 0, 4, 4, 0),
    (8, 6, 0, 4, 2, 4, 0),
    (6, 0, 6, 0, 6, 0, 6),
    (6, 6, 0, 6, 0, 6, 0),
    (0, 0, 4, 6, 4, 0, 10),
    (0, 0, 4, 8, 0, 4, 8),
    (0, 0, 8, 4, 0, 8, 4),
    (0, 0, 8, 0, 8, 0, 8),
    (0, 0, 10, 0, 4, 6, 4),
    (0, 4, 0, 8, 4, 0, 8),
    (0, 4, 0, 10, 0, 4, 6),
    (0, 4, 6, 4, 0, 10, 0),
    (0, 4, 8, 0, 4, 8, 0),
    (0, 6, 4, 0, 10, 0, 4),
    (0, 8, 0, 4, 8, 0, 4),
    (0, 8, 0, 8, 0, 8, 0),
    (0, 8, 4, 0, 8, 4, 0),
    (0, 10, 0, 4, 6, 4, 0),
}


def all_regular(config):
    res = enumerate_regular(config, collect=True)
    return [Triangulation.decode(config, enc) for enc in res.encodings]


def test_square_weight_vectors():
    t1 = Triangulation.decode(SQUARE, "1,2,3;1,3,4")
    assert eta_k(t1, 2).values == (2, 1, 2, 1)
    assert eta_k(t1, 1).values == (2, 2, 2, 2)
    assert eta_k(t1, 0).values == (1, 1, 1, 1)
    assert massive_gkz(t1).values == (1, 0, 1, 0)
    assert hurwitz_vector(t1).values == (2, 0, 2, 0)
    t2 = Triangulation.decode(SQUARE, "1,2,4;2,3,4")
    assert hurwitz_vector(t2).values == (0, 2, 0, 2)


def test_entry_accessor_is_one_based():
    t1 = Triangulation.decode(SQUARE, "1,2,3;1,3,4")
    v = eta_k(t1, 2)
    assert v.entry(1) == 2
    assert v.entry(4) == 1
    assert list(v) == [2, 1, 2, 1]
    assert len(v) == 4


def test_massiveness_on_the_hexagon():
    # label 1 is the interior point
    assert not is_massive(HEXAGON, (1,))
    assert not is_massive(HEXAGON, (1, 2))
    assert is_massive(HEXAGON, (2,))
    assert is_massive(HEXAGON, (2, 3))
    assert is_massive(HEXAGON, (1, 2, 3))  # full-dimensional
    # chords between non-adjacent vertices cross the interior
    assert not is_massive(HEXAGON, (2, 4))


def test_veronese_hurwitz_vectors_exactly():
    got = {hurwitz_vector(t).values for t in all_regular(VERONESE)}
    assert got == VERONESE_HURWITZ


def test_hexagon_hurwitz_vectors_exactly():
    got = {hurwitz_vector(t).values for t in all_regular(HEXAGON)}
    assert got == HEXAGON_HURWITZ


def test_weight_sums_depend_only_on_the_polygon():
    # volumes are normalized: unit triangle 1, unit boundary segment 1
    for config, vol, bvol in ((SQUARE, 2, 4), (VERONESE, 4, 6), (HEXAGON, 6, 6)):
        for t in all_regular(config):
            assert sum(eta_k(t, 2).values) == 3 * vol
            assert sum(eta_k(t, 1).values) == 2 * bvol
            assert sum(hurwitz_vector(t).values) == 2 * (3 * vol - bvol)
