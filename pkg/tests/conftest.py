import pytest

from planecycles import (
    Plane,
    build_affine_classical,
    build_projective_classical,
    field_for_order,
)

SMALL_ORDERS = (2, 3, 4, 5, 7, 8, 9)


@pytest.fixture(scope="session")
def affine():
    cache = {}

    def get(q: int) -> Plane:
        if q not in cache:
            cache[q] = build_affine_classical(field_for_order(q))
        return cache[q]

    return get


@pytest.fixture(scope="session")
def projective():
    cache = {}

    def get(q: int) -> Plane:
        if q not in cache:
            cache[q] = build_projective_classical(field_for_order(q))
        return cache[q]

    return get


def relabeled_ag9() -> Plane:
    """AG(2,9) with the ids of two pencil lines swapped.

    Swapping line 72 (the slope-8 line through the origin) with line 81 (the
    vertical through the origin) reorders the pencil so that every chain of
    base paths closes after a single segment: the start-to-start map becomes
    the identity and the cycle partition degenerates to eight 1-segment
    cycles.  That is the shape that routes the rarely-taken construction
    branches, so several tests lean on this plane.
    """
    base = build_affine_classical(field_for_order(9))
    swap = {72: 81, 81: 72}
    lines = list(base.lines)
    lines[72], lines[81] = lines[81], lines[72]
    classes = tuple(
        tuple(sorted(swap.get(i, i) for i in cls)) for cls in base.parallel_classes
    )
    return Plane("affine", 9, base.n_points, lines, parallel_classes=classes)


@pytest.fixture(scope="session")
def twisted9() -> Plane:
    return relabeled_ag9()
