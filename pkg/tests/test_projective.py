"""Projective construction: the long path through the points at infinity,
its closures, the ladder family, and the full-plane rethreading."""

import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from planecycles import (
    ProjectiveEmbedder,
    brute_force_cycle,
    embed_projective_cycle,
    projective_from_affine,
    verify_embedding,
)
from planecycles.errors import OutOfRange, WrongKind

SWEEP_ORDERS = (2, 3, 4, 5, 7, 8, 9)


def n_max(q: int) -> int:
    return q * q + q + 1


@pytest.mark.parametrize("q", SWEEP_ORDERS)
def test_every_admissible_length_embeds(q, projective):
    pl = projective(q)
    emb = ProjectiveEmbedder(pl)
    for k in range(3, n_max(q) + 1):
        cyc = emb.embed(k)
        assert cyc.k == k
        report = verify_embedding(pl, cyc)
        assert report.ok, (q, k, report.failures())


@pytest.mark.parametrize("q", [2, 3])
def test_tiny_orders_delegate_to_search(q, projective):
    emb = ProjectiveEmbedder(projective(q))
    for k in range(3, n_max(q) + 1):
        assert emb.embed(k).branch == "oracle"


@pytest.mark.parametrize("q", [2, 3])
def test_search_agrees_with_construction(q, projective):
    """Independent brute force finds a cycle exactly where the builder does."""
    pl = projective(q)
    emb = ProjectiveEmbedder(pl)
    for k in range(3, n_max(q) + 1):
        found = brute_force_cycle(pl, k)
        assert found.cycle is not None
        assert verify_embedding(pl, found.cycle).ok
        assert verify_embedding(pl, emb.embed(k)).ok
    # nothing longer than the point count can exist
    over = brute_force_cycle(pl, n_max(q) + 1)
    assert over.cycle is None and over.exhausted


def test_branch_census_q7(projective):
    emb = ProjectiveEmbedder(projective(7))
    got = Counter(emb.embed(k).branch for k in range(3, 58))
    assert got["inf-path/tail(4)"] == 1
    assert emb.embed(50).branch == "inf-path/tail(4)"
    for label in ("inf-path/close+0", "inf-path/close+1", "inf-path/close+2",
                  "ladder/G3", "ladder/G4", "ladder/G5", "ladder/hamiltonian"):
        assert got[label] == 1, label
    # everything at or below q^2 rides on the affine machinery
    assert sum(v for b, v in got.items() if b.startswith("affine:")) == 47


def test_twisted_extension_reaches_truncation_branch(twisted9):
    ext = projective_from_affine(twisted9)
    emb = ProjectiveEmbedder(ext.plane)
    assert emb.s == 8  # one segment per chain
    got = Counter()
    for k in range(3, 92):
        cyc = emb.embed(k)
        assert verify_embedding(ext.plane, cyc).ok
        got[cyc.branch.split("(")[0]] += 1
    assert got["inf-path/trunc"] == 7
    assert got["inf-path/close+0"] == got["inf-path/close+1"] == 1
    assert got["ladder/G3"] == 0  # no ladder when chains are this short


def test_unroutable_closures_still_build(projective):
    """The bridge and truncation closures are valid below the lengths the
    dispatcher sends them, where other branches win; build them directly."""
    pl = projective(7)
    emb = ProjectiveEmbedder(pl)
    q, s = 7, emb.s
    assert s == 2
    bridge = emb._closure(q * q + 2 * s - q + 1)
    assert bridge.branch == "inf-path/bridge"
    assert verify_embedding(pl, bridge).ok
    trunc = emb._closure(q * q + s - q + 2)
    assert trunc.branch == "inf-path/trunc(2)"
    assert verify_embedding(pl, trunc).ok


@pytest.mark.parametrize("q", [4, 5, 7, 9])
def test_long_path_resource_accounting(q, projective):
    """The path through the points at infinity touches everything except a
    fixed, predictable reserve."""
    pl = projective(q)
    emb = ProjectiveEmbedder(pl)
    s = emb.s
    path = emb.inf_path
    assert path.n == q * q + s - 2
    every = set(range(pl.n_points))
    reserve_pts = set(emb.inf_pts[s:]) | {emb.inf_pts[0], emb.origin_p}
    assert every - set(path.points) == reserve_pts
    reserve_lns = (set(emb.pencil_p[s:]) | {emb.pencil_p[0], emb.linf,
                                            emb.cycles[s - 1].exit_edge})
    assert every - set(path.lines) == reserve_lns


@pytest.mark.parametrize("q", [4, 5, 8, 9])
def test_near_full_ladder_cycle_misses_one_line(q, projective):
    pl = projective(q)
    emb = ProjectiveEmbedder(pl)
    cyc = emb.embed(q * q + q)
    assert cyc.branch == f"ladder/G{q - emb.s}"
    spare_line = pl.join(emb._prefix_pt(q - 1), emb.inf_pts[0])
    assert set(range(pl.n_points)) - set(cyc.points) == {emb.origin_p}
    assert set(range(pl.n_lines)) - set(cyc.lines) == {spare_line}


@pytest.mark.parametrize("q", SWEEP_ORDERS)
def test_full_plane_cycle(q, projective):
    pl = projective(q)
    cyc = ProjectiveEmbedder(pl).embed(n_max(q))
    assert sorted(cyc.points) == list(range(pl.n_points))
    assert sorted(cyc.lines) == list(range(pl.n_lines))
    assert verify_embedding(pl, cyc).ok


def test_other_infinity_lines_work_too(projective):
    pl = projective(4)
    for linf in (0, 9, 13):
        for k in (3, 12, 17, 19, 21):
            cyc = embed_projective_cycle(pl, k, line_at_infinity=linf)
            assert verify_embedding(pl, cyc).ok


def test_rejects_affine_input(affine):
    with pytest.raises(WrongKind):
        ProjectiveEmbedder(affine(4))


def test_rejects_out_of_range_lengths(projective):
    emb = ProjectiveEmbedder(projective(4))
    for k in (0, 2, 22, 99):
        with pytest.raises(OutOfRange):
            emb.embed(k)


@given(
    q=st.sampled_from((4, 5, 7, 8, 9)),
    seed=st.integers(0, 2**32 - 1),
    data=st.data(),
)
@settings(max_examples=30, deadline=None)
def test_randomized_setups_still_embed(q, seed, data, projective):
    pl = projective(q)
    k = data.draw(st.integers(3, n_max(q)), label="k")
    linf = data.draw(st.integers(0, pl.n_lines - 1), label="linf")
    cyc = embed_projective_cycle(pl, k, line_at_infinity=linf,
                                 rng=random.Random(seed))
    assert verify_embedding(pl, cyc).ok
