from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttr.complexes import TwoTermComplex, direct_sum_complexes
from ttr.errors import AlgebraMismatch, IncompleteInterval, NotPresilting
from ttr.formats import module_complex, module_of
from ttr.modules import hom_dim, is_isomorphic, torsion_parts
from ttr.poset import poset_isomorphic
from ttr.reduction import dim_c_endo, dim_c_torsionfree, reduce, tau_perp_member, verify_against
from ttr.representation import direct_sum, free_module, projective, simple, zero_module
from ttr.silting import assemble, complex_to_pair

from _support import alg, graph, report


def test_tau_perp_examples():
    a = alg("a3r2")
    s3 = simple(a, 3)
    assert tau_perp_member(s3, simple(a, 2))
    assert not tau_perp_member(s3, projective(a, 3))
    for m in (s3, simple(a, 1), free_module(a)):
        assert tau_perp_member(m, zero_module(a))
    with pytest.raises(AlgebraMismatch):
        tau_perp_member(s3, simple(alg("a2"), 1))


def test_tau_perp_contains_the_reduced_modules():
    """fM lies in the perpendicular category for every node M containing U."""
    r = report("a3r2", "P3")
    u = projective(alg("a3r2"), 3)
    for node in r.interval.nodes.values():
        f_m = torsion_parts(u, node.module).torsion_free
        assert tau_perp_member(u, f_m)


def test_dim_c_examples():
    a = alg("a3r2")
    p3 = module_complex(a, "P3")
    assert dim_c_endo(a, p3) == dim_c_torsionfree(a, p3) == 3
    for name in ("a2", "nak3", "preproj_a3"):
        b = alg(name)
        zero = TwoTermComplex.zero(b)
        assert dim_c_endo(b, zero) == dim_c_torsionfree(b, zero) == b.dim


def test_dim_c_of_a3r2_torsion_free_part():
    a = alg("a3r2")
    f_a = torsion_parts(projective(a, 3), free_module(a)).torsion_free
    assert is_isomorphic(f_a, direct_sum(a, [projective(a, 1), simple(a, 2)]))
    assert hom_dim(free_module(a), f_a) == 3


def test_dim_c_rejects_non_presilting():
    a = alg("a2")
    bad = direct_sum_complexes(a, [TwoTermComplex.free(a), TwoTermComplex.free(a, -1)])
    with pytest.raises(NotPresilting):
        dim_c_endo(a, bad)


@pytest.mark.parametrize("name", ["a2", "two_cycle", "nak3", "a3r2", "preproj_a3"])
@given(data=st.data())
@settings(max_examples=10, deadline=None)
def test_two_routes_to_dim_c_agree(name, data):
    a = alg(name)
    keys = graph(name).keys()
    node = graph(name).nodes[keys[data.draw(st.integers(0, len(keys) - 1))]]
    chosen = data.draw(st.lists(st.integers(0, a.n - 1), unique=True, max_size=a.n))
    u = assemble(a, [node.parts[i] for i in sorted(chosen)])
    assert dim_c_endo(a, u) == dim_c_torsionfree(a, u)


# -- reduce / verify -------------------------------------------------------------


def test_reduce_a3r2():
    r = report("a3r2", "P3")
    assert r.size == 5 and r.dim_c == 3
    v = verify_against(r, alg("a2"))
    assert v.poset_iso and v.count_match and v.dim_match and v.ok
    top = r.interval.nodes[r.bongartz_key]
    assert is_isomorphic(top.module, free_module(alg("a3r2")))


def test_reduce_at_zero_reproduces_the_full_poset():
    a = alg("two_cycle")
    r = reduce(a, TwoTermComplex.zero(a))
    assert r.size == 6 and r.dim_c == a.dim
    assert verify_against(r, a).ok
    for key, node in r.interval.nodes.items():
        # Hom(A, M) = M when nothing is frozen
        assert r.reduced_dims[key] == node.module.total_dim


def test_reduce_preprojective_a3():
    """The interval is a hexagon; the ideal of maps through U also kills yx.

    The endomorphism y1x1 of P2 factors as P2 -> 2\\1 -> P2, so C has the
    radical-square-zero two-cycle algebra's dimension 4, not 5.
    """
    r = report("preproj_a3", "preproj_21.rep")
    c = alg("preproj_a3")
    t = complex_to_pair(assemble(c, r.interval.nodes[r.bongartz_key].parts)).module
    u = module_of(c, "preproj_21.rep")
    assert is_isomorphic(t, direct_sum(c, [projective(c, 1), projective(c, 2), u]))
    assert r.size == 6
    assert r.dim_c_endo == r.dim_c_torsionfree == alg("two_cycle_rad2").dim == 4
    assert sorted(r.reduced_dims.values()) == [0, 1, 1, 3, 3, 4]
    v = verify_against(r, alg("two_cycle"))
    assert (v.poset_iso, v.count_match, v.dim_match) == (True, True, False)
    assert verify_against(r, alg("two_cycle_rad2")).ok


def test_reduce_kronecker_cycle():
    r = report("kronecker_cycle", "kronecker_cycle_u.rep")
    assert r.size == 4 and r.dim_c_endo == r.dim_c_torsionfree == 2
    assert verify_against(r, alg("kk")).ok


def test_reduce_almost_complete_kronecker():
    a = alg("kronecker")
    r = reduce(a, module_complex(a, "kronecker_p1.rep"))
    assert r.size == 2 and r.dim_c == 1
    assert verify_against(r, alg("k")).ok


def test_reduced_dims_match_the_candidate_modules():
    """The bijection carries each interval node to a node of C of the same dimension."""
    r = report("a3r2", "P3")
    g = graph("a2")
    from ttr.exchange import hasse

    iso = poset_isomorphic(r.poset, hasse(g))
    for key, image in iso.items():
        assert r.reduced_dims[key] == g.nodes[image].module.total_dim


def test_incomplete_interval_carries_a_partial_report():
    a = alg("preproj_a3")
    with pytest.raises(IncompleteInterval) as err:
        reduce(a, module_complex(a, "preproj_21.rep"), cap=3)
    assert err.value.report.size == 3 and not err.value.report.interval.complete


def test_reduce_rejects_foreign_and_non_presilting_input():
    a = alg("a2")
    with pytest.raises(AlgebraMismatch):
        reduce(a, TwoTermComplex.free(alg("kk")))
    both = module_complex(a, "P1+P1[1]")
    with pytest.raises(NotPresilting):
        reduce(a, both)
