from fractions import Fraction

import pytest

from cspforge.errors import InstanceError
from cspforge.model import Instance, WeightFunction, evaluate_brute_force
from cspforge.reductions import (
    Certificate,
    IdenticallyZero,
    binarize_backward,
    binarize_build,
    binarize_forward,
    build_product_function,
    product_backward,
    product_forward,
)

from conftest import assert_sound, small


def _g1():
    return WeightFunction.dense("g1", 1, 2, [1, 2])


def _g2():
    return WeightFunction.dense("g2", 1, 2, [1, 1])


def test_product_single_component():
    pf = build_product_function([_g1()])
    assert pf.g.table == _g1().table and pf.g.arity == 1


def test_product_two_unary_components():
    pf = build_product_function([_g1(), _g2()])
    assert pf.g.arity == 2
    assert [pf.g(a, b) for a in range(2) for b in range(2)] == [1, 1, 2, 2]
    assert pf.totals == (3, 2)


def test_product_zero_absorbs():
    h = WeightFunction.dense("h", 1, 2, [0, 5])
    pf = build_product_function([h, _g1()])
    assert pf.g(0, 0) == pf.g(0, 1) == 0
    with pytest.raises(InstanceError):
        build_product_function([WeightFunction("z", 1, {})])


def test_product_forward_example():
    inst = Instance.build(2, [_g1(), _g2()], [("g1", ["v"])])
    res = product_forward(inst)
    assert res.phi == Fraction(1, 2)
    (c,) = res.instance.constraints
    assert c.function == "g" and c.scope[0] == "v" and len(c.scope) == 2
    assert evaluate_brute_force(inst) == 3
    assert evaluate_brute_force(res.instance) == 6


def test_product_forward_single_function_is_identity_up_to_name():
    inst = Instance.build(2, [_g1()], [("g1", ["v"]), ("g1", ["u"])])
    res = product_forward(inst)
    assert res.phi == 1
    assert evaluate_brute_force(res.instance) == evaluate_brute_force(inst)


def test_product_forward_identically_zero():
    z = WeightFunction("z", 2, {})
    inst = Instance.build(2, [z, _g1()], [("z", ["u", "v"]), ("g1", ["u"])])
    assert isinstance(product_forward(inst), IdenticallyZero)
    assert evaluate_brute_force(inst) == 0


def test_product_backward_splits_scope():
    fwd = product_forward(Instance.build(2, [_g1(), _g2()], [("g1", ["x"])]))
    g = fwd.instance.functions["g"]
    inst = Instance.build(2, [g], [("g", ["v", "u"])])
    res = product_backward(inst, fwd.certificate)
    assert [(c.function, c.scope) for c in res.instance.constraints] == [("g1", ("v",)), ("g2", ("u",))]
    assert_sound(inst, res)


def test_product_backward_composition_and_errors():
    inst = Instance.build(2, [_g1(), _g2()], [("g1", ["x"]), ("g2", ["x"])])
    fwd = product_forward(inst)
    back = product_backward(fwd.instance, fwd.certificate)
    chi = Fraction(fwd.certificate.data["chi"])
    assert evaluate_brute_force(back.instance) == chi * evaluate_brute_force(inst)
    empty = product_backward(Instance.build(2), fwd.certificate)
    assert empty.phi == 1 and not empty.instance.constraints
    with pytest.raises(InstanceError):
        product_backward(Instance.build(2, [WeightFunction("g", 1, {(0,): 1})], [("g", ["v"])]), fwd.certificate)


def test_product_preserves_domain_and_max_occurrence():
    for seed in range(80):
        inst = small(seed, max_functions=3)
        res = product_forward(inst)
        if isinstance(res, IdenticallyZero):
            continue
        assert res.instance.q == inst.q
        before = max(inst.occurrences().values(), default=0)
        after = max(res.instance.occurrences().values(), default=0)
        if before >= 1:
            assert after == before
        assert_sound(inst, res)


def test_beta_relations_q2_r2():
    sig = binarize_build(WeightFunction.dense("g", 2, 2, [1, 2, 0, 1]), 2)
    assert len(sig.elements) == 4
    for beta in sig.betas.values():
        assert len(beta.table) == 8
    for (i, k), beta in sig.betas.items():
        flipped = sig.betas[(k, i)]
        assert all(flipped(b, a) == beta(a, b) for a in range(4) for b in range(4))


def test_beta_unary_is_equality():
    sig = binarize_build(WeightFunction.dense("g", 1, 3, [1, 1, 2]), 3)
    assert set(sig.betas[(1, 1)].table) == {(a, a) for a in range(3)}


def _g22():
    return WeightFunction.dense("g", 2, 2, [1, 2, 0, 1])


def test_binarize_reflexive_example():
    inst = Instance.build(2, [_g22()], [("g", ["u", "u"])])
    res = binarize_forward(inst)
    out = res.instance
    assert out.variables == ("k1",)
    names = sorted(c.function for c in out.constraints)
    assert names == ["b_1_1", "b_1_2", "b_2_1", "b_2_2"]
    assert all(c.scope == ("k1", "k1") for c in out.constraints)
    assert evaluate_brute_force(out) == evaluate_brute_force(inst) == 2


def test_binarize_disjoint_scopes():
    inst = Instance.build(2, [_g22()], [("g", ["a", "b"]), ("g", ["c", "d"])])
    res = binarize_forward(inst)
    assert all(c.scope[0] == c.scope[1] for c in res.instance.constraints)
    assert evaluate_brute_force(res.instance) == _g22().total() ** 2
    assert_sound(inst, res)


def test_binarize_empty():
    inst = Instance.build(2, [_g22()])
    res = binarize_forward(inst)
    assert not res.instance.variables
    assert evaluate_brute_force(res.instance) == evaluate_brute_force(inst) == 1


def test_binarize_minimal_same_z():
    for seed in range(40):
        inst = small(seed, max_functions=1, num_vars=3, num_constraints=3, max_arity=2)
        full, minimal = binarize_forward(inst), binarize_forward(inst, minimal=True)
        assert len(minimal.instance.constraints) <= len(full.instance.constraints)
        assert evaluate_brute_force(full.instance) == evaluate_brute_force(minimal.instance)


def _cert_for(g):
    return binarize_forward(Instance.build(2, [g], [("g", ["x"] * g.arity)])).certificate


def test_binarize_backward_merge():
    g = _g22()
    cert = _cert_for(g)
    sig = binarize_build(g, 2)
    inst = Instance.build(4, [sig.betas[(1, 2)]], [("b_1_2", ["u", "u"])], vertex_weighting=sig.vertex_weighting)
    res = binarize_backward(inst, cert)
    (c,) = res.instance.constraints
    assert c.scope[0] == c.scope[1]
    assert evaluate_brute_force(res.instance) == evaluate_brute_force(inst) == g(0, 0) + g(1, 1)


def test_binarize_backward_no_constraints():
    g = _g22()
    sig = binarize_build(g, 2)
    inst = Instance.build(4, variables=["u"], vertex_weighting=sig.vertex_weighting)
    res = binarize_backward(inst, _cert_for(g))
    assert len(res.instance.variables) == 2
    assert evaluate_brute_force(res.instance) == evaluate_brute_force(inst) == g.total()


def test_binarize_backward_checks_weighting():
    g = _g22()
    inst = Instance.build(4, variables=["u"], vertex_weighting=WeightFunction.dense("lam", 1, 4, [1, 1, 1, 1]))
    with pytest.raises(InstanceError):
        binarize_backward(inst, _cert_for(g))
    with pytest.raises(InstanceError):
        binarize_backward(inst, Certificate("product", Fraction(1)))


def test_binarize_round_trip_seeded():
    for seed in range(40):
        inst = small(seed, max_functions=1, num_vars=3, num_constraints=3, max_arity=2)
        fwd = binarize_forward(inst)
        back = binarize_backward(fwd.instance, fwd.certificate)
        assert fwd.phi * back.phi * evaluate_brute_force(back.instance) == evaluate_brute_force(inst)
