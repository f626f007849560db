import pytest

from cspforge.errors import BlowUpError, InstanceError
from cspforge.model import Instance, WeightFunction, all_tuples, evaluate_brute_force
from cspforge.reductions import IdenticallyZero, build_gamma, unweight_backward, unweight_forward
from cspforge.verify import gen_unweight_violation

from conftest import assert_sound, small


def _f21():
    return WeightFunction.dense("f", 1, 2, [2, 1])


def test_gamma_unary_example():
    gamma = build_gamma([_f21()], 2)
    assert gamma.size == 5
    assert gamma.elements == ["0", "1", "w_f_0_1", "w_f_0_2", "w_f_1_1"]
    assert set(gamma.relations["f"].table) == {(0, 2), (0, 3), (1, 4)}


def test_gamma_all_ones():
    q, r = 3, 2
    f = WeightFunction.relation("f", r, all_tuples(q, r))
    gamma = build_gamma([f], q)
    assert len(gamma.relations["f"].table) == q**r
    assert gamma.size == q + q**r


def test_gamma_zero_prefix_has_no_tuples():
    gamma = build_gamma([WeightFunction.dense("f", 1, 2, [0, 3])], 2)
    assert all(t[0] != 0 for t in gamma.relations["f"].table)


def test_gamma_rejects_rationals_and_blowup():
    with pytest.raises(InstanceError):
        build_gamma([WeightFunction.dense("f", 1, 2, ["1/2", 1])], 2)
    with pytest.raises(BlowUpError):
        build_gamma([WeightFunction.dense("f", 1, 2, [50, 50])], 2, cap=10)


def test_forward_single_constraint():
    inst = Instance.build(2, [_f21()], [("f", ["v"])])
    res = unweight_forward(inst)
    out = res.instance
    assert out.q == 5 and out.variables == ("v", "k1")
    assert len(out.constraints) == 1 and out.constraints[0].scope == ("v", "k1")
    assert evaluate_brute_force(out) == evaluate_brute_force(inst) == 3
    assert res.phi == 1


def test_forward_empty_is_identity():
    inst = Instance.build(2, variables=["u"])
    res = unweight_forward(inst)
    assert res.phi == 1 and res.instance == inst


def test_forward_shared_variable():
    f = WeightFunction.dense("f", 2, 2, [1, 2, 0, 1])
    inst = Instance.build(2, [f], [("f", ["u", "v"]), ("f", ["w", "u"])])
    res = unweight_forward(inst)
    assert len(res.instance.variables) == len(inst.variables) + 2
    assert_sound(inst, res)


def test_forward_zero_function():
    z = WeightFunction("z", 1, {})
    inst = Instance.build(2, [z], [("z", ["u"])])
    assert isinstance(unweight_forward(inst), IdenticallyZero)


def test_forward_rejects_lambda():
    lam = WeightFunction.dense("lam", 1, 2, [1, 1])
    with pytest.raises(InstanceError):
        unweight_forward(Instance.build(2, [_f21()], [("f", ["v"])], vertex_weighting=lam))


def _cert():
    return unweight_forward(Instance.build(2, [_f21()], [("f", ["x"])])).certificate


def test_backward_aux_in_prefix_is_zero():
    cert = _cert()
    r = unweight_forward(Instance.build(2, [_f21()], [("f", ["x"])])).instance.functions["R_f"]
    inst = Instance.build(5, [r], [("R_f", ["v", "w"]), ("R_f", ["w", "z"])])
    assert isinstance(unweight_backward(inst, cert), IdenticallyZero)
    assert evaluate_brute_force(inst) == 0


def test_backward_merges_shared_aux():
    cert = _cert()
    r = unweight_forward(Instance.build(2, [_f21()], [("f", ["x"])])).instance.functions["R_f"]
    inst = Instance.build(5, [r], [("R_f", ["v", "w"]), ("R_f", ["v2", "w"])])
    res = unweight_backward(inst, cert)
    assert len(res.instance.constraints) == 1
    assert res.instance.constraints[0].scope == ("v",)
    assert res.certificate.data["merged"] == {"v2": "v"}
    assert evaluate_brute_force(res.instance) == evaluate_brute_force(inst) == 3
    assert_sound(inst, res)


def test_backward_unknown_relation():
    e = WeightFunction.relation("E", 2, [(0, 1)])
    with pytest.raises(InstanceError):
        unweight_backward(Instance.build(5, [e], [("E", ["a", "b"])]), _cert())


def test_round_trip_on_seeded_integer_instances():
    for seed in range(60):
        inst = small(seed, force_integer=True, max_numerator=3, num_vars=3, num_constraints=3, max_arity=2)
        fwd = unweight_forward(inst)
        if isinstance(fwd, IdenticallyZero):
            assert evaluate_brute_force(inst) == 0
            continue
        back = unweight_backward(fwd.instance, fwd.certificate)
        assert evaluate_brute_force(back.instance) * fwd.phi * back.phi == evaluate_brute_force(inst)


@pytest.mark.parametrize("seed", range(8))
def test_crafted_violations(seed):
    inst, cert = gen_unweight_violation(seed)
    assert isinstance(unweight_backward(inst, cert), IdenticallyZero)
    assert evaluate_brute_force(inst) == 0
