import numpy as np
import pytest

from ringlat import lattice as lt
from ringlat import modules as md
from ringlat import rings as rg
from ringlat.errors import (InternalCheckError, NotApplicableError,
                            PreconditionError)


def test_module_from_ring_passes_check(z8):
    mod = md.module_from_ring(z8)
    md.check_module(mod)
    assert mod.order == 8


def test_corrupted_action_fails_check(z4):
    mod = md.module_from_ring(z4)
    action = np.array(mod.action, copy=True)
    action[3, 1] = 0  # 3*1 must be 3
    broken = md.FiniteModule(z4, mod.order, np.array(mod.add, copy=True),
                             mod.zero, action, "broken")
    with pytest.raises(InternalCheckError):
        md.check_module(broken)


def test_cyclic_sum_construction(z4):
    mod = md.module_from_cyclics(z4, [[0], [2]])
    assert mod.order == 8
    md.check_module(mod)
    trivial = md.module_from_cyclics(z4, [])
    assert trivial.order == 1
    dropped = md.module_from_cyclics(z4, [[1], [0]])  # the unit summand vanishes
    assert dropped.order == 4


@pytest.mark.parametrize("build,count,length", [
    (lambda: md.module_from_ring(rg.make_gf(2)), 2, 1),
    (lambda: md.module_from_cyclics(rg.make_gf(2), [[0], [0]]), 5, 2),
    (lambda: md.module_from_cyclics(rg.make_gf(2), [[0], [0], [0]]), 16, 3),
    (lambda: md.module_from_cyclics(rg.make_gf(3), [[0], [0]]), 6, 2),
    (lambda: md.module_from_ring(rg.make_zmod(4)), 3, 2),
    (lambda: md.module_from_ring(rg.make_zmod(8)), 4, 3),
    (lambda: md.module_from_ring(rg.make_zmod(6)), 4, 2),
])
def test_submodule_counts_and_lengths(build, count, length):
    mod = build()
    lat = md.submodules(mod)
    assert lat.count == count
    assert lat.length == length
    assert md.module_length(mod) == length
    assert md.jordan_holder_check(lat)


def test_cyclic_and_uniserial(z8, f2):
    assert md.is_cyclic(md.module_from_ring(z8)) is not None
    assert md.is_uniserial(md.module_from_ring(z8))
    plane = md.module_from_cyclics(f2, [[0], [0]])
    assert md.is_cyclic(plane) is None
    assert not md.is_uniserial(plane)


def test_faithful(z4):
    assert md.is_faithful(md.module_from_ring(z4))
    assert not md.is_faithful(md.module_from_cyclics(z4, [[2]]))


def test_quotient_module(z8):
    mod = md.module_from_ring(z8)
    sub = md.submodule_closure(mod, [4])
    out = md.quotient_module(mod, sub)
    assert out.module.order == 4
    md.check_module(out.module)


def test_idealization_of_free_line(f2, f2_eps):
    idl = md.idealize(f2, md.module_from_ring(f2))
    assert idl.ring.order == 4
    assert rg.is_isomorphic(idl.ring, f2_eps) is not None


def test_idealization_of_zero_module(z4):
    idl = md.idealize(z4, md.module_from_cyclics(z4, []))
    assert rg.is_isomorphic(idl.ring, z4) is not None


def test_idealization_product_rule(z4):
    mod = md.module_from_ring(z4)
    idl = md.idealize(z4, mod)
    r1, m1 = 3, 2
    r2, m2 = 2, 1
    lhs = idl.ring.mul[idl.pair_index(r1, m1), idl.pair_index(r2, m2)]
    rs = int(z4.mul[r1, r2])
    cross = int(mod.add[mod.action[r1, m2], mod.action[r2, m1]])
    assert int(lhs) == idl.pair_index(rs, cross)


def test_idealization_conductor_is_annihilator(z4):
    from ringlat.ideals import annihilator, conductor

    mod = md.module_from_cyclics(z4, [[2]])
    ext, _ = md.idealization_extension(z4, mod)
    assert conductor(ext) == annihilator(z4, mod)


def test_lattice_bijection_node_for_node(f2):
    mod = md.module_from_cyclics(f2, [[0], [0]])
    bij = md.idealization_lattice_bijection(f2, mod)
    assert bij.ok
    assert bij.nu == 5
    assert bij.lattice_count == 5
    assert len(bij.pairs) == 5


def test_interval_matches_quotient(z8):
    mod = md.module_from_ring(z8)
    sub = md.submodule_closure(mod, [4])
    iv = md.interval_length(z8, mod, sub)
    assert iv.ok
    assert iv.interval_length == iv.quotient_length == 2
    assert iv.interval_count == iv.quotient_count


def test_uniserial_structure_chain(z4):
    mod = md.module_from_cyclics(z4, [[2]])
    rep = md.uniserial_structure_check(z4, mod)
    assert rep.passed
    assert rep.nu == 2
    assert rep.nu_of_quotient == 2


def test_uniserial_structure_preconditions(f2):
    plane = md.module_from_cyclics(f2, [[0], [0]])
    with pytest.raises(NotApplicableError):
        md.uniserial_structure_check(f2, plane)
    z6 = rg.make_zmod(6)
    with pytest.raises(PreconditionError):
        md.uniserial_structure_check(z6, md.module_from_ring(z6))


def test_componentwise_census(f3):
    res = md.componentwise_census(f3, 2)
    assert res.ok
    assert res.nu == 4
    assert res.lattice_checked


def test_submodule_lattice_serialization(z4):
    lat = md.submodules(md.module_from_ring(z4))
    data = lat.to_json()
    assert data["schema"] == 1
    assert data["count"] == 3
