import itertools

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import to_sympy
from realforms import cohomology as co
from realforms import exactnum as en
from realforms.exactnum import I_UNIT, GaussRational
from realforms.forms import FormKind, FormSpec
from realforms.matrix import A_n, ExactMatrix, I_p, J_p, Lcg, SamplingError, cayley_from_gram, cayley_sample
from strategies import matrices, seeds

i = I_UNIT
M = ExactMatrix.from_rows


def action(tag, n, p=None):
    return co.ConjAction(tag, n, p)


class TestVerifyCocycle:
    @pytest.mark.parametrize("tag, p", [(co.PLAIN, None), (co.QUATERNION_TWIST, None), (co.UNITARY_TWIST, 1)])
    def test_identity(self, tag, p):
        assert co.verify_cocycle(co.Cocycle(action(tag, 2, p), ExactMatrix.identity(2)))

    def test_sign_representative(self):
        b = I_p(4, 1) * I_p(4, 3)
        assert co.verify_cocycle(co.Cocycle(action(co.UNITARY_TWIST, 4, 3), b))

    def test_plain_scalars(self):
        assert co.verify_cocycle(co.Cocycle(action(co.PLAIN, 1), M([[i]])))
        assert co.verify_cocycle(co.Cocycle(action(co.PLAIN, 2), ExactMatrix.diag([i, 1])))
        assert not co.verify_cocycle(co.Cocycle(action(co.PLAIN, 1), M([[2]])))

    def test_singular_is_not_a_cocycle(self):
        assert not co.verify_cocycle(co.Cocycle(action(co.UNITARY_TWIST, 2, 1), ExactMatrix.zeros(2)))

    def test_shape_mismatch(self):
        with pytest.raises(co.CocycleError):
            co.verify_cocycle(co.Cocycle(action(co.PLAIN, 3), ExactMatrix.identity(2)))


class TestActions:
    @given(st.integers(1, 3).flatmap(lambda n: matrices("gauss", n)))
    def test_plain_is_involution(self, m):
        act = action(co.PLAIN, m.rows)
        assert act(act(m)) == m

    @given(st.integers(1, 2).flatmap(lambda n: matrices("gauss", 2 * n)))
    def test_quaternion_twist_is_involution(self, m):
        act = action(co.QUATERNION_TWIST, m.rows)
        assert act(act(m)) == m
        assert act(m * m) == act(m) * act(m)

    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.integers(0, n), matrices("gauss", n))))
    def test_unitary_twist_is_involution(self, pm):
        p, m = pm
        assume(m.is_invertible())
        act = action(co.UNITARY_TWIST, m.rows, p)
        assert act(act(m)) == m

    @pytest.mark.parametrize(
        "args",
        [("twist", 2, None), (co.QUATERNION_TWIST, 3, None), (co.UNITARY_TWIST, 2, None), (co.PLAIN, 2, 3), (co.PLAIN, 0, None)],
    )
    def test_invalid(self, args):
        with pytest.raises(co.CocycleError):
            co.ConjAction(*args)

    def test_json_round_trip(self):
        x = co.rep_cocycle("su", 3, 1, 3)
        assert co.Cocycle.from_json(x.to_json()) == x
        with pytest.raises(co.CocycleError):
            co.Cocycle.from_json({"B": x.B.to_json()})


class TestRepresentatives:
    def test_su_example(self):
        assert co.rep_cocycle("su", 4, 2, 0).B == ExactMatrix.diag([-1, -1, 1, 1])

    @pytest.mark.parametrize("family", ["su", "so", "suh"])
    def test_q_equals_p_is_trivial(self, family):
        assert co.rep_cocycle(family, 3, 1, 1).B.is_identity()

    def test_quaternionic_example(self):
        x = co.rep_cocycle("suh", 2, 1, 2)
        assert x.B == ExactMatrix.diag([1, 1, -1, -1])
        assert x.action.tag == co.QUATERNION_TWIST and x.action.n == 4

    @pytest.mark.parametrize("n", range(1, 9))
    @pytest.mark.parametrize("family", ["su", "so"])
    def test_index_recovers_q(self, family, n):
        for p in range(n + 1):
            qs = [q for q in range(n + 1) if (q - p) % 2 == 0]
            xs = [co.rep_cocycle(family, n, p, q) for q in qs]
            assert all(co.verify_cocycle(x) for x in xs)
            assert [co.cocycle_index(x) for x in xs] == qs

    @pytest.mark.parametrize("n", range(1, 7))
    def test_quaternionic_index_recovers_q(self, n):
        for p, q in itertools.product(range(n + 1), repeat=2):
            x = co.rep_cocycle("suh", n, p, q)
            assert co.verify_cocycle(x)
            assert co.cocycle_index(x) == q

    def test_parity_enforced(self):
        with pytest.raises(co.CocycleError):
            co.rep_cocycle("su", 4, 1, 2)
        with pytest.raises(co.CocycleError):
            co.rep_cocycle("so", 3, 0, 5)
        with pytest.raises(co.CocycleError):
            co.rep_cocycle("sl", 3, 0, 0)


class TestIndex:
    def test_trivial(self):
        assert co.cocycle_index(co.Cocycle(action(co.UNITARY_TWIST, 5, 3), ExactMatrix.identity(5))) == 3

    def test_su_example(self):
        assert co.cocycle_index(co.rep_cocycle("su", 4, 2, 0)) == 0

    @given(st.integers(1, 4), st.data())
    def test_equivalent_cocycle_keeps_index(self, n, data):
        p = data.draw(st.integers(0, n))
        q = data.draw(st.sampled_from([q for q in range(n + 1) if (q - p) % 2 == 0]))
        m = data.draw(matrices("gauss", n))
        assume(m.is_invertible())
        x = co.rep_cocycle("su", n, p, q)
        y = co.Cocycle(x.action, m.inverse() * x.B * x.action(m))
        assert co.verify_cocycle(y)
        assert co.cocycle_index(y) == q

    def test_needs_context(self):
        with pytest.raises(co.CocycleError):
            co.cocycle_index(co.Cocycle(action(co.PLAIN, 2), ExactMatrix.identity(2)))

    def test_rejects_non_cocycle(self):
        with pytest.raises(co.CocycleError):
            # c(i) = (conj(i)^t)^-1 = i, so i * c(i) = -1
            co.cocycle_index(co.Cocycle(action(co.UNITARY_TWIST, 1, 1), M([[i]])))


class TestHilbert90:
    def test_identity_start(self):
        x = co.Cocycle(action(co.PLAIN, 2), ExactMatrix.identity(2))
        assert co.hilbert90_solve(x, start=ExactMatrix.identity(2)) == 2 * ExactMatrix.identity(2)

    def test_minus_identity(self):
        x = co.Cocycle(action(co.PLAIN, 2), -ExactMatrix.identity(2))
        p = co.hilbert90_solve(x, start=i * ExactMatrix.identity(2))
        assert p == (2 * i) * ExactMatrix.identity(2)
        assert p * x.action(p).inverse() == x.B

    def test_swap(self):
        x = co.Cocycle(action(co.PLAIN, 2), M([[0, 1], [1, 0]]))
        p = co.hilbert90_solve(x, seed=3)
        assert p * x.action(p).inverse() == x.B

    @given(st.sampled_from([co.PLAIN, co.QUATERNION_TWIST]), st.sampled_from([2, 4]), seeds)
    def test_substitution_identity(self, tag, n, seed):
        act = action(tag, n)
        m = Lcg(seed).matrix(n, n, "gauss")
        assume(m.is_invertible())
        x = co.coboundary(act, m)
        p = co.hilbert90_solve(x, seed)
        assert p * act(p).inverse() == x.B

    def test_unitary_refused(self):
        with pytest.raises(co.CocycleError):
            co.hilbert90_solve(co.Cocycle(action(co.UNITARY_TWIST, 1, 1), M([[1]])))

    def test_degenerate_start_retries(self):
        x = co.Cocycle(action(co.PLAIN, 1), M([[-1]]))
        # N = 1 gives P = 1 + (-1)(1) = 0, so the solver must move on
        p = co.hilbert90_solve(x, start=M([[1]]))
        assert p * x.action(p).inverse() == x.B


def _scalar_class_oracle(n: int, zeta) -> int:
    """sign(alpha^n) with alpha^2 = zeta; P = alpha Id solves B = P c(P)^-1 for B = zeta Id."""
    z = complex(sympy.N(to_sympy(zeta), 30))
    alpha = complex(sympy.N(sympy.sqrt(to_sympy(zeta)), 30))
    assert abs(alpha / alpha.conjugate() - z) < 1e-12
    det = alpha**n
    assert abs(det.imag) < 1e-12 and abs(det.real) > 0.5
    return 1 if det.real > 0 else -1


class TestSlQuaternionic:
    def test_trivial(self):
        x = co.Cocycle(action(co.QUATERNION_TWIST, 2), ExactMatrix.identity(2))
        assert co.sl_quaternionic_class(x) == 1

    @pytest.mark.parametrize("n, zeta", [(2, -1), (4, I_UNIT)])
    def test_nontrivial_scalar(self, n, zeta):
        x = co.Cocycle(action(co.QUATERNION_TWIST, n), ExactMatrix.diag([zeta] * n))
        assert _scalar_class_oracle(n, zeta) == -1
        assert co.sl_quaternionic_class(x) == -1

    def test_cyclotomic_scalar(self):
        # zeta_3 Id on size 6 has det 1 and B c(B) = zeta_3 conj(zeta_3) Id = Id
        z = en.primitive_unity_root(3)
        x = co.Cocycle(action(co.QUATERNION_TWIST, 6), ExactMatrix.diag([z] * 6))
        assert co.verify_cocycle(x)
        assert co.sl_quaternionic_class(x) == _scalar_class_oracle(6, z) == 1

    @given(st.sampled_from([2, 4]), seeds)
    def test_coboundaries_are_trivial_and_stable(self, n, seed):
        act = action(co.QUATERNION_TWIST, n)
        m = co.real_det_normalize(Lcg(seed).matrix(n, n, "gauss"))
        x = co.coboundary(act, m)
        assert x.B.det() == 1
        assert {co.sl_quaternionic_class(x, s) for s in range(10)} == {1}

    def test_nontrivial_stable_across_seeds(self):
        x = co.Cocycle(action(co.QUATERNION_TWIST, 2), -ExactMatrix.identity(2))
        assert {co.sl_quaternionic_class(x, s) for s in range(10)} == {-1}

    def test_det_must_be_one(self):
        x = co.Cocycle(action(co.QUATERNION_TWIST, 2), ExactMatrix.diag([i, i]))
        assert co.verify_cocycle(x) and x.B.det() == -1
        with pytest.raises(co.CocycleError):
            co.sl_quaternionic_class(x)

    def test_wrong_action(self):
        with pytest.raises(co.CocycleError):
            co.sl_quaternionic_class(co.Cocycle(action(co.PLAIN, 2), ExactMatrix.identity(2)))


class TestDetPositivity:
    @pytest.mark.parametrize("k", range(100))
    def test_fixed_matrices_have_positive_det(self, k):
        n = (2, 4, 6)[k % 3]
        m = co.det_positive_sample(n, seed=k)
        assert action(co.QUATERNION_TWIST, n)(m) == m
        d = m.det()
        assert en.is_rational_value(d) and en.to_rational(d) > 0


class TestTwistMatrix:
    def test_equal_indices(self):
        assert co.twist_matrix(2, 2, 2) == ExactMatrix.identity(2)

    def test_example(self):
        d = co.twist_matrix(3, 1, 3)
        assert d == ExactMatrix.diag([1, i, i])
        assert d.T * I_p(3, 3) * d == I_p(3, 1)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_identities(self, n):
        for p, q in itertools.product(range(n + 1), repeat=2):
            d = co.twist_matrix(n, p, q)
            assert d.T * I_p(n, q) * d == I_p(n, p)
            assert d.star() * I_p(n, p) * d == I_p(n, p)

    def test_so_transport_example(self):
        m = cayley_sample(FormSpec(FormKind.QUADRATIC, I_p(4, 2)), seed=11)
        d = co.twist_matrix(4, 2, 0)
        nm = d * m * d.inverse()
        assert nm.T * I_p(4, 0) * nm == I_p(4, 0)

    @given(st.integers(2, 5), st.data(), seeds)
    def test_so_transport(self, n, data, seed):
        p, q = data.draw(st.integers(0, n)), data.draw(st.integers(0, n))
        m = cayley_sample(FormSpec(FormKind.QUADRATIC, I_p(n, p)), seed)
        d = co.twist_matrix(n, p, q)
        nm = d * m * d.inverse()
        assert nm.T * I_p(n, q) * nm == I_p(n, q)

    @given(st.integers(1, 3), st.data(), seeds)
    def test_symplectic_transport(self, n, data, seed):
        p, q = data.draw(st.integers(0, n)), data.draw(st.integers(0, n))
        size = 2 * n
        a_inv = A_n(size).inverse()
        tp, tq = a_inv * I_p(size, 2 * p), a_inv * I_p(size, 2 * q)
        nm = cayley_from_gram(tp, "transpose", seed, kind="gauss")
        assert nm.T * tp * nm == tp
        d = J_p(size, 2 * q) * J_p(size, 2 * p)
        pm = d * nm * d.inverse()
        assert pm.T * tq * pm == tq


class TestCoboundaryWitness:
    def test_trivial(self):
        w = co.coboundary_witness(co.Cocycle(action(co.UNITARY_TWIST, 3, 3), ExactMatrix.identity(3)))
        assert w.M.is_identity() and w.D.is_identity() and w.index == 3

    def test_representative(self):
        x = co.rep_cocycle("su", 4, 2, 0)
        w = co.coboundary_witness(x)
        assert w.M.is_identity()
        assert w.D * I_p(4, 2) == I_p(4, 0) * I_p(4, 2)

    @given(st.integers(1, 4), st.data(), seeds)
    def test_recovers_index(self, n, data, seed):
        p = data.draw(st.integers(0, n))
        q = data.draw(st.sampled_from([q for q in range(n + 1) if (q - p) % 2 == 0]))
        x0 = co.rep_cocycle("su", n, p, q)
        u = Lcg(seed).matrix(n, n, "gauss")
        assume(u.is_invertible())
        x = co.Cocycle(x0.action, u.inverse() * x0.B * x0.action(u))
        w = co.coboundary_witness(x)
        assert w.index == q
        assert w.M.inverse() * x.B * x.action(w.M) == w.D * I_p(n, p)
        assert sum(1 for v in w.D.diagonal() if v > 0) == co.cocycle_index(x)
        if w.normalized:
            assert w.D == I_p(n, q)

    def test_requires_unitary_twist(self):
        with pytest.raises(co.CocycleError):
            co.coboundary_witness(co.rep_cocycle("so", 2, 0, 2))


def test_sampling_error_carries_seed():
    err = SamplingError("boom", 7)
    assert err.seed == 7 and "boom" in str(err)
