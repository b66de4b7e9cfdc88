import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..'))

# import the lieclass module
from lieclass import LieClass, DEFAULTS
from lieclass.analysis import lbt_report, check_N, tangent_cone_pipeline, compare_invariants, Reduction
from lieclass.geometry import weak_flag, strong_flag
from lieclass.utils.family import catalog


def integration_test_hilbert_cartan():
    '''
    Integration test with the distribution of y' = (z'')^2.
    The symbol has growth (2,1,2) and its Tanaka prolongation is 14-dimensional.
    '''
    session = LieClass(config=DEFAULTS, model='hilbert-cartan')

    symbol = session.symbol()
    assert symbol.entries['layer_dims'] == [2, 1, 2], "Wrong symbol of the Hilbert-Cartan distribution."

    result = session.tanaka()
    assert result.dims == {0: 4, 1: 2, 2: 1, 3: 2, 4: 0}, "Wrong Tanaka layers: %s" % result.dims
    assert result.dimension == 14, "Tanaka algebra of the Hilbert-Cartan distribution is not 14-dimensional."


def integration_test_ek(k=4):
    '''
    Integration test with E_k: flags of the reduction, the listed external symmetries, the transported
    Monge basis with its gradings, the Tanaka bound and the non-degeneracy conditions.
    '''
    session = LieClass(config=DEFAULTS, model='ek', params={'k': k})
    dimension = k * (k + 1) // 2 + 6

    flags = session.flags()
    assert flags.weak.growth_vector == [2, 1] + list(range(2, k + 1)), "Wrong weak growth of E_%d." % k
    assert flags.strong.growth_vector == flags.weak.growth_vector, "Weak and strong flags of E_%d differ." % k

    symmetries = session.check_symmetry()
    assert symmetries.dimension == dimension and symmetries.passed, "Listed symmetries of E_%d fail." % k

    report = session.commutators()
    assert report.passed, "Transported Monge basis of E_%d is not a closed graded symmetry algebra." % k
    assert report.upper_bound == dimension, "Tanaka bound %s differs from %d." % (report.upper_bound, dimension)
    assert report.certified, "Symmetry dimension of E_%d not certified." % k

    nondeg = session.nondeg()
    assert nondeg.passed, "E_%d is not sufficiently non-degenerate: %s" % (k, nondeg.to_text())


def integration_test_solver():
    '''
    Integration test of the weighted polynomial solver on the reduction of E_3:
    at weighted degree 0 it recovers exactly the 12 listed symmetries.
    '''
    session = LieClass(config=DEFAULTS, model='ek', params={'k': 3})
    result = session.solve_sym(degree=0)
    assert result.entries['dimension'] == 12, "Solver found %d symmetries." % result.entries['dimension']


def integration_test_lbt():
    '''
    Integration test of the restriction of external symmetries to the reduction:
    bijective for E_3, a kernel for 2E2+E1, first integrals for 9E3.
    '''
    session = LieClass(config=DEFAULTS, model='ek', params={'k': 3})
    report = session.lbt()
    assert report.injective, "Restriction is not injective for E_3."
    assert report.matched is not None and report.matched, "Image does not span the symmetries of the reduction."
    assert report.passed, "Restriction is not bijective for E_3."

    functions = ['u_100', 'u_010', 'u_001', 'x*u_001', 'z*u_001']
    report = lbt_report(catalog('s8-2e2e1'), functions)
    assert set(['u_001', 'x*u_001', 'z*u_001']) <= set(report.kernel), "Wrong kernel: %s" % report.kernel
    assert not report.injective, "Restriction for 2E2+E1 should have a kernel."

    report = lbt_report(catalog('s8-9e3'), ['u_100', 'u_010'])
    assert report.first_integrals > 0, "9E3 reduction should have first integrals."
    assert report.surjectivity_evidence == 'negative', "Surjectivity evidence for 9E3 should be negative."


def integration_test_monge():
    '''
    Integration test with the Monge system (kl) for m = (0, 1, 2): growth (2,1,2,1) and Tanaka dimension 11.
    '''
    session = LieClass(config=DEFAULTS, model='monge-kl', params={'m_list': '0,1,2'})
    flags = session.flags()
    assert flags.weak.growth_vector == [2, 1, 2, 1], "Wrong growth of kl(0,1,2): %s" % flags.weak.growth_vector
    result = session.tanaka()
    assert result.dimension == 11, "Tanaka dimension of kl(0,1,2) is %d." % result.dimension


def integration_test_examples():
    '''
    Integration test with the generic E2+E3 and 3E3 systems and the Goursat pair.
    '''
    reduction = Reduction(catalog('s3-e2e3-generic'))
    verdict, growth, s = check_N(reduction.distribution)
    assert growth == [2, 1, 1, 2, 1] and s == 4, "Wrong strong growth of E2+E3: %s" % growth

    reduction = Reduction(catalog('s3-3e3-generic'))
    assert strong_flag(reduction.distribution).growth_vector == [2, 1, 2, 3], "Wrong strong growth of 3E3."

    first, second = catalog('goursat-pair', variant=1), catalog('goursat-pair', variant=2)
    assert weak_flag(Reduction(first).distribution).growth_vector == [2, 1, 1, 1], "Goursat pair is not Goursat."
    verdict = compare_invariants(first, second)
    assert verdict, "Invariants of the Goursat pair differ: %s" % verdict.witness
    result = LieClass(config=DEFAULTS, system=first).tanaka()
    assert result.stabilized_at == 'cutoff', "Tanaka prolongation of a Goursat symbol should not stop."


def integration_test_tangent_cone():
    '''
    Integration test with R_3^m: for m = 1 the second reduction is along Cauchy characteristics and gives
    the weak flag step 2; for m = 2 it gives the lambda chain of rank 4 instead of the weak flag step 3.
    '''
    result = tangent_cone_pipeline(catalog('rkm', k=3, m=1), 1)
    assert result['xi_cauchy'], "xi should be a Cauchy characteristic for m = 1."
    assert result['weak_match'], "Reduction of R_3^1 should equal the weak flag step 2."

    result = tangent_cone_pipeline(catalog('rkm', k=3, m=2), 2)
    assert not result['xi_cauchy'], "xi should not be a Cauchy characteristic for m = 2."
    assert result['plus'].rank == 4, "Reduction of R_3^2 has rank %d." % result['plus'].rank
    assert result['chain_match'], "Reduction of R_3^2 should equal the lambda chain."
    assert not result['weak_match'], "Reduction of R_3^2 should differ from the weak flag step 3."


if __name__ == '__main__':
    # run integration tests
    print("Test with the Hilbert-Cartan distribution")
    integration_test_hilbert_cartan()
    print("-----------------------")
    print("Passed tests for the Hilbert-Cartan distribution")

    print("Test with E_3 and E_4")
    integration_test_ek(3)
    integration_test_ek(4)
    print("-----------------------")
    print("Passed tests for E_k")

    print("Test the polynomial symmetry solver")
    integration_test_solver()
    print("-----------------------")
    print("Passed tests for the solver")

    print("Test the restriction of external symmetries")
    integration_test_lbt()
    print("-----------------------")
    print("Passed tests for the restriction map")

    print("Test with the Monge system kl(0,1,2)")
    integration_test_monge()
    print("-----------------------")
    print("Passed tests for the Monge system")

    print("Test with the generic examples and the Goursat pair")
    integration_test_examples()
    print("-----------------------")
    print("Passed tests for the examples")

    print("Test the tangent cone reductions")
    integration_test_tangent_cone()
    print("-----------------------")
    print("Passed tests for the tangent cone reductions")
