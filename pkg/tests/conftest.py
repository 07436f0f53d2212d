import hypothesis
import pytest

from cvhilbert import groups, pairing, representations, variables

hypothesis.settings.register_profile(
    "default", max_examples=30, deadline=None
)
hypothesis.settings.load_profile("default")

FLIP1 = (2, 3, 0, 1)
FLIP2 = (1, 0, 3, 2)
SWAP = (0, 2, 1, 3)


@pytest.fixture(scope="session")
def two_bit():
    """The worked two-binary-variable joint system and its ingredients."""
    k_group, k_action = groups.generate_permutation_group([FLIP1, FLIP2])
    theta = variables.make_variable("bit1", [0, 0, 1, 1], numeric_values=[0.0, 1.0])
    xi = variables.make_variable("bit2", [0, 1, 0, 1], numeric_values=[0.0, 1.0])
    context = variables.Context(4, k_action, (theta, xi))
    pair = pairing.build_related_pair(context, theta, xi, SWAP)
    g_group, g_action, hom = variables.induced_group(theta, k_action)
    system = pairing.build_joint_system(pair, g_group, g_action)
    return {
        "k_group": k_group,
        "k_action": k_action,
        "theta": theta,
        "xi": xi,
        "context": context,
        "pair": pair,
        "g_group": g_group,
        "g_action": g_action,
        "hom": hom,
        "system": system,
    }


@pytest.fixture(scope="session")
def two_bit_operators(two_bit):
    a_theta, a_xi = pairing.joint_operators(
        two_bit["system"], two_bit["theta"].numeric(), two_bit["xi"].numeric()
    )
    return a_theta, a_xi


@pytest.fixture(scope="session")
def qubit_rep(two_bit):
    """Irreducible two-dimensional representation of the joined group."""
    return two_bit["system"].joint_rep


def circle_system(n):
    """Value circle: cyclic shifts acting on n labeled points, basis fiducial."""
    from cvhilbert import coherent

    group = groups.standard_group("cyclic", n)
    action = groups.build_action(group, group.cayley)
    rep = representations.permutation_representation(action)
    system = coherent.build_coherent_system(rep)
    return group, action, rep, system
