import pytest

from symgen.groupfile import load_bundled


@pytest.fixture(scope="session")
def l2_19():
    return load_bundled("l2_19").build_context(with_rules=True)


@pytest.fixture(scope="session")
def d6_5sq():
    return load_bundled("5sq_d6").build_context(with_rules=True)


@pytest.fixture(scope="session")
def u3_3():
    return load_bundled("u3_3").build_context(with_rules=True)


@pytest.fixture(scope="session")
def all_contexts(l2_19, d6_5sq, u3_3):
    return {"l2_19": l2_19, "5sq_d6": d6_5sq, "u3_3": u3_3}
