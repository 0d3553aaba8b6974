import os

from hypothesis import HealthCheck, settings, strategies as st

from whtorsion.group_ring import GroupSpec, RingElement

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def groups(draw, finite_only=False):
    m = draw(st.integers(1, 9))
    kinds = ["cyclic"] if finite_only else ["cyclic", "infinite", "product"]
    kind = draw(st.sampled_from(kinds))
    ws = draw(st.sampled_from([1, -1])) if m % 2 == 0 else 1
    if kind == "cyclic":
        return GroupSpec.cyclic(m, ws)
    wt = draw(st.sampled_from([1, -1]))
    if kind == "infinite":
        return GroupSpec.infinite(wt)
    return GroupSpec.product(m, ws, wt)


@st.composite
def elements(draw, group, terms=4, coeff=3, tdeg=2):
    n = draw(st.integers(0, terms))
    t = {}
    for _ in range(n):
        a = draw(st.integers(0, group.m - 1))
        b = draw(st.integers(-tdeg, tdeg)) if group.has_t else 0
        c = draw(st.integers(-coeff, coeff))
        t[(a, b)] = t.get((a, b), 0) + c
    return RingElement(group, t)


@st.composite
def group_and_elements(draw, k=3, finite_only=False):
    G = draw(groups(finite_only=finite_only))
    return (G, *[draw(elements(G)) for _ in range(k)])
