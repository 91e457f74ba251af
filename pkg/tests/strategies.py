"""Hypothesis strategies for catalog parameters and model automorphisms."""

import numpy as np
from hypothesis import assume
from hypothesis import strategies as st

from lorentz3.catalog import FAMILIES, GEOM5, SIGNED5, U5, build_metric

pos = st.floats(0.2, 5.0)
_KIND = {GEOM5: pos, tuple(-x for x in GEOM5): pos.map(lambda x: -x),
         SIGNED5: st.tuples(st.floats(0.3, 3.0), st.sampled_from((-1.0, 1.0))).map(lambda t: t[0] * t[1]),
         U5: st.floats(-3.0, 3.0)}


@st.composite
def family_point(draw, families=None, max_cond=1e6):
    """(family id, params) inside the domain, away from singular metrics."""
    fid = draw(st.sampled_from(sorted(families or FAMILIES, key=lambda f: f.value)))
    rec = FAMILIES[fid]
    p = tuple(draw(_KIND[ax]) for ax in rec.axes)
    assume(rec.in_domain(rec.as_params(p)))
    _, G = build_metric(fid, p)
    assume(np.linalg.cond(G) < max_cond)
    return fid, p


seeds = st.integers(0, 2 ** 32 - 1)
