# ui/components/sidebar.py

import streamlit as st

from lrc.errors import LrcError
from lrc.number_field import nf_new
from lrc.prime_tools import construct_field
from ui.config import PRESETS


def create_sidebar():
    """Pick a preset or type a polynomial; returns (field, defaults, certificate or None)."""
    st.sidebar.header("Number Field")

    keys = list(PRESETS) + ["custom"]
    choice = st.sidebar.selectbox(
        "Preset",
        keys,
        format_func=lambda k: "Custom polynomial" if k == "custom" else PRESETS[k]["label"],
    )
    allow = st.sidebar.checkbox("Accept uncertified polynomials", value=False)

    cert = None
    try:
        if choice == "custom":
            text = st.sidebar.text_input("b_0, b_1, ..., b_{d-1}", value="2, 0, -4, 0")
            coeffs = [int(x) for x in text.replace(" ", "").split(",") if x]
            field = nf_new(coeffs, allow_uncertified=allow)
            defaults = PRESETS["example_quartic"]["default"]
        elif "construct" in PRESETS[choice]:
            spec = PRESETS[choice]["construct"]
            cert = construct_field(spec["degree"], spec["primes"])
            field = nf_new(cert.min_poly_coeffs())
            defaults = PRESETS[choice]["default"]
        else:
            field = nf_new(PRESETS[choice]["min_poly"], allow_uncertified=allow)
            defaults = PRESETS[choice]["default"]
    except (LrcError, ValueError) as exc:
        st.sidebar.error(str(exc))
        st.stop()

    st.sidebar.write(f"**m(x)** = `{field}`")
    st.sidebar.caption(
        f"degree {field.degree} · S = {field.coeff_bound} · "
        f"C_alpha = {field.c_alpha} · disc = {field.discriminant}"
    )
    if field.certified_by is None:
        st.sidebar.warning("Irreducibility is not certified by any small prime.")
    else:
        st.sidebar.caption(f"irreducible mod {field.certified_by}")

    return field, defaults, cert
