# ui/components/field_view.py

import pandas as pd
import streamlit as st

from lrc.errors import LrcError
from lrc.prime_tools import certificate_to_json, next_split_primes
from ui.config import UI_LIMITS


def display_field(field, cert=None):
    st.header("Field & Split Primes")

    col1, col2, col3, col4 = st.columns(4)
    col1.metric("Degree", field.degree)
    col2.metric("S", field.coeff_bound)
    col3.metric("C_alpha", f"{field.c_alpha:.4g}")
    col4.metric("Discriminant", field.discriminant)

    if cert is not None:
        with st.expander("Construction certificate"):
            st.json(certificate_to_json(cert))

    col1, col2 = st.columns(2)
    with col1:
        count = st.number_input("How many split primes", min_value=1,
                                max_value=UI_LIMITS["max_split_primes"], value=10)
    with col2:
        start = st.number_input("Starting at", min_value=2, value=2)

    try:
        found = next_split_primes(field, int(count), int(start))
    except LrcError as exc:
        st.error(str(exc))
        return

    df = pd.DataFrame([{"p": sp.p, "p mod 16": sp.p % 16, "roots": ", ".join(map(str, sp.roots))}
                       for sp in found])
    st.dataframe(df, hide_index=True, use_container_width=True)
