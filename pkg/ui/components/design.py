# ui/components/design.py

import json
from datetime import datetime

import pandas as pd
import streamlit as st

from lrc.code_params import design_code, good_split_check, rate, spec_to_json
from lrc.errors import LrcError
from lrc.prime_tools import next_split_primes
from ui.config import UI_LIMITS


def _parse_primes(field, text: str):
    text = text.strip()
    if text.startswith("auto:"):
        count = int(text.split(":", 1)[1])
        if not 1 <= count <= UI_LIMITS["max_auto_primes"]:
            raise ValueError(f"[primes] auto count must lie in 1..{UI_LIMITS['max_auto_primes']}")
        return [sp.p for sp in next_split_primes(field, count, 2)]
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def create_design(field, defaults):
    """Inputs for s, M and the primes; returns a good CodeSpec or None."""
    st.header("Code Design")
    st.write(f"Locality r = {field.degree - 1} is fixed by the field degree.")

    col1, col2, col3 = st.columns(3)
    with col1:
        s = st.number_input("s", min_value=0, value=int(defaults["s"]), key="design_s")
    with col2:
        M = st.number_input("M", min_value=2, value=int(defaults["M"]), key="design_M")
    with col3:
        primes_text = st.text_input("Primes (list or auto:L)", value=defaults["primes"], key="design_primes")

    r = field.degree - 1
    try:
        primes = _parse_primes(field, primes_text)
        good, margin = good_split_check(field, r, int(s), int(M), primes)
        spec = design_code(field, r, int(s), int(M), primes)
    except (LrcError, ValueError) as exc:
        st.error(str(exc))
        return None

    col1, col2, col3, col4 = st.columns(4)
    col1.metric("n", spec.n)
    col2.metric("Codewords", f"{spec.M}^{spec.size_exponent}")
    col3.metric("Margin", f"{float(margin):.4g}")
    col4.metric("Rate", f"{rate(spec):.4f}")

    if not good:
        st.error("Not a good split code: the primes do not cover C_alpha (M^(s+1) - 1)^(r+1).")
        return None

    st.success(f"Good split code: m = {spec.m}, minimum distance >= {spec.dist_lb}.")
    st.dataframe(
        pd.DataFrame([{"p": sp.p, "roots": ", ".join(map(str, sp.roots))} for sp in spec.primes]),
        hide_index=True, use_container_width=True,
    )

    payload = spec_to_json(spec)
    st.download_button("Download spec JSON", data=json.dumps(payload, indent=2),
                       file_name="spec.json", mime="application/json")

    if st.button("Save to history", key="design_save"):
        st.session_state.history.append({
            "timestamp": datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            "kind":      "design",
            "params":    {"s": spec.s, "M": spec.M, "primes": [sp.p for sp in spec.primes]},
            "results":   {"n": spec.n, "m": spec.m, "dist_lb": spec.dist_lb, "rate": rate(spec)},
        })
    return spec
