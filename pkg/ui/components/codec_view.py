# ui/components/codec_view.py

import pandas as pd
import streamlit as st

from lrc.codec import (
    codeword_to_bytes,
    encode,
    global_decode,
    local_recover,
    msg_from_bytes,
    msg_from_int,
    msg_to_int,
    stripe_payload_bytes,
)
from lrc.errors import LrcError


def _codeword_frame(spec, cw) -> pd.DataFrame:
    rows = []
    for g, sp in enumerate(spec.primes):
        row = {"group": g, "p": sp.p}
        for k, beta in enumerate(sp.roots):
            row[f"slot {k} (beta={beta})"] = str(cw.symbols[g][k]) if cw.mask[g][k] else "erased"
        rows.append(row)
    return pd.DataFrame(rows)


def run_codec(spec):
    st.header("Encode & Repair")
    if spec is None:
        st.info("Design a good split code first.")
        return

    mode = st.radio("Message from", ["integer", "text"], horizontal=True)
    try:
        if mode == "integer":
            value = st.number_input("Message integer", min_value=0, max_value=spec.size - 1, value=0)
            msg = msg_from_int(spec, int(value))
        else:
            text = st.text_input(f"Up to {stripe_payload_bytes(spec)} bytes", value="")
            msg = msg_from_bytes(spec, text.encode())
        cw = encode(spec, msg)
    except LrcError as exc:
        st.error(str(exc))
        return

    st.caption(f"u = {msg.coeffs} · message integer {msg_to_int(msg)}")
    nodes = [(g, k) for g in range(spec.ell) for k in range(spec.r + 1)]
    erased = st.multiselect("Erase slots", nodes, format_func=lambda n: f"group {n[0]} slot {n[1]}")
    damaged = cw.erase_many(erased)
    st.dataframe(_codeword_frame(spec, damaged), hide_index=True, use_container_width=True)
    st.download_button("Download codeword", data=codeword_to_bytes(damaged),
                       file_name="codeword.nflc", mime="application/octet-stream")

    col1, col2 = st.columns(2)
    with col1:
        st.subheader("Local repair")
        for g, k in erased:
            try:
                sym = local_recover(spec, damaged, g, k)
                st.write(f"group {g} slot {k} → {sym} (stored {cw.symbols[g][k]})")
            except LrcError as exc:
                st.write(f"group {g} slot {k}: {exc}")
    with col2:
        st.subheader("Global decode")
        try:
            back = global_decode(spec, damaged)
            st.success(f"decoded u = {back.coeffs}, matches: {back == msg}")
        except LrcError as exc:
            st.error(str(exc))
