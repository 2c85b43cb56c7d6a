# ui/components/history.py

import pandas as pd
import streamlit as st


def display_history():
    """Designs and analyses saved during this session, newest first."""
    st.header("History")

    if not st.session_state.history:
        st.info("Nothing saved yet. Save a design or run an analysis to see it here.")
        return

    summary = []
    for i, entry in enumerate(reversed(st.session_state.history)):
        summary.append({
            "#":      len(st.session_state.history) - i,
            "Time":   entry["timestamp"].split()[1],
            "Kind":   entry["kind"],
            "s":      entry["params"]["s"],
            "M":      entry["params"]["M"],
            "Primes": ", ".join(map(str, entry["params"]["primes"])),
            **{k: v for k, v in entry["results"].items()},
        })
    st.dataframe(pd.DataFrame(summary), hide_index=True, use_container_width=True)

    for i, entry in enumerate(reversed(st.session_state.history)):
        with st.expander(f"#{len(st.session_state.history) - i} - {entry['timestamp']} - {entry['kind']}"):
            st.json(entry)
