# app.py

import streamlit as st

from ui.components import (
    create_sidebar,
    display_field,
    create_design,
    run_codec,
    run_analysis,
    display_history,
)

st.set_page_config(
    page_title="Number-Field LRC Explorer",
    page_icon="🧮",
    layout="wide",
    initial_sidebar_state="expanded",
    menu_items=None
)

st.title("Number-Field LRC Explorer")

if 'history' not in st.session_state:
    st.session_state.history = []

field, defaults, cert = create_sidebar()

st.write("Pick a field, design a good split code, then encode, erase, repair and measure it.")

tab1, tab2, tab3, tab4, tab5 = st.tabs(["Field & Primes", "Code Design", "Encode & Repair", "Analysis", "History"])

with tab1:
    display_field(field, cert)

with tab2:
    spec = create_design(field, defaults)

with tab3:
    run_codec(spec)

with tab4:
    run_analysis(spec)

with tab5:
    display_history()
