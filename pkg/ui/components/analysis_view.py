# ui/components/analysis_view.py

from datetime import datetime

import streamlit as st

from lrc.analysis import analyze, report_table
from lrc.errors import LrcError
from ui.config import UI_LIMITS


def run_analysis(spec):
    st.header("Analysis")
    if spec is None:
        st.info("Design a good split code first.")
        return None

    st.write(f"Exhaustive scan over {spec.size} codewords of length {spec.n}.")
    if spec.size > UI_LIMITS["max_analysis_size"]:
        st.warning(f"More than {UI_LIMITS['max_analysis_size']} codewords; use the CLI with --force.")
        return None
    if not st.button("Run Analysis"):
        return None

    try:
        with st.spinner("Comparing all codeword pairs..."):
            report = analyze(spec, max_messages=UI_LIMITS["max_analysis_size"])
    except LrcError as exc:
        st.error(str(exc))
        return None

    st.dataframe(report_table(report).astype({"value": str}), hide_index=True, use_container_width=True)
    if report["min_distance"] > report["lower_bound"]:
        st.success(f"Actual distance {report['min_distance']} beats the bound {report['lower_bound']}.")

    st.session_state.history.append({
        "timestamp": datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
        "kind":      "analysis",
        "params":    {"s": spec.s, "M": spec.M, "primes": [sp.p for sp in spec.primes]},
        "results":   {k: report[k] for k in ("min_distance", "lower_bound", "distinct", "size")},
    })
    return report
