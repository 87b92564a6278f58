import os
import sys
import streamlit as st

# Support running via "streamlit run src/gui/app.py" (no package context)
try:
    from ..analysis.covers import cover_from_text, halves, quarters
    from ..analysis.dynamics_analyzer import DynamicsAnalyzer
    from ..core.rational import parse_rational
    from ..dynamics.models import MODELS
    from ..errors import ToolkitError
    from ..storage.map_files import parse_map, serialize_map
except Exception:
    # Fallback to absolute imports by appending project root to sys.path
    ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
    if ROOT not in sys.path:
        sys.path.insert(0, ROOT)
    from src.analysis.covers import cover_from_text, halves, quarters
    from src.analysis.dynamics_analyzer import DynamicsAnalyzer
    from src.core.rational import parse_rational
    from src.dynamics.models import MODELS
    from src.errors import ToolkitError
    from src.storage.map_files import parse_map, serialize_map


COVERS = {
    "Halves": halves,
    "Quarters": quarters,
}


def get_analyzer() -> DynamicsAnalyzer:
    if "_analyzer" not in st.session_state:
        st.session_state._analyzer = DynamicsAnalyzer()
    return st.session_state._analyzer


def show_section(section):
    if "error" in section:
        st.error(f"{section['error_type']}: {section['error']}")
    else:
        st.json(analyzer.to_structured_section(section))


st.set_page_config(page_title="Circle Map Toolkit", layout="wide")
st.title("Circle Map Toolkit (exact PL dynamics)")

analyzer = get_analyzer()
tabs = st.tabs(["Map", "Dynamics", "Complexity", "Pairs"])


with tabs[0]:
    st.header("Map")
    source = st.radio("Source", ["Built-in model", "Paste / upload"], horizontal=True)
    if source == "Built-in model":
        model = st.selectbox("Model", list(MODELS.keys()), index=0)
        if st.button("Load model", use_container_width=True):
            st.session_state.map = MODELS[model]()
    else:
        uploaded = st.file_uploader("Map file (.cmap)", type=["cmap", "txt"])
        text = uploaded.read().decode("utf-8") if uploaded is not None else ""
        text = st.text_area("Map text", value=text or "# name: doubling\nbp 0 0\nbp 1 2\n", height=180)
        if st.button("Parse map", use_container_width=True):
            try:
                st.session_state.map = parse_map(text)
            except ToolkitError as e:
                st.error(f"Parse failed: {e}")

    f = st.session_state.get("map")
    if f is not None:
        st.subheader(f"Profile of {f}")
        st.code(serialize_map(f))
        try:
            st.json(analyzer.to_structured_section(analyzer.map_profile(f)))
        except ToolkitError as e:
            st.error(str(e))


with tabs[1]:
    st.header("Dynamics")
    f = st.session_state.get("map")
    if f is None:
        st.info("Load a map first.")
    else:
        horizon = st.slider("Horizon", 1, 12, 6)
        col1, col2 = st.columns(2)
        with col1:
            if st.button("Analyze", use_container_width=True):
                show_section(analyzer.analyze(f, horizon))
        with col2:
            if st.button("Rotation number", use_container_width=True):
                show_section(analyzer.rotation(f, n=64, q_max=horizon))


with tabs[2]:
    st.header("Complexity")
    f = st.session_state.get("map")
    if f is None:
        st.info("Load a map first.")
    else:
        cover_name = st.selectbox("Cover", list(COVERS.keys()) + ["Custom"], index=0)
        cover = None
        if cover_name == "Custom":
            cover_text = st.text_area("Cover (one 'arc <start> <length>' per line)", "arc 0 1/2\narc 1/2 1/2\n")
        n_max = st.slider("n", 1, 10, 5)
        T = st.slider("T", 1, 16, 8)
        eps = st.text_input("epsilon for s* (p/q)", "1/4")
        try:
            cover = COVERS[cover_name]() if cover_name != "Custom" else cover_from_text(cover_text)
        except ToolkitError as e:
            st.error(f"Bad cover: {e}")

        if cover is not None:
            col1, col2, col3 = st.columns(3)
            with col1:
                if st.button("Entropy growth", use_container_width=True):
                    show_section(analyzer.entropy(f, cover, n_max))
            with col2:
                if st.button("Pattern complexity", use_container_width=True):
                    show_section(analyzer.pattern(f, cover, n_max, max(T, n_max)))
            with col3:
                if st.button("s* table", use_container_width=True):
                    try:
                        show_section(analyzer.separated(f, parse_rational(eps), min(n_max, 4), T))
                    except ToolkitError as e:
                        st.error(str(e))

        fig = analyzer.create_visualization()
        if fig is not None:
            st.pyplot(fig)


with tabs[3]:
    st.header("Pairs")
    f = st.session_state.get("map")
    if f is None:
        st.info("Load a map first.")
    else:
        col1, col2 = st.columns(2)
        with col1:
            x = st.text_input("x", "0")
        with col2:
            y = st.text_input("y", "1/2")
        depth = st.slider("Depth", 1, 5, 3)
        T = st.slider("Horizon T", 1, 16, 12, key="pairs_T")
        try:
            px, py = parse_rational(x, name="x"), parse_rational(y, name="y")
        except ToolkitError as e:
            st.error(str(e))
            px = py = None

        if px is not None:
            col1, col2 = st.columns(2)
            with col1:
                if st.button("Independence scan", use_container_width=True):
                    show_section(analyzer.independence(f, px, py, T=T))
            with col2:
                if st.button("Separability", use_container_width=True):
                    show_section(analyzer.nonsep(f, px, py, depth))

    st.subheader("Report")
    if st.button("Show full report"):
        st.text(analyzer.generate_report())
    st.download_button("Download structured report", data=analyzer.to_structured().encode("utf-8"),
                       file_name="report.json")
