# Initialize components package
from .sidebar import create_sidebar
from .field_view import display_field
from .design import create_design
from .codec_view import run_codec
from .analysis_view import run_analysis
from .history import display_history

__all__ = ['create_sidebar', 'display_field', 'create_design', 'run_codec', 'run_analysis', 'display_history']
