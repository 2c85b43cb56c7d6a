# Initialize UI package
from .components import sidebar, field_view, design, codec_view, analysis_view, history

__all__ = ['sidebar', 'field_view', 'design', 'codec_view', 'analysis_view', 'history']
