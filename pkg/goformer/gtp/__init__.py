from .vertex import COLUMNS, parse_vertex, format_vertex, parse_color, render_board
from .session import GtpSession, GtpError, clean_line, PROTOCOL_VERSION, ENGINE_NAME
from .server import serve
