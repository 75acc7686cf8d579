TOOL_NAME = "cwsa-eval"
__version__ = "0.1.0"
