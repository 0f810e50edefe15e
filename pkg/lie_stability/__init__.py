from .constants import OutputFormat, ScaleConvention, Subcommand, Verdict

__version__ = "0.1.0"
__all__ = ["OutputFormat", "ScaleConvention", "Subcommand", "Verdict"]
