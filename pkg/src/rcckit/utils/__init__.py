from rcckit.utils.validation import check_fraction, check_graph, check_positive_int

__all__ = ["check_graph", "check_fraction", "check_positive_int"]
