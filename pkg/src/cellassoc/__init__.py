"""Downlink user association: SINR model, exact and relaxed delay formulations,
HST-linearized LP, and BS deactivation analysis."""
__version__ = "0.1.0"
