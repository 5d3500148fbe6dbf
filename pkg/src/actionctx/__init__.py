"""Temporal-context action recognition over precomputed clip features.

The pipeline classifies the target action of a window of consecutive
actions with an audio-visual transformer, then rescores beam-searched
action sequences with a masked language model over action labels.
"""

__version__ = "0.1.0"
