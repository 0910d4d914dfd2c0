"""faultfuse: statement-level fault localization toolkit.

Extracts spectrum-, mutation-, and text-based features from instrumented
runs, selects and fuses them with binary multi-objective optimizers, trains
small perceptron/GRU rankers, and evaluates statement rankings.
"""

__version__ = "0.1.0"
