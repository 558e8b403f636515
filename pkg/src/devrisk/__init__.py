"""devrisk: desk-scale IoT device risk assessment.

Identify devices from web fingerprints and TCP-timestamp clock skew,
enrich them with vulnerability data, score current and future risk, and
serve Guided and Rich decision views to device owners.
"""

__version__ = "0.1.0"
