"""modules that implement the fuzzy connective families used by the fuzzy
and probabilistic models of a trained map

For details on how these plugins are discovered see
:py:mod:`somlogic.utils.plugin_api`
"""
