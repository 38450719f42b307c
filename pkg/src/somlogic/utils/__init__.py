"""Sub-package for common utilities used by the somlogic APIs"""
