"""Console entry points exposed when the package is installed"""
