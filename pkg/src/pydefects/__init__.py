"""Design defect detection for Python code.

Detects five code smells and four antipatterns from a linked code model and
reports their density per 10,000 lines of code.
"""

__version__ = "0.1.0"
