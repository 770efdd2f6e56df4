"""Helpers: integer normal forms, exact q-series, validation, tables and job-spec I/O."""
