"""
Business logic services package.

This package contains the services the CLI commands obtain from the
service container in ``app.dependencies``.
"""
