"""Application wiring for the ``birkhoff`` command line."""
