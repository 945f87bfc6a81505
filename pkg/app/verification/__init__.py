"""Named verification suites, their pipeline and JSON reports."""
